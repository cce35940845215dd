"""Reading and writing INI-style scenario files.

A scenario file has six sections. Only the keys marked required must appear;
everything else falls back to the dataclass defaults::

    [run]        name (required), seed, rssi_samples_per_reading, recalibrate_odometry
    [anchors]    a, b, c (required, each "x, y")
    [channel]    n, sigma (required), d0, freq_hz, tx_power_dbm
    [odometry]   meters_per_tick, slope, intercept, wheelbase, tick_error_rate
    [fusion]     xi, epsilon, boost_weight_wifi, initial_w_odo, initial_w_wifi
    [path]       start "x, y[, heading]" (required), waypoints (required,
                 one "x, y" per line)
"""

from __future__ import annotations

import configparser
import dataclasses
import re
from importlib import resources
from pathlib import Path

from .channel import ChannelParams
from .fusion import FusionConfig
from .geom import AnchorSet, Point2D
from .odometry import OdometryCalibration, OdometryNoiseParams, Pose2D
from .sim import InvalidScenario, Scenario

PRESET_NAMES = ("office", "mec", "tba")
PRESET_SUFFIX = ".scn"

SCHEMA: dict[str, dict[str, bool]] = {
    "run": {"name": True, "seed": False, "rssi_samples_per_reading": False, "recalibrate_odometry": False},
    "anchors": {"a": True, "b": True, "c": True},
    "channel": {"n": True, "sigma": True, "d0": False, "freq_hz": False, "tx_power_dbm": False},
    "odometry": {
        "meters_per_tick": False,
        "slope": False,
        "intercept": False,
        "wheelbase": False,
        "tick_error_rate": False,
    },
    "fusion": {
        "xi": False,
        "epsilon": False,
        "boost_weight_wifi": False,
        "initial_w_odo": False,
        "initial_w_wifi": False,
    },
    "path": {"start": True, "waypoints": True},
}

INT_KEYS = {"run.seed", "run.rssi_samples_per_reading", "fusion.epsilon"}
BOOL_KEYS = {"run.recalibrate_odometry"}


class ScenarioFileError(Exception):
    """Malformed scenario file; carries the 1-based line number when known."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = path or "<scenario>"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}")


def numeric_keys() -> list[str]:
    return sorted(
        f"{section}.{key}"
        for section, keys in SCHEMA.items()
        for key in keys
        if section not in ("anchors", "path") and f"{section}.{key}" not in BOOL_KEYS and key != "name"
    )


def _line_of(text: str, section: str, key: str | None = None) -> int | None:
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        header = re.fullmatch(r"\[([^\]]+)\]", line)
        if header:
            current = header.group(1).strip().lower()
            if key is None and current == section:
                return lineno
            continue
        if key is not None and current == section and re.match(rf"{re.escape(key)}\s*[=:]", line, re.I):
            return lineno
    return None


def _parser() -> configparser.ConfigParser:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    cp.optionxform = str.lower
    return cp


def _parse_point(value: str) -> Point2D:
    parts = [p.strip() for p in value.split(",")]
    if len(parts) != 2:
        raise ValueError(f"expected 'x, y', got {value!r}")
    return Point2D(float(parts[0]), float(parts[1]))


def _parse_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {value!r}")


def _parse_int(value: str) -> int:
    try:
        return int(value)
    except ValueError:
        as_float = float(value)
    if not as_float.is_integer():
        raise ValueError(f"expected an integer, got {value!r}")
    return int(as_float)


def apply_overrides(cp: configparser.ConfigParser, overrides: list[str]) -> None:
    """Apply ``section.key=value`` overrides; unknown keys raise ScenarioFileError."""
    for item in overrides:
        if "=" not in item:
            raise ScenarioFileError(f"override {item!r} is not of the form section.key=value")
        dotted, value = item.split("=", 1)
        section, _, key = dotted.strip().lower().partition(".")
        if section not in SCHEMA or key not in SCHEMA[section]:
            raise ScenarioFileError(f"unknown override key {dotted.strip()!r}")
        if not cp.has_section(section):
            cp.add_section(section)
        cp.set(section, key, value.strip())


def parse_scenario(text: str, path: str | None = None, overrides: list[str] | None = None) -> Scenario:
    """Parse scenario text into a Scenario.

    Raises:
        ScenarioFileError: syntax errors, unknown or missing keys, and values
            that do not parse as the expected type.
        InvalidScenario: the values parse but violate a model constraint.
    """
    cp = _parser()
    try:
        cp.read_string(text, source=path or "<scenario>")
    except configparser.MissingSectionHeaderError as exc:
        raise ScenarioFileError("content before the first [section] header", path, exc.lineno) from exc
    except configparser.ParsingError as exc:
        lineno = exc.errors[0][0] if exc.errors else None
        raise ScenarioFileError("malformed line", path, lineno) from exc
    except (configparser.DuplicateOptionError, configparser.DuplicateSectionError) as exc:
        raise ScenarioFileError(exc.message.split(":")[-1].strip(), path, exc.lineno) from exc

    for section in cp.sections():
        if section not in SCHEMA:
            raise ScenarioFileError(f"unknown section [{section}]", path, _line_of(text, section))
        for key in cp.options(section):
            if key not in SCHEMA[section]:
                raise ScenarioFileError(f"unknown key {section}.{key}", path, _line_of(text, section, key))

    apply_overrides(cp, overrides or [])

    for section, keys in SCHEMA.items():
        for key, required in keys.items():
            if required and not cp.has_option(section, key):
                raise ScenarioFileError(f"missing required key {section}.{key}", path)

    def get(section: str, key: str, convert=float):
        if not cp.has_option(section, key):
            return None
        raw = cp.get(section, key)
        try:
            return convert(raw)
        except ValueError as exc:
            raise ScenarioFileError(f"bad value for {section}.{key}: {exc}", path, _line_of(text, section, key)) from exc

    def section_kwargs(section: str, names: tuple[str, ...]) -> dict:
        out = {}
        for key in names:
            dotted = f"{section}.{key}"
            convert = _parse_int if dotted in INT_KEYS else _parse_bool if dotted in BOOL_KEYS else float
            value = get(section, key, convert)
            if value is not None:
                out[key] = value
        return out

    def parse_waypoints(raw: str) -> tuple[Point2D, ...]:
        return tuple(_parse_point(ln) for ln in raw.splitlines() if ln.strip())

    def parse_start(raw: str) -> Pose2D:
        parts = [p.strip() for p in raw.split(",")]
        if len(parts) not in (2, 3):
            raise ValueError(f"expected 'x, y[, heading]', got {raw!r}")
        heading = float(parts[2]) if len(parts) == 3 else 0.0
        return Pose2D(Point2D(float(parts[0]), float(parts[1])), heading)

    odometry = section_kwargs("odometry", tuple(SCHEMA["odometry"]))
    noise_rate = odometry.pop("tick_error_rate", None)
    run = section_kwargs("run", ("seed", "rssi_samples_per_reading", "recalibrate_odometry"))

    try:
        scenario = Scenario(
            name=cp.get("run", "name").strip(),
            anchors=AnchorSet(*(get("anchors", k, _parse_point) for k in "abc")),
            channel=ChannelParams(**section_kwargs("channel", tuple(SCHEMA["channel"]))),
            waypoints=get("path", "waypoints", parse_waypoints),
            start_pose=get("path", "start", parse_start),
            odo_noise=OdometryNoiseParams() if noise_rate is None else OdometryNoiseParams(noise_rate),
            calibration=OdometryCalibration(**odometry),
            fusion=FusionConfig(**section_kwargs("fusion", tuple(SCHEMA["fusion"]))),
            **run,
        )
    except ValueError as exc:
        raise InvalidScenario(str(exc)) from exc
    scenario.validate()
    return scenario


def load_scenario(path: str | Path, overrides: list[str] | None = None) -> Scenario:
    """Load a scenario from disk, or a built-in preset given as ``presets/<name>``."""
    path = Path(path)
    if not path.exists():
        preset = _preset_name(path)
        if preset is None:
            raise ScenarioFileError("no such file", str(path))
        return parse_scenario(preset_text(preset), f"presets/{preset}", overrides)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScenarioFileError(exc.strerror or "unreadable", str(path)) from exc
    return parse_scenario(text, str(path), overrides)


def _preset_name(path: Path) -> str | None:
    stem = path.name[: -len(PRESET_SUFFIX)] if path.name.endswith(PRESET_SUFFIX) else path.name
    if stem in PRESET_NAMES and (path.parent.name in ("presets", "") or str(path.parent) == "."):
        return stem
    return None


def preset_text(name: str) -> str:
    return resources.files("hybridloc.presets").joinpath(name + PRESET_SUFFIX).read_text()


def load_preset(name: str) -> Scenario:
    return parse_scenario(preset_text(name), f"presets/{name}")


def _fmt(value: float) -> str:
    return repr(float(value))


def format_scenario(scenario: Scenario) -> str:
    """Serialize a Scenario; ``parse_scenario(format_scenario(s)) == s``."""
    ch, cal, fz = scenario.channel, scenario.calibration, scenario.fusion
    p = scenario.start_pose
    lines = [
        "[run]",
        f"name = {scenario.name}",
        f"seed = {scenario.seed}",
        f"rssi_samples_per_reading = {scenario.rssi_samples_per_reading}",
        f"recalibrate_odometry = {str(scenario.recalibrate_odometry).lower()}",
        "",
        "[anchors]",
        *(f"{k} = {_fmt(pt.x)}, {_fmt(pt.y)}" for k, pt in zip("abc", scenario.anchors)),
        "",
        "[channel]",
        *(f"{f.name} = {_fmt(getattr(ch, f.name))}" for f in dataclasses.fields(ch)),
        "",
        "[odometry]",
        *(f"{f.name} = {_fmt(getattr(cal, f.name))}" for f in dataclasses.fields(cal)),
        f"tick_error_rate = {_fmt(scenario.odo_noise.tick_error_rate)}",
        "",
        "[fusion]",
        f"xi = {_fmt(fz.xi)}",
        f"epsilon = {fz.epsilon}",
        f"boost_weight_wifi = {_fmt(fz.boost_weight_wifi)}",
        f"initial_w_odo = {_fmt(fz.initial_w_odo)}",
        f"initial_w_wifi = {_fmt(fz.initial_w_wifi)}",
        "",
        "[path]",
        f"start = {_fmt(p.position.x)}, {_fmt(p.position.y)}, {_fmt(p.heading)}",
        "waypoints =",
        *(f"    {_fmt(w.x)}, {_fmt(w.y)}" for w in scenario.waypoints),
        "",
    ]
    return "\n".join(lines)
