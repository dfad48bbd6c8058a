"""Bosphorus ferry-lane geometry and the RF/system configuration around it."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

logger = logging.getLogger(__name__)

SPEED_OF_LIGHT = 299_792_458.0

PORT_SPACING_M = 3700.0
ENODEB_OFFSET_M = 250.0
LANE_OFFSET_M = 175.0
RB_BANDWIDTH_HZ = 180_000.0
THERMAL_NOISE_DBM_HZ = -174.0

# canonical eNodeB order: west/east at port y=0, then west/east at port y=3700
_ENODEB_XY = (
    (-ENODEB_OFFSET_M, 0.0),
    (ENODEB_OFFSET_M, 0.0),
    (-ENODEB_OFFSET_M, PORT_SPACING_M),
    (ENODEB_OFFSET_M, PORT_SPACING_M),
)

DEFAULTS: dict[str, Any] = {
    "num_ships": 8,
    "carrier_freq_hz": 2750e6,
    "duct_height_m": 25.0,
    "tx_power_dbm": 43.0,
    "cable_loss_db": 3.0,
    "num_rbs": 25,
    "enodeb_height_m": 20.0,
    "ship_height_m": 3.0,
    "noise_mode": "thermal",
    "noise_power": None,
    "mimo_streams": 2,
    "symbols_per_slot": 7,
    "subcarriers_per_rb": 12,
    "num_enodebs": 4,
    "demand_bps": 0.0,
}

NOISE_MODES = ("thermal", "unit")


class ConfigError(ValueError):
    """Bad configuration value; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class Position:
    x: float
    y: float
    z: float

    def horizontal_distance(self, other: "Position") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class EnodeB:
    id: int
    pos: Position
    tx_power: float
    cable_loss: float
    num_rbs: int


@dataclass(frozen=True)
class Ship:
    id: int
    pos: Position


@dataclass(frozen=True)
class Scenario:
    enodebs: tuple[EnodeB, ...]
    ships: tuple[Ship, ...]
    carrier_freq: float
    duct_height: float
    noise_power: float
    mimo_streams: int = 2
    symbols_per_slot: int = 7
    subcarriers_per_rb: int = 12
    noise_mode: str = "thermal"
    demand_bps: float = 0.0

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_freq

    @property
    def num_rbs(self) -> int:
        return self.enodebs[0].num_rbs


def thermal_noise_mw(bandwidth_hz: float = RB_BANDWIDTH_HZ) -> float:
    """Thermal noise power over ``bandwidth_hz`` in milliwatts."""
    return 10.0 ** ((THERMAL_NOISE_DBM_HZ + 10.0 * math.log10(bandwidth_hz)) / 10.0)


def _number(cfg: Mapping[str, Any], key: str) -> float:
    value = cfg[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(key, f"expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(key, "must be finite")
    return float(value)


def _positive(cfg, key):
    value = _number(cfg, key)
    if value <= 0:
        raise ConfigError(key, f"must be > 0, got {value!r}")
    return value


def _count(cfg, key, lo=1, hi=None):
    value = cfg[key]
    if isinstance(value, bool) or not isinstance(value, int):
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        else:
            raise ConfigError(key, f"expected an integer, got {value!r}")
    if value < lo or (hi is not None and value > hi):
        bounds = f">= {lo}" if hi is None else f"in [{lo}, {hi}]"
        raise ConfigError(key, f"must be {bounds}, got {value!r}")
    return value


def resolve_config(overrides: Mapping[str, Any] | None = None) -> dict[str, Any]:
    """Merge ``overrides`` over the defaults, warning on unknown keys."""
    cfg = dict(DEFAULTS)
    for key, value in (overrides or {}).items():
        if key not in DEFAULTS:
            logger.warning("ignoring unknown config key %r", key)
            continue
        cfg[key] = value
    return cfg


def lane_positions(num_ships: int) -> list[tuple[float, float]]:
    """(x, y) of each ship; odd ids take the west lane, even ids the east lane."""
    lanes: dict[float, list[int]] = {-LANE_OFFSET_M: [], LANE_OFFSET_M: []}
    for k in range(num_ships):
        lanes[-LANE_OFFSET_M if k % 2 == 0 else LANE_OFFSET_M].append(k)
    xy = [(0.0, 0.0)] * num_ships
    for x, members in lanes.items():
        m = len(members)
        for slot, k in enumerate(members, start=1):
            xy[k] = (x, PORT_SPACING_M * slot / (m + 1))
    return xy


def build_bosphorus(num_ships: int, overrides: Mapping[str, Any] | None = None) -> Scenario:
    """Build the two-port strait scenario with ``num_ships`` ships.

    ``overrides`` uses the config-file keys (see ``DEFAULTS``); ``num_ships``
    given there is ignored in favour of the argument.
    """
    cfg = resolve_config(overrides)
    cfg["num_ships"] = num_ships
    num_ships = _count(cfg, "num_ships")
    freq = _positive(cfg, "carrier_freq_hz")
    duct = _positive(cfg, "duct_height_m")
    tx_power = _number(cfg, "tx_power_dbm")
    cable = _number(cfg, "cable_loss_db")
    if cable < 0:
        raise ConfigError("cable_loss_db", f"must be >= 0, got {cable!r}")
    num_rbs = _count(cfg, "num_rbs")
    h_tx = _positive(cfg, "enodeb_height_m")
    h_rx = _positive(cfg, "ship_height_m")
    mimo = _count(cfg, "mimo_streams")
    symbols = _count(cfg, "symbols_per_slot")
    subcarriers = _count(cfg, "subcarriers_per_rb")
    num_enodebs = _count(cfg, "num_enodebs", 1, len(_ENODEB_XY))
    demand = _number(cfg, "demand_bps")
    if demand < 0:
        raise ConfigError("demand_bps", f"must be >= 0, got {demand!r}")

    mode = cfg["noise_mode"]
    if mode not in NOISE_MODES:
        raise ConfigError("noise_mode", f"must be one of {NOISE_MODES}, got {mode!r}")
    if cfg["noise_power"] is not None:
        noise = _positive(cfg, "noise_power")
    else:
        noise = thermal_noise_mw() if mode == "thermal" else 1.0

    enodebs = tuple(
        EnodeB(i + 1, Position(x, y, h_tx), tx_power, cable, num_rbs)
        for i, (x, y) in enumerate(_ENODEB_XY[:num_enodebs])
    )
    ships = tuple(
        Ship(k + 1, Position(x, y, h_rx)) for k, (x, y) in enumerate(lane_positions(num_ships))
    )
    return Scenario(
        enodebs=enodebs,
        ships=ships,
        carrier_freq=freq,
        duct_height=duct,
        noise_power=noise,
        mimo_streams=mimo,
        symbols_per_slot=symbols,
        subcarriers_per_rb=subcarriers,
        noise_mode=mode,
        demand_bps=demand,
    )


def read_config(path: str | Path) -> dict[str, Any]:
    """Parse a JSON config file into a plain dict (no defaults applied)."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from exc
    if not text.strip():
        return {}
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config", f"{path}: top level must be a JSON object")
    return data


def load_config(path: str | Path) -> Scenario:
    cfg = resolve_config(read_config(path))
    return build_bosphorus(cfg["num_ships"], cfg)
