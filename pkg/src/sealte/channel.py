"""Sea-channel path loss (2-Ray, modified 2-Ray, 3-Ray), link gains and SINR.

All path-loss functions take scalars or numpy arrays and return dB.  Exact
multipath nulls would give infinite loss, so losses are clipped to
``NULL_CAP_DB``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scenario import EnodeB, Scenario, Ship

NULL_CAP_DB = 200.0
TWO_RAY_PEAK_GAIN_DB = 20.0 * np.log10(2.0)

MODELS = ("2ray", "2raymod", "3ray")


class DomainError(ValueError):
    pass


def _check_positive(**kwargs):
    for name, value in kwargs.items():
        arr = np.asarray(value, dtype=float)
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
            raise DomainError(f"{name} must be finite and > 0, got {value!r}")


def _to_db(power_ratio, cap_db):
    """-10 log10 of a power ratio, with zero ratios and large losses clipped to the cap."""
    ratio = np.asarray(power_ratio, dtype=float)
    with np.errstate(divide="ignore"):
        loss = -10.0 * np.log10(ratio)
    loss = np.minimum(loss, cap_db)
    return float(loss) if loss.ndim == 0 else loss


def fspl(d, wavelength):
    """Free-space loss ``-20 log10(lambda / (4 pi d))`` in dB."""
    _check_positive(d=d, wavelength=wavelength)
    return -20.0 * np.log10(wavelength / (4.0 * np.pi * np.asarray(d, dtype=float)))


def pathloss_2ray(d, h_tx, h_rx, system_loss=1.0):
    _check_positive(d=d, h_tx=h_tx, h_rx=h_rx, system_loss=system_loss)
    d = np.asarray(d, dtype=float)
    loss = -10.0 * np.log10((h_tx * h_rx) ** 2 / (d**4 * system_loss))
    return float(loss) if loss.ndim == 0 else loss


def pathloss_2ray_mod(d, h_tx, h_rx, wavelength, cap_db=NULL_CAP_DB):
    _check_positive(d=d, h_tx=h_tx, h_rx=h_rx, wavelength=wavelength)
    d = np.asarray(d, dtype=float)
    spread = (wavelength / (4.0 * np.pi * d)) ** 2
    interference = (2.0 * np.sin(2.0 * np.pi * h_tx * h_rx / (wavelength * d))) ** 2
    return _to_db(spread * interference, cap_db)


def duct_delta(d, h_tx, h_rx, duct_height, wavelength):
    """Interference term of the 3-Ray model; lies in [-2, 2]."""
    d = np.asarray(d, dtype=float)
    ground = np.sin(2.0 * np.pi * h_tx * h_rx / (wavelength * d))
    duct = np.sin(2.0 * np.pi * (h_tx - duct_height) * (duct_height - h_rx) / (wavelength * d))
    return 2.0 * ground * duct


def pathloss_3ray(d, h_tx, h_rx, duct_height, wavelength, cap_db=NULL_CAP_DB):
    _check_positive(d=d, h_tx=h_tx, h_rx=h_rx, duct_height=duct_height, wavelength=wavelength)
    d = np.asarray(d, dtype=float)
    spread = (wavelength / (4.0 * np.pi * d)) ** 2
    delta = duct_delta(d, h_tx, h_rx, duct_height, wavelength)
    return _to_db(spread * (2.0 * (1.0 + delta)) ** 2, cap_db)


@dataclass(frozen=True)
class PathLossModel:
    """Selects one of the three loss models; ``system_loss`` only affects 2-Ray."""

    kind: str = "3ray"
    system_loss: float = 1.0

    def __post_init__(self):
        if self.kind not in MODELS:
            raise ValueError(f"unknown path-loss model {self.kind!r}; expected one of {MODELS}")
        if not self.system_loss > 0:
            raise DomainError(f"system_loss must be > 0, got {self.system_loss!r}")

    def loss(self, d, h_tx, h_rx, scenario: Scenario):
        if self.kind == "2ray":
            return pathloss_2ray(d, h_tx, h_rx, self.system_loss)
        if self.kind == "2raymod":
            return pathloss_2ray_mod(d, h_tx, h_rx, scenario.wavelength)
        return pathloss_3ray(d, h_tx, h_rx, scenario.duct_height, scenario.wavelength)


def channel_gain(enodeb: EnodeB, ship: Ship, model: PathLossModel, scenario: Scenario) -> float:
    """Linear gain of one link, path loss plus the eNodeB's cable loss."""
    d = enodeb.pos.horizontal_distance(ship.pos)
    loss = model.loss(d, enodeb.pos.z, ship.pos.z, scenario)
    return 10.0 ** (-(loss + enodeb.cable_loss) / 10.0)


def gain_matrix(scenario: Scenario, model: PathLossModel) -> np.ndarray:
    return np.array(
        [[channel_gain(b, s, model, scenario) for s in scenario.ships] for b in scenario.enodebs]
    )


@dataclass(frozen=True)
class SinrMatrix:
    values: np.ndarray  # (I, J), linear

    @property
    def db(self) -> np.ndarray:
        return 10.0 * np.log10(self.values)

    @property
    def shape(self):
        return self.values.shape


def sinr_matrix(scenario: Scenario, model: PathLossModel) -> SinrMatrix:
    """Downlink SINR of every eNodeB->ship link with full-power interference from the rest."""
    power_mw = np.array([10.0 ** (b.tx_power / 10.0) for b in scenario.enodebs])
    received = power_mw[:, None] * gain_matrix(scenario, model)
    interference = received.sum(axis=0, keepdims=True) - received
    return SinrMatrix(received / (interference + scenario.noise_power))


def pathloss_curves(d, scenario: Scenario, system_loss: float = 1.0) -> dict[str, np.ndarray]:
    """All three loss curves over distance grid ``d`` using the scenario's heights."""
    h_tx = scenario.enodebs[0].pos.z
    h_rx = scenario.ships[0].pos.z
    d = np.asarray(d, dtype=float)
    return {
        "L_2ray_db": np.asarray(pathloss_2ray(d, h_tx, h_rx, system_loss)),
        "L_2raymod_db": np.asarray(pathloss_2ray_mod(d, h_tx, h_rx, scenario.wavelength)),
        "L_3ray_db": np.asarray(
            pathloss_3ray(d, h_tx, h_rx, scenario.duct_height, scenario.wavelength)
        ),
    }


def count_local_extrema(values) -> int:
    """Interior turning points of a sampled curve (sign changes of the first difference)."""
    step = np.sign(np.diff(np.asarray(values, dtype=float)))
    step = step[step != 0]
    return int(np.count_nonzero(step[1:] != step[:-1]))
