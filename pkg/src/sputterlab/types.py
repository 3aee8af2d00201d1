"""Shared domain types: process setpoints and sensor readings.

Canonical units throughout the package:

* magnetron power        W
* chamber argon pressure mTorr
* area mass rate         ng cm^-2 s^-1 (QCM readings, substrate flux)
* source emission rate   ng s^-1
* stored geometry        mm (converted to cm only inside flux evaluation)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import InvalidArgumentError

N_SENSORS = 3


@dataclass(frozen=True, order=True)
class ProcessSetpoint:
    """One magnetron power (W) and the chamber argon pressure (mTorr)."""

    power_w: float
    pressure_mtorr: float

    def __post_init__(self):
        if not (math.isfinite(self.power_w) and math.isfinite(self.pressure_mtorr)):
            raise InvalidArgumentError(f"non-finite setpoint {self}")

    def as_array(self) -> np.ndarray:
        return np.array([self.power_w, self.pressure_mtorr], dtype=float)


@dataclass(frozen=True)
class CoSputterSetpoint:
    """Per-source magnetron powers (W) plus the shared argon pressure.

    The pressure is a single chamber-wide value; powers are keyed by the
    source index in the chamber geometry.
    """

    powers_w: Mapping[int, float]
    pressure_mtorr: float

    def __post_init__(self):
        if not self.powers_w:
            raise InvalidArgumentError("co-sputter setpoint needs at least one source")
        object.__setattr__(self, "powers_w", dict(self.powers_w))
        for idx, power in self.powers_w.items():
            if not math.isfinite(power):
                raise InvalidArgumentError(f"non-finite power for source {idx}")
        if not math.isfinite(self.pressure_mtorr):
            raise InvalidArgumentError("non-finite pressure")

    def single(self, source_index: int) -> ProcessSetpoint:
        """The (power, pressure) pair seen by one source."""
        return ProcessSetpoint(self.powers_w[source_index], self.pressure_mtorr)


@dataclass(frozen=True)
class SensorReading:
    """Mass deposition rates (ng cm^-2 s^-1) at the three QCM positions.

    Raw measurements may dip below zero as noise around a true zero;
    readings fed to the flux fitter are clamped at 0 there, not here.
    """

    rates: np.ndarray

    def __post_init__(self):
        rates = np.asarray(self.rates, dtype=float)
        if rates.shape != (N_SENSORS,):
            raise InvalidArgumentError(
                f"expected {N_SENSORS} sensor rates, got shape {rates.shape}"
            )
        if not np.all(np.isfinite(rates)):
            raise InvalidArgumentError("sensor rates must be finite")
        rates.setflags(write=False)
        object.__setattr__(self, "rates", rates)

    def __getitem__(self, index: int) -> float:
        return float(self.rates[index])

    def __add__(self, other: "SensorReading") -> "SensorReading":
        return SensorReading(self.rates + other.rates)


def setpoints_as_array(setpoints: Iterable[ProcessSetpoint]) -> np.ndarray:
    """Stack setpoints into an (n, 2) array of (power_w, pressure_mtorr)."""
    pts = [(sp.power_w, sp.pressure_mtorr) for sp in setpoints]
    return np.asarray(pts, dtype=float).reshape(-1, 2)
