"""QCM mass-rate conversion and the cos^n deposition plume.

A sputter source emits a directed plume; the deposition rate at a point a
distance r (cm) away, seen under emission angle phi and incidence angle
theta, is

    rate = a * (n + 1) * cos(theta) * cos(phi)**n / (2 * pi * r**2)

with ``a`` the total emission rate (ng/s) and ``n`` the plume's cosine
order (larger n = narrower plume). Back-facing configurations (cos(theta)
or cos(phi) negative) receive zero flux; the model is only physical in the
forward hemisphere.

``fit_flux`` inverts this: given the three QCM readings at one setpoint it
recovers (a, n). The rate is linear in ``a``, so for each trial ``n`` the
best emission rate has a closed form and the fit reduces to a 1-D search
over ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFitError, InvalidArgumentError
from .geometry import ChamberGeometry, SourcePose, geometry_angles
from .types import SensorReading

MM_PER_CM = 10.0
NG_PER_G = 1e9

#: Golden-section interior ratio.
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class QuartzCrystal:
    """AT-cut quartz constants for the Sauerbrey conversion.

    rho_g_cm3 : quartz density, g/cm^3
    shear_modulus_g_cm_s2 : shear modulus, g cm^-1 s^-2
    f0_hz : unloaded resonant frequency, Hz
    """

    rho_g_cm3: float = 2.648
    shear_modulus_g_cm_s2: float = 2.947e11
    f0_hz: float = 6.0e6

    def __post_init__(self):
        for name in ("rho_g_cm3", "shear_modulus_g_cm_s2", "f0_hz"):
            if not (getattr(self, name) > 0):
                raise InvalidArgumentError(f"{name} must be strictly positive")


AT_CUT_6MHZ = QuartzCrystal()


def sauerbrey_rate(freq_slope_hz_s: float, crystal: QuartzCrystal = AT_CUT_6MHZ) -> float:
    """Mass deposition rate (ng cm^-2 s^-1) from a frequency slope (Hz/s).

    Material loading lowers the resonant frequency, so a negative slope
    means a positive mass rate.
    """
    if not math.isfinite(freq_slope_hz_s):
        raise InvalidArgumentError("frequency slope must be finite")
    sensitivity = math.sqrt(crystal.shear_modulus_g_cm_s2 * crystal.rho_g_cm3) / (
        2.0 * crystal.f0_hz**2
    )  # g/cm^2 per Hz
    return -sensitivity * freq_slope_hz_s * NG_PER_G


@dataclass(frozen=True)
class FluxFit:
    """One source's plume at one setpoint: emission rate (ng/s) and cosine order."""

    emission_rate_ng_s: float
    cosine_order: float

    def __post_init__(self):
        if not (self.emission_rate_ng_s >= 0):
            raise InvalidArgumentError("emission rate must be >= 0")
        if not (self.cosine_order >= 0):
            raise InvalidArgumentError("cosine order must be >= 0")


@dataclass(frozen=True)
class FluxFitResult:
    """Fit plus diagnostics from ``fit_flux``.

    residual_rms : RMS misfit across the three sensors, ng cm^-2 s^-1.
    boundary_warning : the optimal order sat on the search boundary, i.e.
        no interior order beat the flat (n = 0) or the maximal plume.
    """

    fit: FluxFit
    residual_rms: float
    boundary_warning: bool


def flux_at(fit: FluxFit, source: SourcePose, point, surface_normal) -> float:
    """Deposition rate (ng cm^-2 s^-1) of a fitted plume at a point."""
    theta, phi, r_mm = geometry_angles(source, point, surface_normal)
    return _plume_rate(
        fit.emission_rate_ng_s, fit.cosine_order, math.cos(theta), math.cos(phi), r_mm / MM_PER_CM
    )


def _plume_rate(a: float, n: float, cos_theta: float, cos_phi: float, r_cm: float) -> float:
    if cos_theta < 0.0 or cos_phi < 0.0:
        return 0.0
    return a * (n + 1.0) * cos_theta * cos_phi**n / (2.0 * math.pi * r_cm**2)


def sensor_geometry_factors(
    geometry: ChamberGeometry, source_index: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-sensor (cos_theta, cos_phi, r_cm) for one source, precomputed."""
    source = geometry.sources[source_index]
    cos_t, cos_p, r_cm = [], [], []
    for sensor in geometry.qcm_sensors:
        theta, phi, r_mm = geometry_angles(source, sensor.position_mm, sensor.normal)
        cos_t.append(math.cos(theta))
        cos_p.append(math.cos(phi))
        r_cm.append(r_mm / MM_PER_CM)
    return np.array(cos_t), np.array(cos_p), np.array(r_cm)


def unit_plume_rates(
    n: float, cos_theta: np.ndarray, cos_phi: np.ndarray, r_cm: np.ndarray
) -> np.ndarray:
    """Rates of a unit-emission (a = 1) order-n plume at precomputed poses."""
    rates = (n + 1.0) * cos_theta * np.clip(cos_phi, 0.0, None) ** n / (2.0 * np.pi * r_cm**2)
    rates[(cos_theta < 0.0) | (cos_phi < 0.0)] = 0.0
    return rates


def fit_flux(
    readings: SensorReading,
    geometry: ChamberGeometry,
    source_index: int,
    max_order: float = 12.0,
    coarse_steps: int = 121,
    order_tol: float = 1e-6,
) -> FluxFitResult:
    """Fit (a, n) to the three sensor readings by least squares.

    Negative readings are clamped at 0 before fitting (GP-extrapolated
    readings can dip below zero). For each candidate order the optimal
    emission rate is the closed-form regression through the origin,
    a*(n) = sum(g_i y_i) / sum(g_i^2) with g_i the unit-plume rate at
    sensor i; the order is found by a coarse scan over [0, max_order]
    followed by golden-section refinement of every local basin.
    """
    y = np.clip(readings.rates, 0.0, None)
    if not np.any(y > 0.0):
        raise DegenerateFitError("all sensor readings <= 0, nothing to fit")
    cos_t, cos_p, r_cm = sensor_geometry_factors(geometry, source_index)

    def residual_sq(n: float) -> tuple[float, float]:
        g = unit_plume_rates(n, cos_t, cos_p, r_cm)
        denom = float(g @ g)
        a = max(float(g @ y) / denom, 0.0) if denom > 0.0 else 0.0
        diff = y - a * g
        return float(diff @ diff), a

    grid = np.linspace(0.0, max_order, coarse_steps)
    losses = np.array([residual_sq(n)[0] for n in grid])

    # refine every coarse local minimum; the profile is smooth so each
    # bracket contains exactly one stationary point
    best_n, best_loss = 0.0, math.inf
    for i in np.where(
        (losses <= np.roll(losses, 1)) & (losses <= np.roll(losses, -1))
    )[0]:
        if 0 < i < coarse_steps - 1 or losses[i] == losses.min():
            lo = grid[max(i - 1, 0)]
            hi = grid[min(i + 1, coarse_steps - 1)]
            n_ref, loss_ref = _golden_section(lambda n: residual_sq(n)[0], lo, hi, order_tol)
            if loss_ref < best_loss:
                best_n, best_loss = n_ref, loss_ref

    loss, a = residual_sq(best_n)
    boundary = best_n <= order_tol * 10 or best_n >= max_order - order_tol * 10
    return FluxFitResult(
        fit=FluxFit(emission_rate_ng_s=a, cosine_order=best_n),
        residual_rms=math.sqrt(loss / y.size),
        boundary_warning=bool(boundary),
    )


def _golden_section(fn, lo: float, hi: float, tol: float) -> tuple[float, float]:
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
    x = 0.5 * (a + b)
    return x, fn(x)
