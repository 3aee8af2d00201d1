"""Chamber geometry: source and sensor poses, the substrate, and angle math.

Coordinate convention: the substrate center sits at the origin with its
normal along +z; sources sit above the substrate plane on a ring, each
emission axis aimed at the substrate center. All stored positions are mm.
Geometry documents load from JSON with unit-suffixed field names
(``position_mm``, ``radius_mm``); see ``load_geometry`` for the schema.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError, InvalidConfigError

UNIT_NORM_TOL = 1e-9


def _as_vec3(value, name: str) -> np.ndarray:
    vec = np.asarray(value, dtype=float)
    if vec.shape != (3,):
        raise InvalidArgumentError(f"{name} must be a 3-vector, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise InvalidArgumentError(f"{name} must be finite")
    vec.setflags(write=False)
    return vec


def _check_unit(vec: np.ndarray, name: str) -> np.ndarray:
    vec = _as_vec3(vec, name)
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > UNIT_NORM_TOL:
        raise InvalidArgumentError(f"{name} must have unit norm, |v| = {norm!r}")
    return vec


@dataclass(frozen=True, eq=False)
class SourcePose:
    """Magnetron target center (mm) and unit emission axis."""

    position_mm: np.ndarray
    axis: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "position_mm", _as_vec3(self.position_mm, "source position"))
        object.__setattr__(self, "axis", _check_unit(self.axis, "source axis"))


@dataclass(frozen=True, eq=False)
class SensorPose:
    """QCM crystal center (mm) and unit surface normal."""

    position_mm: np.ndarray
    normal: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "position_mm", _as_vec3(self.position_mm, "sensor position"))
        object.__setattr__(self, "normal", _check_unit(self.normal, "sensor normal"))


@dataclass(frozen=True, eq=False)
class SubstratePlane:
    """Wafer center (mm), unit normal, and radius (mm)."""

    center_mm: np.ndarray
    normal: np.ndarray
    radius_mm: float

    def __post_init__(self):
        object.__setattr__(self, "center_mm", _as_vec3(self.center_mm, "substrate center"))
        object.__setattr__(self, "normal", _check_unit(self.normal, "substrate normal"))
        if not (self.radius_mm > 0):
            raise InvalidArgumentError("substrate radius must be > 0")


@dataclass(frozen=True, eq=False)
class ChamberGeometry:
    """Everything position-dependent: sources, the 3 QCMs, the substrate."""

    sources: tuple
    qcm_sensors: tuple
    substrate: SubstratePlane
    target_substrate_distance_mm: float

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(self.sources))
        object.__setattr__(self, "qcm_sensors", tuple(self.qcm_sensors))
        if len(self.qcm_sensors) != 3:
            raise InvalidArgumentError(
                f"chamber carries exactly 3 QCM sensors, got {len(self.qcm_sensors)}"
            )
        if not self.sources:
            raise InvalidArgumentError("at least one source required")
        if not (self.target_substrate_distance_mm > 0):
            raise InvalidArgumentError("target-substrate distance must be > 0")


def geometry_angles(source: SourcePose, point, surface_normal) -> tuple:
    """Emission/incidence angles and distance from a source to a point.

    Returns ``(theta, phi, r_mm)`` where ``phi`` is the angle between the
    source emission axis and the ray source->point, ``theta`` is the angle
    between the receiving-surface normal and the ray point->source, both in
    [0, pi], and ``r_mm`` is the separation.
    """
    point = _as_vec3(point, "point")
    normal = _check_unit(surface_normal, "surface normal")
    sep = point - source.position_mm
    r = float(np.linalg.norm(sep))
    if r == 0.0:
        raise InvalidArgumentError("evaluation point coincides with the source")
    direction = sep / r
    cos_phi = float(np.clip(np.dot(source.axis, direction), -1.0, 1.0))
    cos_theta = float(np.clip(np.dot(normal, -direction), -1.0, 1.0))
    return math.acos(cos_theta), math.acos(cos_phi), r


def default_geometry(
    n_sources: int = 6,
    ring_radius_mm: float = 120.0,
    target_substrate_distance_mm: float = 155.0,
    sensor_ring_radius_mm: float = 70.0,
    sensor_standoff_mm: float = 30.0,
    substrate_radius_mm: float = 25.0,
) -> ChamberGeometry:
    """The stock chamber: sources on a ring aimed at the substrate center.

    Source ring height follows from the 155 mm target-substrate distance and
    the ring radius. The three QCMs sit at 120 degree intervals around the
    substrate, raised ``sensor_standoff_mm`` above its plane, facing up (+z).
    Ring radius and sensor standoff are adjustable; the defaults are this
    package's documented stand-ins where the chamber drawing gives no number.
    """
    if ring_radius_mm >= target_substrate_distance_mm:
        raise InvalidArgumentError("source ring radius must be < target-substrate distance")
    height = math.sqrt(target_substrate_distance_mm**2 - ring_radius_mm**2)
    sources = []
    for k in range(n_sources):
        az = 2.0 * math.pi * k / n_sources
        pos = np.array(
            [ring_radius_mm * math.cos(az), ring_radius_mm * math.sin(az), height]
        )
        axis = -pos / np.linalg.norm(pos)  # aimed at the substrate center
        sources.append(SourcePose(pos, axis))
    sensors = []
    for k in range(3):
        az = 2.0 * math.pi * k / 3
        pos = np.array(
            [
                sensor_ring_radius_mm * math.cos(az),
                sensor_ring_radius_mm * math.sin(az),
                sensor_standoff_mm,
            ]
        )
        sensors.append(SensorPose(pos, np.array([0.0, 0.0, 1.0])))
    substrate = SubstratePlane(
        center_mm=np.zeros(3), normal=np.array([0.0, 0.0, 1.0]), radius_mm=substrate_radius_mm
    )
    return ChamberGeometry(
        sources=tuple(sources),
        qcm_sensors=tuple(sensors),
        substrate=substrate,
        target_substrate_distance_mm=target_substrate_distance_mm,
    )


# --- JSON persistence -------------------------------------------------------
#
# Schema (all positions/axes are 3-element arrays, units in the field names):
# {
#   "schema_version": 1,
#   "target_substrate_distance_mm": 155.0,
#   "sources":     [{"position_mm": [...], "axis": [...]}, ...],
#   "qcm_sensors": [{"position_mm": [...], "normal": [...]}, ...],   # exactly 3
#   "substrate":   {"center_mm": [...], "normal": [...], "radius_mm": 25.0}
# }

GEOMETRY_SCHEMA_VERSION = 1


def geometry_to_dict(geom: ChamberGeometry) -> dict:
    return {
        "schema_version": GEOMETRY_SCHEMA_VERSION,
        "target_substrate_distance_mm": geom.target_substrate_distance_mm,
        "sources": [
            {"position_mm": list(s.position_mm), "axis": list(s.axis)} for s in geom.sources
        ],
        "qcm_sensors": [
            {"position_mm": list(s.position_mm), "normal": list(s.normal)}
            for s in geom.qcm_sensors
        ],
        "substrate": {
            "center_mm": list(geom.substrate.center_mm),
            "normal": list(geom.substrate.normal),
            "radius_mm": geom.substrate.radius_mm,
        },
    }


def geometry_from_dict(doc: dict) -> ChamberGeometry:
    try:
        version = doc["schema_version"]
        if version != GEOMETRY_SCHEMA_VERSION:
            raise InvalidConfigError(f"unsupported geometry schema_version {version}")
        sources = tuple(
            SourcePose(np.asarray(s["position_mm"], dtype=float), np.asarray(s["axis"], dtype=float))
            for s in doc["sources"]
        )
        sensors = tuple(
            SensorPose(np.asarray(s["position_mm"], dtype=float), np.asarray(s["normal"], dtype=float))
            for s in doc["qcm_sensors"]
        )
        sub = doc["substrate"]
        substrate = SubstratePlane(
            np.asarray(sub["center_mm"], dtype=float),
            np.asarray(sub["normal"], dtype=float),
            float(sub["radius_mm"]),
        )
        return ChamberGeometry(
            sources=sources,
            qcm_sensors=sensors,
            substrate=substrate,
            target_substrate_distance_mm=float(doc["target_substrate_distance_mm"]),
        )
    except KeyError as exc:
        raise InvalidConfigError(f"geometry document missing field {exc}") from exc


def load_geometry(path) -> ChamberGeometry:
    with open(Path(path), encoding="utf-8") as fh:
        return geometry_from_dict(json.load(fh))


def save_geometry(geom: ChamberGeometry, path) -> None:
    with open(Path(path), "w", encoding="utf-8") as fh:
        json.dump(geometry_to_dict(geom), fh, indent=2)
        fh.write("\n")
