"""The 12-dimensional air-taxi UI design space.

Nine continuous parameters (trajectory lengths, transparencies, chevron
geometry) and three binary visibility toggles, all optimized on the unit
interval.  Binary dimensions stay continuous inside the optimizer; the
0.5 visibility threshold is applied only when converting to physical
units for rendering and reporting.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields

import numpy as np

N_DIMENSIONS = 12
BINARY_THRESHOLD = 0.5


class DesignSpaceError(ValueError):
    """A design vector violates the unit-cube contract."""


@dataclass(frozen=True)
class ParameterSpec:
    """One optimizable UI parameter and its physical scaling."""

    name: str
    kind: str  # "continuous" | "binary"
    physical_min: float
    physical_max: float
    unit: str  # "meters" | "alpha-fraction" | "boolean"

    def __post_init__(self) -> None:
        if self.kind not in ("continuous", "binary"):
            raise ValueError(f"unknown parameter kind {self.kind!r}")
        if self.kind == "continuous" and not self.physical_min < self.physical_max:
            raise ValueError(f"{self.name}: physical_min must be < physical_max")


_CATALOG: tuple[ParameterSpec, ...] = (
    ParameterSpec("ego_trajectory_length", "continuous", 0.0, 1000.0, "meters"),
    ParameterSpec("ego_trajectory_alpha", "continuous", 0.0, 1.0, "alpha-fraction"),
    ParameterSpec("ego_chevron_size", "continuous", 0.0, 12.5, "meters"),
    ParameterSpec("ego_chevron_distance", "continuous", 0.0, 42.0, "meters"),
    ParameterSpec("ego_path_length_in_map", "continuous", 0.0, 260.0, "meters"),
    ParameterSpec("other_trajectory_length", "continuous", 0.0, 205.0, "meters"),
    ParameterSpec("other_trajectory_alpha", "continuous", 0.0, 1.0, "alpha-fraction"),
    ParameterSpec("other_chevron_size", "continuous", 0.0, 12.5, "meters"),
    ParameterSpec("other_chevron_distance", "continuous", 0.0, 42.0, "meters"),
    ParameterSpec("map_at_display", "binary", 0.0, 1.0, "boolean"),
    ParameterSpec("boundary_box", "binary", 0.0, 1.0, "boolean"),
    ParameterSpec("additional_info_at_display", "binary", 0.0, 1.0, "boolean"),
)


@dataclass(frozen=True)
class PhysicalDesign:
    """A design vector rendered into physical units, booleans resolved."""

    ego_trajectory_length: float
    ego_trajectory_alpha: float
    ego_chevron_size: float
    ego_chevron_distance: float
    ego_path_length_in_map: float
    other_trajectory_length: float
    other_trajectory_alpha: float
    other_chevron_size: float
    other_chevron_distance: float
    map_at_display: bool
    boundary_box: bool
    additional_info_at_display: bool

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: dict) -> "PhysicalDesign":
        return cls(**{f.name: data[f.name] for f in fields(cls)})


def parameter_catalog() -> tuple[ParameterSpec, ...]:
    """The 12 parameter specs in their fixed optimization order."""
    return _CATALOG


def parameter_names() -> tuple[str, ...]:
    return tuple(spec.name for spec in _CATALOG)


def catalog_json() -> str:
    """Catalog as a JSON document for UI clients (name, kind, range, unit)."""
    rows = [
        {
            "index": i,
            "name": spec.name,
            "kind": spec.kind,
            "physical_min": spec.physical_min,
            "physical_max": spec.physical_max,
            "unit": spec.unit,
        }
        for i, spec in enumerate(_CATALOG)
    ]
    return json.dumps(rows, indent=2)


def validate(design) -> list[str]:
    """Diagnostic check of a design vector; returns one message per violation."""
    design = np.asarray(design, dtype=float)
    violations: list[str] = []
    if design.shape != (N_DIMENSIONS,):
        violations.append(f"expected {N_DIMENSIONS} dimensions, got shape {design.shape}")
        return violations
    for i, v in enumerate(design):
        if not np.isfinite(v):
            violations.append(f"dimension {i} ({_CATALOG[i].name}) is not finite: {v}")
        elif not 0.0 <= v <= 1.0:
            violations.append(f"dimension {i} ({_CATALOG[i].name}) outside [0, 1]: {v}")
    return violations


def require_valid(design) -> np.ndarray:
    """Validate and return the design as a float array, or raise."""
    problems = validate(design)
    if problems:
        raise DesignSpaceError("; ".join(problems))
    return np.asarray(design, dtype=float)


def to_physical(design) -> PhysicalDesign:
    """Map a unit-cube design to physical units.

    Continuous dimensions scale linearly; binary dimensions render visible
    at values >= 0.5 (values below the threshold mean the element is hidden).
    """
    design = require_valid(design)
    values = {}
    for spec, v in zip(_CATALOG, design):
        if spec.kind == "binary":
            values[spec.name] = bool(v >= BINARY_THRESHOLD)
        else:
            values[spec.name] = spec.physical_min + float(v) * (
                spec.physical_max - spec.physical_min
            )
    return PhysicalDesign(**values)


def from_physical(physical: PhysicalDesign) -> np.ndarray:
    """Invert the linear map for continuous dims; booleans map to 0 or 1."""
    out = np.empty(N_DIMENSIONS)
    for i, spec in enumerate(_CATALOG):
        raw = getattr(physical, spec.name)
        if spec.kind == "binary":
            out[i] = 1.0 if raw else 0.0
        else:
            out[i] = (raw - spec.physical_min) / (spec.physical_max - spec.physical_min)
    return out
