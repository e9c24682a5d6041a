"""Questionnaire ratings and their normalization into maximized objectives.

Ratings arrive on their native scales (5-point trust/understanding subscale
means, 20-point mental demand, four 7-point safety differentials, two 7-point
acceptance items, one 7-point aesthetics item) and are mapped linearly onto
[-1, 1].  Mental demand is sign-inverted so that every objective is maximized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OBJECTIVE_NAMES = (
    "trust",
    "understanding",
    "mental_demand",
    "perceived_safety",
    "acceptance",
    "aesthetics",
)
N_OBJECTIVES = 6

TRUST_SCALE = (1.0, 5.0)
UNDERSTANDING_SCALE = (1.0, 5.0)
MENTAL_DEMAND_SCALE = (1.0, 20.0)
SAFETY_ITEM_SCALE = (-3.0, 3.0)
ACCEPTANCE_ITEM_SCALE = (1.0, 7.0)
AESTHETICS_SCALE = (1.0, 7.0)


class RatingScaleError(ValueError):
    """A rating lies outside its questionnaire scale."""


def _check(name: str, value: float, lo: float, hi: float) -> float:
    value = float(value)
    if not np.isfinite(value) or not lo <= value <= hi:
        raise RatingScaleError(f"{name}={value} outside scale [{lo}, {hi}]")
    return value


@dataclass(frozen=True)
class RawRatings:
    """One participant's answers for one design, on native scales."""

    trust: float  # subscale mean, 1..5
    understanding: float  # subscale mean, 1..5
    mental_demand: float  # NASA-TLX mental subscale, 1..20 (lower is better)
    perceived_safety: tuple[float, float, float, float]  # differentials, -3..+3
    acceptance_useful: float  # 1..7
    acceptance_satisfying: float  # 1..7
    aesthetics: float  # 1..7

    def __post_init__(self) -> None:
        _check("trust", self.trust, *TRUST_SCALE)
        _check("understanding", self.understanding, *UNDERSTANDING_SCALE)
        _check("mental_demand", self.mental_demand, *MENTAL_DEMAND_SCALE)
        safety = tuple(float(v) for v in self.perceived_safety)
        if len(safety) != 4:
            raise RatingScaleError(
                f"perceived_safety needs 4 differentials, got {len(safety)}"
            )
        for k, v in enumerate(safety):
            _check(f"perceived_safety[{k}]", v, *SAFETY_ITEM_SCALE)
        object.__setattr__(self, "perceived_safety", safety)
        _check("acceptance_useful", self.acceptance_useful, *ACCEPTANCE_ITEM_SCALE)
        _check("acceptance_satisfying", self.acceptance_satisfying, *ACCEPTANCE_ITEM_SCALE)
        _check("aesthetics", self.aesthetics, *AESTHETICS_SCALE)

    def to_dict(self) -> dict:
        return {
            "trust": self.trust,
            "understanding": self.understanding,
            "mental_demand": self.mental_demand,
            "perceived_safety": list(self.perceived_safety),
            "acceptance_useful": self.acceptance_useful,
            "acceptance_satisfying": self.acceptance_satisfying,
            "aesthetics": self.aesthetics,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RawRatings":
        return cls(
            trust=data["trust"],
            understanding=data["understanding"],
            mental_demand=data["mental_demand"],
            perceived_safety=tuple(data["perceived_safety"]),
            acceptance_useful=data["acceptance_useful"],
            acceptance_satisfying=data["acceptance_satisfying"],
            aesthetics=data["aesthetics"],
        )


def _affine(value: float, lo: float, hi: float) -> float:
    """Linear map from [lo, hi] onto [-1, 1]."""
    return 2.0 * (value - lo) / (hi - lo) - 1.0


def normalize(ratings: RawRatings) -> np.ndarray:
    """Six maximized objective values in [-1, 1].

    Order: trust, understanding, mental demand (inverted), perceived safety,
    acceptance, aesthetics.  Safety is the mean of the four differentials
    divided by 3; acceptance is the mean of its two items before mapping.
    """
    safety_mean = float(np.mean(ratings.perceived_safety))
    acceptance_mean = 0.5 * (ratings.acceptance_useful + ratings.acceptance_satisfying)
    return np.array(
        [
            _affine(ratings.trust, *TRUST_SCALE),
            _affine(ratings.understanding, *UNDERSTANDING_SCALE),
            -_affine(ratings.mental_demand, *MENTAL_DEMAND_SCALE),
            safety_mean / SAFETY_ITEM_SCALE[1],
            _affine(acceptance_mean, *ACCEPTANCE_ITEM_SCALE),
            _affine(ratings.aesthetics, *AESTHETICS_SCALE),
        ]
    )


def raw_scalar_values(ratings: RawRatings) -> np.ndarray:
    """Per-objective scalars on native scales (safety/acceptance averaged)."""
    return np.array(
        [
            ratings.trust,
            ratings.understanding,
            ratings.mental_demand,
            float(np.mean(ratings.perceived_safety)),
            0.5 * (ratings.acceptance_useful + ratings.acceptance_satisfying),
            ratings.aesthetics,
        ]
    )


def aggregate(objectives) -> float:
    """Arithmetic mean of the six normalized objectives."""
    objectives = np.asarray(objectives, dtype=float)
    if objectives.shape != (N_OBJECTIVES,):
        raise ValueError(f"expected {N_OBJECTIVES} objectives, got {objectives.shape}")
    return float(objectives.mean())


def is_perfect(ratings: RawRatings) -> bool:
    """True iff every rating sits at its best extreme (lowest mental demand)."""
    return (
        ratings.trust == TRUST_SCALE[1]
        and ratings.understanding == UNDERSTANDING_SCALE[1]
        and ratings.mental_demand == MENTAL_DEMAND_SCALE[0]
        and all(v == SAFETY_ITEM_SCALE[1] for v in ratings.perceived_safety)
        and ratings.acceptance_useful == ACCEPTANCE_ITEM_SCALE[1]
        and ratings.acceptance_satisfying == ACCEPTANCE_ITEM_SCALE[1]
        and ratings.aesthetics == AESTHETICS_SCALE[1]
    )
