"""Simulated participants for desk-scale verification of the loop.

Each user has a latent per-objective utility: a quadratic bowl around a
preferred design, scaled by a per-objective steepness.  Utilities map onto
the questionnaire scales, optionally with Gaussian rating noise; single-item
answers are rounded to their native resolution and clipped to scale bounds,
mimicking Likert granularity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .design_space import N_DIMENSIONS
from .objectives import (
    ACCEPTANCE_ITEM_SCALE,
    AESTHETICS_SCALE,
    MENTAL_DEMAND_SCALE,
    N_OBJECTIVES,
    SAFETY_ITEM_SCALE,
    TRUST_SCALE,
    UNDERSTANDING_SCALE,
    RawRatings,
)


@dataclass(frozen=True)
class SimulatedUser:
    """Latent-utility rater; emitted ratings always fit their scales."""

    preferred_design: np.ndarray  # (12,) bowl center in the unit cube
    steepness: np.ndarray  # (6,) per-objective curvature, > 0
    dimension_weights: np.ndarray | None = None  # (12,) relative importance
    rating_noise_sd: float = 0.0  # on the unit utility scale
    rng_seed: int = 0

    def __post_init__(self) -> None:
        preferred = np.asarray(self.preferred_design, dtype=float)
        steep = np.asarray(self.steepness, dtype=float)
        if preferred.shape != (N_DIMENSIONS,):
            raise ValueError(f"preferred design must have {N_DIMENSIONS} dims")
        if steep.shape != (N_OBJECTIVES,) or np.any(steep <= 0):
            raise ValueError("need one positive steepness per objective")
        if self.rating_noise_sd < 0:
            raise ValueError("noise sd must be non-negative")
        weights = self.dimension_weights
        if weights is None:
            weights = np.ones(N_DIMENSIONS)
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (N_DIMENSIONS,) or np.any(weights < 0):
            raise ValueError("dimension weights must be non-negative")
        object.__setattr__(self, "preferred_design", preferred)
        object.__setattr__(self, "steepness", steep)
        object.__setattr__(self, "dimension_weights", weights / weights.sum())

    def utilities(self, design) -> np.ndarray:
        """Per-objective utility in [0, 1]; 1 exactly at the preferred design."""
        design = np.asarray(design, dtype=float)
        d2 = float(self.dimension_weights @ np.square(design - self.preferred_design))
        return np.clip(1.0 - self.steepness * d2, 0.0, 1.0)

    def rate(self, design, rng: np.random.Generator | None = None) -> RawRatings:
        """Questionnaire answers for a design, noisy if configured."""
        u = self.utilities(design)
        if self.rating_noise_sd > 0.0:
            if rng is None:
                rng = np.random.default_rng(self.rng_seed)
            u = u + rng.normal(0.0, self.rating_noise_sd, size=u.shape)

        def scaled(value, lo, hi, invert=False, discrete=False):
            raw = hi - value * (hi - lo) if invert else lo + value * (hi - lo)
            if discrete:
                raw = round(raw)
            return float(min(hi, max(lo, raw)))

        safety = tuple(
            scaled(u[3], *SAFETY_ITEM_SCALE, discrete=True) for _ in range(4)
        )
        return RawRatings(
            trust=scaled(u[0], *TRUST_SCALE),
            understanding=scaled(u[1], *UNDERSTANDING_SCALE),
            mental_demand=scaled(u[2], *MENTAL_DEMAND_SCALE, invert=True, discrete=True),
            perceived_safety=safety,
            acceptance_useful=scaled(u[4], *ACCEPTANCE_ITEM_SCALE, discrete=True),
            acceptance_satisfying=scaled(u[4], *ACCEPTANCE_ITEM_SCALE, discrete=True),
            aesthetics=scaled(u[5], *AESTHETICS_SCALE, discrete=True),
        )


def concave_user(seed: int, rating_noise_sd: float = 0.0) -> SimulatedUser:
    """A randomized bowl-shaped user drawn from a fixed family.

    Steep bowls keep the discretized single items informative across the
    design cube; shallow ones collapse most of the cube onto a few Likert
    levels and starve the surrogates of signal.
    """
    rng = np.random.default_rng(seed)
    return SimulatedUser(
        preferred_design=rng.uniform(0.15, 0.85, N_DIMENSIONS),
        steepness=rng.uniform(3.0, 6.0, N_OBJECTIVES),
        dimension_weights=rng.uniform(0.5, 1.5, N_DIMENSIONS),
        rating_noise_sd=rating_noise_sd,
        rng_seed=seed,
    )
