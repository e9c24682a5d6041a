"""Pareto-front extraction and exact hypervolume (maximization convention).

Dominance is the strict product order: a dominates b when a >= b in every
component and a != b.  Identical objective vectors never dominate each other,
so duplicates survive filtering together.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Inclusion-exclusion enumerates all subsets; beyond this front size the
# equivalent objective-slicing recursion evaluates the same union measure.
_IE_MAX_POINTS = 12


class ReferencePointError(ValueError):
    """Reference point is not dominated by every front point."""


def dominates(a, b) -> bool:
    """True iff a is at least as good everywhere and strictly better somewhere."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return bool(np.all(a >= b) and np.any(a > b))


def non_dominated_mask(objectives) -> np.ndarray:
    """Boolean mask of the non-dominated rows of an (n, m) array.

    Visits points in decreasing objective-sum order so that likely
    dominators prune the field early; survivors are compared against
    everything still alive.
    """
    y = np.asarray(objectives, dtype=float)
    if y.ndim != 2 or len(y) == 0:
        raise ValueError("need a non-empty (n, m) array of objectives")
    n = len(y)
    alive = np.ones(n, dtype=bool)
    for i in np.argsort(-y.sum(axis=1), kind="stable"):
        if not alive[i]:
            continue
        beaten = alive & np.all(y <= y[i], axis=1) & np.any(y < y[i], axis=1)
        alive[beaten] = False
    return alive


@dataclass
class ParetoFront:
    """Non-dominated (design, objectives) pairs for one participant."""

    entries: list[tuple[np.ndarray, np.ndarray]]
    owner: str | None = None
    source_indices: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def objectives(self) -> np.ndarray:
        return np.array([obj for _, obj in self.entries])

    @property
    def designs(self) -> np.ndarray:
        return np.array([design for design, _ in self.entries])


def pareto_front(points, owner: str | None = None) -> ParetoFront:
    """Filter (design, objectives) pairs down to the non-dominated subset.

    Input order is preserved and ties (identical objective vectors) are all
    retained.
    """
    points = list(points)
    if not points:
        raise ValueError("cannot take the Pareto front of no points")
    objectives = np.array([np.asarray(obj, dtype=float) for _, obj in points])
    mask = non_dominated_mask(objectives)
    kept = [i for i in range(len(points)) if mask[i]]
    entries = [
        (np.asarray(points[i][0], dtype=float), objectives[i]) for i in kept
    ]
    return ParetoFront(entries=entries, owner=owner, source_indices=kept)


def _reduce_front(y: np.ndarray) -> np.ndarray:
    """Unique maximal points; dominated and duplicate rows add no volume."""
    y = np.unique(y, axis=0)
    if len(y) > 1:
        y = y[non_dominated_mask(y)]
    return y


def _hv_inclusion_exclusion(widths: np.ndarray) -> float:
    """Union volume of boxes [0, widths_i] by signed subset enumeration."""
    n, m = widths.shape
    total = 0.0
    masks = np.arange(1, 2**n, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n)) & 1).astype(bool)
    mins = np.where(bits[:, :, None], widths[None, :, :], np.inf).min(axis=1)
    signs = np.where(bits.sum(axis=1) % 2 == 1, 1.0, -1.0)
    total = float(np.sum(signs * mins.prod(axis=1)))
    return total


def _hv_slicing(widths: np.ndarray) -> float:
    """Union volume by recursive sweeps along the last objective."""
    m = widths.shape[1]
    if m == 1:
        return float(widths[:, 0].max())
    if len(widths) == 1:
        return float(np.prod(widths[0]))
    order = np.argsort(-widths[:, -1], kind="stable")
    w = widths[order]
    levels = w[:, -1]
    total = 0.0
    for k in range(len(w)):
        depth = levels[k] - (levels[k + 1] if k + 1 < len(w) else 0.0)
        if depth > 0.0:
            active = w[: k + 1, :-1]
            active = np.unique(active, axis=0)
            if len(active) > 1:
                active = active[non_dominated_mask(active)]
            total += depth * _hv_slicing(active)
    return total


def hypervolume(front, ref) -> float:
    """Lebesgue measure of the region dominated by the front above ref."""
    y = np.atleast_2d(np.asarray(front, dtype=float))
    ref = np.asarray(ref, dtype=float)
    if y.shape[1] != len(ref):
        raise ValueError(f"front dimension {y.shape[1]} != reference {len(ref)}")
    for row in y:
        if not dominates(row, ref):
            raise ReferencePointError(
                f"front point {row.tolist()} does not dominate reference {ref.tolist()}"
            )
    y = _reduce_front(y)
    widths = y - ref
    if len(widths) <= _IE_MAX_POINTS:
        return _hv_inclusion_exclusion(widths)
    return _hv_slicing(widths)
