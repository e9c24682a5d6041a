"""Locally estimated scatterplot smoothing for optimization traces.

Local quadratic regression with tricube weights over the nearest span
fraction of the data, evaluated at the observed abscissas.  Span 1 means
every point influences every local fit, which reproduces global quadratic
trends exactly while damping run-to-run noise.
"""

from __future__ import annotations

import math

import numpy as np


def loess(xs, ys, span: float = 1.0) -> np.ndarray:
    """Smoothed ys at each x via locally weighted quadratic regression."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise ValueError("xs and ys must be one-dimensional and equally long")
    n = len(x)
    if n < 3:
        raise ValueError("need at least three points to smooth")
    if not 0.0 < span <= 1.0:
        raise ValueError(f"span must be in (0, 1], got {span}")

    window = min(n, max(3, int(math.ceil(span * n))))
    smoothed = np.empty(n)
    for i in range(n):
        dist = np.abs(x - x[i])
        neighbors = np.argpartition(dist, window - 1)[:window]
        d = dist[neighbors]
        dmax = d.max()
        if dmax == 0.0:
            smoothed[i] = float(y[neighbors].mean())
            continue
        w = (1.0 - np.minimum(d / dmax, 1.0) ** 3) ** 3
        dx = (x[neighbors] - x[i]) / dmax
        basis = np.column_stack([np.ones(window), dx, dx * dx])
        sw = np.sqrt(w)
        coef, *_ = np.linalg.lstsq(basis * sw[:, None], y[neighbors] * sw, rcond=None)
        smoothed[i] = float(coef[0])
    return smoothed
