"""Gaussian-process regression surrogate.

One independent GP per objective: Matern 5/2 kernel with per-dimension
lengthscales, constant mean, and learned observation noise.  Targets are
standardized internally before hyperparameter fitting and de-standardized on
prediction.  Hyperparameters maximize the log marginal likelihood by
multi-start L-BFGS with the analytic gradient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.linalg import cho_solve, cholesky, solve_triangular
from scipy.optimize import minimize
from scipy.special import ndtri

from .sobol import MAX_DIMENSION, SobolSequence

SQRT5 = np.sqrt(5.0)

DEFAULT_NOISE_FLOOR = 1e-4  # standardized units; human ratings are noisy
LENGTHSCALE_BOUNDS = (1e-2, 1e2)
SIGNAL_BOUNDS = (1e-4, 1e2)
NOISE_DELTA_BOUNDS = (1e-8, 10.0)  # learned part of noise above the floor
N_RESTARTS = 8
JITTER_START = 1e-10
JITTER_MAX = 1e-6
DEGENERATE_SIGNAL = 1e-12


class GPFitError(RuntimeError):
    """Kernel matrix could not be factorized even with maximum jitter."""


@dataclass(frozen=True)
class Posterior:
    mean: float
    variance: float


def _matern52(sq_diffs: np.ndarray, lengthscales: np.ndarray) -> np.ndarray:
    """Unit-variance Matern 5/2 from squared coordinate differences (n,m,d)."""
    r2 = np.tensordot(sq_diffs, 1.0 / np.square(lengthscales), axes=([2], [0]))
    r = np.sqrt(np.maximum(r2, 0.0))
    return (1.0 + SQRT5 * r + (5.0 / 3.0) * r2) * np.exp(-SQRT5 * r)


def _sq_diffs(x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
    return np.square(x1[:, None, :] - x2[None, :, :])


def _chol_with_jitter(k: np.ndarray) -> tuple[np.ndarray, float]:
    """Lower Cholesky factor, escalating diagonal jitter on failure."""
    jitter = 0.0
    while True:
        try:
            shifted = k if jitter == 0.0 else k + jitter * np.eye(k.shape[0])
            return cholesky(shifted, lower=True, check_finite=False), jitter
        except np.linalg.LinAlgError:
            jitter = JITTER_START if jitter == 0.0 else jitter * 10.0
            if jitter > JITTER_MAX:
                raise GPFitError(
                    f"kernel matrix not positive definite at jitter {JITTER_MAX}"
                ) from None


def lml_value_grad(
    x: np.ndarray,
    y_centered: np.ndarray,
    signal_variance: float,
    lengthscales: np.ndarray,
    noise_variance: float,
    sq_diffs: np.ndarray | None = None,
) -> tuple[float, np.ndarray]:
    """Log marginal likelihood and gradient w.r.t. log hyperparameters.

    Gradient order: log signal variance, log lengthscale per dimension,
    log noise variance.
    """
    n, d = x.shape
    if sq_diffs is None:
        sq_diffs = _sq_diffs(x, x)
    inv_ls2 = 1.0 / np.square(lengthscales)
    r2 = np.tensordot(sq_diffs, inv_ls2, axes=([2], [0]))
    r = np.sqrt(np.maximum(r2, 0.0))
    decay = np.exp(-SQRT5 * r)
    base = (1.0 + SQRT5 * r + (5.0 / 3.0) * r2) * decay
    k = signal_variance * base + noise_variance * np.eye(n)

    low, jitter = _chol_with_jitter(k)
    alpha = cho_solve((low, True), y_centered, check_finite=False)
    value = (
        -0.5 * float(y_centered @ alpha)
        - float(np.log(np.diag(low)).sum())
        - 0.5 * n * np.log(2.0 * np.pi)
    )

    k_inv = cho_solve((low, True), np.eye(n), check_finite=False)
    w = np.outer(alpha, alpha) - k_inv

    grad = np.empty(d + 2)
    grad[0] = 0.5 * float(np.sum(w * (signal_variance * base)))
    # d(base)/d(log ls_j) = (5/3)(1 + sqrt5 r) exp(-sqrt5 r) * sq_diffs_j / ls_j^2
    ls_common = w * (signal_variance * (5.0 / 3.0) * (1.0 + SQRT5 * r) * decay)
    grad[1 : d + 1] = 0.5 * np.einsum("ij,ijk->k", ls_common, sq_diffs) * inv_ls2
    grad[d + 1] = 0.5 * noise_variance * float(np.trace(w))
    return value, grad


@dataclass(frozen=True)
class GPModel:
    """Fitted surrogate; immutable and safe to share across threads.

    Hyperparameters are stored in original target units (signal and noise
    variances scale with the square of the training-target deviation).
    """

    train_x: np.ndarray
    train_y: np.ndarray
    lengthscales: np.ndarray
    signal_variance: float
    noise_variance: float
    mean_constant: float
    target_scale: float
    degenerate: bool = False
    log_likelihood: float = field(default=np.nan, compare=False)

    def __post_init__(self) -> None:
        if self.train_x.ndim != 2 or len(self.train_x) != len(self.train_y):
            raise ValueError("training inputs/targets shape mismatch")
        if len(self.train_y) < 1:
            raise ValueError("at least one training observation required")
        if np.any(self.lengthscales <= 0) or self.signal_variance <= 0:
            raise ValueError("lengthscales and signal variance must be positive")
        if self.noise_variance < 0:
            raise ValueError("noise variance must be non-negative")

    @cached_property
    def _factorization(self) -> tuple[np.ndarray, np.ndarray]:
        n = len(self.train_x)
        k = self.signal_variance * _matern52(
            _sq_diffs(self.train_x, self.train_x), self.lengthscales
        ) + self.noise_variance * np.eye(n)
        low, _ = _chol_with_jitter(k)
        alpha = cho_solve((low, True), self.train_y - self.mean_constant)
        return low, alpha

    def predict(
        self, x: np.ndarray, sq_diffs: np.ndarray | None = None
    ) -> tuple[np.ndarray, np.ndarray]:
        """Latent posterior mean and variance at each row of x.

        sq_diffs, when given, is the precomputed squared-difference tensor
        against the training inputs (shared across per-objective models).
        """
        x = np.atleast_2d(np.asarray(x, dtype=float))
        if self.degenerate:
            shape = (len(x),)
            return (
                np.full(shape, self.mean_constant),
                np.full(shape, self.signal_variance),
            )
        low, alpha = self._factorization
        if sq_diffs is None:
            sq_diffs = _sq_diffs(x, self.train_x)
        k_star = self.signal_variance * _matern52(sq_diffs, self.lengthscales)
        mean = self.mean_constant + k_star @ alpha
        v = solve_triangular(low, k_star.T, lower=True, check_finite=False)
        var = self.signal_variance - np.einsum("ij,ij->j", v, v)
        return mean, np.maximum(var, 0.0)

    def predictive_cov(self, x: np.ndarray) -> np.ndarray:
        """Full latent posterior covariance over the rows of x."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        if self.degenerate:
            return self.signal_variance * np.eye(len(x))
        low, _ = self._factorization
        k_star = self.signal_variance * _matern52(
            _sq_diffs(x, self.train_x), self.lengthscales
        )
        k_xx = self.signal_variance * _matern52(_sq_diffs(x, x), self.lengthscales)
        v = solve_triangular(low, k_star.T, lower=True)
        return k_xx - v.T @ v


def posterior(model: GPModel, x) -> Posterior:
    mean, var = model.predict(np.asarray(x, dtype=float).reshape(1, -1))
    return Posterior(mean=float(mean[0]), variance=float(var[0]))


def log_marginal_likelihood(model: GPModel) -> tuple[float, np.ndarray]:
    """LML of the stored training set at the stored hyperparameters."""
    return lml_value_grad(
        model.train_x,
        model.train_y - model.mean_constant,
        model.signal_variance,
        model.lengthscales,
        model.noise_variance,
    )


def fit(
    x,
    y,
    seed: int = 0,
    n_restarts: int = N_RESTARTS,
    noise_floor: float = DEFAULT_NOISE_FLOOR,
) -> GPModel:
    """Fit hyperparameters by multi-start gradient ascent on the LML.

    Deterministic for a fixed seed.  Constant targets yield a degenerate
    model (flagged) whose posterior is the constant with near-zero variance.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    y = np.asarray(y, dtype=float)
    if len(x) != len(y) or len(y) < 1:
        raise ValueError("need equally many inputs and targets, at least one")
    if not np.all(np.isfinite(x)) or not np.all(np.isfinite(y)):
        raise ValueError("non-finite training data")
    d = x.shape[1]

    y_mean = float(y.mean())
    y_scale = float(y.std())
    if y_scale < 1e-12 or len(y) == 1:
        return GPModel(
            train_x=x,
            train_y=y,
            lengthscales=np.ones(d),
            signal_variance=DEGENERATE_SIGNAL,
            noise_variance=noise_floor,
            mean_constant=y_mean,
            target_scale=1.0,
            degenerate=True,
        )

    ys = (y - y_mean) / y_scale
    sq_diffs = _sq_diffs(x, x)

    log_bounds = [np.log(SIGNAL_BOUNDS)]
    log_bounds += [np.log(LENGTHSCALE_BOUNDS)] * d
    log_bounds += [np.log(NOISE_DELTA_BOUNDS)]
    log_bounds = np.array(log_bounds)

    def objective(theta: np.ndarray) -> tuple[float, np.ndarray]:
        sv = np.exp(theta[0])
        ls = np.exp(theta[1 : d + 1])
        delta = np.exp(theta[d + 1])
        nv = noise_floor + delta
        try:
            value, grad = lml_value_grad(x, ys, sv, ls, nv, sq_diffs)
        except GPFitError:
            return 1e25, np.zeros_like(theta)
        # chain rule: optimizer parameter is log(noise - floor)
        grad[d + 1] *= delta / nv
        return -value, -grad

    rng = np.random.default_rng(seed)
    theta0 = np.concatenate(([0.0], np.full(d, np.log(0.5)), [np.log(1e-2)]))
    starts = [theta0]
    for _ in range(max(0, n_restarts - 1)):
        starts.append(rng.uniform(log_bounds[:, 0], log_bounds[:, 1]))

    best = None
    for start in starts:
        res = minimize(
            objective,
            start,
            jac=True,
            method="L-BFGS-B",
            bounds=log_bounds,
            options={"maxiter": 60, "ftol": 1e-10, "gtol": 1e-4},
        )
        if best is None or res.fun < best.fun:
            best = res
    if best is None or not np.isfinite(best.fun):
        raise GPFitError("hyperparameter optimization failed from every start")

    theta = best.x
    sv = float(np.exp(theta[0]))
    ls = np.exp(theta[1 : d + 1])
    nv = noise_floor + float(np.exp(theta[d + 1]))
    return GPModel(
        train_x=x,
        train_y=y,
        lengthscales=ls,
        signal_variance=sv * y_scale**2,
        noise_variance=nv * y_scale**2,
        mean_constant=y_mean,
        target_scale=y_scale,
        log_likelihood=-float(best.fun),
    )


def quasi_normal_draws(n: int, dim: int, seed: int) -> np.ndarray:
    """(n, dim) standard-normal draws from a randomly shifted Sobol stream.

    Falls back to plain seeded pseudo-random normals when dim exceeds the
    direction-number table.
    """
    rng = np.random.default_rng(seed)
    if dim > MAX_DIMENSION:
        return rng.standard_normal((n, dim))
    shift = rng.random(dim)
    u = (SobolSequence(dim).points(n) + shift) % 1.0
    eps = 2.0**-30
    return ndtri(np.clip(u, eps, 1.0 - eps))


def sample_posterior(
    models: list[GPModel], x, n: int, seed: int = 0
) -> np.ndarray:
    """Joint latent draws for each objective over the points in x.

    Returns shape (n, len(x), len(models)); reproducible for a fixed seed.
    Objectives are modeled independently; within an objective the draws
    respect the full posterior covariance across points.
    """
    if n < 1:
        raise ValueError("need at least one draw")
    x = np.atleast_2d(np.asarray(x, dtype=float))
    m = len(x)
    n_obj = len(models)
    z = quasi_normal_draws(n, m * n_obj, seed)
    out = np.empty((n, m, n_obj))
    for k, model in enumerate(models):
        mean, _ = model.predict(x)
        cov = model.predictive_cov(x)
        if float(np.max(np.diag(cov), initial=0.0)) <= 1e-12:
            out[:, :, k] = mean
            continue
        low, _ = _chol_with_jitter(cov)
        out[:, :, k] = mean + z[:, k * m : (k + 1) * m] @ low.T
    return out
