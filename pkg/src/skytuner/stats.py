"""Bayesian two-sample comparison and descriptive statistics.

The group comparison uses the default-prior (JZS) independent-samples Bayes
factor: a Cauchy prior with scale sqrt(2)/2 on the standardized effect size,
integrated by adaptive quadrature.  BF10 > 1 favors a group difference,
BF10 < 1 favors equality.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy import stats as sps

JZS_CAUCHY_SCALE = np.sqrt(2.0) / 2.0


class StatisticsError(ValueError):
    """Inputs cannot support the requested statistic."""


class Evidence(enum.Enum):
    """Evidence ladder for BF10 (equality side below 1, difference above)."""

    EXTREME_EQUALITY = "extreme equality"
    STRONG_EQUALITY = "strong equality"
    MODERATE_EQUALITY = "moderate equality"
    ANECDOTAL = "anecdotal"
    MODERATE_DIFFERENCE = "moderate difference"
    STRONG_DIFFERENCE = "strong difference"
    EXTREME_DIFFERENCE = "extreme difference"


_EVIDENCE_SYMBOLS = {
    Evidence.EXTREME_EQUALITY: "<<<",
    Evidence.STRONG_EQUALITY: "<<",
    Evidence.MODERATE_EQUALITY: "<",
    Evidence.ANECDOTAL: "=",
    Evidence.MODERATE_DIFFERENCE: ">",
    Evidence.STRONG_DIFFERENCE: ">>",
    Evidence.EXTREME_DIFFERENCE: ">>>",
}


def categorize_evidence(bayes_factor: float) -> Evidence:
    """Band a Bayes factor: < 0.01 / 0.1 / 0.3 equality, > 3 / 10 / 100 difference."""
    bf = float(bayes_factor)
    if not np.isfinite(bf) or bf <= 0:
        raise StatisticsError(f"Bayes factor must be positive, got {bf}")
    if bf < 0.01:
        return Evidence.EXTREME_EQUALITY
    if bf < 0.1:
        return Evidence.STRONG_EQUALITY
    if bf < 0.3:
        return Evidence.MODERATE_EQUALITY
    if bf <= 3.0:
        return Evidence.ANECDOTAL
    if bf <= 10.0:
        return Evidence.MODERATE_DIFFERENCE
    if bf <= 100.0:
        return Evidence.STRONG_DIFFERENCE
    return Evidence.EXTREME_DIFFERENCE


def evidence_symbol(category: Evidence) -> str:
    return _EVIDENCE_SYMBOLS[category]


def evidence_label(bayes_factor: float) -> str:
    """Display label; the anecdotal band is qualified by the BF's direction."""
    category = categorize_evidence(bayes_factor)
    if category is Evidence.ANECDOTAL:
        return "anecdotal equality" if bayes_factor < 1.0 else "anecdotal difference"
    return category.value


def median_iqr(values) -> tuple[float, float, float]:
    """Median and quartiles with linear interpolation (NumPy's default)."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise StatisticsError("median of an empty sample is undefined")
    q1, med, q3 = np.percentile(values, [25.0, 50.0, 75.0])
    return float(med), float(q1), float(q3)


@dataclass(frozen=True)
class BayesResult:
    bayes_factor: float
    evidence: Evidence
    group_a_median: float
    group_a_iqr: tuple[float, float]
    group_b_median: float
    group_b_iqr: tuple[float, float]
    group_a_mean: float
    group_a_sd: float
    group_b_mean: float
    group_b_sd: float
    t_statistic: float
    df: float


def _two_sample_t(a: np.ndarray, b: np.ndarray) -> tuple[float, float, float]:
    n1, n2 = len(a), len(b)
    df = n1 + n2 - 2
    pooled = ((n1 - 1) * a.var(ddof=1) + (n2 - 1) * b.var(ddof=1)) / df
    if pooled <= 0:
        detail = "equal means" if a.mean() == b.mean() else "unequal means"
        raise StatisticsError(f"zero pooled variance ({detail}): BF undefined")
    t = (a.mean() - b.mean()) / np.sqrt(pooled * (1.0 / n1 + 1.0 / n2))
    n_eff = n1 * n2 / (n1 + n2)
    return float(t), float(df), float(n_eff)


def jzs_bayes_factor(
    t: float, df: float, n_eff: float, scale: float = JZS_CAUCHY_SCALE
) -> float:
    """BF10 for an observed t statistic under the JZS Cauchy prior.

    Marginalizes the noncentral-t likelihood over the Cauchy prior on effect
    size by adaptive quadrature, splitting at the likelihood peak so narrow
    integrands are not missed.
    """
    sqrt_n = np.sqrt(n_eff)

    def integrand(delta: float) -> float:
        return sps.nct.pdf(t, df, delta * sqrt_n) * sps.cauchy.pdf(delta, scale=scale)

    center = t / sqrt_n
    width = max(abs(center) * 0.5, 4.0 * scale, 4.0 / sqrt_n)
    cuts = sorted({center - width, center, center + width})
    pieces = []
    bounds = [-np.inf, *cuts, np.inf]
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        value, _ = integrate.quad(integrand, lo, hi, limit=200)
        pieces.append(value)
    numerator = float(np.sum(pieces))
    denominator = float(sps.t.pdf(t, df))
    if denominator == 0.0:
        return np.inf
    return numerator / denominator


def bayes_factor_ttest(group_a, group_b) -> BayesResult:
    """Independent-samples JZS Bayes factor with group descriptives attached."""
    a = np.asarray(group_a, dtype=float)
    b = np.asarray(group_b, dtype=float)
    if len(a) < 2 or len(b) < 2:
        raise StatisticsError("each group needs at least two values")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise StatisticsError("groups contain non-finite values")
    t, df, n_eff = _two_sample_t(a, b)
    bf = jzs_bayes_factor(t, df, n_eff)
    med_a, q1_a, q3_a = median_iqr(a)
    med_b, q1_b, q3_b = median_iqr(b)
    return BayesResult(
        bayes_factor=bf,
        evidence=categorize_evidence(bf),
        group_a_median=med_a,
        group_a_iqr=(q1_a, q3_a),
        group_b_median=med_b,
        group_b_iqr=(q1_b, q3_b),
        group_a_mean=float(a.mean()),
        group_a_sd=float(a.std(ddof=1)),
        group_b_mean=float(b.mean()),
        group_b_sd=float(b.std(ddof=1)),
        t_statistic=t,
        df=df,
    )


@dataclass(frozen=True)
class CorrelationResult:
    names: tuple[str, ...]
    matrix: np.ndarray  # Pearson r, unit diagonal
    p_values: np.ndarray  # two-sided, from the t distribution
    undefined: tuple[int, ...]  # indices of constant columns


def pearson_correlation_matrix(samples, names=None) -> CorrelationResult:
    """Pairwise Pearson correlations over the columns of an (n, m) array."""
    y = np.asarray(samples, dtype=float)
    if y.ndim != 2 or y.shape[0] < 3:
        raise StatisticsError("need at least three samples of equal dimension")
    n, m = y.shape
    if names is None:
        names = tuple(f"col{i}" for i in range(m))
    sd = y.std(axis=0, ddof=0)
    undefined = tuple(int(i) for i in np.nonzero(sd == 0)[0])
    centered = y - y.mean(axis=0)
    denom = np.outer(sd, sd) * n
    with np.errstate(invalid="ignore", divide="ignore"):
        r = (centered.T @ centered) / denom
    np.fill_diagonal(r, 1.0)
    r = np.clip(r, -1.0, 1.0)
    p = np.zeros_like(r)
    for i in range(m):
        for j in range(i + 1, m):
            rij = r[i, j]
            if i in undefined or j in undefined or np.isnan(rij):
                r[i, j] = r[j, i] = np.nan
                p[i, j] = p[j, i] = np.nan
                continue
            if abs(rij) >= 1.0:
                p[i, j] = p[j, i] = 0.0
                continue
            t = rij * np.sqrt((n - 2) / (1.0 - rij * rij))
            p[i, j] = p[j, i] = 2.0 * sps.t.sf(abs(t), n - 2)
    return CorrelationResult(
        names=tuple(names), matrix=r, p_values=p, undefined=undefined
    )
