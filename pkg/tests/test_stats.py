import numpy as np
import pytest

from skytuner.stats import (
    JZS_CAUCHY_SCALE,
    Evidence,
    StatisticsError,
    bayes_factor_ttest,
    categorize_evidence,
    evidence_label,
    evidence_symbol,
    jzs_bayes_factor,
    median_iqr,
    pearson_correlation_matrix,
)


def jzs_oracle(t, df, n_eff, scale=JZS_CAUCHY_SCALE):
    """Independent route: Cauchy prior as a normal-inverse-gamma mixture.

    The Cauchy(0, r) prior on effect size equals a Normal(0, g r^2) prior
    mixed over g ~ InverseGamma(1/2, 1/2); conditioning on g the marginal
    likelihood has elementary form, so a fine trapezoid over log g suffices.
    """
    u = np.linspace(-18.0, 18.0, 40001)
    g = np.exp(u)
    c = 1.0 + n_eff * scale**2 * g
    log_like = -0.5 * np.log(c) - 0.5 * (df + 1) * np.log1p(t * t / (c * df))
    log_prior = -1.5 * np.log(g) - 0.5 / g - 0.5 * np.log(2 * np.pi)
    numerator = np.trapezoid(np.exp(log_like + log_prior + u), u)
    denominator = (1.0 + t * t / df) ** (-0.5 * (df + 1))
    return numerator / denominator


TABLE_BF_LABELS = [
    (0.41, Evidence.ANECDOTAL),
    (0.23, Evidence.MODERATE_EQUALITY),
    (0.26, Evidence.MODERATE_EQUALITY),
    (0.22, Evidence.MODERATE_EQUALITY),
    (0.36, Evidence.ANECDOTAL),
    (0.22, Evidence.MODERATE_EQUALITY),
    (0.62, Evidence.ANECDOTAL),
    (16.54, Evidence.STRONG_DIFFERENCE),
    (0.22, Evidence.MODERATE_EQUALITY),
    (0.24, Evidence.MODERATE_EQUALITY),
    (32473.69, Evidence.EXTREME_DIFFERENCE),
    (0.51, Evidence.ANECDOTAL),
]


def test_categorize_published_values():
    for bf, expected in TABLE_BF_LABELS:
        assert categorize_evidence(bf) is expected


def test_categorize_band_edges():
    assert categorize_evidence(0.009) is Evidence.EXTREME_EQUALITY
    assert categorize_evidence(0.05) is Evidence.STRONG_EQUALITY
    assert categorize_evidence(0.3) is Evidence.ANECDOTAL
    assert categorize_evidence(3.0) is Evidence.ANECDOTAL
    assert categorize_evidence(3.01) is Evidence.MODERATE_DIFFERENCE
    assert categorize_evidence(10.5) is Evidence.STRONG_DIFFERENCE
    assert categorize_evidence(101.0) is Evidence.EXTREME_DIFFERENCE
    with pytest.raises(StatisticsError):
        categorize_evidence(0.0)
    with pytest.raises(StatisticsError):
        categorize_evidence(-2.0)


def test_symbols_and_labels():
    assert evidence_symbol(Evidence.EXTREME_DIFFERENCE) == ">>>"
    assert evidence_symbol(Evidence.ANECDOTAL) == "="
    assert evidence_label(0.41) == "anecdotal equality"
    assert evidence_label(1.7) == "anecdotal difference"
    assert evidence_label(16.54) == "strong difference"


def test_bayes_factor_matches_oracle_at_t_zero():
    a = np.concatenate([np.linspace(-1, 1, 20)])
    b = a.copy()
    result = bayes_factor_ttest(a, b)
    assert result.bayes_factor < 1.0
    assert result.t_statistic == 0.0
    oracle = jzs_oracle(0.0, 38, 10.0)
    assert result.bayes_factor == pytest.approx(oracle, rel=0.01)


def test_bayes_factor_extreme_separation():
    rng = np.random.default_rng(0)
    a = rng.normal(5.0, 1.0, 20)
    b = rng.normal(-5.0, 1.0, 20)
    result = bayes_factor_ttest(a, b)
    assert result.bayes_factor > 100.0
    assert result.evidence is Evidence.EXTREME_DIFFERENCE


def test_bayes_factor_affine_invariance_and_symmetry():
    rng = np.random.default_rng(1)
    a = rng.normal(0.3, 1.0, 15)
    b = rng.normal(0.8, 1.2, 18)
    bf = bayes_factor_ttest(a, b).bayes_factor
    bf_scaled = bayes_factor_ttest(3.0 * a - 7.0, 3.0 * b - 7.0).bayes_factor
    bf_swapped = bayes_factor_ttest(b, a).bayes_factor
    assert bf == pytest.approx(bf_scaled, rel=1e-6)
    assert bf == pytest.approx(bf_swapped, rel=1e-6)


def test_bayes_factor_reproduces_published_r_value():
    # paired-differences t test on R's sleep data; BayesFactor::ttestBF
    # (rscale "medium" = sqrt(2)/2) reports BF10 = 17.26
    d = np.array([1.2, 2.4, 1.3, 1.3, 0.0, 1.0, 1.8, 0.8, 4.6, 1.4])
    t = d.mean() / (d.std(ddof=1) / np.sqrt(len(d)))
    bf = jzs_bayes_factor(t, len(d) - 1, len(d))
    assert bf == pytest.approx(17.26, abs=0.01)


def test_bayes_factor_matches_oracle_across_regimes():
    rng = np.random.default_rng(2)
    for _ in range(10):
        n1 = int(rng.integers(4, 40))
        n2 = int(rng.integers(4, 40))
        t = float(rng.uniform(-6.0, 6.0))
        df = n1 + n2 - 2
        n_eff = n1 * n2 / (n1 + n2)
        assert jzs_bayes_factor(t, df, n_eff) == pytest.approx(
            jzs_oracle(t, df, n_eff), rel=1e-3
        )


def test_bayes_factor_input_errors():
    with pytest.raises(StatisticsError):
        bayes_factor_ttest([1.0], [1.0, 2.0])
    with pytest.raises(StatisticsError, match="equal means"):
        bayes_factor_ttest([2.0, 2.0], [2.0, 2.0])
    with pytest.raises(StatisticsError, match="unequal means"):
        bayes_factor_ttest([2.0, 2.0], [3.0, 3.0])


def test_median_iqr():
    assert median_iqr([1, 2, 3, 4, 5]) == (3.0, 2.0, 4.0)
    assert median_iqr([7.5]) == (7.5, 7.5, 7.5)
    draws = np.random.default_rng(3).random(1000)
    med, q1, q3 = median_iqr(draws)
    assert med == pytest.approx(0.5, abs=0.05)
    assert q1 < med < q3


def test_correlation_duplicated_and_negated_columns():
    rng = np.random.default_rng(4)
    base = rng.standard_normal(60)
    samples = np.column_stack([base, base, -base])
    result = pearson_correlation_matrix(samples)
    assert result.matrix[0, 1] == pytest.approx(1.0)
    assert result.matrix[0, 2] == pytest.approx(-1.0)
    assert result.p_values[0, 1] == 0.0
    assert np.allclose(np.diag(result.matrix), 1.0)


def test_correlation_constructed_r():
    rng = np.random.default_rng(5)
    n = 20000
    x = rng.standard_normal(n)
    y = 0.8 * x + np.sqrt(1 - 0.8**2) * rng.standard_normal(n)
    result = pearson_correlation_matrix(np.column_stack([x, y]))
    assert result.matrix[0, 1] == pytest.approx(0.8, abs=0.01)


def test_correlation_constant_column_flagged():
    rng = np.random.default_rng(6)
    samples = np.column_stack([rng.standard_normal(10), np.full(10, 2.0)])
    result = pearson_correlation_matrix(samples)
    assert result.undefined == (1,)
    assert np.isnan(result.matrix[0, 1])


def test_correlation_needs_three_samples():
    with pytest.raises(StatisticsError):
        pearson_correlation_matrix(np.ones((2, 4)))
