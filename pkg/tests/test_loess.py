import numpy as np
import pytest

from skytuner.loess import loess


def test_reproduces_quadratics_exactly():
    x = np.linspace(0, 10, 25)
    y = 2.0 - 0.7 * x + 0.31 * x**2
    assert np.max(np.abs(loess(x, y, span=1.0) - y)) < 1e-9


def test_reproduces_lines_and_constants():
    x = np.arange(1.0, 31.0)
    assert np.allclose(loess(x, 0.5 * x - 3.0), 0.5 * x - 3.0, atol=1e-9)
    assert np.allclose(loess(x, np.full(30, 4.2)), 4.2, atol=1e-12)


def test_smooths_noise_toward_true_curve():
    rng = np.random.default_rng(0)
    x = np.linspace(-2, 2, 60)
    truth = 1.0 + x - 0.5 * x**2
    noisy = truth + rng.normal(0, 0.4, len(x))
    smoothed = loess(x, noisy, span=1.0)
    rmse_smoothed = np.sqrt(np.mean((smoothed - truth) ** 2))
    rmse_raw = np.sqrt(np.mean((noisy - truth) ** 2))
    assert rmse_smoothed < rmse_raw


def test_partial_span_still_tracks_smooth_trend():
    x = np.linspace(0, 1, 40)
    y = np.sin(2 * np.pi * x)
    smoothed = loess(x, y, span=0.4)
    assert np.max(np.abs(smoothed - y)) < 0.12


def test_unsorted_input_handled():
    rng = np.random.default_rng(1)
    x = np.linspace(0, 5, 20)
    y = x**2
    perm = rng.permutation(20)
    assert np.allclose(loess(x[perm], y[perm]), y[perm], atol=1e-9)


def test_input_validation():
    x = np.arange(10.0)
    with pytest.raises(ValueError):
        loess(x, x, span=0.0)
    with pytest.raises(ValueError):
        loess(x, x, span=1.5)
    with pytest.raises(ValueError):
        loess([1.0, 2.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        loess(x, x[:5])
