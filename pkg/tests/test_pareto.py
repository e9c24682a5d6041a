import numpy as np
import pytest

from skytuner.pareto import (
    ReferencePointError,
    _hv_inclusion_exclusion,
    _hv_slicing,
    dominates,
    hypervolume,
    non_dominated_mask,
    pareto_front,
)


def brute_force_mask(objectives: np.ndarray) -> np.ndarray:
    """Independent O(n^2) filter: point i survives iff nothing dominates it."""
    n = len(objectives)
    keep = np.ones(n, dtype=bool)
    for i in range(n):
        others = objectives
        dominated = np.any(
            np.all(others >= objectives[i], axis=1)
            & np.any(others > objectives[i], axis=1)
        )
        keep[i] = not dominated
    return keep


def sweep_hypervolume_2d(front: np.ndarray, ref) -> float:
    """Rectangle sweep in decreasing x; adds each new strip of dominated area."""
    best_y = ref[1]
    total = 0.0
    for x, y in sorted(map(tuple, front), key=lambda p: (-p[0], -p[1])):
        if y > best_y:
            total += (x - ref[0]) * (y - best_y)
            best_y = y
    return total


def monte_carlo_hypervolume(front, ref, n=200_000, seed=0):
    rng = np.random.default_rng(seed)
    front = np.atleast_2d(front)
    ref = np.asarray(ref, dtype=float)
    hi = front.max(axis=0)
    box = float(np.prod(hi - ref))
    pts = rng.uniform(ref, hi, size=(n, len(ref)))
    inside = np.zeros(n, dtype=bool)
    for p in front:
        inside |= np.all(pts <= p, axis=1)
    frac = inside.mean()
    se = box * np.sqrt(frac * (1 - frac) / n)
    return box * frac, se


def test_dominates_basics():
    assert dominates(np.ones(6), np.zeros(6))
    assert not dominates(np.ones(6), np.ones(6))
    a = np.array([1.0, 0.0, 0.0])
    b = np.array([0.0, 1.0, 0.0])
    assert not dominates(a, b) and not dominates(b, a)
    with pytest.raises(ValueError):
        dominates(np.ones(3), np.ones(4))


def test_front_single_point_and_chain():
    single = pareto_front([(np.zeros(2), np.array([0.1, 0.2]))])
    assert len(single) == 1
    chain = [
        (np.full(2, i), np.array([i, i, i], dtype=float)) for i in range(5)
    ]
    front = pareto_front(chain)
    assert len(front) == 1
    assert np.all(front.objectives[0] == 4.0)


def test_front_keeps_duplicates():
    pts = [
        (np.zeros(1), np.array([1.0, 0.0])),
        (np.ones(1), np.array([1.0, 0.0])),
        (np.full(1, 2.0), np.array([0.0, 0.5])),
    ]
    front = pareto_front(pts)
    assert len(front) == 3


def test_front_matches_brute_force_on_random_inputs():
    rng = np.random.default_rng(123)
    for _ in range(30):
        n = int(rng.integers(2, 200))
        d = int(rng.integers(2, 7))
        y = rng.random((n, d))
        mask = non_dominated_mask(y)
        assert np.array_equal(mask, brute_force_mask(y))


def test_hypervolume_examples():
    assert hypervolume([[0.0, 0.0]], [-1.0, -1.0]) == pytest.approx(1.0)
    assert hypervolume([[1.0, 0.0], [0.0, 1.0]], [-1.0, -1.0]) == pytest.approx(3.0)
    base = hypervolume([[1.0, 0.0], [0.0, 1.0]], [-1.0, -1.0])
    with_dominated = hypervolume(
        [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]], [-1.0, -1.0]
    )
    assert with_dominated == pytest.approx(base)


def test_hypervolume_rejects_undominated_reference():
    with pytest.raises(ReferencePointError):
        hypervolume([[0.5, -2.0]], [-1.0, -1.0])


def test_hypervolume_monotone_under_new_point():
    rng = np.random.default_rng(5)
    ref = np.full(3, -0.1)
    front = rng.random((6, 3))
    base = hypervolume(front, ref)
    fresh = np.maximum(front.max(axis=0) * 0.5, 0.1)
    fresh[0] = front[:, 0].max() + 0.2  # outside the current attainment in dim 0
    assert hypervolume(np.vstack([front, fresh]), ref) > base


def test_hypervolume_matches_2d_sweep():
    rng = np.random.default_rng(11)
    for _ in range(50):
        n = int(rng.integers(1, 11))
        front = rng.random((n, 2))
        ref = np.array([-0.5, -0.25])
        assert hypervolume(front, ref) == pytest.approx(
            sweep_hypervolume_2d(front, ref), abs=1e-9
        )


def test_hypervolume_matches_monte_carlo_in_6d():
    rng = np.random.default_rng(13)
    for trial in range(5):
        front = rng.uniform(0.2, 1.0, size=(int(rng.integers(2, 9)), 6))
        ref = np.zeros(6)
        exact = hypervolume(front, ref)
        estimate, se = monte_carlo_hypervolume(front, ref, seed=trial)
        assert abs(exact - estimate) <= 3 * se + 1e-12


def test_slicing_and_inclusion_exclusion_agree():
    rng = np.random.default_rng(17)
    for _ in range(20):
        n = int(rng.integers(2, 10))
        d = int(rng.integers(2, 5))
        widths = rng.random((n, d)) + 0.05
        assert _hv_slicing(widths) == pytest.approx(
            _hv_inclusion_exclusion(widths), rel=1e-12
        )


def test_large_fronts_use_exact_slicing():
    # points on a constant-sum surface form an antichain, so none drop out
    # and the front size exceeds the subset-enumeration cutoff
    rng = np.random.default_rng(19)
    y = rng.dirichlet(np.ones(3), size=20)
    assert non_dominated_mask(y).all()
    ref = np.full(3, -0.1)
    v_direct = _hv_inclusion_exclusion(y - ref)
    assert hypervolume(y, ref) == pytest.approx(v_direct, rel=1e-12)


def test_slicing_path_matches_monte_carlo_in_6d():
    # 20-point 6-D antichain goes through the slicing recursion; check it
    # against an independent box-sampling estimate
    rng = np.random.default_rng(23)
    y = 0.2 + 0.8 * rng.dirichlet(np.ones(6), size=20)
    assert non_dominated_mask(y).all()
    ref = np.zeros(6)
    exact = hypervolume(y, ref)
    estimate, se = monte_carlo_hypervolume(y, ref, n=400_000, seed=5)
    assert abs(exact - estimate) <= 3 * se + 1e-12
