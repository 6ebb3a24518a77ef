import numpy as np
import pytest
import hypothesis.strategies as st
from hypothesis import given, settings

from fuzzy_approx.errors import (
    CrossingViolation,
    GridMismatch,
    LengthMismatch,
    MonotonicityViolation,
    OrderViolation,
    OutOfRange,
    ValidationError,
)
from fuzzy_approx.fuzzy_core import (
    Interval,
    LevelGrid,
    add,
    crisp,
    d_inf,
    level_set,
    make_fuzzy,
    resample,
    scale,
    sum_fuzzy,
    trapezoidal,
    triangular,
)
from fuzzy_approx.samples import random_fuzzy_number

TOL = 1e-12
ZERO = crisp(0.0)


# --- CONSTRUCTION ---


def test_make_fuzzy_accepts_triangular_shape():
    u = make_fuzzy(LevelGrid([0, 1]), [0, 1], [2, 1])
    assert u.core == Interval(1, 1)
    assert u.support == Interval(0, 2)


def test_make_fuzzy_rejects_crossing_at_top_level():
    with pytest.raises(CrossingViolation) as err:
        make_fuzzy(LevelGrid([0, 1]), [0, 2], [1, 1])
    assert err.value.index == 1
    assert (err.value.lo, err.value.hi) == (2.0, 1.0)


def test_make_fuzzy_rejects_decreasing_lo():
    with pytest.raises(MonotonicityViolation) as err:
        make_fuzzy(LevelGrid([0, 0.5, 1]), [0, 0.6, 0.4], [2, 2, 2])
    assert err.value.which == "lo"
    assert err.value.index == 2


def test_make_fuzzy_rejects_increasing_hi():
    with pytest.raises(MonotonicityViolation) as err:
        make_fuzzy(LevelGrid([0, 0.5, 1]), [0, 0, 0], [1, 2, 2])
    assert err.value.which == "hi"
    assert err.value.index == 1


def test_make_fuzzy_rejects_non_finite_and_wrong_length():
    with pytest.raises(ValidationError):
        make_fuzzy(LevelGrid([0, 1]), [0, np.inf], [2, np.inf])
    with pytest.raises(LengthMismatch):
        make_fuzzy(LevelGrid([0, 1]), [0, 1, 1], [2, 1])


def test_level_grid_validation():
    with pytest.raises(LengthMismatch):
        LevelGrid([0])
    with pytest.raises(OrderViolation):
        LevelGrid([0.1, 1])
    with pytest.raises(OrderViolation):
        LevelGrid([0, 0.7, 0.3, 1])
    with pytest.raises(OutOfRange):
        LevelGrid([0, float("nan"), 1])
    levels = np.linspace(0, 1, 11)
    levels[5] = np.nan
    with pytest.raises(OutOfRange):
        LevelGrid(levels)
    with pytest.raises(LengthMismatch):
        LevelGrid.uniform(0)
    assert len(LevelGrid.uniform()) == 11


def test_bracket_rejects_levels_outside_unit_interval(grid):
    with pytest.raises(OutOfRange):
        grid.bracket(1.5)
    assert grid.bracket(1.0) == (10, 0.0)


def test_crisp():
    assert np.all(crisp(0).lo == 0) and np.all(crisp(0).hi == 0)
    assert np.all(crisp(3.5).lo == 3.5) and np.all(crisp(3.5).hi == 3.5)


def test_triangular_level_sets():
    u = triangular(0, 1, 2)
    assert level_set(u, 0) == Interval(0, 2)
    assert level_set(u, 1) == Interval(1, 1)
    assert level_set(u, 0.5) == Interval(0.5, 1.5)


def test_degenerate_triangular_is_crisp():
    assert triangular(1, 1, 1) == crisp(1)


def test_trapezoidal_order():
    with pytest.raises(OrderViolation):
        trapezoidal(0, 2, 1, 3)
    u = trapezoidal(-1, 0, 2, 3)
    assert u.core == Interval(0, 2)
    assert u.support == Interval(-1, 3)


def test_level_set_interpolates_between_grid_levels():
    assert level_set(crisp(2), 0.37).lo == pytest.approx(2, abs=TOL)
    assert level_set(crisp(2), 0.37).hi == pytest.approx(2, abs=TOL)
    assert level_set(triangular(0, 4, 8, LevelGrid([0, 1])), 0.25) == Interval(1, 7)


# --- ARITHMETIC ---


def test_add_examples():
    assert add(crisp(1), crisp(2)) == crisp(3)
    u = triangular(0, 1, 2)
    assert add(u, ZERO) == u
    assert d_inf(add(u, triangular(1, 2, 3)), triangular(1, 3, 5)) <= TOL


def test_mixed_grids_are_rejected():
    with pytest.raises(GridMismatch):
        add(crisp(1, LevelGrid([0, 1])), crisp(1))
    with pytest.raises(GridMismatch):
        d_inf(crisp(1, LevelGrid([0, 1])), crisp(1))


def test_scale_examples():
    u = triangular(0, 1, 2)
    assert scale(1, u) == u
    assert scale(0, u) == crisp(0)
    assert d_inf(scale(-1, u), triangular(-2, -1, 0)) <= TOL


def test_sum_fuzzy():
    assert sum_fuzzy([crisp(1), crisp(2), crisp(3)]) == crisp(6)
    with pytest.raises(LengthMismatch):
        sum_fuzzy([])


def test_resample_onto_coarser_grid():
    coarse = LevelGrid([0, 0.5, 1])
    u = resample(triangular(0, 1, 2), coarse)
    assert d_inf(u, triangular(0, 1, 2, coarse)) <= TOL
    v = random_fuzzy_number(np.random.default_rng(3))
    assert resample(v, v.grid) == v


@given(
    st.floats(-100, 100),
    st.floats(0, 50),
    st.floats(0, 50),
    st.floats(-10, 10),
    st.floats(-100, 100),
)
@settings(max_examples=200)
def test_add_and_scale_preserve_invariants(a, d1, d2, k, shift):
    u = triangular(a, a + d1, a + d1 + d2)
    v = add(u, crisp(shift))
    w = scale(k, v)
    assert np.all(np.diff(w.lo) >= 0) and np.all(np.diff(w.hi) <= 0)
    assert np.all(w.lo <= w.hi)


# --- METRIC ---


def test_d_inf_examples(rng):
    u = triangular(0, 1, 2)
    assert d_inf(u, u) == 0
    assert d_inf(crisp(0), crisp(5)) == 5
    assert d_inf(u, triangular(1, 2, 3)) == pytest.approx(1, abs=TOL)
    for _ in range(100):
        x, y = rng.uniform(-10, 10, 2)
        assert d_inf(crisp(x), crisp(y)) == abs(x - y)


def test_d_inf_is_a_metric(rng, grid):
    for _ in range(1000):
        u, v, w = (random_fuzzy_number(rng, grid) for _ in range(3))
        assert d_inf(u, v) >= 0
        assert d_inf(u, u) == 0
        assert d_inf(u, v) > 0
        assert d_inf(u, v) == d_inf(v, u)
        assert d_inf(u, w) <= d_inf(u, v) + d_inf(v, w) + TOL


def test_sum_inequality(rng, grid):
    for _ in range(1000):
        m = int(rng.integers(1, 7))
        us = [random_fuzzy_number(rng, grid) for _ in range(m)]
        vs = [random_fuzzy_number(rng, grid) for _ in range(m)]
        lhs = d_inf(sum_fuzzy(us), sum_fuzzy(vs))
        assert lhs <= sum(d_inf(u, v) for u, v in zip(us, vs)) + TOL


def test_positive_homogeneity(rng, grid):
    for _ in range(1000):
        u, v = random_fuzzy_number(rng, grid), random_fuzzy_number(rng, grid)
        k = rng.uniform(0, 10)
        assert d_inf(scale(k, u), scale(k, v)) == pytest.approx(k * d_inf(u, v), abs=TOL)


def test_scaling_distance_to_origin(rng, grid):
    for _ in range(1000):
        u = random_fuzzy_number(rng, grid)
        k, mu = rng.uniform(0, 5, 2)
        expected = abs(k - mu) * d_inf(u, ZERO)
        assert d_inf(scale(k, u), scale(mu, u)) == pytest.approx(expected, abs=TOL)


def test_mixed_scaling_bound(rng, grid):
    for _ in range(1000):
        u, v = random_fuzzy_number(rng, grid), random_fuzzy_number(rng, grid)
        k, mu = rng.uniform(0, 5, 2)
        bound = abs(k - mu) * d_inf(u, ZERO) + mu * d_inf(u, v)
        assert d_inf(scale(k, u), scale(mu, v)) <= bound + TOL


def test_level_set_round_trip(rng, grid):
    for _ in range(1000):
        u = random_fuzzy_number(rng, grid)
        sets = [level_set(u, lam) for lam in grid.levels]
        assert make_fuzzy(grid, [s.lo for s in sets], [s.hi for s in sets]) == u
