import numpy as np
import pytest
import hypothesis.strategies as st
from hypothesis import given, settings

from fuzzy_approx.conv_multiplier import (
    BumpSpec,
    CrispConstantRange,
    Enumerated,
    FunctionClass,
    MembershipRule,
    PointwiseCrispRange,
    bump,
    check_conv_membership,
    complement_closure,
    complement_products,
    meets_bump_bounds,
    product_closure,
    separates_points,
    telescoping_psis,
)
from fuzzy_approx.errors import (
    CannotSeparate,
    LengthMismatch,
    OrderViolation,
    RangeViolation,
    ValidationError,
)
from fuzzy_approx.function_space import DomainGrid, FuzzyFunction, ScalarFunction
from fuzzy_approx.fuzzy_core import crisp
from fuzzy_approx.samples import (
    crisp_constants_class,
    crisp_ramp,
    pointwise_crisp_product_class,
    ramp_multiplier,
    random_multiplier,
    shifted_triangles,
)

TOL = 1e-12


def _hat(domain):
    """Hat centered at 0.5 reaching 0 at 0.25 and 0.75."""
    return ScalarFunction.from_callable(
        domain, lambda x: max(0.0, 1.0 - 4.0 * abs(x - 0.5)), unit_range=True
    )


# --- MEMBERSHIP ---


def test_membership_rules(domain, grid):
    ramp = crisp_ramp(domain, grid)
    assert PointwiseCrispRange(0, 1).accepts(ramp)
    assert not PointwiseCrispRange(0, 0.5).accepts(ramp)
    assert not CrispConstantRange(0, 1).accepts(ramp)
    assert CrispConstantRange(0, 2)(FuzzyFunction.constant(domain, crisp(2, grid)))
    assert not PointwiseCrispRange(-5, 5).accepts(shifted_triangles(domain, grid))
    assert Enumerated([ramp]).accepts(ramp)
    assert not Enumerated([]).accepts(ramp)


def test_predicate_rule_and_repr(domain, grid):
    rule = MembershipRule(lambda f: bool(np.all(f.core_lo >= 0)), name="nonnegative-core")
    assert rule.accepts(crisp_ramp(domain, grid))
    assert "nonnegative-core" in repr(rule)
    with pytest.raises(OrderViolation):
        PointwiseCrispRange(2, 0)


def test_function_class_rejects_non_members(domain, grid):
    with pytest.raises(ValidationError):
        FunctionClass(domain, grid, [crisp_ramp(domain, grid)], CrispConstantRange(0, 1))


def test_function_class_rejects_multipliers_outside_conv(domain, grid):
    with pytest.raises(ValidationError):
        FunctionClass(
            domain,
            grid,
            crisp_constants_class(domain=domain, grid=grid).enumeration,
            CrispConstantRange(0, 2),
            multipliers=[_hat(domain)],
        )


def test_check_conv_membership_trivial_multipliers(domain, grid):
    for rule in ("pointwise", "constant"):
        W = crisp_constants_class(domain=domain, grid=grid, rule=rule)
        assert check_conv_membership(ScalarFunction.constant(domain, 1.0, unit_range=True), W)
        assert check_conv_membership(ScalarFunction.constant(domain, 0.0, unit_range=True), W)


def test_hat_depends_on_the_membership_rule(domain, grid):
    hat = _hat(domain)
    assert not check_conv_membership(hat, crisp_constants_class(domain=domain, grid=grid, rule="constant"))
    assert check_conv_membership(hat, crisp_constants_class(domain=domain, grid=grid))


def test_check_conv_membership_requires_unit_range(domain, grid):
    with pytest.raises(RangeViolation):
        check_conv_membership(ScalarFunction.constant(domain, 2.0), crisp_constants_class(domain=domain, grid=grid))


# --- CLOSURE ---


def test_complement_and_product_closure_examples(domain, grid):
    W = crisp_constants_class(domain=domain, grid=grid)
    one = ScalarFunction.constant(domain, 1.0, unit_range=True)
    hat = _hat(domain)
    assert complement_closure(one, W)
    assert complement_closure(hat, W)
    assert product_closure(one, one, W)
    assert product_closure(hat, ramp_multiplier(domain), W)


def test_closures_hold_on_shipped_classes(rng, domain, grid):
    classes = [
        crisp_constants_class(domain=domain, grid=grid),
        crisp_constants_class(domain=domain, grid=grid, rule="constant"),
        pointwise_crisp_product_class(2, DomainGrid.uniform(3), grid),
    ]
    for W in classes:
        candidates = [random_multiplier(rng, W.domain) for _ in range(5)]
        candidates += [ScalarFunction.constant(W.domain, c, unit_range=True) for c in (0.2, 0.7)]
        members = [phi for phi in candidates if check_conv_membership(phi, W)]
        assert members
        for phi in members:
            assert complement_closure(phi, W)
            for psi in members:
                assert product_closure(phi, psi, W)


# --- SEPARATION ---


def test_separates_points(domain):
    assert separates_points([ramp_multiplier(domain)], domain)
    constants = [ScalarFunction.constant(domain, c, unit_range=True) for c in (0.0, 0.5, 1.0)]
    assert not separates_points(constants, domain)
    three = DomainGrid([0.0, 0.5, 1.0])
    assert not separates_points([_hat(three)], three)
    assert separates_points([_hat(three), ramp_multiplier(three)], three)
    assert separates_points([], DomainGrid([0.5]))


# --- BUMPS ---


def test_bump_spec_validation(domain):
    with pytest.raises(RangeViolation):
        BumpSpec(10, (10,), (9, 10, 11), 0.6)
    with pytest.raises(OrderViolation):
        BumpSpec(10, (10, 12), (8, 9, 10, 11, 12), 0.1)
    with pytest.raises(ValidationError):
        BumpSpec(10, (10, 11), (10,), 0.1)
    with pytest.raises(ValidationError):
        BumpSpec(9, (10,), (9, 10, 11), 0.1)
    with pytest.raises(LengthMismatch):
        BumpSpec(10, (), (10,), 0.1)


def test_bump_whole_domain_is_constant_one(domain, grid):
    everything = tuple(range(len(domain)))
    spec = BumpSpec(10, everything, everything, 0.1)
    phi = bump(spec, crisp_constants_class(domain=domain, grid=grid))
    assert np.all(phi.values == 1.0)


def test_bump_hat_around_a_point(domain, grid):
    x = domain.points
    spec = BumpSpec.from_points(domain, x[10], [x[10]], x[8:13], 0.1)
    assert (spec.center, spec.inner, spec.outer) == (10, (10,), (8, 9, 10, 11, 12))
    phi = bump(spec, crisp_constants_class(domain=domain, grid=grid))
    expected = np.zeros(21)
    expected[8:13] = [1 / 3, 2 / 3, 1, 2 / 3, 1 / 3]
    assert np.allclose(phi.values, expected, atol=TOL)
    assert phi.values[10] == 1.0
    assert meets_bump_bounds(phi, spec)


def test_bump_ramps_stay_in_the_run_of_N_around_U(domain, grid):
    spec = BumpSpec(10, (10,), (3, 4, 9, 10, 11), 0.1)
    phi = bump(spec, crisp_constants_class(domain=domain, grid=grid))
    expected = np.zeros(21)
    expected[9:12] = [0.5, 1.0, 0.5]
    assert np.allclose(phi.values, expected, atol=TOL)
    assert meets_bump_bounds(phi, spec)


def test_bump_falls_back_to_a_family_multiplier_vanishing_off_N(grid):
    five = DomainGrid.uniform(5)
    in_range = PointwiseCrispRange(0, 2)
    tied = MembershipRule(
        lambda f: in_range.accepts(f) and f.core_lo[1] == f.core_lo[3], name="tied-1-3"
    )
    members = crisp_constants_class(domain=five, grid=grid).enumeration
    pair = ScalarFunction(five, [0.0, 1.0, 0.0, 1.0, 0.0], unit_range=True)
    W = FunctionClass(five, grid, members, tied, multipliers=[pair])

    assert bump(BumpSpec(1, (1,), (1, 3), 0.1), W) == pair
    with pytest.raises(CannotSeparate):
        bump(BumpSpec(1, (1,), (1,), 0.1), W)


def test_bump_under_constant_membership(domain, grid):
    W = crisp_constants_class(domain=domain, grid=grid, rule="constant")
    everything = tuple(range(len(domain)))
    assert bump(BumpSpec(0, everything, everything, 0.1), W).values.tolist() == [1.0] * 21
    with pytest.raises(CannotSeparate):
        bump(BumpSpec(10, (10,), (9, 10, 11), 0.1), W)


# --- TELESCOPING ---


def test_telescoping_examples(domain):
    phi = random_multiplier(np.random.default_rng(0), domain)
    assert telescoping_psis([phi])[0] == phi
    half = ScalarFunction.constant(domain, 0.5, unit_range=True)
    psis = telescoping_psis([half, half])
    assert np.all(psis[1].values == 0.25)
    assert np.all(psis[0].values + psis[1].values == 0.75)
    with pytest.raises(LengthMismatch):
        telescoping_psis([])


def test_telescoping_sum_exceeds_any_large_multiplier(domain):
    values = np.full(21, 0.3)
    values[4] = 0.95
    phis = [
        ScalarFunction.constant(domain, 0.1, unit_range=True),
        ScalarFunction(domain, values, unit_range=True),
        ScalarFunction.constant(domain, 0.4, unit_range=True),
    ]
    total = np.sum([psi.values for psi in telescoping_psis(phis)], axis=0)
    assert total[4] >= 0.95
    assert total[4] > 1 - 0.1


def test_telescoping_identity(rng, domain):
    for _ in range(500):
        m = int(rng.integers(1, 9))
        phis = [random_multiplier(rng, domain) for _ in range(m)]
        psis = telescoping_psis(phis)
        total = np.sum([psi.values for psi in psis], axis=0)
        assert np.max(np.abs(total - (1 - complement_products(phis)[-1]))) <= TOL
        assert np.all(total <= 1 + TOL)
        for psi in psis:
            assert np.all((psi.values >= 0) & (psi.values <= 1))


@given(st.lists(st.floats(0, 1), min_size=1, max_size=8))
@settings(max_examples=200)
def test_telescoping_prefix_sums(levels):
    domain = DomainGrid([0.5])
    phis = [ScalarFunction(domain, [v], unit_range=True) for v in levels]
    psis = telescoping_psis(phis)
    products = complement_products(phis)
    for j in range(len(phis)):
        prefix = sum(float(psi.values[0]) for psi in psis[: j + 1])
        assert prefix == pytest.approx(1 - float(products[j][0]), abs=TOL)
