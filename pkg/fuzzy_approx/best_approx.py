"""
Best approximation of a fuzzy-number-valued function inside a class W.

* ``pointwise_distance`` / ``gamma_profile``: d_x(f, W) = inf_g d∞(f(x), g(x))
* ``global_distance_oracle``: d(f, W) = inf_g D(f, g), by brute force
* ``attainment_point``: where γ(x) = d_x(f, W) peaks
* ``construct_approximant``: glue local best matches with a telescoping
  partition of multipliers into h ∈ W with D(f, h) ≤ max_x d_x(f, W) + 3ε

Every infimum over W is a minimum over W's finite enumeration; ties go to the
smallest index.
"""

import warnings
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from fuzzy_approx.conv_multiplier import (
    BumpSpec,
    FunctionClass,
    bump,
    check_conv_membership,
    complement_products,
    separates_points,
    telescoping_psis,
)
from fuzzy_approx.errors import (
    BoundViolation,
    CoverFailure,
    EmptyClass,
    MembershipFailure,
    OutOfRange,
    SeparationHypothesisUnmet,
)
from fuzzy_approx.function_space import (
    FuzzyFunction,
    ScalarFunction,
    convex_combine,
    pointwise_d_inf,
    require_same_domain,
)
from fuzzy_approx.fuzzy_core import require_same_grid
from fuzzy_approx.omniconf import config, logger


def distance_table(f: FuzzyFunction, W: FunctionClass) -> np.ndarray:
    """
    ``table[i, p] = d∞(f(x_p), g_i(x_p))`` for every enumeration entry g_i.
    """
    if len(W) == 0:
        raise EmptyClass(f"class '{W.name}' has an empty enumeration")
    require_same_domain(f.domain, W.domain)
    require_same_grid(f.grid, W.grid)
    return np.max(
        np.maximum(np.abs(W.enum_lo - f.lo[None]), np.abs(W.enum_hi - f.hi[None])),
        axis=-1,
    )


def pointwise_distance(f: FuzzyFunction, W: FunctionClass, x: float) -> float:
    p = f.domain.index_of(x)
    return float(distance_table(f, W)[:, p].min())


def gamma_profile(f: FuzzyFunction, W: FunctionClass) -> ScalarFunction:
    """γ(x) = d_x(f, W) at every domain point."""
    return ScalarFunction(f.domain, distance_table(f, W).min(axis=0))


def global_distance_oracle(f: FuzzyFunction, W: FunctionClass) -> float:
    """d(f, W): the smallest D(f, g) over the enumeration."""
    return float(distance_table(f, W).max(axis=1).min())


def _warn_if_not_separating(W: FunctionClass) -> bool:
    separating = separates_points(W.multipliers, W.domain)
    if not separating:
        message = f"multipliers of class '{W.name}' do not separate the domain points"
        logger.warning(f"⚠️ {message}; d(f,W) = max d_x(f,W) is not guaranteed")
        warnings.warn(message, SeparationHypothesisUnmet, stacklevel=3)
    return separating


def attainment_point(f: FuzzyFunction, W: FunctionClass) -> float:
    """
    The smallest-index domain point where γ peaks. Without point separation
    a SeparationHypothesisUnmet warning is emitted and the point is still
    returned.
    """
    _warn_if_not_separating(W)
    gamma = gamma_profile(f, W).values
    return float(f.domain.points[int(np.argmax(gamma))])


@dataclass(frozen=True)
class OracleReport:
    global_distance: float
    max_pointwise: float
    attainment_index: int
    attainment_point: float
    separates: bool

    @property
    def gap(self) -> float:
        return abs(self.global_distance - self.max_pointwise)


def oracle_report(f: FuzzyFunction, W: FunctionClass) -> OracleReport:
    separating = _warn_if_not_separating(W)
    table = distance_table(f, W)
    gamma = table.min(axis=0)
    p = int(np.argmax(gamma))
    return OracleReport(
        global_distance=float(table.max(axis=1).min()),
        max_pointwise=float(gamma[p]),
        attainment_index=p,
        attainment_point=float(f.domain.points[p]),
        separates=separating,
    )


# ---------- CONSTRUCTIVE APPROXIMANT ----------


@dataclass(frozen=True)
class CoverPatch:
    """One cover element: U(x') ⊆ N(x') around the center x' (indices)."""

    center: int
    inner: Tuple[int, ...]
    outer: Tuple[int, ...]
    candidate: int


@dataclass(frozen=True, eq=False)
class ApproxReport:
    epsilon: float
    target: float
    delta: float
    k_const: float
    gamma: ScalarFunction
    cover: Tuple[CoverPatch, ...]
    local_approximants: Tuple[FuzzyFunction, ...]
    phis: Tuple[ScalarFunction, ...]
    psis: Tuple[ScalarFunction, ...]
    psis_in_conv: Tuple[bool, ...]
    weights: np.ndarray
    pointwise_bound: np.ndarray
    pointwise_error: np.ndarray
    h: FuzzyFunction
    achieved: float

    @property
    def bound(self) -> float:
        return self.target + 3.0 * self.epsilon

    @property
    def cover_size(self) -> int:
        return len(self.cover)

    @property
    def psi_sum(self) -> np.ndarray:
        return np.sum([psi.values for psi in self.psis], axis=0)

    @property
    def centers(self) -> List[float]:
        return [float(self.h.domain.points[patch.center]) for patch in self.cover]


def _run_containing(mask: np.ndarray, p: int) -> Tuple[int, ...]:
    """Maximal contiguous run of True entries of ``mask`` containing index p."""
    first = p
    while first > 0 and mask[first - 1]:
        first -= 1
    last = p
    while last < len(mask) - 1 and mask[last + 1]:
        last += 1
    return tuple(range(first, last + 1))


def _greedy_cover(near: np.ndarray, choice: np.ndarray) -> List[CoverPatch]:
    """Leftmost uncovered point first until the U's cover the domain."""
    size = near.shape[0]
    covered = np.zeros(size, dtype=bool)
    cover = []
    while not covered.all():
        p = int(np.argmin(covered))
        if not near[p, p]:
            raise CoverFailure(f"domain point {p} lies outside its own neighborhood N")
        inner = _run_containing(near[p], p)
        cover.append(
            CoverPatch(
                center=p,
                inner=inner,
                outer=tuple(int(t) for t in np.flatnonzero(near[p])),
                candidate=int(choice[p]),
            )
        )
        covered[list(inner)] = True
    return cover


def _glue(phis: List[ScalarFunction], local: List[FuzzyFunction]) -> FuzzyFunction:
    """
    h = φ₁f₁ + (1 − φ₁)[φ₂f₂ + (1 − φ₂)[ ... [φ_{m−1}f_{m−1} + (1 − φ_{m−1})f_m]]].

    Every step is a convex combination of members of W, so h ∈ W whenever
    the φ's lie in Conv(W).
    """
    h = local[-1]
    for phi, g in zip(reversed(phis[:-1]), reversed(local[:-1])):
        h = convex_combine(phi, g, h)
    return h


def _glue_weights(phis: List[ScalarFunction], psis: List[ScalarFunction]) -> np.ndarray:
    """Weights of the glued form: ψ₁..ψ_{m−1}, then Π_{i<m}(1 − φᵢ); they sum to 1."""
    size = len(phis[0].domain)
    if len(phis) == 1:
        return np.ones((1, size))
    tail = complement_products(phis[:-1])[-1]
    return np.vstack([np.stack([psi.values for psi in psis[:-1]]), tail[None]])


def construct_approximant(f: FuzzyFunction, W: FunctionClass, epsilon: float) -> ApproxReport:
    if not epsilon > 0:
        raise OutOfRange(f"ε must be positive, got {epsilon!r}")
    tol = config.distance_tolerance
    table = distance_table(f, W)
    if not separates_points(W.multipliers, W.domain):
        raise SeparationHypothesisUnmet(
            f"multipliers of class '{W.name}' do not separate the domain points"
        )

    gamma = table.min(axis=0)
    target = float(gamma.max())
    threshold = target + epsilon

    # f_{x'}: smallest-index best candidate at x'; N(x') where it stays within threshold
    choice = np.argmin(table, axis=0)
    near = table[choice] < threshold
    cover = _greedy_cover(near, choice)
    m = len(cover)
    local = [W.enumeration[patch.candidate] for patch in cover]
    logger.info(f"🧩 cover of {m} patches for target={target!r}, ε={epsilon!r}")

    k_const = max(
        float(np.max(np.maximum(np.abs(f.lo), np.abs(f.hi)))),
        max(float(table[patch.candidate].max()) for patch in cover),
    )
    if k_const == 0.0:
        # f is the zero function and a member of the enumeration
        delta = config.delta_safety_factor
        phis = [ScalarFunction.constant(f.domain, 1.0, unit_range=True)]
        cover, local = cover[:1], local[:1]
    else:
        # bumps need δ < 1/2 and the bound needs δkm < ε
        delta = config.delta_safety_factor * min(0.5, epsilon / (k_const * m))
        phis = [
            bump(BumpSpec(patch.center, patch.inner, patch.outer, delta), W)
            for patch in cover
        ]
    logger.info(f"δ={delta!r}, k={k_const!r}")

    psis = telescoping_psis(phis)
    h = _glue(phis, local)
    if not W.contains(h):
        raise MembershipFailure(
            f"glued approximant rejected by class '{W.name}'; its multipliers are not inside Conv(W)"
        )

    weights = _glue_weights(phis, psis)
    local_errors = np.stack([table[patch.candidate] for patch in cover])
    pointwise_bound = np.sum(weights * local_errors, axis=0)
    pointwise_error = pointwise_d_inf(f, h)
    if np.any(pointwise_error > pointwise_bound + tol):
        raise BoundViolation("d∞(f(x), h(x)) exceeds the weighted local errors")

    achieved = float(pointwise_error.max())
    if achieved > target + 3.0 * epsilon + tol:
        raise BoundViolation(
            f"D(f,h)={achieved!r} exceeds max_x d_x(f,W) + 3ε = {target + 3.0 * epsilon!r}"
        )
    logger.info(f"✅ approximant built: D(f,h)={achieved!r} <= {target + 3.0 * epsilon!r}")

    return ApproxReport(
        epsilon=float(epsilon),
        target=target,
        delta=float(delta),
        k_const=k_const,
        gamma=ScalarFunction(f.domain, gamma),
        cover=tuple(cover),
        local_approximants=tuple(local),
        phis=tuple(phis),
        psis=tuple(psis),
        psis_in_conv=tuple(check_conv_membership(psi, W) for psi in psis),
        weights=weights,
        pointwise_bound=pointwise_bound,
        pointwise_error=pointwise_error,
        h=h,
        achieved=achieved,
    )
