"""
Multiplier families Conv(W) on a sampled domain.

A FunctionClass W is a finitely enumerated subset of C(K, E¹) with a
membership rule. Conv(W) membership of a multiplier φ is checked against
every ordered pair of the enumeration: φf + (1 − φ)g must be accepted by the
rule. This is sampled semantics; it is exact when the enumeration is all of
W's grid-representable members.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from fuzzy_approx.errors import (
    CannotSeparate,
    LengthMismatch,
    OrderViolation,
    RangeViolation,
    ValidationError,
)
from fuzzy_approx.function_space import (
    DomainGrid,
    FuzzyFunction,
    ScalarFunction,
    blend,
    require_same_domain,
    require_unit_range,
)
from fuzzy_approx.fuzzy_core import LevelGrid, require_same_grid
from fuzzy_approx.omniconf import config, logger


# ---------- MEMBERSHIP RULES ----------


class MembershipRule:
    """
    Decision procedure FuzzyFunction -> bool.

    ``accepts_batch`` receives stacked endpoint arrays of shape
    ``(n, points, levels)`` and returns ``n`` booleans; subclasses vectorize
    it, the generic rule falls back to one call per function.
    """

    rule = "predicate"

    def __init__(self, predicate: Callable[[FuzzyFunction], bool] = None, name: str = None):
        self.predicate = predicate
        if name:
            self.rule = name

    def params(self) -> dict:
        return {}

    def accepts(self, f: FuzzyFunction) -> bool:
        return bool(self.accepts_batch(f.domain, f.grid, f.lo[None], f.hi[None])[0])

    def accepts_batch(
        self, domain: DomainGrid, grid: LevelGrid, lo: np.ndarray, hi: np.ndarray
    ) -> np.ndarray:
        if self.predicate is None:
            raise NotImplementedError("a bare MembershipRule needs a predicate")
        out = []
        for a, b in zip(lo, hi):
            try:
                candidate = FuzzyFunction(domain, grid, a, b)
            except ValidationError:
                out.append(False)
                continue
            out.append(bool(self.predicate(candidate)))
        return np.array(out, dtype=bool)

    def __call__(self, f: FuzzyFunction) -> bool:
        return self.accepts(f)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.rule}, {self.params()})"


class PointwiseCrispRange(MembershipRule):
    """Every value crisp, with value in [lo, hi]."""

    rule = "pointwise-crisp-range"

    def __init__(self, lo: float, hi: float):
        super().__init__()
        if not lo <= hi:
            raise OrderViolation(f"range [{lo!r}, {hi!r}] has lo > hi")
        self.lo = float(lo)
        self.hi = float(hi)

    def params(self) -> dict:
        return {"lo": self.lo, "hi": self.hi}

    def _crisp_in_range(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        tol = config.membership_tolerance
        crisp = np.all(np.abs(hi - lo) <= tol, axis=-1)
        inside = np.all((lo >= self.lo - tol) & (hi <= self.hi + tol), axis=-1)
        return crisp & inside

    def accepts_batch(self, domain, grid, lo, hi):
        return np.all(self._crisp_in_range(lo, hi), axis=-1)


class CrispConstantRange(PointwiseCrispRange):
    """A constant crisp function with value in [lo, hi]."""

    rule = "crisp-constant-range"

    def accepts_batch(self, domain, grid, lo, hi):
        pointwise = np.all(self._crisp_in_range(lo, hi), axis=-1)
        constant = np.ptp(lo[..., -1], axis=-1) <= config.membership_tolerance
        return pointwise & constant


class Enumerated(MembershipRule):
    """Membership means coinciding with one of the listed functions."""

    rule = "enumerated"

    def __init__(self, members: Sequence[FuzzyFunction]):
        super().__init__()
        self.members = tuple(members)

    def accepts_batch(self, domain, grid, lo, hi):
        if not self.members:
            return np.zeros(len(lo), dtype=bool)
        tol = config.membership_tolerance
        m_lo = np.stack([g.lo for g in self.members])
        m_hi = np.stack([g.hi for g in self.members])
        close = (np.abs(lo[:, None] - m_lo[None]) <= tol) & (
            np.abs(hi[:, None] - m_hi[None]) <= tol
        )
        return np.any(np.all(close, axis=(-2, -1)), axis=1)


# ---------- FUNCTION CLASS ----------


@dataclass(frozen=True, eq=False)
class FunctionClass:
    """
    W ⊆ C(K, E¹): generators, the brute-force enumeration (a superset of the
    generators), a membership rule and a family of multipliers.

    Construction checks that every generator and enumeration entry is a
    member and that every multiplier satisfies the sampled Conv(W) condition
    on all generator pairs.
    """

    domain: DomainGrid
    grid: LevelGrid
    enumeration: Tuple[FuzzyFunction, ...]
    membership: MembershipRule
    multipliers: Tuple[ScalarFunction, ...] = ()
    generators: Tuple[FuzzyFunction, ...] = None
    name: str = ""
    density: Optional[int] = None
    enum_lo: np.ndarray = field(init=False, repr=False)
    enum_hi: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        enumeration = tuple(self.enumeration)
        generators = enumeration if self.generators is None else tuple(self.generators)
        multipliers = tuple(self.multipliers)
        object.__setattr__(self, "enumeration", enumeration)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "multipliers", multipliers)

        for g in enumeration + generators:
            require_same_domain(self.domain, g.domain)
            require_same_grid(self.grid, g.grid)
        for phi in multipliers:
            require_same_domain(self.domain, phi.domain)
            require_unit_range(phi.values)

        shape = (0, len(self.domain), len(self.grid))
        enum_lo = np.stack([g.lo for g in enumeration]) if enumeration else np.empty(shape)
        enum_hi = np.stack([g.hi for g in enumeration]) if enumeration else np.empty(shape)
        enum_lo.setflags(write=False)
        enum_hi.setflags(write=False)
        object.__setattr__(self, "enum_lo", enum_lo)
        object.__setattr__(self, "enum_hi", enum_hi)

        for i, g in enumerate(generators):
            if not any(g == e for e in enumeration):
                raise ValidationError(f"generator {i} is missing from the enumeration")
        if enumeration:
            accepted = self.membership.accepts_batch(self.domain, self.grid, enum_lo, enum_hi)
            rejected = np.flatnonzero(~accepted)
            if rejected.size:
                raise ValidationError(
                    f"enumeration entry {int(rejected[0])} fails the membership rule {self.membership.rule}"
                )
        for k, phi in enumerate(multipliers):
            if not _combinations_accepted(phi, self, generators):
                raise ValidationError(
                    f"multiplier {k} breaks the Conv(W) condition on the generators"
                )

    def __len__(self) -> int:
        return len(self.enumeration)

    def contains(self, f: FuzzyFunction) -> bool:
        return self.membership.accepts(f)


def _combinations_accepted(
    phi: ScalarFunction, W: FunctionClass, functions: Sequence[FuzzyFunction]
) -> bool:
    if not functions:
        return True
    lo = np.stack([g.lo for g in functions])
    hi = np.stack([g.hi for g in functions])
    # one row of ordered pairs (f_i, ·) at a time keeps memory at n·m·L
    for i in range(len(functions)):
        combo_lo = blend(phi.values, lo[i][None], lo)
        combo_hi = blend(phi.values, hi[i][None], hi)
        if not np.all(W.membership.accepts_batch(W.domain, W.grid, combo_lo, combo_hi)):
            return False
    return True


# ---------- OPERATIONS ----------


def check_conv_membership(phi: ScalarFunction, W: FunctionClass) -> bool:
    """φ ∈ Conv(W), checked on every ordered pair of the enumeration."""
    require_same_domain(phi.domain, W.domain)
    require_unit_range(phi.values)
    return _combinations_accepted(phi, W, W.enumeration)


def complement_closure(phi: ScalarFunction, W: FunctionClass) -> bool:
    """1 − φ ∈ Conv(W); a False here means the membership rule is broken."""
    result = check_conv_membership(phi.complement(), W)
    if not result:
        logger.warning(f"⚠️ 1 - φ left Conv(W) for class '{W.name}'; membership rule is suspect")
    return result


def product_closure(phi: ScalarFunction, psi: ScalarFunction, W: FunctionClass) -> bool:
    """φ·ψ ∈ Conv(W); a False here means the membership rule is broken."""
    result = check_conv_membership(phi.times(psi), W)
    if not result:
        logger.warning(f"⚠️ φ·ψ left Conv(W) for class '{W.name}'; membership rule is suspect")
    return result


def separates_points(M: Sequence[ScalarFunction], domain: DomainGrid) -> bool:
    """Some φ in M tells apart every pair of distinct domain points."""
    if len(domain) <= 1:
        return True
    if not M:
        return False
    for phi in M:
        require_same_domain(phi.domain, domain)
    table = np.stack([phi.values for phi in M], axis=1)
    return np.unique(table, axis=0).shape[0] == len(domain)


@dataclass(frozen=True)
class BumpSpec:
    """
    Indices into the domain grid: ``center`` ∈ ``inner`` ⊆ ``outer`` and
    0 < δ < 1/2. ``inner`` is a contiguous run; ``outer`` may have gaps.
    """

    center: int
    inner: Tuple[int, ...]
    outer: Tuple[int, ...]
    delta: float

    def __post_init__(self):
        inner = tuple(sorted(int(i) for i in self.inner))
        outer = tuple(sorted(int(i) for i in self.outer))
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "outer", outer)
        if not 0.0 < self.delta < 0.5:
            raise RangeViolation(f"δ must lie in (0, 1/2), got {self.delta!r}")
        if not inner:
            raise LengthMismatch("the inner set U cannot be empty")
        if inner != tuple(range(inner[0], inner[-1] + 1)):
            raise OrderViolation("inner set is not a contiguous run of grid points")
        if not set(inner) <= set(outer):
            raise ValidationError("the inner set U must be contained in the outer set N")
        if self.center not in inner:
            raise ValidationError("the center must belong to the inner set U")

    @classmethod
    def from_points(
        cls,
        domain: DomainGrid,
        center: float,
        inner: Sequence[float],
        outer: Sequence[float],
        delta: float,
    ) -> "BumpSpec":
        return cls(
            domain.index_of(center),
            tuple(domain.index_of(x) for x in inner),
            tuple(domain.index_of(x) for x in outer),
            delta,
        )


def _hat(spec: BumpSpec, domain: DomainGrid) -> np.ndarray:
    x = domain.points
    u_first, u_last = spec.inner[0], spec.inner[-1]
    # ramps stay inside the run of N that contains U
    outer = set(spec.outer)
    n_first, n_last = u_first, u_last
    while n_first - 1 in outer:
        n_first -= 1
    while n_last + 1 in outer:
        n_last += 1
    phi = np.zeros(len(domain))
    phi[u_first : u_last + 1] = 1.0

    # ramps reach 0 at the first grid point outside N; where N touches the
    # end of the domain the hat stays at 1 up to the end
    if n_first > 0:
        anchor = x[n_first - 1]
        span = x[n_first:u_first]
        phi[n_first:u_first] = (span - anchor) / (x[u_first] - anchor)
    else:
        phi[:u_first] = 1.0
    if n_last < len(domain) - 1:
        anchor = x[n_last + 1]
        span = x[u_last + 1 : n_last + 1]
        phi[u_last + 1 : n_last + 1] = (anchor - span) / (anchor - x[u_last])
    else:
        phi[u_last + 1 :] = 1.0
    return phi


def meets_bump_bounds(phi: ScalarFunction, spec: BumpSpec) -> bool:
    """φ > 1 − δ on U and φ < δ off N."""
    values = phi.values
    outside = np.setdiff1d(np.arange(len(values)), spec.outer)
    return bool(
        np.all(values[list(spec.inner)] > 1.0 - spec.delta)
        and np.all(values[outside] < spec.delta)
    )


def bump(spec: BumpSpec, W: FunctionClass) -> ScalarFunction:
    """
    A multiplier in the sampled Conv(W) that is near 1 on U and near 0 off N.

    The piecewise-linear hat is tried first; failing membership, the class's
    own multiplier family is searched.
    """
    hat = ScalarFunction(W.domain, _hat(spec, W.domain), unit_range=True)
    if check_conv_membership(hat, W):
        return hat

    for phi in W.multipliers:
        if meets_bump_bounds(phi, spec) and check_conv_membership(phi, W):
            logger.info(f"hat rejected by class '{W.name}', using a family multiplier instead")
            return phi

    raise CannotSeparate(
        f"no multiplier of class '{W.name}' is near 1 on U={spec.inner} and near 0 off N={spec.outer}"
    )


def telescoping_psis(phis: Sequence[ScalarFunction]) -> List[ScalarFunction]:
    """
    ψ₁ = φ₁, ψ_j = (1 − φ₁)···(1 − φ_{j−1})·φ_j.

    Every prefix sums to 1 − (1 − φ₁)···(1 − φ_j).
    """
    phis = list(phis)
    if not phis:
        raise LengthMismatch("need at least one multiplier")
    domain = phis[0].domain
    remaining = np.ones(len(domain))
    psis = []
    for phi in phis:
        require_same_domain(domain, phi.domain)
        require_unit_range(phi.values)
        psis.append(ScalarFunction(domain, remaining * phi.values, unit_range=True))
        remaining = remaining * (1.0 - phi.values)
    return psis


def complement_products(phis: Sequence[ScalarFunction]) -> np.ndarray:
    """Row j holds Π_{i≤j}(1 − φᵢ) at every domain point."""
    return np.cumprod(np.stack([1.0 - phi.values for phi in phis]), axis=0)
