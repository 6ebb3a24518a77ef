"""
Sampled function spaces C(K, E¹) and C(K).

The compact set K is a finite ordered sample of [0, 1]; suprema over K are
exact maxima over the sample. A fuzzy-number-valued function keeps all of its
endpoints in two ``(points, levels)`` arrays sharing one LevelGrid.
"""

from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

import numpy as np

from fuzzy_approx.errors import (
    GridMismatch,
    LengthMismatch,
    OrderViolation,
    OutOfRange,
    RangeViolation,
    ValidationError,
)
from fuzzy_approx.fuzzy_core import (
    FuzzyNumber,
    LevelGrid,
    frozen_array,
    interpolate_endpoints,
    require_same_grid,
    validate_endpoints,
)
from fuzzy_approx.omniconf import config


@dataclass(frozen=True, eq=False)
class DomainGrid:
    points: np.ndarray

    def __post_init__(self):
        points = frozen_array(self.points, ndim=1)
        if points.size < 1:
            raise LengthMismatch("a domain grid needs at least one point")
        if np.any((points < 0.0) | (points > 1.0)) or not np.all(np.isfinite(points)):
            raise OutOfRange("domain points must lie in [0, 1]")
        if np.any(np.diff(points) <= 0):
            raise OrderViolation("domain points must be strictly increasing")
        object.__setattr__(self, "points", points)

    @classmethod
    def uniform(cls, count: int = None) -> "DomainGrid":
        if count is None:
            count = config.default_domain_points
        if count == 1:
            return cls([0.0])
        return cls(np.linspace(0.0, 1.0, count))

    def __len__(self) -> int:
        return int(self.points.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DomainGrid):
            return NotImplemented
        return self is other or np.array_equal(self.points, other.points)

    __hash__ = None

    def index_of(self, x: float) -> int:
        hits = np.flatnonzero(self.points == x)
        if hits.size == 0:
            raise OutOfRange(f"{x!r} is not a point of the domain grid")
        return int(hits[0])


def require_same_domain(a: DomainGrid, b: DomainGrid) -> None:
    if a != b:
        raise GridMismatch(f"domain grids differ ({len(a)} vs {len(b)} points)")


@dataclass(frozen=True, eq=False)
class FuzzyFunction:
    """f ∈ C(K, E¹): row p of ``lo``/``hi`` holds the endpoints of f(x_p)."""

    domain: DomainGrid
    grid: LevelGrid
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = frozen_array(self.lo, ndim=2)
        hi = frozen_array(self.hi, ndim=2)
        expected = (len(self.domain), len(self.grid))
        if lo.shape != expected or hi.shape != expected:
            raise LengthMismatch(
                f"expected endpoint arrays of shape {expected}, got {lo.shape} and {hi.shape}"
            )
        validate_endpoints(lo, hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def from_values(cls, domain: DomainGrid, values: Sequence[FuzzyNumber]) -> "FuzzyFunction":
        values = list(values)
        if len(values) != len(domain):
            raise LengthMismatch(f"{len(values)} values for {len(domain)} domain points")
        grid = values[0].grid
        for u in values[1:]:
            require_same_grid(grid, u.grid)
        return cls(domain, grid, [u.lo for u in values], [u.hi for u in values])

    @classmethod
    def from_callable(
        cls, domain: DomainGrid, fn: Callable[[float], FuzzyNumber]
    ) -> "FuzzyFunction":
        return cls.from_values(domain, [fn(float(x)) for x in domain.points])

    @classmethod
    def constant(cls, domain: DomainGrid, u: FuzzyNumber) -> "FuzzyFunction":
        return cls.from_values(domain, [u] * len(domain))

    def __len__(self) -> int:
        return len(self.domain)

    def __getitem__(self, index: int) -> FuzzyNumber:
        return FuzzyNumber(self.grid, self.lo[index], self.hi[index])

    def at(self, x: float) -> FuzzyNumber:
        return self[self.domain.index_of(x)]

    @property
    def values(self) -> Tuple[FuzzyNumber, ...]:
        return tuple(self[p] for p in range(len(self)))

    @property
    def core_lo(self) -> np.ndarray:
        return self.lo[:, -1]

    @property
    def core_hi(self) -> np.ndarray:
        return self.hi[:, -1]

    def level_endpoints(self, lam: float) -> Tuple[np.ndarray, np.ndarray]:
        """Per-point endpoints of [f(x)]^λ."""
        return interpolate_endpoints(self.lo, self.hi, self.grid, lam)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FuzzyFunction):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.grid == other.grid
            and np.array_equal(self.lo, other.lo)
            and np.array_equal(self.hi, other.hi)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class ScalarFunction:
    """F ∈ C(K), or a multiplier φ ∈ C(K, [0, 1]) when ``unit_range`` is set."""

    domain: DomainGrid
    values: np.ndarray
    unit_range: bool = False

    def __post_init__(self):
        values = frozen_array(self.values, ndim=1)
        if values.size != len(self.domain):
            raise LengthMismatch(f"{values.size} values for {len(self.domain)} domain points")
        if not np.all(np.isfinite(values)):
            raise ValidationError("scalar function has non-finite values")
        if self.unit_range:
            require_unit_range(values)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(
        cls, domain: DomainGrid, fn: Callable[[float], float], unit_range: bool = False
    ) -> "ScalarFunction":
        return cls(domain, [fn(float(x)) for x in domain.points], unit_range)

    @classmethod
    def constant(cls, domain: DomainGrid, value: float, unit_range: bool = False) -> "ScalarFunction":
        return cls(domain, np.full(len(domain), float(value)), unit_range)

    def __len__(self) -> int:
        return len(self.domain)

    def complement(self) -> "ScalarFunction":
        """1 − φ."""
        require_unit_range(self.values)
        return ScalarFunction(self.domain, 1.0 - self.values, unit_range=True)

    def times(self, other: "ScalarFunction") -> "ScalarFunction":
        require_same_domain(self.domain, other.domain)
        return ScalarFunction(
            self.domain,
            self.values * other.values,
            unit_range=self.unit_range and other.unit_range,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScalarFunction):
            return NotImplemented
        return self.domain == other.domain and np.array_equal(self.values, other.values)

    __hash__ = None


def require_unit_range(values: np.ndarray) -> None:
    bad = np.flatnonzero((values < 0.0) | (values > 1.0))
    if bad.size:
        raise RangeViolation(
            f"multiplier value {float(values[bad[0]])!r} at domain point {int(bad[0])} is outside [0, 1]"
        )


def zero_function(domain: DomainGrid, grid: LevelGrid) -> FuzzyFunction:
    zeros = np.zeros((len(domain), len(grid)))
    return FuzzyFunction(domain, grid, zeros, zeros)


def blend(weights: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Pointwise ``w·a + (1 − w)·b`` for endpoint arrays of shape
    ``(..., points, levels)`` and weights of shape ``(..., points)``.

    Both coefficients are nonnegative, so no endpoint swap is needed.
    """
    w = weights[..., :, None]
    return w * a + (1.0 - w) * b


# ---------- OPERATIONS ----------


def D_metric(f: FuzzyFunction, g: FuzzyFunction) -> float:
    """D(f, g) = max over the domain of d∞(f(t), g(t))."""
    return float(np.max(pointwise_d_inf(f, g)))


def pointwise_d_inf(f: FuzzyFunction, g: FuzzyFunction) -> np.ndarray:
    require_same_domain(f.domain, g.domain)
    require_same_grid(f.grid, g.grid)
    return np.max(np.maximum(np.abs(f.lo - g.lo), np.abs(f.hi - g.hi)), axis=1)


def convex_combine(phi: ScalarFunction, f: FuzzyFunction, g: FuzzyFunction) -> FuzzyFunction:
    """φf + (1 − φ)g evaluated levelwise at every domain point."""
    require_same_domain(phi.domain, f.domain)
    require_same_domain(f.domain, g.domain)
    require_same_grid(f.grid, g.grid)
    require_unit_range(phi.values)
    return FuzzyFunction(
        f.domain,
        f.grid,
        blend(phi.values, f.lo, g.lo),
        blend(phi.values, f.hi, g.hi),
    )


def dist_fuzzy_to_scalar_point(u: FuzzyNumber, alpha: float) -> float:
    """sup{|α − t| : t in the core of u}: the farther core endpoint."""
    return max(abs(alpha - float(u.lo[-1])), abs(alpha - float(u.hi[-1])))
