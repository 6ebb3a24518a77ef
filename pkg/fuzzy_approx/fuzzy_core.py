"""
Fuzzy numbers stored through their level-set endpoint functions.

A fuzzy number u is kept as the two endpoint functions u⁻ (``lo``) and u⁺
(``hi``) sampled on a λ-grid 0 = λ₀ < ... < λ_L = 1. Between grid levels the
endpoints are read piecewise-linearly, so left/right continuity holds by
construction and validity reduces to:

* ``lo`` nondecreasing,
* ``hi`` nonincreasing,
* ``lo[j] <= hi[j]`` at every level,
* every value finite.
"""

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, Tuple

import numpy as np

from fuzzy_approx.errors import (
    CrossingViolation,
    GridMismatch,
    LengthMismatch,
    MonotonicityViolation,
    OrderViolation,
    OutOfRange,
    ValidationError,
)
from fuzzy_approx.omniconf import config


def frozen_array(values, ndim: int = None) -> np.ndarray:
    """Copy ``values`` into a read-only float64 array."""
    arr = np.array(values, dtype=float)
    if ndim is not None and arr.ndim != ndim:
        raise LengthMismatch(f"expected a {ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def validate_endpoints(lo: np.ndarray, hi: np.ndarray) -> None:
    """
    Check the endpoint conditions along the last axis.

    Works for a single number (1-d arrays) and for a whole function
    (``(points, levels)`` arrays); for the latter the message names the
    domain point index of the first violation.
    """
    if lo.shape != hi.shape:
        raise LengthMismatch(f"lo has shape {lo.shape} but hi has shape {hi.shape}")

    def _where(pos) -> str:
        return f" (domain point {int(pos[0])})" if lo.ndim == 2 else ""

    bad = np.argwhere(~(np.isfinite(lo) & np.isfinite(hi)))
    if bad.size:
        raise ValidationError(f"non-finite endpoint at level index {int(bad[0][-1])}{_where(bad[0])}")

    bad = np.argwhere(np.diff(lo, axis=-1) < 0)
    if bad.size:
        j = int(bad[0][-1]) + 1
        raise MonotonicityViolation(
            "lo", j, f"lo decreases at level index {j}{_where(bad[0])}"
        )

    bad = np.argwhere(np.diff(hi, axis=-1) > 0)
    if bad.size:
        j = int(bad[0][-1]) + 1
        raise MonotonicityViolation(
            "hi", j, f"hi increases at level index {j}{_where(bad[0])}"
        )

    bad = np.argwhere(lo > hi)
    if bad.size:
        pos = tuple(bad[0])
        j = int(pos[-1])
        raise CrossingViolation(
            j,
            float(lo[pos]),
            float(hi[pos]),
            f"lo={float(lo[pos])!r} > hi={float(hi[pos])!r} at level index {j}{_where(pos)}",
        )


# ---------- TYPES ----------


@dataclass(frozen=True, eq=False)
class LevelGrid:
    """Membership grades λ₀ = 0 < λ₁ < ... < λ_L = 1."""

    levels: np.ndarray

    def __post_init__(self):
        levels = frozen_array(self.levels, ndim=1)
        if levels.size < 2:
            raise LengthMismatch("a level grid needs at least the levels 0 and 1")
        if levels[0] != 0.0 or levels[-1] != 1.0:
            raise OrderViolation(
                f"level grid must start at exactly 0 and end at exactly 1, got {levels[0]!r}..{levels[-1]!r}"
            )
        if not np.all(np.isfinite(levels)):
            raise OutOfRange("level grid contains a non-finite level")
        if not np.all(np.diff(levels) > 0):
            raise OrderViolation("level grid must be strictly increasing")
        object.__setattr__(self, "levels", levels)

    @classmethod
    def uniform(cls, count: int = None) -> "LevelGrid":
        if count is None:
            count = config.default_level_count
        return cls(np.linspace(0.0, 1.0, count))

    def __len__(self) -> int:
        return int(self.levels.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LevelGrid):
            return NotImplemented
        return self is other or np.array_equal(self.levels, other.levels)

    __hash__ = None

    def bracket(self, lam: float) -> Tuple[int, float]:
        """
        Locate λ: returns ``(j, t)`` with λ = (1 − t)·λ_j + t·λ_{j+1}.

        ``t == 0`` exactly when λ is a grid level.
        """
        if not 0.0 <= lam <= 1.0:
            raise OutOfRange(f"level {lam!r} outside [0, 1]")
        j = int(np.searchsorted(self.levels, lam, side="right")) - 1
        if self.levels[j] == lam:
            return j, 0.0
        return j, (lam - self.levels[j]) / (self.levels[j + 1] - self.levels[j])


def interpolate_endpoints(
    lo: np.ndarray, hi: np.ndarray, grid: LevelGrid, lam: float
) -> Tuple[np.ndarray, np.ndarray]:
    """Endpoints at level λ along the last axis, exact at grid levels."""
    j, t = grid.bracket(lam)
    if t == 0.0:
        return lo[..., j], hi[..., j]
    # convex-weight form keeps lo <= hi under rounding
    return (
        (1.0 - t) * lo[..., j] + t * lo[..., j + 1],
        (1.0 - t) * hi[..., j] + t * hi[..., j + 1],
    )


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        if not self.lo <= self.hi:
            raise OrderViolation(f"interval [{self.lo!r}, {self.hi!r}] has lo > hi")

    @property
    def midpoint(self) -> float:
        return (self.lo + self.hi) / 2.0

    @property
    def radius(self) -> float:
        return (self.hi - self.lo) / 2.0

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= x <= self.hi + tol


@dataclass(frozen=True, eq=False)
class FuzzyNumber:
    """u ∈ E¹ as ``[u]^λ_j = [lo[j], hi[j]]``. Always valid once constructed."""

    grid: LevelGrid
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = frozen_array(self.lo, ndim=1)
        hi = frozen_array(self.hi, ndim=1)
        if lo.size != len(self.grid) or hi.size != len(self.grid):
            raise LengthMismatch(
                f"grid has {len(self.grid)} levels but lo has {lo.size} and hi has {hi.size}"
            )
        validate_endpoints(lo, hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FuzzyNumber):
            return NotImplemented
        return (
            self.grid == other.grid
            and np.array_equal(self.lo, other.lo)
            and np.array_equal(self.hi, other.hi)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"FuzzyNumber(support=[{self.lo[0]!r}, {self.hi[0]!r}], core=[{self.lo[-1]!r}, {self.hi[-1]!r}], levels={len(self.grid)})"

    @property
    def core(self) -> Interval:
        return Interval(self.lo[-1], self.hi[-1])

    @property
    def support(self) -> Interval:
        return Interval(self.lo[0], self.hi[0])


def require_same_grid(a: LevelGrid, b: LevelGrid) -> None:
    if a != b:
        raise GridMismatch(
            f"level grids differ ({len(a)} vs {len(b)} levels); resample explicitly"
        )


# ---------- CONSTRUCTORS ----------


def make_fuzzy(grid: LevelGrid, lo: Sequence[float], hi: Sequence[float]) -> FuzzyNumber:
    """Validating constructor: the unique u with [u]^λ_j = [lo_j, hi_j]."""
    if len(lo) != len(grid) or len(hi) != len(grid):
        raise LengthMismatch(
            f"expected {len(grid)} values per endpoint list, got lo={len(lo)} hi={len(hi)}"
        )
    return FuzzyNumber(grid, lo, hi)


def crisp(x: float, grid: LevelGrid = None) -> FuzzyNumber:
    if grid is None:
        grid = LevelGrid.uniform()
    values = np.full(len(grid), float(x))
    return FuzzyNumber(grid, values, values)


def triangular(a: float, b: float, c: float, grid: LevelGrid = None) -> FuzzyNumber:
    """lo(λ) = a + λ(b − a), hi(λ) = c − λ(c − b); core {b}, support [a, c]."""
    return trapezoidal(a, b, b, c, grid)


def trapezoidal(a: float, b: float, c: float, d: float, grid: LevelGrid = None) -> FuzzyNumber:
    """Support [a, d], core [b, c], linear flanks."""
    if not a <= b <= c <= d:
        raise OrderViolation(f"need a <= b <= c <= d, got {a!r}, {b!r}, {c!r}, {d!r}")
    if grid is None:
        grid = LevelGrid.uniform()
    lam = grid.levels
    # clipping and pinning the top level absorb rounding of a + λ(b − a)
    lo = np.minimum(a + lam * (b - a), b)
    hi = np.maximum(d - lam * (d - c), c)
    lo[-1], hi[-1] = b, c
    return FuzzyNumber(grid, lo, hi)


# ---------- OPERATIONS ----------


def level_set(u: FuzzyNumber, lam: float) -> Interval:
    lo, hi = interpolate_endpoints(u.lo, u.hi, u.grid, lam)
    return Interval(lo, hi)


def resample(u: FuzzyNumber, grid: LevelGrid) -> FuzzyNumber:
    """Read u on another λ-grid through its piecewise-linear endpoints."""
    pairs = [interpolate_endpoints(u.lo, u.hi, u.grid, lam) for lam in grid.levels]
    lo = np.maximum.accumulate([p[0] for p in pairs])
    hi = np.minimum.accumulate([p[1] for p in pairs])
    return FuzzyNumber(grid, lo, hi)


def add(u: FuzzyNumber, v: FuzzyNumber) -> FuzzyNumber:
    require_same_grid(u.grid, v.grid)
    return FuzzyNumber(u.grid, u.lo + v.lo, u.hi + v.hi)


def sum_fuzzy(us: Iterable[FuzzyNumber]) -> FuzzyNumber:
    us = list(us)
    if not us:
        raise LengthMismatch("cannot sum an empty list of fuzzy numbers")
    return reduce(add, us)


def scale(k: float, u: FuzzyNumber) -> FuzzyNumber:
    """Image of every level set under x ↦ kx; endpoints swap for k < 0."""
    if k >= 0:
        return FuzzyNumber(u.grid, k * u.lo, k * u.hi)
    return FuzzyNumber(u.grid, k * u.hi, k * u.lo)


def d_inf(u: FuzzyNumber, v: FuzzyNumber) -> float:
    """
    Supremum metric. Endpoint differences are piecewise-linear in λ, so the
    supremum sits on a grid level.
    """
    require_same_grid(u.grid, v.grid)
    return float(np.max(np.maximum(np.abs(u.lo - v.lo), np.abs(u.hi - v.hi))))
