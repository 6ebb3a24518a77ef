"""
Distance from a fuzzy-number-valued function to real-valued functions, and
the best real approximant.

D(f, F) measures how far F(x) is from the farthest point of the core of f(x);
D_λ does the same on the λ-level set. No F can beat rad(f), the largest core
half-width, and the core midpoint F₀ attains it: it is a continuous selection
of G(x) = {α : core of f(x) ⊆ [α − rad(f), α + rad(f)]}.

Every radius-side operation takes a ``level`` (default 1, the core); level 0
is the support convention.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from fuzzy_approx.function_space import FuzzyFunction, ScalarFunction, require_same_domain
from fuzzy_approx.fuzzy_core import Interval
from fuzzy_approx.omniconf import config, logger

CORE = 1.0
SUPPORT = 0.0


def dist_to_real_level(f: FuzzyFunction, F: ScalarFunction, lam: float) -> float:
    """D_λ(f, F) = max_x sup{|F(x) − t| : t ∈ [f(x)]^λ}."""
    require_same_domain(f.domain, F.domain)
    lo, hi = f.level_endpoints(lam)
    return float(np.max(np.maximum(np.abs(F.values - lo), np.abs(F.values - hi))))


def dist_to_real(f: FuzzyFunction, F: ScalarFunction, support: bool = False) -> float:
    """D(f, F) on the cores, or on the supports with ``support=True``."""
    return dist_to_real_level(f, F, SUPPORT if support else CORE)


def _half_widths(f: FuzzyFunction, level: float) -> np.ndarray:
    lo, hi = f.level_endpoints(level)
    return (hi - lo) / 2.0


def radius_at(f: FuzzyFunction, x: float, level: float = CORE) -> float:
    return float(_half_widths(f, level)[f.domain.index_of(x)])


def radius_profile(f: FuzzyFunction, level: float = CORE) -> ScalarFunction:
    return ScalarFunction(f.domain, _half_widths(f, level))


def radius(f: FuzzyFunction, level: float = CORE) -> float:
    """rad(f) = max_x rad(x, f)."""
    return float(np.max(_half_widths(f, level)))


def _g_endpoints(f: FuzzyFunction, level: float) -> Tuple[np.ndarray, np.ndarray]:
    lo, hi = f.level_endpoints(level)
    r = radius(f, level)
    g_lo, g_hi = hi - r, lo + r
    # a single-point G(x) can come out crossed by one rounding step
    return np.minimum(g_lo, g_hi), np.maximum(g_lo, g_hi)


def g_interval(f: FuzzyFunction, x: float, level: float = CORE) -> Interval:
    """
    G(x) = {α : [f(x)⁻, f(x)⁺] ⊆ [α − rad(f), α + rad(f)]}
         = [f(x)⁺ − rad(f), f(x)⁻ + rad(f)].
    """
    p = f.domain.index_of(x)
    g_lo, g_hi = _g_endpoints(f, level)
    return Interval(g_lo[p], g_hi[p])


def g_interval_profile(f: FuzzyFunction, level: float = CORE) -> Tuple[Interval, ...]:
    g_lo, g_hi = _g_endpoints(f, level)
    return tuple(Interval(a, b) for a, b in zip(g_lo, g_hi))


def selection_is_valid(
    f: FuzzyFunction, F: ScalarFunction, level: float = CORE, tol: float = 0.0
) -> bool:
    """F(x) ∈ G(x) at every domain point."""
    require_same_domain(f.domain, F.domain)
    g_lo, g_hi = _g_endpoints(f, level)
    return bool(np.all((g_lo - tol <= F.values) & (F.values <= g_hi + tol)))


def g_is_lipschitz(f: FuzzyFunction, level: float = CORE, tol: float = 1e-12) -> bool:
    """
    Between adjacent points G's endpoints move no more than the level
    endpoints of f: G_lo follows f⁺ and G_hi follows f⁻ with constant 1.
    """
    lo, hi = f.level_endpoints(level)
    g_lo, g_hi = _g_endpoints(f, level)
    return bool(
        np.all(np.abs(np.diff(g_lo)) <= np.abs(np.diff(hi)) + tol)
        and np.all(np.abs(np.diff(g_hi)) <= np.abs(np.diff(lo)) + tol)
    )


@dataclass(frozen=True, eq=False)
class RealApproxReport:
    level: float
    rad_profile: ScalarFunction
    radius: float
    F0: ScalarFunction
    achieved: float
    g_intervals: Tuple[Interval, ...]
    selection_valid: bool
    g_lipschitz: bool
    attains_radius: bool


def midpoint_selector(f: FuzzyFunction, level: float = CORE) -> RealApproxReport:
    """
    F₀(x) = midpoint of [f(x)]^level. It lies in G(x) everywhere and
    D_level(f, F₀) = rad_level(f), the best any real-valued function can do.
    """
    lo, hi = f.level_endpoints(level)
    F0 = ScalarFunction(f.domain, (lo + hi) / 2.0)
    rad = radius(f, level)
    achieved = dist_to_real_level(f, F0, level)
    # rounding in the midpoint grows with the endpoint magnitude
    tol = config.distance_tolerance * max(1.0, float(np.max(np.abs(lo))), float(np.max(np.abs(hi))))
    attains_radius = abs(achieved - rad) <= tol
    if not attains_radius:
        logger.warning(f"⚠️ D(f,F0)={achieved!r} differs from rad(f)={rad!r} beyond {tol!r}")

    report = RealApproxReport(
        level=float(level),
        rad_profile=radius_profile(f, level),
        radius=rad,
        F0=F0,
        achieved=achieved,
        g_intervals=g_interval_profile(f, level),
        selection_valid=selection_is_valid(f, F0, level, tol),
        g_lipschitz=g_is_lipschitz(f, level, tol),
        attains_radius=attains_radius,
    )
    logger.info(f"✅ midpoint selector at level {level!r}: rad={rad!r}, D(f,F0)={achieved!r}")
    return report


def best_real_distance(f: FuzzyFunction, level: float = CORE) -> float:
    """D(f, C(K)) = inf_F D(f, F), which equals rad(f) exactly."""
    return radius(f, level)
