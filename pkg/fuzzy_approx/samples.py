"""
Fixture builders and random generators.

The named fixtures are the ones the command line ships as documents; the
random generators feed the property suites.
"""

import itertools
from typing import Callable, Dict, Sequence, Union

import numpy as np

from fuzzy_approx.conv_multiplier import (
    CrispConstantRange,
    FunctionClass,
    PointwiseCrispRange,
)
from fuzzy_approx.errors import OutOfRange, ValidationError
from fuzzy_approx.function_space import DomainGrid, FuzzyFunction, ScalarFunction
from fuzzy_approx.fuzzy_core import FuzzyNumber, LevelGrid, crisp, trapezoidal, triangular
from fuzzy_approx.omniconf import config, logger


def _grids(domain: DomainGrid = None, grid: LevelGrid = None):
    return (
        DomainGrid.uniform() if domain is None else domain,
        LevelGrid.uniform() if grid is None else grid,
    )


# --- NAMED FUNCTIONS ---


def crisp_ramp(domain: DomainGrid = None, grid: LevelGrid = None) -> FuzzyFunction:
    """f(x) = crisp(x)."""
    domain, grid = _grids(domain, grid)
    return FuzzyFunction.from_callable(domain, lambda x: crisp(x, grid))


def constant_core(domain: DomainGrid = None, grid: LevelGrid = None) -> FuzzyFunction:
    """Core [0, 2] and support [-1, 3] everywhere: rad(f) = 1, G(x) = [1, 1]."""
    domain, grid = _grids(domain, grid)
    return FuzzyFunction.constant(domain, trapezoidal(-1.0, 0.0, 2.0, 3.0, grid))


def mixed_width_cores(domain: DomainGrid = None, grid: LevelGrid = None) -> FuzzyFunction:
    """Core [0, x] at x: rad(x, f) = x/2, peaking at the right end."""
    domain, grid = _grids(domain, grid)
    return FuzzyFunction.from_callable(domain, lambda x: trapezoidal(-1.0, 0.0, x, x + 1.0, grid))


def shifted_triangles(domain: DomainGrid = None, grid: LevelGrid = None) -> FuzzyFunction:
    domain, grid = _grids(domain, grid)
    return FuzzyFunction.from_callable(domain, lambda x: triangular(x - 1.0, x, x + 1.0, grid))


def ramp_multiplier(domain: DomainGrid = None) -> ScalarFunction:
    """φ(x) = x; injective, so it separates the points of any domain grid."""
    if domain is None:
        domain = DomainGrid.uniform()
    return ScalarFunction(domain, domain.points, unit_range=True)


# --- CLASSES ---


def _crisp_function(domain: DomainGrid, grid: LevelGrid, values: np.ndarray) -> FuzzyFunction:
    endpoints = np.repeat(np.asarray(values, dtype=float)[:, None], len(grid), axis=1)
    return FuzzyFunction(domain, grid, endpoints, endpoints)


def crisp_constants_class(
    values: Sequence[float] = (0.0, 1.0, 2.0),
    domain: DomainGrid = None,
    grid: LevelGrid = None,
    rule: str = "pointwise",
) -> FunctionClass:
    """
    Crisp constants at ``values``.

    ``rule="pointwise"`` admits any crisp function with values in the range of
    ``values`` and carries the ramp multiplier; ``rule="constant"`` admits
    only constants, so only constant multipliers stay inside Conv(W) and
    point separation fails.
    """
    domain, grid = _grids(domain, grid)
    values = [float(v) for v in values]
    enumeration = [_crisp_function(domain, grid, np.full(len(domain), v)) for v in values]
    lo, hi = min(values), max(values)
    if rule == "pointwise":
        membership = PointwiseCrispRange(lo, hi)
        multipliers = [ramp_multiplier(domain)]
    elif rule == "constant":
        membership = CrispConstantRange(lo, hi)
        multipliers = [ScalarFunction.constant(domain, 0.5, unit_range=True)]
    else:
        raise ValidationError(f"unknown rule '{rule}', expected 'pointwise' or 'constant'")
    return FunctionClass(
        domain,
        grid,
        enumeration,
        membership,
        multipliers=multipliers,
        name=f"crisp-constants-{rule}",
        density=len(values),
    )


def pointwise_crisp_product_class(
    density: int,
    domain: DomainGrid = None,
    grid: LevelGrid = None,
    lo: float = 0.0,
    hi: float = 2.0,
) -> FunctionClass:
    """
    Every crisp function whose values lie on the lattice
    lo, lo + (hi − lo)/density, ..., hi at each domain point.

    The enumeration is the full product, so keep the domain small; the
    lattice constants serve as generators.
    """
    domain, grid = _grids(domain, grid)
    lattice = np.linspace(lo, hi, density + 1)
    size = len(lattice) ** len(domain)
    if size > config.max_enumeration_size:
        raise OutOfRange(
            f"product enumeration of {size} functions exceeds max_enumeration_size={config.max_enumeration_size}"
        )
    enumeration = [
        _crisp_function(domain, grid, np.array(combo))
        for combo in itertools.product(lattice, repeat=len(domain))
    ]
    # constants sit at indices k·(size − 1)/density in product order
    step = (size - 1) // density if density else 0
    generators = [enumeration[k * step] for k in range(density + 1)]
    logger.debug(f"product class: density={density}, {size} functions")
    return FunctionClass(
        domain,
        grid,
        enumeration,
        PointwiseCrispRange(lo, hi),
        multipliers=[ramp_multiplier(domain)],
        generators=generators,
        name=f"pointwise-crisp-product-{density}",
        density=density,
    )


def random_crisp_class(
    rng: np.random.Generator,
    size: int,
    domain: DomainGrid = None,
    grid: LevelGrid = None,
    lo: float = 0.0,
    hi: float = 2.0,
) -> FunctionClass:
    domain, grid = _grids(domain, grid)
    enumeration = [
        _crisp_function(domain, grid, rng.uniform(lo, hi, len(domain))) for _ in range(size)
    ]
    return FunctionClass(
        domain,
        grid,
        enumeration,
        PointwiseCrispRange(lo, hi),
        multipliers=[ramp_multiplier(domain)],
        name=f"random-crisp-{size}",
        density=size,
    )


# --- RANDOM GENERATORS ---


def _random_endpoints(rng: np.random.Generator, shape, spread: float, width: float):
    """
    Endpoint arrays of shape ``(..., levels)``: a random core, widened level by
    level towards λ = 0 with nonnegative steps.
    """
    core_lo = rng.uniform(-spread, spread, shape[:-1])
    core_hi = core_lo + rng.uniform(0.0, width, shape[:-1])
    left = rng.uniform(0.0, width / shape[-1], shape)
    right = rng.uniform(0.0, width / shape[-1], shape)
    left[..., -1] = 0.0
    right[..., -1] = 0.0
    # reversed cumulative sums: entry j is the widening over levels j..L
    lo = core_lo[..., None] - np.cumsum(left[..., ::-1], axis=-1)[..., ::-1]
    hi = core_hi[..., None] + np.cumsum(right[..., ::-1], axis=-1)[..., ::-1]
    return lo, hi


def random_fuzzy_number(
    rng: np.random.Generator, grid: LevelGrid = None, spread: float = 2.0, width: float = 1.0
) -> FuzzyNumber:
    if grid is None:
        grid = LevelGrid.uniform()
    lo, hi = _random_endpoints(rng, (len(grid),), spread, width)
    return FuzzyNumber(grid, lo, hi)


def random_fuzzy_function(
    rng: np.random.Generator,
    domain: DomainGrid = None,
    grid: LevelGrid = None,
    spread: float = 2.0,
    width: float = 1.0,
) -> FuzzyFunction:
    domain, grid = _grids(domain, grid)
    lo, hi = _random_endpoints(rng, (len(domain), len(grid)), spread, width)
    return FuzzyFunction(domain, grid, lo, hi)


def random_scalar_function(
    rng: np.random.Generator, domain: DomainGrid = None, spread: float = 3.0
) -> ScalarFunction:
    if domain is None:
        domain = DomainGrid.uniform()
    return ScalarFunction(domain, rng.uniform(-spread, spread, len(domain)))


def random_multiplier(rng: np.random.Generator, domain: DomainGrid = None) -> ScalarFunction:
    if domain is None:
        domain = DomainGrid.uniform()
    return ScalarFunction(domain, rng.uniform(0.0, 1.0, len(domain)), unit_range=True)


# --- SHIPPED FIXTURES ---

FIXTURES: Dict[str, Callable[[], Union[FuzzyFunction, ScalarFunction, FunctionClass]]] = {
    "crisp_ramp": crisp_ramp,
    "constant_core": constant_core,
    "mixed_width_cores": mixed_width_cores,
    "shifted_triangles": shifted_triangles,
    "ramp_multiplier": ramp_multiplier,
    "crisp_constants_class": crisp_constants_class,
}
