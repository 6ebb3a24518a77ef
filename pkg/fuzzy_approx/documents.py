"""
JSON documents for functions and classes.

Every document carries ``schema`` and ``kind``; a class carries its
functions inline. Floats are written with their shortest round-trip repr, so
``load(save(x)) == x`` holds exactly. Loading rebuilds the typed objects and
so re-runs every structural check.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Union

from fuzzy_approx.conv_multiplier import (
    CrispConstantRange,
    Enumerated,
    FunctionClass,
    MembershipRule,
    PointwiseCrispRange,
)
from fuzzy_approx.errors import ParseError, ValidationError
from fuzzy_approx.function_space import DomainGrid, FuzzyFunction, ScalarFunction
from fuzzy_approx.fuzzy_core import LevelGrid
from fuzzy_approx.omniconf import config, logger

Document = Union[FuzzyFunction, ScalarFunction, FunctionClass]

RULES = {
    PointwiseCrispRange.rule: PointwiseCrispRange,
    CrispConstantRange.rule: CrispConstantRange,
    Enumerated.rule: Enumerated,
}


# --- ENCODING ---


def _fuzzy_doc(f: FuzzyFunction) -> Dict[str, Any]:
    return {
        "schema": config.schema_version,
        "kind": "fuzzy",
        "level_grid": f.grid.levels.tolist(),
        "domain_grid": f.domain.points.tolist(),
        "values": [
            [[lo, hi] for lo, hi in zip(row_lo, row_hi)]
            for row_lo, row_hi in zip(f.lo.tolist(), f.hi.tolist())
        ],
    }


def _scalar_doc(F: ScalarFunction) -> Dict[str, Any]:
    return {
        "schema": config.schema_version,
        "kind": "scalar",
        "domain_grid": F.domain.points.tolist(),
        "values": F.values.tolist(),
        "unit_range": F.unit_range,
    }


def _membership_doc(rule: MembershipRule) -> Dict[str, Any]:
    if isinstance(rule, Enumerated):
        return {"rule": rule.rule, "members": [_fuzzy_doc(g) for g in rule.members]}
    if type(rule) not in RULES.values():
        raise ValidationError(f"membership rule '{rule.rule}' has no document form")
    return {"rule": rule.rule, **rule.params()}


def _class_doc(W: FunctionClass) -> Dict[str, Any]:
    doc = {
        "schema": config.schema_version,
        "kind": "class",
        "name": W.name,
        "density": W.density,
        "level_grid": W.grid.levels.tolist(),
        "domain_grid": W.domain.points.tolist(),
        "enumeration": [
            {"name": f"g{i}", "function": _fuzzy_doc(g)} for i, g in enumerate(W.enumeration)
        ],
        "membership": _membership_doc(W.membership),
        "multipliers": [_scalar_doc(phi) for phi in W.multipliers],
    }
    if W.generators != W.enumeration:
        doc["generators"] = [
            next(i for i, e in enumerate(W.enumeration) if e == g) for g in W.generators
        ]
    return doc


def to_document(obj: Document) -> Dict[str, Any]:
    if isinstance(obj, FuzzyFunction):
        return _fuzzy_doc(obj)
    if isinstance(obj, ScalarFunction):
        return _scalar_doc(obj)
    if isinstance(obj, FunctionClass):
        return _class_doc(obj)
    raise ValidationError(f"no document form for {type(obj).__name__}")


def dumps(obj: Document) -> str:
    return json.dumps(to_document(obj), indent=2, ensure_ascii=False) + "\n"


def save(obj: Document, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(exist_ok=True, parents=True)
    path.write_text(dumps(obj), encoding="utf-8")
    logger.debug(f"💾 wrote {to_document(obj)['kind']} document to {path}")
    return path


# --- DECODING ---


def _field(doc: Dict[str, Any], name: str, kind: type, context: str = ""):
    where = f"{context}.{name}" if context else name
    if not isinstance(doc, dict):
        raise ParseError("expected an object", field=context or None)
    if name not in doc:
        raise ParseError("missing field", field=where)
    value = doc[name]
    # bool is an int subclass; numbers must not be booleans
    if kind in (int, float) and isinstance(value, bool):
        raise ParseError(f"expected {kind.__name__}, got bool", field=where)
    if kind is float and isinstance(value, int):
        return float(value)
    if not isinstance(value, kind):
        raise ParseError(f"expected {kind.__name__}, got {type(value).__name__}", field=where)
    return value


def _numbers(values: Any, where: str) -> List[float]:
    if not isinstance(values, list):
        raise ParseError("expected a list of numbers", field=where)
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(f"expected a number, got {v!r}", field=where)
    return [float(v) for v in values]


def _check_header(doc: Dict[str, Any], kind: str, context: str = "") -> None:
    schema = _field(doc, "schema", int, context)
    if schema != config.schema_version:
        raise ParseError(
            f"unsupported schema {schema}, expected {config.schema_version}",
            field=f"{context}.schema" if context else "schema",
        )
    found = _field(doc, "kind", str, context)
    if found != kind:
        raise ParseError(f"expected kind '{kind}', got '{found}'", field=context or "kind")


def _fuzzy_from_doc(doc: Dict[str, Any], context: str = "") -> FuzzyFunction:
    _check_header(doc, "fuzzy", context)
    prefix = f"{context}." if context else ""
    grid = LevelGrid(_numbers(_field(doc, "level_grid", list, context), prefix + "level_grid"))
    domain = DomainGrid(_numbers(_field(doc, "domain_grid", list, context), prefix + "domain_grid"))
    lo, hi = [], []
    for p, row in enumerate(_field(doc, "values", list, context)):
        where = f"{prefix}values[{p}]"
        if not isinstance(row, list):
            raise ParseError("expected a list of [lo, hi] pairs", field=where)
        pairs = [_numbers(pair, where) for pair in row]
        if any(len(pair) != 2 for pair in pairs):
            raise ParseError("every level needs exactly one [lo, hi] pair", field=where)
        lo.append([pair[0] for pair in pairs])
        hi.append([pair[1] for pair in pairs])
    if len(lo) != len(domain) or any(len(row) != len(grid) for row in lo):
        raise ParseError(
            f"values must be {len(domain)} points by {len(grid)} levels", field=prefix + "values"
        )
    return FuzzyFunction(domain, grid, lo, hi)


def _scalar_from_doc(doc: Dict[str, Any], context: str = "") -> ScalarFunction:
    _check_header(doc, "scalar", context)
    prefix = f"{context}." if context else ""
    domain = DomainGrid(_numbers(_field(doc, "domain_grid", list, context), prefix + "domain_grid"))
    values = _numbers(_field(doc, "values", list, context), prefix + "values")
    unit_range = doc.get("unit_range", False)
    if not isinstance(unit_range, bool):
        raise ParseError("expected bool", field=prefix + "unit_range")
    return ScalarFunction(domain, values, unit_range=unit_range)


def _membership_from_doc(doc: Dict[str, Any]) -> MembershipRule:
    rule = _field(doc, "rule", str, "membership")
    if rule not in RULES:
        raise ParseError(
            f"unknown rule '{rule}', expected one of {sorted(RULES)}", field="membership.rule"
        )
    if rule == Enumerated.rule:
        members = _field(doc, "members", list, "membership")
        return Enumerated(
            [_fuzzy_from_doc(m, f"membership.members[{i}]") for i, m in enumerate(members)]
        )
    return RULES[rule](_field(doc, "lo", float, "membership"), _field(doc, "hi", float, "membership"))


def _class_from_doc(doc: Dict[str, Any]) -> FunctionClass:
    _check_header(doc, "class")
    grid = LevelGrid(_numbers(_field(doc, "level_grid", list), "level_grid"))
    domain = DomainGrid(_numbers(_field(doc, "domain_grid", list), "domain_grid"))
    enumeration = []
    for i, entry in enumerate(_field(doc, "enumeration", list)):
        where = f"enumeration[{i}]"
        _field(entry, "name", str, where)
        enumeration.append(_fuzzy_from_doc(_field(entry, "function", dict, where), where + ".function"))
    multipliers = [
        _scalar_from_doc(m, f"multipliers[{k}]")
        for k, m in enumerate(_field(doc, "multipliers", list))
    ]
    generators = None
    if "generators" in doc:
        indices = _field(doc, "generators", list)
        if any(isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < len(enumeration) for i in indices):
            raise ParseError("generators must be indices into the enumeration", field="generators")
        generators = [enumeration[i] for i in indices]
    density = doc.get("density")
    if density is not None and (isinstance(density, bool) or not isinstance(density, int)):
        raise ParseError("expected int or null", field="density")
    return FunctionClass(
        domain,
        grid,
        enumeration,
        _membership_from_doc(_field(doc, "membership", dict)),
        multipliers=multipliers,
        generators=generators,
        name=doc.get("name", "") or "",
        density=density,
    )


def from_document(doc: Dict[str, Any]) -> Document:
    kind = _field(doc, "kind", str)
    if kind == "fuzzy":
        return _fuzzy_from_doc(doc)
    if kind == "scalar":
        return _scalar_from_doc(doc)
    if kind == "class":
        return _class_from_doc(doc)
    raise ParseError(f"unknown kind '{kind}'", field="kind")


def loads(text: str) -> Document:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed document: {e.msg}", line=e.lineno) from e
    return from_document(doc)


def load(path: Union[str, Path]) -> Document:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    return loads(text)
