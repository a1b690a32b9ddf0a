"""JSON group and control definitions.

Rationals are written as strings ("p/q" or integers); basis indices are
1-based. A group file is one of

* ``{"name": ..., "layer_dims": [2, 1], "brackets": [[1, 2, ["0", "0", "1"]], ...]}``
* ``{"name": ..., "rank": r, "W": [[[i, j, "c"], ...], ...]}`` (or ``"Wperp"``
  listing generators of W^{perp2} instead of W)
* ``{"name": ..., "family": "filiform-I" | "filiform-II", "step": s}``

A control file is a list ``[{"duration": "1/3", "value": ["0", "1"]}, ...]``
or an object with that list under ``"segments"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .endpoint import PiecewiseConstantControl
from .filiform import FiliformSpec, build_filiform
from .lie import StratifiedAlgebra, validate
from .multivec import TwoVector
from .rational import parse_rational
from .step2 import Step2Quotient, build_quotient, from_structure_constants, quotient_from_perp


class ParseError(ValueError):
    """Malformed input; ``location`` is "line:col" or a JSON path."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


class GroupValidationError(ValueError):
    def __init__(self, violations):
        self.violations = tuple(violations)
        lines = [f"{v.kind} {tuple(i + 1 for i in v.indices)}: {v.detail}" for v in self.violations]
        super().__init__("invalid Lie algebra:\n  " + "\n  ".join(lines))


@dataclass(frozen=True)
class GroupDefinition:
    name: str
    presentation: str  # constants | step2 | filiform
    algebra: StratifiedAlgebra
    quotient: Step2Quotient | None = None
    filiform: FiliformSpec | None = None


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{exc.lineno}:{exc.colno}", exc.msg) from None


def _rational(value: Any, where: str) -> Fraction:
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        raise ParseError(where, f"expected a rational string like \"p/q\", got {value!r}")
    try:
        return parse_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(where, str(exc)) from None


def _int(value: Any, where: str, low: int | None = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(where, f"expected an integer, got {value!r}")
    if low is not None and value < low:
        raise ParseError(where, f"must be >= {low}")
    return value


def _list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise ParseError(where, f"expected a list, got {type(value).__name__}")
    return value


def _index(value: Any, where: str, n: int) -> int:
    i = _int(value, where, 1)
    if i > n:
        raise ParseError(where, f"index {i} exceeds dimension {n}")
    return i - 1


def _two_vector(terms: Any, where: str, r: int) -> TwoVector:
    out: dict = {}
    for k, term in enumerate(_list(terms, where)):
        here = f"{where}[{k}]"
        term = _list(term, here)
        if len(term) != 3:
            raise ParseError(here, "expected [i, j, \"coefficient\"]")
        i, j = _index(term[0], f"{here}[0]", r), _index(term[1], f"{here}[1]", r)
        if i == j:
            raise ParseError(here, "a wedge needs two distinct indices")
        c = _rational(term[2], f"{here}[2]")
        key, c = ((i, j), c) if i < j else ((j, i), -c)
        out[key] = out.get(key, Fraction(0)) + c
    return TwoVector.from_terms(out, r)


def _constants(doc: dict) -> StratifiedAlgebra:
    dims = [_int(d, f"$.layer_dims[{k}]", 1) for k, d in enumerate(_list(doc.get("layer_dims"), "$.layer_dims"))]
    if not dims:
        raise ParseError("$.layer_dims", "at least one layer required")
    n = sum(dims)
    brackets = {}
    for k, entry in enumerate(_list(doc.get("brackets", []), "$.brackets")):
        here = f"$.brackets[{k}]"
        entry = _list(entry, here)
        if len(entry) != 3:
            raise ParseError(here, "expected [i, j, [coefficients]]")
        i, j = _index(entry[0], f"{here}[0]", n), _index(entry[1], f"{here}[1]", n)
        coeffs = _list(entry[2], f"{here}[2]")
        if len(coeffs) != n:
            raise ParseError(f"{here}[2]", f"expected {n} coefficients, got {len(coeffs)}")
        if (i, j) in brackets:
            raise ParseError(here, f"duplicate bracket [{i + 1},{j + 1}]")
        brackets[(i, j)] = [_rational(c, f"{here}[2][{m}]") for m, c in enumerate(coeffs)]
    names = doc.get("names")
    if names is not None:
        names = [str(x) for x in _list(names, "$.names")]
        if len(names) != n:
            raise ParseError("$.names", f"expected {n} names")
    return StratifiedAlgebra(dims, brackets, names=names, label=str(doc.get("name", "")))


def parse_group(text: str) -> GroupDefinition:
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise ParseError("$", "group definition must be a JSON object")
    name = str(doc.get("name", "unnamed"))
    if "family" in doc:
        family = doc["family"]
        if family not in ("filiform-I", "filiform-II"):
            raise ParseError("$.family", "expected \"filiform-I\" or \"filiform-II\"")
        step = _int(doc.get("step"), "$.step", 2)
        try:
            spec = FiliformSpec(family.split("-")[1], step)
        except ValueError as exc:
            raise ParseError("$.step", str(exc)) from None
        return GroupDefinition(name, "filiform", build_filiform(spec), filiform=spec)
    if "rank" in doc:
        r = _int(doc["rank"], "$.rank", 2)
        if ("W" in doc) == ("Wperp" in doc):
            raise ParseError("$", "give exactly one of \"W\" and \"Wperp\"")
        key = "W" if "W" in doc else "Wperp"
        gens = [_two_vector(g, f"$.{key}[{k}]", r) for k, g in enumerate(_list(doc[key], f"$.{key}"))]
        q = build_quotient(r, gens, name) if key == "W" else quotient_from_perp(r, gens, name)
        report = validate(q.algebra)
        if not report.ok:
            raise GroupValidationError(report.violations)
        return GroupDefinition(name, "step2", q.algebra, quotient=q)
    if "layer_dims" in doc:
        try:
            alg = _constants(doc)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError("$", str(exc)) from None
        report = validate(alg)
        if not report.ok:
            raise GroupValidationError(report.violations)
        q = from_structure_constants(alg) if alg.step == 2 else None
        return GroupDefinition(name, "constants", alg, quotient=q)
    raise ParseError("$", "unrecognized group definition (expected layer_dims, rank or family)")


def parse_control(text: str, rank: int | None = None) -> PiecewiseConstantControl:
    doc = _load_json(text)
    where = "$"
    if isinstance(doc, dict):
        doc, where = doc.get("segments"), "$.segments"
    segs = []
    for k, seg in enumerate(_list(doc, where)):
        here = f"{where}[{k}]"
        if not isinstance(seg, dict):
            raise ParseError(here, "expected {\"duration\": ..., \"value\": [...]}")
        d = _rational(seg.get("duration"), f"{here}.duration")
        if d <= 0:
            raise ParseError(f"{here}.duration", "durations must be positive")
        value = [_rational(x, f"{here}.value[{m}]") for m, x in enumerate(_list(seg.get("value"), f"{here}.value"))]
        if rank is not None and len(value) != rank:
            raise ParseError(f"{here}.value", f"expected {rank} components, got {len(value)}")
        segs.append((d, value))
    try:
        return PiecewiseConstantControl(segs)
    except ValueError as exc:
        raise ParseError(where, str(exc)) from None


def load_group(path: str | Path) -> GroupDefinition:
    return parse_group(Path(path).read_text())


def load_control(path: str | Path, rank: int | None = None) -> PiecewiseConstantControl:
    return parse_control(Path(path).read_text(), rank)
