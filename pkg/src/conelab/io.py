"""JSON formats for Gram families, cones, cone combinations, germs and points.

Rationals are written as ``"p/q"`` strings (integers as plain JSON numbers
where the value is integral) so files interchange bit-exactly.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .cones import ConeElement, LatticeCone, make_cone
from .germs import MeromorphicGerm
from .linalg import InnerProductForm, LinalgError
from .rational import as_rational, format_rational


class FormatError(ValueError):
    """Malformed input; the message names the offending field."""


def _rational(x: Any, where: str) -> Fraction:
    try:
        return as_rational(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: expected a rational number or 'p/q' string, got {x!r}") from exc


def _integer(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"{where}: expected an integer, got {x!r}")
    return x


def _list(x: Any, where: str) -> list:
    if not isinstance(x, list):
        raise FormatError(f"{where}: expected a list, got {type(x).__name__}")
    return x


def _field(obj: Any, key: str, where: str) -> Any:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    if key not in obj:
        raise FormatError(f"{where}.{key}: missing field")
    return obj[key]


def _rat_out(x: Fraction) -> int | str:
    return x.numerator if x.denominator == 1 else format_rational(x)


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2)


# -- Gram families


def gram_from_json(data: Any) -> InnerProductForm:
    where = "gram-file"
    dims = [_integer(k, f"{where}.dims[{i}]") for i, k in enumerate(_list(_field(data, "dims", where), f"{where}.dims"))]
    grams = _field(data, "gram", where)
    if not isinstance(grams, dict):
        raise FormatError(f"{where}.gram: expected an object keyed by dimension")
    family = {}
    for k in dims:
        key = str(k)
        if key not in grams:
            raise FormatError(f"{where}.gram.{key}: missing matrix for listed dimension")
        rows = _list(grams[key], f"{where}.gram.{key}")
        family[k] = [
            [_rational(x, f"{where}.gram.{key}[{i}][{j}]") for j, x in enumerate(_list(r, f"{where}.gram.{key}[{i}]"))]
            for i, r in enumerate(rows)
        ]
    try:
        return InnerProductForm.from_family(family)
    except LinalgError as exc:
        raise FormatError(f"{where}.gram: {exc}") from exc


def gram_to_json(Q: InnerProductForm) -> dict:
    k = len(Q.gram)
    return {"dims": [k], "gram": {str(k): [[_rat_out(x) for x in row] for row in Q.gram]}}


# -- cones


def cone_from_json(data: Any, where: str = "cone") -> LatticeCone:
    k = _integer(_field(data, "ambient_dim", where), f"{where}.ambient_dim")
    gens = [
        [_rational(x, f"{where}.generators[{i}][{j}]") for j, x in enumerate(_list(g, f"{where}.generators[{i}]"))]
        for i, g in enumerate(_list(_field(data, "generators", where), f"{where}.generators"))
    ]
    for i, g in enumerate(gens):
        if len(g) > k:
            raise FormatError(f"{where}.generators[{i}]: longer than ambient_dim {k}")
        if any(x.denominator != 1 for x in g):
            raise FormatError(f"{where}.generators[{i}]: expected an integer vector")
    lattice = None
    if data.get("lattice") is not None:
        lattice = [
            [_rational(x, f"{where}.lattice[{i}][{j}]") for j, x in enumerate(_list(v, f"{where}.lattice[{i}]"))]
            for i, v in enumerate(_list(data["lattice"], f"{where}.lattice"))
        ]
    try:
        return make_cone(gens, lattice, k)
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def raw_generators(data: Any, where: str = "cone") -> tuple[int, list[list[Fraction]], list[list[Fraction]] | None]:
    """Unvalidated generator list, for inputs that may need triangulating."""
    k = _integer(_field(data, "ambient_dim", where), f"{where}.ambient_dim")
    gens = [[_rational(x, f"{where}.generators") for x in g] for g in _list(_field(data, "generators", where), where)]
    lat = data.get("lattice")
    lattice = None if lat is None else [[_rational(x, f"{where}.lattice") for x in v] for v in lat]
    return k, gens, lattice


def cone_to_json(C: LatticeCone) -> dict:
    return {
        "ambient_dim": C.ambient_dim,
        "generators": [list(g) for g in C.generators],
        "lattice": [[_rat_out(x) for x in v] for v in C.lattice.basis],
    }


def cone_element_from_json(data: Any, where: str = "element") -> ConeElement:
    terms = []
    for i, t in enumerate(_list(_field(data, "terms", where), f"{where}.terms")):
        w = f"{where}.terms[{i}]"
        terms.append((cone_from_json(_field(t, "cone", w), f"{w}.cone"), _rational(_field(t, "coeff", w), f"{w}.coeff")))
    return ConeElement(terms)


def cone_element_to_json(x: ConeElement) -> dict:
    return {"terms": [{"coeff": format_rational(c), "cone": cone_to_json(C)} for C, c in x]}


# -- germs


def germ_from_json(data: Any, where: str = "germ") -> MeromorphicGerm:
    k = _integer(_field(data, "ambient_dim", where), f"{where}.ambient_dim")
    valid = data.get("valid_up_to") if isinstance(data, dict) else None
    if valid is not None:
        valid = _integer(valid, f"{where}.valid_up_to")
    terms = []
    for i, t in enumerate(_list(_field(data, "terms", where), f"{where}.terms")):
        w = f"{where}.terms[{i}]"
        den = []
        for j, d in enumerate(_list(_field(t, "den", w), f"{w}.den")):
            wd = f"{w}.den[{j}]"
            form = [_integer(x, f"{wd}.form") for x in _list(_field(d, "form", wd), f"{wd}.form")]
            if len(form) > k or not any(form):
                raise FormatError(f"{wd}.form: expected a nonzero integer vector of length <= {k}")
            power = _integer(_field(d, "pow", wd), f"{wd}.pow")
            if power <= 0:
                raise FormatError(f"{wd}.pow: expected a positive integer")
            den.append((form, power))
        num = {}
        for j, m in enumerate(_list(_field(t, "num", w), f"{w}.num")):
            wm = f"{w}.num[{j}]"
            exps = tuple(_integer(x, f"{wm}.exps") for x in _list(_field(m, "exps", wm), f"{wm}.exps"))
            if len(exps) > k or any(a < 0 for a in exps):
                raise FormatError(f"{wm}.exps: expected non-negative exponents, at most {k} of them")
            exps = exps + (0,) * (k - len(exps))
            num[exps] = num.get(exps, Fraction(0)) + _rational(_field(m, "coeff", wm), f"{wm}.coeff")
        terms.append(MeromorphicGerm.from_term(num, den, k, valid))
    total = MeromorphicGerm.zero(k, valid)
    for t in terms:
        total = total + t
    return total


def germ_to_json(f: MeromorphicGerm) -> dict:
    terms = []
    for den, num in sorted(f.terms.items()):
        terms.append(
            {
                "den": [{"form": list(u), "pow": s} for u, s in den],
                "num": [{"exps": list(e), "coeff": format_rational(c)} for e, c in sorted(num.items())],
            }
        )
    return {"ambient_dim": f.dim, "valid_up_to": f.valid_up_to, "terms": terms}


# -- points


def point_from_json(data: Any, where: str = "point") -> list:
    """A point as a JSON list (or ``{"point": [...]}``) of numbers or ``"p/q"`` strings."""
    if isinstance(data, dict):
        data = _field(data, "point", where)
    out = []
    for i, x in enumerate(_list(data, where)):
        if isinstance(x, float):
            out.append(x)
        else:
            out.append(_rational(x, f"{where}[{i}]"))
    return out
