"""Rational scalars: parsing and formatting helpers.

All exact arithmetic in the package goes through :class:`fractions.Fraction`.
Serialised rationals are ``"p/q"`` strings (or ``"p"`` for integers).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Union

Rational = Fraction
RationalLike = Union[int, str, Fraction]


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {x!r}") from exc
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals; use 'p/q' strings")
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = lcm(d, v.denominator)
    return d


def primitive_integer(v: Iterable[Fraction]) -> tuple[tuple[int, ...], Fraction]:
    """Write ``v = scale * u`` with ``u`` a primitive integer vector and ``scale > 0``.

    The zero vector maps to ``((0, ...), 0)``.
    """
    v = [as_rational(x) for x in v]
    d = common_denominator(v)
    ints = [int(x * d) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return tuple(ints), Fraction(0)
    return tuple(a // g for a in ints), Fraction(g, d)
