"""Exact rational helpers on top of :class:`fractions.Fraction`."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

RationalLike = Union[int, Fraction, str]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction.

    Accepts ints, Fractions and strings such as ``"7/2"`` or ``"3"``.
    Floats are refused because they silently carry binary rounding error.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass a 'num/den' string instead")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(value: Fraction | int) -> str:
    """Render as ``"num/den"``, always with the denominator (``5`` -> ``"5/1"``)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def is_integral(value: Fraction) -> bool:
    return value.denominator == 1


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = math.lcm(d, Fraction(v).denominator)
    return d


def floor(value: Fraction) -> int:
    return math.floor(value)


def ceil(value: Fraction) -> int:
    return math.ceil(value)
