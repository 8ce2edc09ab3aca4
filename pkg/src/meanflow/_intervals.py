"""Finite unions of half-open intervals [a, b) over exact rationals.

An interval set is a sorted list of disjoint, non-adjacent, non-empty
``(a, b)`` pairs. Every function here returns sets in that canonical form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

Span = tuple[Fraction, Fraction]


def normalize(spans: Iterable[Span]) -> list[Span]:
    """Sort, drop empties and merge overlapping or touching spans."""
    out: list[Span] = []
    for a, b in sorted((a, b) for a, b in spans if a < b):
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return out


def measure(spans: Iterable[Span]) -> Fraction:
    return sum((b - a for a, b in spans), Fraction(0))


def union(x: list[Span], y: list[Span]) -> list[Span]:
    return normalize([*x, *y])


def intersection(x: list[Span], y: list[Span]) -> list[Span]:
    out: list[Span] = []
    i = k = 0
    while i < len(x) and k < len(y):
        a = max(x[i][0], y[k][0])
        b = min(x[i][1], y[k][1])
        if a < b:
            out.append((a, b))
        if x[i][1] < y[k][1]:
            i += 1
        else:
            k += 1
    return normalize(out)


def difference(x: list[Span], y: list[Span]) -> list[Span]:
    out: list[Span] = []
    k = 0
    for a, b in x:
        cur = a
        while k < len(y) and y[k][1] <= cur:
            k += 1
        kk = k
        while kk < len(y) and y[kk][0] < b:
            if y[kk][0] > cur:
                out.append((cur, y[kk][0]))
            cur = max(cur, y[kk][1])
            kk += 1
        if cur < b:
            out.append((cur, b))
    return normalize(out)


def clip(x: list[Span], lo: Fraction | None = None, hi: Fraction | None = None) -> list[Span]:
    """Restrict ``x`` to ``[lo, hi)``; ``None`` means unbounded."""
    out = []
    for a, b in x:
        if lo is not None:
            a = max(a, lo)
        if hi is not None:
            b = min(b, hi)
        if a < b:
            out.append((a, b))
    return out


def split_at_measure(x: list[Span], amount: Fraction) -> Fraction:
    """Smallest ``t`` with ``measure(clip(x, hi=t)) == amount``.

    ``amount`` must lie in ``[0, measure(x)]``.
    """
    if amount < 0 or amount > measure(x):
        raise ValueError(f"amount {amount} outside [0, {measure(x)}]")
    if amount == 0:
        return x[0][0] if x else Fraction(0)
    acc = Fraction(0)
    for a, b in x:
        if acc + (b - a) >= amount:
            return a + (amount - acc)
        acc += b - a
    raise AssertionError("unreachable")


def integral_moment(x: Iterable[Span]) -> Fraction:
    """``integral of t dt`` over the set."""
    return sum(((b * b - a * a) / 2 for a, b in x), Fraction(0))
