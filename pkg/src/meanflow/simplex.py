"""Exact two-phase primal simplex with Bland's rule.

The tableau is kept integral by fraction-free (Bareiss-style) pivoting: every
entry is the true tableau value times a common denominator ``d``, and each
pivot divides exactly by the previous ``d``. Entries live in an ``int64``
numpy array while they fit and move to Python integers when they might not,
so the arithmetic is exact either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .rational import format_rational

_INT64_SAFE = 1 << 62
DEGENERATE_STREAK = 50


class Sense(str, Enum):
    LE = "<="
    EQ = "="
    GE = ">="


@dataclass(frozen=True)
class Constraint:
    """``sum(coef * x[var]) <sense> rhs``; ``coeffs`` is a tuple of ``(var, coef)``."""

    coeffs: tuple[tuple[int, Fraction], ...]
    sense: Sense
    rhs: Fraction
    family: str = ""


@dataclass(frozen=True)
class LinearProgram:
    """Minimize ``objective . x`` subject to ``constraints`` and ``x >= 0``."""

    variables: tuple[str, ...]
    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    def coefficients(self) -> Iterable[Fraction]:
        for con in self.constraints:
            for _, c in con.coeffs:
                yield c

    def is_satisfied_by(self, x: Sequence[Fraction]) -> bool:
        if any(v < 0 for v in x):
            return False
        for con in self.constraints:
            lhs = sum((c * x[k] for k, c in con.coeffs), Fraction(0))
            if con.sense is Sense.LE and not lhs <= con.rhs:
                return False
            if con.sense is Sense.GE and not lhs >= con.rhs:
                return False
            if con.sense is Sense.EQ and lhs != con.rhs:
                return False
        return True

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x) if c), Fraction(0))

    def to_text(self) -> str:
        """Human-readable dump, one constraint per line. Not a stable format."""

        def term(k: int, c: Fraction, first: bool) -> str:
            sign = "-" if c < 0 else ("" if first else "+")
            mag = abs(c)
            body = self.variables[k] if mag == 1 else f"{format_rational(mag)} {self.variables[k]}"
            return f"{sign} {body}".strip() if first else f"{sign} {body}"

        obj = [(k, c) for k, c in enumerate(self.objective) if c]
        lines = ["minimize", "  " + " ".join(term(k, c, i == 0) for i, (k, c) in enumerate(obj)), "subject to"]
        for con in self.constraints:
            lhs = " ".join(term(k, c, i == 0) for i, (k, c) in enumerate(con.coeffs)) or "0"
            tag = f"  \\ {con.family}" if con.family else ""
            lines.append(f"  {lhs} {con.sense.value} {format_rational(con.rhs)}{tag}")
        lines.append("bounds")
        lines.append("  all variables >= 0")
        return "\n".join(lines)


class Status(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class SimplexResult:
    status: Status
    value: Fraction | None = None
    x: tuple[Fraction, ...] = field(default_factory=tuple)
    pivots: int = 0


class _Tableau:
    """Tableau with integer numerators and one positive denominator per row.

    Row ``i`` represents ``t[i] / den[i]``; the last row holds reduced costs.
    A pivot only touches rows with a nonzero entry in the pivot column, and
    when the pivot entry is a unit only the pivot row's nonzero columns.
    """

    def __init__(self, t: np.ndarray, basis: list[int], pricing: str = "hybrid") -> None:
        if pricing not in ("hybrid", "bland"):
            raise ValueError(f"unknown pricing rule {pricing!r}")
        self.t = t
        self.den = np.ones(t.shape[0], dtype=t.dtype)
        self.basis = basis
        self.pivots = 0
        self.always_bland = pricing == "bland"

    @property
    def exact(self) -> bool:
        return self.t.dtype == object

    def _promote(self) -> None:
        if not self.exact:
            self.t = self.t.astype(object)
            self.den = self.den.astype(object)

    def _fits(self, *bounds: int) -> bool:
        return self.exact or sum(bounds) < _INT64_SAFE

    def _reduce_rows(self, rows: np.ndarray) -> None:
        """Divide each row and its denominator by their common gcd."""
        if self.exact:
            for i in rows:
                g = math.gcd(*map(int, self.t[i]), int(self.den[i]))
                if g > 1:
                    self.t[i] //= g
                    self.den[i] //= g
            return
        sub = self.t[rows]
        g = np.gcd(np.gcd.reduce(sub, axis=1), self.den[rows])
        big = g > 1
        if big.any():
            rr = rows[big]
            self.t[rr] = sub[big] // g[big, None]
            self.den[rr] //= g[big]

    def set_objective(self, cost: Sequence[int]) -> None:
        """Install ``cost`` (one entry per column but the rhs), priced out against the basis."""
        priced = [(i, b) for i, b in enumerate(self.basis) if cost[b]]
        D = 1
        for i, _ in priced:
            D = math.lcm(D, int(self.den[i]))
        acc = np.array([D * c for c in cost] + [0], dtype=object)
        for i, b in priced:
            acc -= (cost[b] * (D // int(self.den[i]))) * self.t[i].astype(object)
        if not self._fits(max(abs(int(v)) for v in acc), D):
            self._promote()
        self.t[-1] = acc.astype(self.t.dtype)
        self.den[-1] = D
        self._reduce_rows(np.array([self.t.shape[0] - 1]))

    def pivot(self, r: int, s: int) -> None:
        t = self.t
        a = int(t[r, s])
        if a < 0:
            t[r] = -t[r]
            a = -a
        # row r becomes t[r] / a (its old denominator cancels)
        self.den[r] = a
        col = t[:, s].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if len(rows):
            cvals = col[rows]
            if a == 1:
                cols = np.flatnonzero(t[r])
                sub = t[np.ix_(rows, cols)]
                if not self._fits(int(np.abs(cvals).max()) * int(np.abs(t[r, cols]).max()), int(np.abs(sub).max())):
                    self._promote()
                    t, sub, cvals = self.t, sub.astype(object), cvals.astype(object)
                t[np.ix_(rows, cols)] = sub - np.outer(cvals, t[r, cols])
                # denominators unchanged: den[i] * a with a == 1
            else:
                sub = t[rows]
                if not self._fits(a * int(np.abs(sub).max()), int(np.abs(cvals).max()) * int(np.abs(t[r]).max()),
                                  a * int(np.abs(self.den[rows]).max())):
                    self._promote()
                    t, sub, cvals = self.t, sub.astype(object), cvals.astype(object)
                t[rows] = a * sub - np.outer(cvals, t[r])
                self.den[rows] = self.den[rows] * a
                self._reduce_rows(rows)
        self._reduce_rows(np.array([r]))
        self.basis[r] = s
        self.pivots += 1

    def entering(self, allowed: int, bland: bool) -> int | None:
        """Most negative reduced cost, or the lowest-index negative one under Bland's rule."""
        obj = self.t[-1, :allowed]
        if bland:
            neg = np.flatnonzero(obj < 0)
            return int(neg[0]) if len(neg) else None
        k = int(np.argmin(obj))
        return k if obj[k] < 0 else None

    def leaving(self, s: int) -> int | None:
        """Bland ratio test: minimum ratio, ties to the lowest basic variable.

        The row denominator cancels in ``rhs / entry`` so numerators suffice.
        """
        t = self.t
        col = t[:-1, s]
        cand = np.flatnonzero(col > 0)
        best = None
        for i in cand:
            num, den = int(t[i, -1]), int(col[i])
            if best is None:
                best = (num, den, self.basis[i], int(i))
                continue
            lhs, rhs = num * best[1], best[0] * den
            if lhs < rhs or (lhs == rhs and self.basis[i] < best[2]):
                best = (num, den, self.basis[i], int(i))
        return None if best is None else best[3]

    def run(self, allowed: int, limit: int | None = None) -> bool:
        """Pivot to optimality; False if unbounded.

        Dantzig pricing is used until ``DEGENERATE_STREAK`` consecutive
        degenerate pivots, then Bland's rule until the objective moves again.
        Bland's rule cannot cycle and every non-degenerate pivot strictly
        improves the objective, so the loop terminates.
        """
        streak = 0
        while True:
            s = self.entering(allowed, bland=self.always_bland or streak >= DEGENERATE_STREAK)
            if s is None:
                return True
            r = self.leaving(s)
            if r is None:
                return False
            degenerate = self.t[r, -1] == 0
            self.pivot(r, s)
            streak = streak + 1 if degenerate else 0
            if limit is not None and self.pivots > limit:
                raise RuntimeError("pivot limit exceeded")

    def rhs(self, i: int) -> Fraction:
        return Fraction(int(self.t[i, -1]), int(self.den[i]))

    def value(self) -> Fraction:
        return -self.rhs(self.t.shape[0] - 1)

    def delete_rows(self, rows: list[int]) -> None:
        if not rows:
            return
        drop = set(rows)
        keep = [i for i in range(self.t.shape[0]) if i not in drop]
        self.t = self.t[keep]
        self.den = self.den[keep]
        self.basis = [b for i, b in enumerate(self.basis) if i not in drop]

    def drop_columns_from(self, start: int, stop: int) -> None:
        keep = list(range(start)) + list(range(stop, self.t.shape[1]))
        self.t = self.t[:, keep]


def _integer_rows(lp: LinearProgram) -> tuple[list[tuple[dict[int, int], Sense, int]], int]:
    """Scale to integer data; returns rows and the variable scale ``L``.

    Rows with fractional coefficients are multiplied through by the lcm of
    their denominators. Fractional right-hand sides are then cleared by the
    substitution ``x = y / L`` so unit coefficients stay unit.
    """
    scaled = []
    for con in lp.constraints:
        den = 1
        for _, c in con.coeffs:
            den = math.lcm(den, Fraction(c).denominator)
        scaled.append(({k: Fraction(c) * den for k, c in con.coeffs}, con.sense, con.rhs * den))
    L = 1
    for _, _, rhs in scaled:
        L = math.lcm(L, rhs.denominator)
    rows = []
    for coeffs, sense, rhs in scaled:
        rows.append(({k: int(c) for k, c in coeffs.items() if c}, sense, int(rhs * L)))
    return rows, L


def solve_simplex(lp: LinearProgram, pivot_limit: int | None = None, pricing: str = "hybrid") -> SimplexResult:
    """Solve ``lp`` exactly. Deterministic: same input, same pivots, same vertex.

    ``pricing="bland"`` uses Bland's rule for every pivot; the default
    ``"hybrid"`` prices by most negative reduced cost and falls back to
    Bland's rule on degenerate stalls.
    """
    nvar = lp.num_variables
    rows, L = _integer_rows(lp)
    cden = 1
    for c in lp.objective:
        cden = math.lcm(cden, Fraction(c).denominator)
    cost = [int(Fraction(c) * cden) for c in lp.objective]

    # orient every row so rhs >= 0 and zero-rhs inequalities are "<="
    norm = []
    for coeffs, sense, rhs in rows:
        if rhs < 0 or (rhs == 0 and sense is Sense.GE):
            coeffs = {k: -c for k, c in coeffs.items()}
            rhs = -rhs
            sense = {Sense.LE: Sense.GE, Sense.GE: Sense.LE, Sense.EQ: Sense.EQ}[sense]
        norm.append((coeffs, sense, rhs))

    n_slack = sum(1 for _, s, _ in norm if s is not Sense.EQ)
    n_art = sum(1 for _, s, _ in norm if s is not Sense.LE)
    ncol = nvar + n_slack + n_art
    big = max((abs(v) for coeffs, _, rhs in norm for v in (*coeffs.values(), rhs)), default=0)
    big = max([big, *(abs(c) for c in cost)])
    t = np.zeros((len(norm) + 1, ncol + 1), dtype=np.int64 if big < (1 << 31) else object)
    basis: list[int] = []
    sk, ak = nvar, nvar + n_slack
    for i, (coeffs, sense, rhs) in enumerate(norm):
        for k, c in coeffs.items():
            t[i, k] = c
        t[i, -1] = rhs
        if sense is Sense.LE:
            t[i, sk] = 1
            basis.append(sk)
            sk += 1
        else:
            if sense is Sense.GE:
                t[i, sk] = -1
                sk += 1
            t[i, ak] = 1
            basis.append(ak)
            ak += 1
    tab = _Tableau(t, basis, pricing)

    art_start = nvar + n_slack
    if n_art:
        phase1 = [0] * art_start + [1] * n_art
        tab.set_objective(phase1)
        tab.run(ncol, pivot_limit)
        if tab.value() != 0:
            return SimplexResult(Status.INFEASIBLE, pivots=tab.pivots)
        # drive zero-valued artificials out of the basis
        redundant = []
        for i in range(len(tab.basis)):
            if tab.basis[i] < art_start:
                continue
            nz = np.flatnonzero(tab.t[i, :art_start])
            if len(nz):
                tab.pivot(i, int(nz[0]))
            else:
                redundant.append(i)
        tab.delete_rows(redundant)
        tab.drop_columns_from(art_start, ncol)

    tab.set_objective(cost + [0] * n_slack)
    if not tab.run(art_start, pivot_limit):
        return SimplexResult(Status.UNBOUNDED, pivots=tab.pivots)

    x = [Fraction(0)] * nvar
    for i, b in enumerate(tab.basis):
        if b < nvar:
            x[b] = tab.rhs(i) / L
    value = lp.value(x)
    assert lp.is_satisfied_by(x), "simplex returned an infeasible vertex"
    assert value == tab.value() / (cden * L)
    return SimplexResult(Status.OPTIMAL, value, tuple(x), tab.pivots)
