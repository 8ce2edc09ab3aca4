from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from meanflow.simplex import Constraint, LinearProgram, Sense, Status, solve_simplex


def lp_of(obj, rows):
    cons = tuple(Constraint(tuple((k, F(c)) for k, c in enumerate(a) if c), Sense(s), F(b)) for a, s, b in rows)
    return LinearProgram(tuple(f"x{k}" for k in range(len(obj))), tuple(F(c) for c in obj), cons)


def _solve_square(A, b):
    """Gauss-Jordan over Fractions; None if singular."""
    n = len(A)
    M = [list(map(F, row)) + [F(v)] for row, v in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / M[col][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


def vertex_optimum(lp: LinearProgram):
    """Best objective over all basic feasible points; None if there is none."""
    n = lp.num_variables
    hyper = []
    for con in lp.constraints:
        a = [F(0)] * n
        for k, c in con.coeffs:
            a[k] = c
        hyper.append((a, con.rhs))
    for k in range(n):
        hyper.append(([F(int(i == k)) for i in range(n)], F(0)))
    best = None
    for pick in combinations(hyper, n):
        x = _solve_square([a for a, _ in pick], [b for _, b in pick])
        if x is not None and lp.is_satisfied_by(x):
            v = lp.value(x)
            best = v if best is None or v < best else best
    return best


def test_textbook_problem():
    # min -3x - 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
    res = solve_simplex(lp_of([-3, -5], [([1, 0], "<=", 4), ([0, 2], "<=", 12), ([3, 2], "<=", 18)]))
    assert res.status is Status.OPTIMAL
    assert res.value == -36
    assert res.x == (2, 6)


def test_equality_and_ge_rows():
    res = solve_simplex(lp_of([1, 1], [([1, 1], "=", F(7, 2)), ([1, -1], ">=", 1)]))
    assert res.status is Status.OPTIMAL and res.value == F(7, 2)


def test_infeasible():
    assert solve_simplex(lp_of([1], [([1], "<=", 1), ([1], ">=", 2)])).status is Status.INFEASIBLE


def test_unbounded():
    assert solve_simplex(lp_of([-1, 0], [([1, -1], "<=", 1)])).status is Status.UNBOUNDED


def test_redundant_equalities():
    res = solve_simplex(lp_of([1, 2], [([1, 1], "=", 2), ([2, 2], "=", 4)]))
    assert res.status is Status.OPTIMAL and res.value == 2


def test_degenerate_cycling_example():
    # Beale's example cycles under naive Dantzig pricing
    obj = [F(-3, 4), 150, F(-1, 50), 6]
    rows = [
        ([F(1, 4), -60, F(-1, 25), 9], "<=", 0),
        ([F(1, 2), -90, F(-1, 50), 3], "<=", 0),
        ([0, 0, 1, 0], "<=", 1),
    ]
    for pricing in ("hybrid", "bland"):
        res = solve_simplex(lp_of(obj, rows), pricing=pricing)
        assert res.status is Status.OPTIMAL and res.value == F(-1, 20)


coef = st.integers(-3, 3)


@st.composite
def small_lps(draw):
    n = draw(st.integers(1, 3))
    k = draw(st.integers(1, 4))
    obj = draw(st.lists(st.integers(0, 4), min_size=n, max_size=n))
    rows = []
    for _ in range(k):
        a = draw(st.lists(coef, min_size=n, max_size=n))
        rows.append((a, draw(st.sampled_from(["<=", ">=", "="])), draw(st.fractions(-4, 6, max_denominator=3))))
    return lp_of(obj, rows)


@settings(max_examples=300, deadline=None)
@given(small_lps(), st.sampled_from(["hybrid", "bland"]))
def test_matches_vertex_enumeration(lp, pricing):
    # nonnegative costs keep the problem bounded, so it is optimal iff feasible
    res = solve_simplex(lp, pricing=pricing)
    best = vertex_optimum(lp)
    if best is None:
        assert res.status is Status.INFEASIBLE
    else:
        assert res.status is Status.OPTIMAL
        assert res.value == best
        assert lp.is_satisfied_by(res.x)


def test_deterministic():
    lp = lp_of([1, 2, 3], [([1, 1, 1], ">=", 3), ([1, -1, 0], "<=", 1)])
    assert solve_simplex(lp) == solve_simplex(lp)


def test_large_coefficients_promote_to_python_ints():
    big = 10**30
    res = solve_simplex(lp_of([1], [([big], ">=", big * 3)]))
    assert res.value == 3


def test_to_text_mentions_every_row():
    text = lp_of([1, -1], [([1, 1], "<=", 2), ([1, 0], ">=", F(1, 2))]).to_text()
    assert "x0 + x1 <= 2/1" in text and "x0 >= 1/2" in text
