"""Independent exhaustive searches used only by the tests."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product


def equal_p_full_enumeration(m: int, p: int, releases: list[int]) -> int:
    """Minimum sum C_j over every unit-slot assignment, without any pruning.

    Tries each subset of at most ``m`` released unfinished jobs per slot, idle
    slots included, up to the horizon ``max r + n p``. Exponential; for tiny
    inputs only.
    """
    n = len(releases)
    horizon = max(releases) + n * p

    @lru_cache(maxsize=None)
    def go(t: int, rem: tuple[int, ...]) -> float:
        if not any(rem):
            return 0
        if t >= horizon:
            return float("inf")
        avail = [j for j in range(n) if rem[j] and releases[j] <= t]
        best = float("inf")
        for k in range(0, min(m, len(avail)) + 1):
            for pick in combinations(avail, k):
                nr = list(rem)
                done = 0
                for j in pick:
                    nr[j] -= 1
                    if nr[j] == 0:
                        done += t + 1
                best = min(best, done + go(t + 1, tuple(nr)))
        return best

    return go(0, tuple([p] * n))


def openshop_optimum(m: int, releases: list[int]) -> int:
    """Minimum sum C_i for the unit-operation open shop.

    State: slot ``t`` and, per job, the set of machines it still needs. In
    each slot we try every maximal way of matching free machines to
    released jobs that still need them. Restricting to maximal matchings
    loses nothing: if machine ``q`` idles in slot ``t`` while job ``j`` is
    free and needs ``q``, moving ``j``'s later operation on ``q`` into ``t``
    creates no conflict and delays nobody. With maximal matchings every
    slot after the last release finishes at least one operation, so the
    search ends by ``max r + n m``.
    """
    n = len(releases)
    full = (1 << m) - 1

    @lru_cache(maxsize=None)
    def go(t: int, need: tuple[int, ...]) -> int:
        if not any(need):
            return 0
        if t > max(releases) + n * m:
            raise AssertionError("search ran past the horizon")
        avail = [j for j in range(n) if need[j] and releases[j] <= t]
        best = None
        # choice[q] is the job on machine q in this slot, or -1 for idle
        for choice in product([-1] + avail, repeat=m):
            used = [c for c in choice if c >= 0]
            if len(used) != len(set(used)):
                continue
            if not all(c < 0 or need[c] >> q & 1 for q, c in enumerate(choice)):
                continue
            free = [j for j in avail if j not in used]
            if any(choice[q] < 0 and need[j] >> q & 1 for q in range(m) for j in free):
                continue
            nn = list(need)
            done = 0
            for q, c in enumerate(choice):
                if c >= 0:
                    nn[c] &= ~(1 << q)
                    if nn[c] == 0:
                        done += t + 1
            v = done + go(t + 1, tuple(nn))
            if best is None or v < best:
                best = v
        return best

    return go(0, tuple([full] * n))
