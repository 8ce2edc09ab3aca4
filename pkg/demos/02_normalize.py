"""Turn a wasteful schedule into a busy, irreducible one.

A single machine runs three unit jobs in reverse order and idles at the
start. make_busy fills the idle time; make_irreducible then swaps work
between pairs until earlier jobs sit earlier.
"""

import logging
from fractions import Fraction as F

from meanflow import normalize as nz
from meanflow.model import Instance, Schedule, check_irreducible, objective

logging.basicConfig(level=logging.DEBUG, format="  %(message)s")


def show(label, schedule):
    runs = "  ".join(f"job {j}: " + " ".join(f"[{a},{b})" for a, b in s) for j, s in enumerate(schedule.supports, 1))
    print(f"{label:6} {runs}   objective {objective(schedule)}")


inst = Instance(1, F(1), (F(0), F(0), F(0)))
start = Schedule.from_supports(inst, [[(F(3), F(4))], [(F(2), F(3))], [(F(1), F(2))]])
show("start", start)

busy = nz.make_busy(start)
show("busy", busy)

final = nz.make_irreducible(busy)
show("final", final)
print("irreducible:", check_irreducible(final))
