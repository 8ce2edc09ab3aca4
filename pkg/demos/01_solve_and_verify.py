"""Solve a small instance exactly and look at the schedule.

Three jobs of length 2 on two machines; the third is released at time 1.
"""

from fractions import Fraction

from meanflow import hardness, lp
from meanflow.model import Instance, decompose_blocks, verify

inst = Instance(m=2, p=Fraction(2), releases=(Fraction(0), Fraction(0), Fraction(1)))
schedule, value = lp.solve(inst)

print("optimal sum of completion times:", value)
for e in schedule.intervals:
    print(f"  job {e.job} on machine {e.machine}: [{e.start}, {e.end})")

# Every schedule can be checked against the feasibility conditions.
print(verify(schedule))

# Blocks are the maximal spans with a fixed set of running jobs.
for b in decompose_blocks(schedule):
    print(f"  block [{b.start}, {b.end}) runs {set(b.profile) or '{}'}")

# The exhaustive oracle agrees.
print("oracle:", hardness.brute_force_equal_p(inst))
