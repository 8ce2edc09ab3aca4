"""Round a fractional schedule to integer preemption times.

The job below is released at 0 but starts at 1/2. The min-cost flow
moves all of it into integer slots and gains the lost half unit.
"""

from fractions import Fraction as F

from meanflow import flow
from meanflow.model import Instance, Schedule, objective

inst = Instance(2, F(3), (F(0), F(0), F(1)))
frac = Schedule.from_supports(
    inst,
    [
        [(F(1, 2), F(7, 2))],
        [(F(0), F(3, 2)), (F(2), F(7, 2))],
        [(F(3, 2), F(2)), (F(7, 2), F(6))],
    ],
)
info = flow.integralize_detailed(inst, frac)
print("input objective:   ", objective(frac))
print("integral objective:", objective(info.schedule))
print("flow cost", info.flow.cost, "<= fractional parts", info.fractional_sum)
for e in info.schedule.intervals:
    print(f"  job {e.job} on machine {e.machine}: [{e.start}, {e.end})")
print()
print(info.network.to_dot(info.flow))
