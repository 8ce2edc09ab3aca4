"""The 3-Partition reduction for arbitrary processing times.

Build the scheduling instance for a yes-instance, lay out the schedule
that the partition suggests, and compare its objective with D.
"""

from meanflow import hardness
from meanflow.model import objective, verify

tp = hardness.ThreePartition(n=2, y=20, x=(6, 7, 7, 6, 7, 7))
h = hardness.generate(tp)
print(f"A={h.A} B={h.B} machines={h.m} jobs={h.N} D={h.D}")

partition = hardness.find_partition(tp)
print("partition:", partition)
s = hardness.yes_schedule(tp, partition)
print("valid:", verify(s).ok)
print("objective", objective(s), "<= D", objective(s) <= h.D)
