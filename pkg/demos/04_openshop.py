"""Unit-operation open shop through the parallel-machine solver.

Each job needs one unit on each of three machines. The solver schedules
the equivalent problem with p = 3, rounds it to integer slots and then
hands out machines by edge colouring.
"""

from meanflow.openshop import OpenShopInstance, solve_openshop

inst = OpenShopInstance(m=3, releases=(0, 0, 1, 2))
schedule, value = solve_openshop(inst)
print("sum of completion times:", value)

horizon = max(op.slot for op in schedule.assignments) + 1
grid = {(op.machine, op.slot): op.job for op in schedule.assignments}
for q in range(1, inst.m + 1):
    row = " ".join(str(grid.get((q, t), ".")) for t in range(horizon))
    print(f"  M{q}: {row}")
print("violations:", schedule.violations() or "none")
