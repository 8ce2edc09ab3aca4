import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from conftest import random_instance, random_schedule, schedules
from meanflow import flow, lp
from meanflow.model import Instance, InstanceError, Schedule, objective, verify


def one_job(p, spans, r=0):
    inst = Instance(1, F(p), (F(r),))
    return inst, Schedule.from_supports(inst, [[(F(a), F(b)) for a, b in spans]])


def test_integral_single_job_network():
    inst, s = one_job(2, [(0, 2)])
    net = flow.build_network(inst, s)
    assert net.breakpoints == (0, 2)
    assert not [a for a in net.arcs if a.cost]
    assert flow.min_cost_flow(net).cost == 0


def test_fractional_single_job_network():
    inst, s = one_job(2, [(0, 1), (F(3, 2), F(5, 2))])
    net = flow.build_network(inst, s)
    assert 2 in net.breakpoints and 3 in net.breakpoints
    costly = [a for a in net.arcs if a.cost]
    assert len(costly) == 1 and net.interval(costly[0].interval) == (2, 3)
    assert flow.min_cost_flow(net).cost == 0


def test_shifted_job_moves_to_release():
    inst, s = one_job(3, [(F(1, 2), F(7, 2))])
    out = flow.integralize(inst, s)
    assert out.supports == ([(0, 3)],)
    assert objective(s) - objective(out) == F(1, 2)


def test_integral_input_kept():
    inst = Instance(2, F(2), (F(0), F(0), F(1)))
    s = Schedule.from_supports(inst, [[(F(0), F(2))], [(F(0), F(2))], [(F(2), F(4))]])
    out = flow.integralize(inst, s)
    assert out.completion == s.completion


def test_rejects_fractional_instance():
    inst, s = one_job(F(3, 2), [(0, F(3, 2))])
    with pytest.raises(InstanceError):
        flow.build_network(inst, s)


def test_infeasible_network_raises():
    net = flow.FlowNetwork(1, 1, 2, (0, 1), (flow.Arc(0, 1, 2, 0), flow.Arc(1, 2, 1, 0, 1, 1), flow.Arc(2, 3, 1, 0)))
    with pytest.raises(flow.FlowInfeasibleError):
        flow.min_cost_flow(net)


def test_dot_export():
    inst, s = one_job(2, [(0, 1), (F(3, 2), F(5, 2))])
    net = flow.build_network(inst, s)
    dot = net.to_dot(flow.min_cost_flow(net))
    assert dot.startswith("digraph") and "style=dashed" in dot


@settings(max_examples=80, deadline=None)
@given(schedules())
def test_bound_chain(s):
    inst = s.instance
    info = flow.integralize_detailed(inst, s)
    out = info.schedule
    assert verify(out).ok and out.is_integral
    assert objective(out) <= objective(info.first_pass)
    assert objective(info.first_pass) <= info.floor_sum + info.flow.cost
    assert info.flow.cost <= info.induced_cost <= info.fractional_sum
    assert info.floor_sum + info.fractional_sum == info.source_objective == objective(s)
    assert flow.integralize(inst, out).completion == out.completion


def test_induced_flow_is_feasible():
    rng = random.Random(11)
    for _ in range(40):
        inst = random_instance(rng)
        s = random_schedule(inst, rng)
        net = flow.build_network(inst, s)
        f = flow.induced_flow(net, s)
        assert all(0 <= x <= a.capacity for x, a in zip(f, net.arcs))
        inflow = {}
        for x, a in zip(f, net.arcs):
            inflow[a.head] = inflow.get(a.head, 0) + x
            inflow[a.tail] = inflow.get(a.tail, 0) - x
        assert all(v == 0 for k, v in inflow.items() if k not in (net.source, net.sink))
        assert inflow[net.sink] == inst.n * inst.p


def test_lp_optimum_survives_integralization():
    rng = random.Random(5)
    for _ in range(30):
        inst = random_instance(rng)
        s, value = lp.solve(inst)
        out = flow.integralize(inst, s)
        assert out.is_integral and objective(out) == value
