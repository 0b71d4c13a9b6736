import random

import pytest

from src.data_models import GccBounds, MeasureKind, SoftGccSpec, ViolationMeasure
from src.tools.flownet import feasible_min_cost_flow
from src.tools.oracle import brute_force_variable_cost, enumerate_min_violation, oracle_filter
from src.tools.softgcc import (
    SoftGccPropagator,
    build_gcc_network,
    build_val_network,
    build_var_network,
    gcc_is_consistent,
    propagate_soft_gcc,
    propagate_soft_gcc_scc_fastpath,
    value_universe,
    value_vertex,
    variable_vertex,
    violation_val,
    violation_var,
)
from src.utils.errors import (
    InfeasibleError,
    MeasureUndefinedError,
    PropagationFailure,
    RejectedInputError,
)
from tests.factories import random_gcc_instance, satisfies_counting_condition


# Measures


def test_variable_measure(example2_bounds):
    assert violation_var([2, 1, 2, 1], example2_bounds) == 1
    assert violation_var([1, 1, 1, 1], example2_bounds) == 3
    assert violation_var([1, 2, 2, 2, 2], example2_bounds) == 0


def test_variable_measure_undefined():
    with pytest.raises(MeasureUndefinedError):
        violation_var([1], GccBounds.of({1: (2, 3)}))
    with pytest.raises(MeasureUndefinedError):
        violation_var([1, 1, 1], GccBounds.of({1: (0, 1)}), universe=[1])


def test_value_measure(example2_bounds, example3_bounds):
    assert violation_val([1, 1, 1, 1], example2_bounds) == 5
    assert violation_val([1, 1, 1, 1], example3_bounds) == 3
    assert violation_val([2, 1, 2, 1], example3_bounds) == 0


def test_weighted_value_measure(example3_bounds):
    measure = ViolationMeasure(kind=MeasureKind.WEIGHTED, over={1: 2}, under={2: 3})
    assert violation_val([1, 1, 1, 1], example3_bounds, measure) == 2 * 1 + 3 * 2
    assert violation_val([3, 3], GccBounds.of({3: (0, 0)}), ViolationMeasure.linear_overflow()) == 6


# Networks


def test_gcc_network_shape(example_domains, example2_bounds):
    net = build_gcc_network(example_domains, example2_bounds)
    assert len(net.vertices) == 8
    assert len(net.arcs) == 12
    assert all(arc.cost == 0 for arc in net.arcs)
    sink_arc = net.arcs_between(value_vertex(2), "t")[0]
    assert (sink_arc.demand, sink_arc.capacity) == (3, 5)


def test_variable_network_adds_relaxation_arcs(example_domains, example2_bounds):
    net = build_var_network(example_domains, example2_bounds)
    assert len(net.arcs) == 14
    for i in (1, 3):
        [relaxed] = net.arcs_between(variable_vertex(i), value_vertex(2))
        assert relaxed.cost == 1


def test_value_network_adds_underflow_and_overflow_arcs(example_domains, example2_bounds):
    net = build_val_network(example_domains, example2_bounds)
    assert len(net.arcs) == 16
    [under] = net.arcs_between("s", value_vertex(2))
    assert (under.capacity, under.cost) == (3, 1)
    overflow_arcs = [a for a in net.arcs_between(value_vertex(1), "t") if a.cost == 1]
    assert overflow_arcs[0].capacity is None


def test_value_network_skips_empty_underflow_arcs(example_domains):
    net = build_val_network(example_domains, GccBounds.of({1: (0, 1)}))
    assert not net.arcs_between("s", value_vertex(1))


def test_hard_gcc_consistency(example_domains, example2_bounds):
    assert not gcc_is_consistent(example_domains, example2_bounds)
    assert gcc_is_consistent(example_domains, GccBounds.of({1: (2, 2), 2: (2, 2)}))


def test_universe_includes_bounded_values():
    assert value_universe([[2, 1]], GccBounds.of({5: (0, 1)}), extra=[0]) == [0, 1, 2, 5]


def test_flow_cost_equals_measure_on_full_assignments():
    rng = random.Random(11)
    checked = 0
    while checked < 200:
        domains, bounds = random_gcc_instance(rng)
        assignment = [rng.choice(domain) for domain in domains]
        fixed = [[v] for v in assignment]
        universe = value_universe(domains, bounds)

        val_flow = feasible_min_cost_flow(build_val_network(fixed, bounds, universe=universe))
        assert val_flow.cost == violation_val(assignment, bounds)

        if not satisfies_counting_condition(len(domains), bounds, universe):
            continue
        var_flow = feasible_min_cost_flow(build_var_network(fixed, bounds, universe), len(domains))
        expected = violation_var(assignment, bounds, universe)
        assert var_flow.cost == expected
        assert brute_force_variable_cost(assignment, bounds, universe) == expected
        checked += 1


# Propagation


def test_example2_raises_cost_lower_bound(example_domains, example2_bounds):
    result = propagate_soft_gcc(example_domains, example2_bounds, range(5), ViolationMeasure.var())
    assert result.domains == example_domains
    assert result.z_domain == [1, 2, 3, 4]
    assert result.flow_cost == 1
    assert result.pruned == 0


def test_example2_tight_budget_prunes(example_domains, example2_bounds):
    result = propagate_soft_gcc(example_domains, example2_bounds, [0, 1], ViolationMeasure.var())
    assert result.domains == [[2], [1], [2], [1]]
    assert result.z_domain == [1]
    assert result.pruned == 2


def test_example2_zero_budget_fails(example_domains, example2_bounds):
    with pytest.raises(PropagationFailure):
        propagate_soft_gcc(example_domains, example2_bounds, [0], ViolationMeasure.var())


def test_example3_value_measure(example_domains, example3_bounds):
    loose = propagate_soft_gcc(example_domains, example3_bounds, range(6), ViolationMeasure.val())
    assert loose.domains == example_domains
    assert loose.z_domain == list(range(6))

    tight = propagate_soft_gcc(example_domains, example3_bounds, [0], ViolationMeasure.val())
    assert tight.domains == [[2], [1], [2], [1]]


def test_variable_measure_undefined_fails_propagation():
    with pytest.raises(PropagationFailure):
        propagate_soft_gcc([[1], [1]], GccBounds.of({1: (0, 1)}), [0, 1, 2], ViolationMeasure.var())


def test_fixed_universe_survives_shrinking_domains():
    bounds = GccBounds.of({1: (0, 1)})
    pinned = SoftGccPropagator(bounds, ViolationMeasure.var(), universe=[1, 2])
    # with value 2 gone from every domain the relaxation arcs still reach it
    result = pinned.propagate([[1], [1]], [0, 1])
    assert result.z_domain == [1]


@pytest.mark.parametrize(
    "domains, table, universe, z_domain, expected_domains, expected_z",
    [
        ([[1, 2], [1]], {1: (2, 2), 2: (0, 1)}, (), [0, 1, 2, 3], [[1, 2], [1]], [0, 1, 2, 3]),
        ([[2]], {1: (1, 1), 2: (0, 0)}, (), [0, 1], [[2]], [1]),
        ([[1], [1, 3]], {1: (0, 1), 3: (0, 0)}, [1, 2, 3], [0, 1], [[1], [1, 3]], [1]),
    ],
    ids=["unreachable-value", "single-value", "already-reassigned"],
)
def test_reassigning_the_variable_supports_its_value(
    domains, table, universe, z_domain, expected_domains, expected_z
):
    propagator = SoftGccPropagator(GccBounds.of(table), ViolationMeasure.var(), universe)
    result = propagator.propagate(domains, z_domain)
    assert result.domains == expected_domains
    assert result.z_domain == expected_z


def test_fast_path_example():
    domains = [[1], [1], [1, 2]]
    bounds = GccBounds.of({1: (0, 2)})
    fast = propagate_soft_gcc_scc_fastpath(domains, bounds, [0])
    general = propagate_soft_gcc(domains, bounds, [0])
    assert fast.domains == general.domains == [[1], [1], [2]]
    assert fast.z_domain == general.z_domain == [0]


def test_fast_path_preconditions(example_domains, example3_bounds):
    with pytest.raises(RejectedInputError):
        propagate_soft_gcc_scc_fastpath(example_domains, example3_bounds, [0, 1])
    with pytest.raises(RejectedInputError):
        propagate_soft_gcc_scc_fastpath(
            example_domains, GccBounds.of({1: (0, 1)}), [0, 1], ViolationMeasure.var()
        )


def _expected(domains, bounds, measure, z_domain):
    spec = SoftGccSpec(variables=[f"x{i}" for i in range(len(domains))], bounds=bounds, measure=measure, cost="z")
    try:
        least = enumerate_min_violation(domains, spec)
        filtered = oracle_filter(domains, spec, max(z_domain))
    except InfeasibleError:
        return None
    new_z = [z for z in z_domain if z >= least]
    return (filtered, new_z) if new_z else None


def _outcome(propagate, domains, z_domain):
    try:
        result = propagate(domains, z_domain)
    except PropagationFailure:
        return None
    return result.domains, result.z_domain


@pytest.mark.parametrize("measure", [ViolationMeasure.var(), ViolationMeasure.val()], ids=["var", "val"])
@pytest.mark.parametrize("budget", [0, 1, 3])
def test_propagator_matches_oracle(measure, budget):
    rng = random.Random(1000 + budget)
    for _ in range(200):
        domains, bounds = random_gcc_instance(rng)
        z_domain = list(range(budget + 1))
        propagator = SoftGccPropagator(bounds, measure, value_universe(domains, bounds))
        assert _outcome(propagator.propagate, domains, z_domain) == _expected(
            domains, bounds, measure, z_domain
        ), (domains, bounds)


@pytest.mark.parametrize("weighted", [False, True], ids=["unit", "weighted"])
def test_fast_path_matches_general_filtering(weighted):
    rng = random.Random(23 if weighted else 19)
    for _ in range(100):
        domains, bounds = random_gcc_instance(rng, zero_lower=True)
        if weighted:
            values = value_universe(domains, bounds)
            measure = ViolationMeasure(
                kind=MeasureKind.WEIGHTED,
                over={v: rng.randint(0, 3) for v in values},
                default_under=0,
            )
        else:
            measure = ViolationMeasure.val()
        z_domain = list(range(rng.randint(0, 3) + 1))
        propagator = SoftGccPropagator(bounds, measure)
        assert _outcome(propagator.propagate_scc, domains, z_domain) == _outcome(
            propagator.propagate, domains, z_domain
        ), (domains, bounds, measure)
        if weighted:
            assert _outcome(propagator.propagate, domains, z_domain) == _expected(
                domains, bounds, measure, z_domain
            )


@pytest.mark.parametrize("measure", [ViolationMeasure.var(), ViolationMeasure.val()], ids=["var", "val"])
def test_flow_cost_equals_minimum_over_domains(measure):
    rng = random.Random(13)
    for _ in range(200):
        domains, bounds = random_gcc_instance(rng)
        universe = value_universe(domains, bounds)
        spec = SoftGccSpec(variables=[f"x{i}" for i in range(len(domains))], bounds=bounds, measure=measure, cost="z")
        if measure.kind == MeasureKind.VAR:
            if not satisfies_counting_condition(len(domains), bounds, universe):
                continue
            flow = feasible_min_cost_flow(build_var_network(domains, bounds, universe), len(domains))
        else:
            flow = feasible_min_cost_flow(build_val_network(domains, bounds, universe=universe))
        assert flow.cost == enumerate_min_violation(domains, spec)
