import random

import pytest

from src.data_models import (
    GccBounds,
    Model,
    RegularMeasure,
    SearchStatus,
    SoftGccSpec,
    Variable,
    ViolationMeasure,
)
from src.engine import (
    BranchAndBound,
    DomainStore,
    build_propagator,
    propagate_fixpoint,
    run_fixpoint,
    solve_min,
)
from src.tools.instance_parser import load_instance
from src.tools.oracle import enumerate_model_optimum
from src.utils.errors import PropagationFailure
from tests.factories import random_model


@pytest.fixture
def load(instance_dir):
    return lambda name: load_instance(instance_dir / name)


# Domain store


def test_store_keeps_canonical_order():
    store = DomainStore({"x": [3, 1, 2], "y": ["b", "a"]})
    assert store["x"] == (1, 2, 3)
    assert store["y"] == ("a", "b")
    assert store.names == ["x", "y"]


def test_store_restrict_and_assign():
    store = DomainStore({"x": [1, 2, 3]})
    assert store.restrict("x", [2, 3, 9])
    assert not store.restrict("x", [1, 2, 3])
    assert store.assign("x", 3)
    assert store.is_assigned("x")
    assert store.value("x") == 3
    with pytest.raises(PropagationFailure):
        store.restrict("x", [1])


def test_store_copies_are_independent():
    store = DomainStore({"x": [1, 2]})
    clone = store.copy()
    clone.assign("x", 1)
    assert store["x"] == (1, 2)
    assert clone != store
    with pytest.raises(ValueError):
        store.value("x")


# Fixpoint


def test_fixpoint_of_tight_example(load):
    store = propagate_fixpoint(load("example2_tight.txt"))
    assert store.as_dict() == {"x1": [2], "x2": [1], "x3": [2], "x4": [1], "z": [1]}


def test_fixpoint_raises_cost_lower_bound(load):
    store = propagate_fixpoint(load("example2.txt"))
    assert store["z"] == (1, 2, 3, 4)
    assert store["x1"] == (1, 2)


def test_fixpoint_is_idempotent(load):
    for name in ("example2.txt", "example3.txt", "maxcsp.txt", "stretch.txt"):
        model = load(name)
        store = propagate_fixpoint(model)
        again = run_fixpoint(store.copy(), [build_propagator(spec, model) for spec in model.constraints])
        assert again == store


def test_fixpoint_failure(load):
    model = load("stretch.txt")
    model.constraints[0] = model.constraints[0].model_copy(update={"measure": RegularMeasure.VAR})
    with pytest.raises(PropagationFailure):
        propagate_fixpoint(model)


# Branch-and-bound


@pytest.mark.parametrize(
    "name, objective",
    [("example2.txt", 1), ("example3.txt", 0), ("maxcsp.txt", 1), ("stretch.txt", 1)],
)
def test_solve_examples(load, name, objective):
    result = solve_min(load(name))
    assert result.status == SearchStatus.OPTIMAL
    assert result.objective == objective
    assert result.assignment[load(name).objective] == objective


def test_solve_example2_assignment(load):
    result = solve_min(load("example2.txt"))
    assert result.assignment == {"x1": 2, "x2": 1, "x3": 2, "x4": 1, "z": 1}
    assert result.statistics.solutions >= 1
    assert result.statistics.propagations > 0


def test_solve_without_objective_stops_at_first_solution(load):
    result = solve_min(load("unconstrained.txt"))
    assert result.status == SearchStatus.SATISFIABLE
    assert result.assignment == {"x": 1, "y": "a"}
    assert result.objective == 0


def test_solve_is_deterministic(load):
    first = solve_min(load("maxcsp.txt"))
    second = solve_min(load("maxcsp.txt"))
    assert first.assignment == second.assignment
    assert first.statistics.nodes == second.statistics.nodes


def test_node_limit(load):
    model = load("example2.txt")
    full = BranchAndBound(model).solve()
    assert not full.statistics.limit_reached

    exact = solve_min(model, node_limit=full.statistics.nodes)
    assert exact.status == SearchStatus.OPTIMAL

    starved = solve_min(model, node_limit=1)
    assert starved.statistics.limit_reached
    assert starved.statistics.nodes == 1
    assert starved.status == SearchStatus.INFEASIBLE

    for limit in range(2, full.statistics.nodes):
        partial = solve_min(model, node_limit=limit)
        assert partial.statistics.nodes <= limit
        if partial.statistics.limit_reached:
            assert partial.status != SearchStatus.OPTIMAL


def test_search_keeps_values_supported_by_reassignment():
    model = Model(
        variables=[
            Variable(name="x1", domain=[3, 1, 2]),
            Variable(name="x2", domain=[3]),
            Variable(name="z1", domain=[0, 1, 2]),
        ],
        constraints=[
            SoftGccSpec(
                variables=["x1", "x2"],
                bounds=GccBounds.of({2: (2, None)}),
                measure=ViolationMeasure.var(),
                cost="z1",
            )
        ],
        objective="z1",
    )
    result = solve_min(model)
    assert result.status == SearchStatus.OPTIMAL
    assert result.objective == 1
    assert result.assignment == {"x1": 2, "x2": 3, "z1": 1}


def test_search_matches_exhaustive_optimum():
    rng = random.Random(97)
    for _ in range(150):
        model = random_model(rng)
        expected = enumerate_model_optimum(model)
        result = solve_min(model)
        if expected is None:
            assert result.status == SearchStatus.INFEASIBLE, model
        else:
            assert result.status == SearchStatus.OPTIMAL, model
            assert result.objective == expected[1], model
