import pytest

from config.settings import settings
from src.data_models import GccBounds, SoftGccSpec, SoftRegularSpec, ViolationMeasure
from src.tools.instance_parser import load_instance
from src.tools.oracle import (
    brute_force_variable_cost,
    enumerate_min_violation,
    enumerate_model_optimum,
    hard_regular_filter,
    oracle_filter,
)
from src.utils.errors import InfeasibleError, RejectedInputError, UnreachableError

AB = ["a", "b"]


def _gcc(n, bounds, measure):
    return SoftGccSpec(variables=[f"x{i}" for i in range(n)], bounds=bounds, measure=measure, cost="z")


def test_breadth_first_variable_cost(example2_bounds):
    assert brute_force_variable_cost([1, 1, 1, 1], example2_bounds) == 3
    assert brute_force_variable_cost([2, 1, 2, 1], example2_bounds) == 1
    assert brute_force_variable_cost([2, 2, 2, 1], example2_bounds) == 0


def test_breadth_first_guards():
    with pytest.raises(RejectedInputError):
        brute_force_variable_cost([1] * 9, GccBounds())
    with pytest.raises(UnreachableError):
        brute_force_variable_cost([1, 1], GccBounds.of({1: (0, 1)}))


def test_minimum_violation_by_enumeration(example_domains, example2_bounds, example3_bounds):
    assert enumerate_min_violation(example_domains, _gcc(4, example2_bounds, ViolationMeasure.var())) == 1
    assert enumerate_min_violation(example_domains, _gcc(4, example3_bounds, ViolationMeasure.val())) == 0


def test_undefined_measure_everywhere_is_infeasible():
    spec = _gcc(2, GccBounds.of({1: (0, 1)}), ViolationMeasure.var())
    with pytest.raises(InfeasibleError):
        enumerate_min_violation([[1], [1]], spec)


def test_filter_by_enumeration(example_domains, example2_bounds):
    spec = _gcc(4, example2_bounds, ViolationMeasure.var())
    assert oracle_filter(example_domains, spec, 1) == [[2], [1], [2], [1]]
    assert oracle_filter(example_domains, spec) == example_domains
    with pytest.raises(InfeasibleError):
        oracle_filter(example_domains, spec, 0)


def test_enumeration_guard(monkeypatch, example2_bounds):
    monkeypatch.setattr(settings, "MAX_ENUMERATION", 10)
    spec = _gcc(4, example2_bounds, ViolationMeasure.val())
    with pytest.raises(RejectedInputError):
        enumerate_min_violation([[1, 2]] * 4, spec)
    assert enumerate_min_violation([[1, 2], [1], [2], [1]], spec) >= 0


def test_regular_spec_needs_its_automaton(stretch_dfa):
    spec = SoftRegularSpec(variables=["x1", "x2"], dfa="stretch", cost="z")
    with pytest.raises(RejectedInputError):
        enumerate_min_violation([AB, AB], spec)
    assert enumerate_min_violation([AB, AB], spec, stretch_dfa) == 0


def test_hard_regular_filter(stretch_dfa):
    assert hard_regular_filter(stretch_dfa, [["a"], AB, AB, AB]) == [["a"], ["a"], ["b"], ["b"]]
    assert hard_regular_filter(stretch_dfa, [AB, AB]) == [AB, AB]
    with pytest.raises(InfeasibleError):
        hard_regular_filter(stretch_dfa, [AB] * 3)


def test_model_optimum_of_example(instance_dir):
    assignment, objective = enumerate_model_optimum(load_instance(instance_dir / "example2.txt"))
    assert objective == 1
    assert assignment == {"x1": 2, "x2": 1, "x3": 2, "x4": 1, "z": 1}


def test_model_optimum_of_infeasible_model(instance_dir):
    model = load_instance(instance_dir / "example2.txt")
    model.variables[-1] = model.variables[-1].model_copy(update={"domain": [0]})
    assert enumerate_model_optimum(model) is None
