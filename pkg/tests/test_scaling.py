import random
import time

import pytest

from src.data_models import Dfa, EditWeights, GccBounds, RegularMeasure, Transition, ViolationMeasure
from src.tools.softgcc import SoftGccPropagator, value_universe
from src.tools.softregular import SoftRegularPropagator

# wall-clock ceilings
GCC_SECONDS = 1.0
REGULAR_SECONDS = 1.0


@pytest.mark.slow
def test_value_based_gcc_on_two_hundred_variables():
    rng = random.Random(2024)
    values = list(range(50))
    domains = [rng.sample(values, 8) for _ in range(200)]
    bounds = GccBounds.of({v: (rng.randint(0, 3), rng.randint(3, 6)) for v in values})
    propagator = SoftGccPropagator(bounds, ViolationMeasure.val(), value_universe(domains, bounds))

    started = time.perf_counter()
    result = propagator.propagate(domains, list(range(400)))
    elapsed = time.perf_counter() - started

    assert all(kept for kept in result.domains)
    assert result.z_min == result.flow_cost
    assert elapsed < GCC_SECONDS


@pytest.mark.slow
def test_edit_regular_on_one_hundred_variables():
    rng = random.Random(2025)
    states = [f"q{i}" for i in range(20)]
    alphabet = list("abcde")
    transitions = [
        Transition(source=q, symbol=a, target=rng.choice(states))
        for q in states
        for a in alphabet
        if rng.random() < 0.6
    ]
    dfa = Dfa(states=states, alphabet=alphabet, transitions=transitions, initial="q0", accepting=states[::3])
    domains = [rng.sample(alphabet, 3) for _ in range(100)]
    propagator = SoftRegularPropagator(dfa, RegularMeasure.EDIT, EditWeights.unit())

    started = time.perf_counter()
    result = propagator.propagate(domains, list(range(101)))
    elapsed = time.perf_counter() - started

    assert result.min_violation <= 100
    assert elapsed < REGULAR_SECONDS
