"""Seeded random instance generators for the property suites"""

import random

from src.data_models import (
    Dfa,
    EditWeights,
    GccBounds,
    Model,
    RegularMeasure,
    SgcaSpec,
    SoftGccSpec,
    SoftRegularSpec,
    Transition,
    Variable,
    ViolationMeasure,
)


def random_gcc_instance(
    rng: random.Random,
    max_variables: int = 6,
    max_values: int = 4,
    zero_lower: bool = False,
) -> tuple[list[list[int]], GccBounds]:
    """Domains over values 1..k and bounds on a random subset of the values"""
    n = rng.randint(1, max_variables)
    k = rng.randint(1, max_values)
    values = list(range(1, k + 1))
    domains = [rng.sample(values, rng.randint(1, k)) for _ in range(n)]

    table = {}
    for v in values:
        if rng.random() < 0.7:
            low = 0 if zero_lower else rng.randint(0, 2)
            high = None if rng.random() < 0.2 else rng.randint(low, low + 2)
            table[v] = (low, high)
    return domains, GccBounds.of(table)


def satisfies_counting_condition(n: int, bounds: GccBounds, universe: list) -> bool:
    """Σ l_d <= n <= Σ u_d over the universe"""
    high = bounds.sum_upper(universe)
    return bounds.sum_lower(universe) <= n and (high is None or n <= high)


def random_dfa(rng: random.Random, max_states: int = 5, max_symbols: int = 3) -> Dfa:
    """Partial DFA with random transitions and accepting set"""
    states = [f"q{i}" for i in range(rng.randint(1, max_states))]
    alphabet = ["a", "b", "c"][: rng.randint(1, max_symbols)]
    transitions = [
        Transition(source=q, symbol=a, target=rng.choice(states))
        for q in states
        for a in alphabet
        if rng.random() < 0.7
    ]
    accepting = [q for q in states if rng.random() < 0.4]
    return Dfa(
        states=states,
        alphabet=alphabet,
        transitions=transitions,
        initial=states[0],
        accepting=accepting,
    )


def random_symbol_domains(rng: random.Random, dfa: Dfa, max_variables: int = 6) -> list[list[str]]:
    n = rng.randint(1, max_variables)
    return [rng.sample(dfa.alphabet, rng.randint(1, len(dfa.alphabet))) for _ in range(n)]


def random_model(rng: random.Random) -> Model:
    """
    Two or three decision variables under one or two soft constraints,
    optimizing either the single cost or a linear-overflow sgca over both
    """
    names = [f"x{i}" for i in range(1, rng.randint(2, 3) + 1)]
    use_regular = rng.random() < 0.3
    dfas = {}
    if use_regular:
        dfa = random_dfa(rng, max_states=3, max_symbols=2)
        dfas["M"] = dfa
        variables = [Variable(name=n, domain=rng.sample(dfa.alphabet, rng.randint(1, len(dfa.alphabet)))) for n in names]
    else:
        variables = [Variable(name=n, domain=rng.sample([1, 2, 3], rng.randint(1, 3))) for n in names]

    count = rng.randint(1, 2)
    constraints = []
    for index in range(1, count + 1):
        cost = f"z{index}"
        variables.append(Variable(name=cost, domain=list(range(rng.randint(2, 3) + 1))))
        scope = rng.sample(names, rng.randint(1, len(names)))
        if use_regular:
            measure = rng.choice(list(RegularMeasure))
            constraints.append(SoftRegularSpec(variables=scope, dfa="M", measure=measure, weights=EditWeights.unit(), cost=cost))
        else:
            _, bounds = random_gcc_instance(rng, max_values=3)
            measure = rng.choice([ViolationMeasure.var(), ViolationMeasure.val()])
            constraints.append(SoftGccSpec(variables=scope, bounds=bounds, measure=measure, cost=cost))

    objective = "z1"
    if count == 2:
        variables.append(Variable(name="zagg", domain=list(range(7))))
        constraints.append(
            SgcaSpec(
                variables=["z1", "z2"],
                bounds=GccBounds.of({1: (0, 0), 2: (0, 0)}),
                measure=ViolationMeasure.linear_overflow(),
                cost="zagg",
            )
        )
        objective = "zagg"
    return Model(variables=variables, dfas=dfas, constraints=constraints, objective=objective)
