"""
Brute-Force Oracles

Ground truth by exhaustion for every violation measure and filter. Nothing
here goes through flows or layered graphs: measures are recounted from
occurrence counts, regular distances come from the string-level automaton
distances, and filtering enumerates the whole domain product.
"""

import itertools
import logging
import math
from collections import Counter, deque
from collections.abc import Iterator, Sequence

from config.settings import settings
from src.data_models import (
    Dfa,
    GccBounds,
    MeasureKind,
    Model,
    RegularMeasure,
    SgcaSpec,
    SoftGccSpec,
    SoftRegularSpec,
    ViolationMeasure,
)
from src.tools.automaton import edit_to_language, hamming_to_language
from src.utils.errors import (
    EmptyLanguageError,
    InfeasibleError,
    NoWordOfThisLengthError,
    RejectedInputError,
    UnreachableError,
)
from src.utils.utils import Value, sorted_values

logger = logging.getLogger(__name__)

Spec = SoftGccSpec | SoftRegularSpec | SgcaSpec


def _guard(domains: Sequence[Sequence[Value]]) -> None:
    size = math.prod(len(domain) for domain in domains)
    if size > settings.MAX_ENUMERATION:
        raise RejectedInputError(
            f"domain product has {size} tuples, above the enumeration limit {settings.MAX_ENUMERATION}"
        )


def _tuples(domains: Sequence[Sequence[Value]]) -> Iterator[tuple[Value, ...]]:
    _guard(domains)
    return itertools.product(*(sorted_values(domain) for domain in domains))


# Measures recounted from scratch


def _universe(domains: Sequence[Sequence[Value]], bounds: GccBounds) -> set[Value]:
    return {v for domain in domains for v in domain} | set(bounds.intervals)


def _satisfies(counts: Counter, bounds: GccBounds, universe: set[Value]) -> bool:
    for v in universe:
        high = bounds.upper(v)
        if counts[v] < bounds.lower(v) or (high is not None and counts[v] > high):
            return False
    return True


def _variable_cost(tuple_: Sequence[Value], bounds: GccBounds, universe: set[Value]) -> int:
    """max(total excess, total deficit) over the universe"""
    counts = Counter(tuple_)
    excess = deficit = 0
    for v in universe:
        high = bounds.upper(v)
        if high is not None:
            excess += max(counts[v] - high, 0)
        deficit += max(bounds.lower(v) - counts[v], 0)
    return max(excess, deficit)


def _value_cost(tuple_: Sequence[Value], bounds: GccBounds, measure: ViolationMeasure) -> int:
    counts = Counter(tuple_)
    total = 0
    for v in set(tuple_) | set(bounds.intervals):
        high = bounds.upper(v)
        excess = 0 if high is None else max(counts[v] - high, 0)
        deficit = max(bounds.lower(v) - counts[v], 0)
        if measure.kind == MeasureKind.WEIGHTED:
            over = v if measure.proportional_overflow else measure.over.get(v, measure.default_over)
            under = measure.under.get(v, measure.default_under)
        else:
            over = under = 1
        total += over * excess + under * deficit
    return total


def brute_force_variable_cost(
    assignment: Sequence[Value],
    bounds: GccBounds,
    universe: Sequence[Value] | None = None,
) -> int:
    """
    Fewest changed variables to reach an assignment satisfying the bounds

    Breadth-first search over D_X^n, one changed coordinate per edge.

    Args:
        assignment: full assignment of the scope
        bounds: occurrence bounds
        universe: D_X, the values of assignment and bounds when omitted

    Raises:
        RejectedInputError: more variables than the brute-force limit
        UnreachableError: no assignment over the universe satisfies the bounds
    """
    n = len(assignment)
    if n > settings.MAX_BRUTE_FORCE_VARIABLES:
        raise RejectedInputError(
            f"{n} variables, above the brute-force limit {settings.MAX_BRUTE_FORCE_VARIABLES}"
        )
    values = set(universe) if universe is not None else _universe([assignment], bounds)
    ordered = sorted_values(values)

    start = tuple(assignment)
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        current, depth = queue.popleft()
        if _satisfies(Counter(current), bounds, values):
            return depth
        for i in range(n):
            for v in ordered:
                if v == current[i]:
                    continue
                neighbour = current[:i] + (v,) + current[i + 1 :]
                if neighbour not in seen:
                    seen.add(neighbour)
                    queue.append((neighbour, depth + 1))
    raise UnreachableError(f"no assignment of {n} variables over {ordered} satisfies the bounds")


def _cost_function(domains: Sequence[Sequence[Value]], spec: Spec, dfa: Dfa | None):
    """Per-tuple violation, None where the measure is undefined"""
    if isinstance(spec, SoftRegularSpec):
        if dfa is None:
            raise RejectedInputError(f"soft_regular over {spec.variables} needs its automaton")

        def distance(t):
            try:
                if spec.measure == RegularMeasure.EDIT:
                    return edit_to_language(dfa, t, spec.weights)
                return hamming_to_language(dfa, t)
            except (NoWordOfThisLengthError, EmptyLanguageError):
                return None

        return distance

    if spec.measure.kind == MeasureKind.VAR:
        universe = _universe(domains, spec.bounds)
        high = spec.bounds.sum_upper(list(universe))
        if spec.bounds.sum_lower(list(universe)) > len(domains) or (
            high is not None and high < len(domains)
        ):
            return lambda t: None
        return lambda t: _variable_cost(t, spec.bounds, universe)
    return lambda t: _value_cost(t, spec.bounds, spec.measure)


def _scored(
    domains: Sequence[Sequence[Value]], spec: Spec, dfa: Dfa | None
) -> Iterator[tuple[tuple[Value, ...], int]]:
    cost = _cost_function(domains, spec, dfa)
    for t in _tuples(domains):
        c = cost(t)
        if c is not None:
            yield t, c


def enumerate_min_violation(
    domains: Sequence[Sequence[Value]], spec: Spec, dfa: Dfa | None = None
) -> int:
    """
    Minimum violation over the whole domain product

    Raises:
        RejectedInputError: domain product above the enumeration limit
        InfeasibleError: the measure is undefined on every tuple
    """
    best = min((c for _, c in _scored(domains, spec, dfa)), default=None)
    if best is None:
        raise InfeasibleError(f"{spec.kind} over {spec.variables}: no tuple has a defined violation")
    return best


def oracle_filter(
    domains: Sequence[Sequence[Value]],
    spec: Spec,
    z_max: int | None = None,
    dfa: Dfa | None = None,
) -> list[list[Value]]:
    """
    Keep d in D_i iff some tuple with x_i = d has violation <= z_max

    Args:
        domains: current domains of the constraint scope
        spec: soft_gcc, soft_regular or sgca spec
        z_max: largest allowed violation, None for no limit
        dfa: the automaton of a soft_regular spec

    Returns:
        the filtered domains in canonical order

    Raises:
        RejectedInputError: domain product above the enumeration limit
        InfeasibleError: some domain empties
    """
    support: list[set[Value]] = [set() for _ in domains]
    for t, c in _scored(domains, spec, dfa):
        if z_max is None or c <= z_max:
            for i, v in enumerate(t):
                support[i].add(v)
    if not all(support):
        raise InfeasibleError(f"{spec.kind} over {spec.variables}: no tuple within cost {z_max}")
    return [sorted_values(kept) for kept in support]


def hard_regular_filter(dfa: Dfa, domains: Sequence[Sequence[Value]]) -> list[list[Value]]:
    """
    Domain consistency of the hard regular constraint through state
    reachability: forward from q0, backward from the accepting states.

    Raises:
        InfeasibleError: no word of the domain product is accepted
    """
    n = len(domains)
    forward = [{dfa.initial}]
    for domain in domains:
        forward.append({q for k in forward[-1] for v in domain if (q := dfa.delta(k, v)) is not None})

    backward = [set() for _ in range(n + 1)]
    backward[n] = set(dfa.accepting) & forward[n]
    for i in range(n - 1, -1, -1):
        backward[i] = {
            k for k in forward[i] for v in domains[i] if dfa.delta(k, v) in backward[i + 1]
        }

    filtered = []
    for i, domain in enumerate(domains):
        kept = [v for v in domain if any(dfa.delta(k, v) in backward[i + 1] for k in backward[i])]
        if not kept:
            raise InfeasibleError(f"{dfa.name} accepts no word of the domain product")
        filtered.append(sorted_values(kept))
    return filtered


def enumerate_model_optimum(model: Model) -> tuple[dict[str, Value], int] | None:
    """
    First assignment in declaration-order lexicographic sequence with the
    least objective value, each constraint's violation bounded by its cost
    variable. None when the model has no solution.

    Raises:
        RejectedInputError: search space above the enumeration limit
    """
    names = [variable.name for variable in model.variables]
    domains = [variable.domain for variable in model.variables]
    checks = []
    for spec in model.constraints:
        dfa = model.dfas.get(spec.dfa) if isinstance(spec, SoftRegularSpec) else None
        spec_domains = [model.domain_of(name) for name in spec.variables]
        checks.append((spec, _cost_function(spec_domains, spec, dfa)))

    best = None
    for t in _tuples(domains):
        assignment = dict(zip(names, t, strict=True))
        feasible = True
        for spec, cost in checks:
            c = cost(tuple(assignment[name] for name in spec.variables))
            if c is None or c > assignment[spec.cost]:
                feasible = False
                break
        if not feasible:
            continue
        objective = assignment[model.objective] if model.objective else 0
        if best is None or objective < best[1]:
            best = (assignment, objective)
    logger.debug("exhaustive optimum: %s", None if best is None else best[1])
    return best
