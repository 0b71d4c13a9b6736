"""
Soft Global Cardinality Constraint

Violation measures of soft_gcc, the three flow networks (hard gcc, variable
based, value based) and domain-consistency filtering through min-cost flows.
"""

import logging
from collections.abc import Callable, Sequence

import networkx as nx
from pydantic import BaseModel

from src.data_models import (
    Flow,
    FlowNetwork,
    GccBounds,
    MeasureKind,
    ValueCounts,
    ViolationMeasure,
)
from src.tools.flownet import (
    feasible_min_cost_flow,
    residual,
    residual_distances,
)
from src.utils.errors import (
    InfeasibleError,
    MeasureUndefinedError,
    PropagationFailure,
    RejectedInputError,
)
from src.utils.utils import Value, sorted_values

logger = logging.getLogger(__name__)

SOURCE = "s"
SINK = "t"


def variable_vertex(i: int) -> tuple[str, int]:
    return ("x", i)


def value_vertex(d: Value) -> tuple[str, Value]:
    return ("d", d)


# Violation measures


def value_counts(assignment: Sequence[Value]) -> ValueCounts:
    return ValueCounts.of(list(assignment))


def overflow(counts: ValueCounts, bounds: GccBounds, d: Value) -> int:
    """max(count(d) - u_d, 0)"""
    high = bounds.upper(d)
    if high is None:
        return 0
    return max(counts[d] - high, 0)


def underflow(counts: ValueCounts, bounds: GccBounds, d: Value) -> int:
    """max(l_d - count(d), 0)"""
    return max(bounds.lower(d) - counts[d], 0)


def value_universe(
    domains: Sequence[Sequence[Value]],
    bounds: GccBounds,
    extra: Sequence[Value] = (),
) -> list[Value]:
    """D_X: union of the domains plus every value named in the bounds"""
    values = {d for domain in domains for d in domain}
    values.update(bounds.intervals)
    values.update(extra)
    return sorted_values(values)


def measure_is_defined(n: int, bounds: GccBounds, universe: Sequence[Value]) -> bool:
    """Σ l_d <= n <= Σ u_d over the universe"""
    high = bounds.sum_upper(list(universe))
    return bounds.sum_lower(list(universe)) <= n and (high is None or n <= high)


def violation_var(
    assignment: Sequence[Value],
    bounds: GccBounds,
    universe: Sequence[Value] | None = None,
) -> int:
    """
    Variable-based violation: max(Σ overflow, Σ underflow)

    The universe defaults to the assigned values plus the bounded values.

    Raises:
        MeasureUndefinedError: Σ l_d <= n <= Σ u_d does not hold
    """
    if universe is None:
        universe = value_universe([assignment], bounds)
    if not measure_is_defined(len(assignment), bounds, universe):
        raise MeasureUndefinedError(
            f"no assignment of {len(assignment)} variables can satisfy the bounds"
        )
    counts = ValueCounts.of(list(assignment))
    total_over = sum(overflow(counts, bounds, d) for d in universe)
    total_under = sum(underflow(counts, bounds, d) for d in universe)
    return max(total_over, total_under)


def violation_val(
    assignment: Sequence[Value],
    bounds: GccBounds,
    measure: ViolationMeasure | None = None,
) -> int:
    """Value-based violation Σ F_over(d)·overflow(d) + F_under(d)·underflow(d)"""
    measure = measure or ViolationMeasure.val()
    counts = ValueCounts.of(list(assignment))
    total = 0
    for d in value_universe([assignment], bounds):
        total += measure.over_weight(d) * overflow(counts, bounds, d)
        total += measure.under_weight(d) * underflow(counts, bounds, d)
    return total


def violation(
    assignment: Sequence[Value],
    bounds: GccBounds,
    measure: ViolationMeasure,
    universe: Sequence[Value] | None = None,
) -> int:
    if measure.kind == MeasureKind.VAR:
        return violation_var(assignment, bounds, universe)
    return violation_val(assignment, bounds, measure)


# Networks


def build_gcc_network(
    domains: Sequence[Sequence[Value]],
    bounds: GccBounds,
    universe: Sequence[Value] = (),
) -> FlowNetwork:
    """
    Network G of the hard gcc: s -> x_i (1, 1), x_i -> d for d in D_i (0, 1),
    d -> t (l_d, u_d); all costs 0. A gcc solution is a feasible flow of value n.
    """
    if not domains:
        raise RejectedInputError("gcc needs at least one variable")
    universe = value_universe(domains, bounds, universe)
    vertices = (
        [SOURCE]
        + [variable_vertex(i) for i in range(len(domains))]
        + [value_vertex(d) for d in universe]
        + [SINK]
    )
    net = FlowNetwork(vertices=vertices, source=SOURCE, sink=SINK)

    for i in range(len(domains)):
        net.add_arc(SOURCE, variable_vertex(i), demand=1, capacity=1)
    for i, domain in enumerate(domains):
        for d in sorted_values(domain):
            net.add_arc(variable_vertex(i), value_vertex(d), capacity=1)
    for d in universe:
        net.add_arc(value_vertex(d), SINK, demand=bounds.lower(d), capacity=bounds.upper(d))
    return net


def build_var_network(
    domains: Sequence[Sequence[Value]],
    bounds: GccBounds,
    universe: Sequence[Value] = (),
) -> FlowNetwork:
    """G plus a cost-1 relaxation arc (x_i, d) for every d in D_X outside D_i"""
    net = build_gcc_network(domains, bounds, universe)
    universe = value_universe(domains, bounds, universe)
    for i, domain in enumerate(domains):
        inside = set(domain)
        for d in universe:
            if d not in inside:
                net.add_arc(variable_vertex(i), value_vertex(d), capacity=1, cost=1)
    return net


def build_val_network(
    domains: Sequence[Sequence[Value]],
    bounds: GccBounds,
    measure: ViolationMeasure | None = None,
    universe: Sequence[Value] = (),
) -> FlowNetwork:
    """
    G plus underflow arcs (s, d) with capacity l_d and cost F_under(d), and
    overflow arcs (d, t) with unbounded capacity and cost F_over(d).
    Underflow arcs of values with l_d = 0 would have capacity 0 and are omitted.
    """
    measure = measure or ViolationMeasure.val()
    net = build_gcc_network(domains, bounds, universe)
    universe = value_universe(domains, bounds, universe)
    for d in universe:
        if bounds.lower(d) > 0:
            net.add_arc(SOURCE, value_vertex(d), capacity=bounds.lower(d), cost=measure.under_weight(d))
    for d in universe:
        net.add_arc(value_vertex(d), SINK, capacity=None, cost=measure.over_weight(d))
    return net


def gcc_is_consistent(domains: Sequence[Sequence[Value]], bounds: GccBounds) -> bool:
    """Hard gcc check: a feasible flow of value n exists in G"""
    try:
        feasible_min_cost_flow(build_gcc_network(domains, bounds), len(domains))
    except InfeasibleError:
        return False
    return True


# Propagation


class GccPropagation(BaseModel):
    """Result of one soft_gcc filtering pass"""

    domains: list[list[Value]]
    z_domain: list[int]
    flow_cost: int
    pruned: int = 0

    @property
    def z_min(self) -> int:
        return self.z_domain[0]

    @property
    def z_max(self) -> int:
        return self.z_domain[-1]


class SoftGccPropagator:
    """
    Domain-consistent filtering of soft_gcc[measure](X, l, u, z)

    A value d stays in D_i iff the cheapest flow forced through (x_i, d)
    costs at most max(D_z); the lower bound of z is raised to the cost of
    a min-cost flow. Interior z values are left alone.

    Under the variable-based measure x_i = d is also supported by counting
    x_i as reassigned, whatever value it holds.
    """

    def __init__(
        self,
        bounds: GccBounds,
        measure: ViolationMeasure | None = None,
        universe: Sequence[Value] = (),
    ):
        self.bounds = bounds
        self.measure = measure or ViolationMeasure.val()
        # values kept in D_X while domains shrink during search
        self.universe = list(universe)

    def _network(self, domains: Sequence[Sequence[Value]]) -> tuple[FlowNetwork, int | None]:
        if self.measure.kind == MeasureKind.VAR:
            universe = value_universe(domains, self.bounds, self.universe)
            if not measure_is_defined(len(domains), self.bounds, universe):
                raise PropagationFailure(
                    "variable-based measure undefined: bounds admit no assignment"
                ) from MeasureUndefinedError()
            return build_var_network(domains, self.bounds, self.universe), len(domains)
        return build_val_network(domains, self.bounds, self.measure, self.universe), None

    def _min_cost_flow(
        self, domains: Sequence[Sequence[Value]], z_domain: Sequence[int]
    ) -> tuple[FlowNetwork, Flow, list[int]]:
        if not z_domain:
            raise PropagationFailure("empty cost domain")
        net, required_value = self._network(domains)
        try:
            flow = feasible_min_cost_flow(net, required_value)
        except InfeasibleError as exc:
            raise PropagationFailure(str(exc)) from exc

        z_max = max(z_domain)
        if flow.cost > z_max:
            raise PropagationFailure(f"minimum violation {flow.cost} exceeds max cost {z_max}")
        new_z = sorted(z for z in z_domain if z >= flow.cost)
        return net, flow, new_z

    def propagate(
        self, domains: Sequence[Sequence[Value]], z_domain: Sequence[int]
    ) -> GccPropagation:
        """
        Filter through per-value shortest residual paths

        Returns:
            GccPropagation with the kept domains, z values >= the min-cost
            flow cost, and the number of pruned values

        Raises:
            PropagationFailure: infeasible, too costly, or a domain empties
        """
        net, flow, new_z = self._min_cost_flow(domains, z_domain)
        z_max = new_z[-1]
        res = residual(net, flow)

        # unused in-domain (x_i, d) arcs, by value
        candidates: dict[Value, list[int]] = {}
        for arc in _domain_arcs(net, domains):
            if flow.on(arc) == 0:
                candidates.setdefault(arc.head[1], []).append(arc.tail[1])

        distances: dict[Value, dict] = {}

        def dist_from(d: Value) -> dict:
            if d not in distances:
                distances[d] = residual_distances(res, value_vertex(d))
            return distances[d]

        reassigned = (
            _reassignment_costs(net, domains, flow, dist_from)
            if self.measure.kind == MeasureKind.VAR
            else {}
        )

        removed: set[tuple[int, Value]] = set()
        for d, variables in candidates.items():
            dist = dist_from(d)
            for i in variables:
                path_cost = dist.get(variable_vertex(i))
                support = None if path_cost is None else flow.cost + path_cost
                support = _min_known(support, reassigned.get(i))
                if support is None or support > z_max:
                    removed.add((i, d))

        return self._result(domains, removed, new_z, flow.cost)

    def propagate_scc(
        self, domains: Sequence[Sequence[Value]], z_domain: Sequence[int]
    ) -> GccPropagation:
        """
        Same output as propagate() for value-based measures with l = 0

        With no underflow arcs the only costs sit on arcs into t, so a
        residual d -> x_i path either stays inside X ∪ D_X (cost 0, i.e. d
        and x_i share a strongly connected component) or leaves through t
        once: cheapest exit reachable from d plus cheapest re-entry that
        reaches x_i, both read off the condensation DAG.

        Raises:
            RejectedInputError: var measure or some l_d > 0
            PropagationFailure: as propagate()
        """
        if self.measure.kind == MeasureKind.VAR or not self.bounds.all_lower_zero():
            raise RejectedInputError("the SCC fast path needs a value-based measure with l = 0")

        net, flow, new_z = self._min_cost_flow(domains, z_domain)
        z_max = new_z[-1]
        universe = value_universe(domains, self.bounds, self.universe)

        graph = nx.DiGraph()
        graph.add_nodes_from(variable_vertex(i) for i in range(len(domains)))
        graph.add_nodes_from(value_vertex(d) for d in universe)

        exit_cost: dict = {}
        entry_cost: dict = {}
        candidates = []
        for arc in net.arcs:
            f = flow.on(arc)
            if arc.head == SINK:
                # normal arc (cost 0) or overflow arc (cost F_over)
                if arc.capacity is None or f < arc.capacity:
                    exit_cost[arc.tail] = min(exit_cost.get(arc.tail, arc.cost), arc.cost)
                if f > arc.demand:
                    entry_cost[arc.tail] = min(entry_cost.get(arc.tail, -arc.cost), -arc.cost)
            elif arc.tail != SOURCE:
                if f == 0:
                    graph.add_edge(arc.tail, arc.head)
                    candidates.append(arc)
                else:
                    graph.add_edge(arc.head, arc.tail)

        component_of = {}
        components = list(nx.strongly_connected_components(graph))
        condensed = nx.condensation(graph, scc=components)
        for c, members in enumerate(components):
            for vertex in members:
                component_of[vertex] = c

        best_exit = {c: min((exit_cost[v] for v in components[c] if v in exit_cost), default=None) for c in condensed}
        best_entry = {c: min((entry_cost[v] for v in components[c] if v in entry_cost), default=None) for c in condensed}
        order = list(nx.topological_sort(condensed))
        for c in reversed(order):
            for succ in condensed.successors(c):
                best_exit[c] = _min_known(best_exit[c], best_exit[succ])
        for c in order:
            for pred in condensed.predecessors(c):
                best_entry[c] = _min_known(best_entry[c], best_entry[pred])

        removed: set[tuple[int, Value]] = set()
        for arc in candidates:
            i, d = arc.tail[1], arc.head[1]
            c_value, c_variable = component_of[arc.head], component_of[arc.tail]
            if c_value == c_variable:
                continue
            leave, enter = best_exit[c_value], best_entry[c_variable]
            if leave is None or enter is None or flow.cost + leave + enter > z_max:
                removed.add((i, d))

        return self._result(domains, removed, new_z, flow.cost)

    def _result(
        self,
        domains: Sequence[Sequence[Value]],
        removed: set[tuple[int, Value]],
        new_z: list[int],
        flow_cost: int,
    ) -> GccPropagation:
        new_domains = []
        for i, domain in enumerate(domains):
            kept = [d for d in sorted_values(domain) if (i, d) not in removed]
            if not kept:
                raise PropagationFailure(f"domain of variable #{i + 1} emptied")
            new_domains.append(kept)
        logger.debug(
            "soft_gcc[%s]: flow cost %d, %d values pruned, z >= %d",
            self.measure.kind.value,
            flow_cost,
            len(removed),
            new_z[0],
        )
        return GccPropagation(
            domains=new_domains, z_domain=new_z, flow_cost=flow_cost, pruned=len(removed)
        )


def _domain_arcs(net: FlowNetwork, domains: Sequence[Sequence[Value]]) -> list:
    """Arcs (x_i, d) with d in D_i, excluding relaxation arcs"""
    inside = [set(domain) for domain in domains]
    return [
        arc
        for arc in net.arcs
        if arc.tail != SOURCE
        and arc.head != SINK
        and arc.tail[0] == "x"
        and arc.head[1] in inside[arc.tail[1]]
    ]


def _reassignment_costs(
    net: FlowNetwork,
    domains: Sequence[Sequence[Value]],
    flow: Flow,
    dist_from: Callable[[Value], dict],
) -> dict[int, int]:
    """
    Cheapest variable-based violation with x_i counted as reassigned

    Args:
        net: the G_var network the flow lives on
        domains: current variable domains
        flow: a min-cost flow on net
        dist_from: residual distances from a value vertex

    Returns:
        flow.cost for x_i when some min-cost flow sends it over a relaxation
        arc, flow.cost + 1 otherwise
    """
    inside = [set(domain) for domain in domains]
    costs = {i: flow.cost + 1 for i in range(len(domains))}
    for arc in net.arcs:
        if arc.tail == SOURCE or arc.head == SINK or arc.tail[0] != "x":
            continue
        i, d = arc.tail[1], arc.head[1]
        if d in inside[i]:
            continue
        if flow.on(arc) > 0 or dist_from(d).get(variable_vertex(i)) == -arc.cost:
            costs[i] = flow.cost
    return costs


def _min_known(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def propagate_soft_gcc(
    domains: Sequence[Sequence[Value]],
    bounds: GccBounds,
    z_domain: Sequence[int],
    measure: ViolationMeasure | None = None,
) -> GccPropagation:
    return SoftGccPropagator(bounds, measure).propagate(domains, z_domain)


def propagate_soft_gcc_scc_fastpath(
    domains: Sequence[Sequence[Value]],
    bounds: GccBounds,
    z_domain: Sequence[int],
    measure: ViolationMeasure | None = None,
) -> GccPropagation:
    return SoftGccPropagator(bounds, measure).propagate_scc(domains, z_domain)

