"""
Soft Regular Constraint

Layered graphs over the states of a DFA, one layer gap per variable, whose
cheapest start-to-goal path prices the distance between the domains and the
language. The var graph measures Hamming distance, the edit graph adds
deletion and insertion arcs for weighted edit distance.
"""

import heapq
import logging
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel

from src.data_models import (
    Dfa,
    EditWeights,
    LayerArc,
    LayeredGraph,
    RegularMeasure,
)
from src.utils.errors import NoPathError, PropagationFailure, RejectedInputError
from src.utils.utils import Value, sorted_values

logger = logging.getLogger(__name__)

UNREACHED = np.iinfo(np.int64).max // 4


def _labels(dfa: Dfa, domain: Sequence[Value], source: int, target: int) -> set[Value]:
    """V_ikl: values of the domain that move `source` to `target`"""
    labels = set()
    for v in domain:
        code = dfa.symbol_code(v)
        if code is not None and dfa.table[source, code] == target:
            labels.add(v)
    return labels


def build_layered_var(dfa: Dfa, domains: Sequence[Sequence[Value]]) -> LayeredGraph:
    """
    One arc per DFA skeleton pair in every layer gap, labelled with the
    values of D_i realizing it. Off-label use costs one substitution.
    """
    if not domains:
        raise RejectedInputError("soft_regular needs at least one variable")
    skeleton = dfa.skeleton()
    layers = [
        [LayerArc(source=k, target=q, labels=_labels(dfa, domain, k, q)) for k, q in skeleton]
        for domain in domains
    ]
    return LayeredGraph(
        measure=RegularMeasure.VAR,
        dfa=dfa,
        weights=EditWeights.unit(),
        domains=[sorted_values(domain) for domain in domains],
        layers=layers,
    )


def build_layered_edit(
    dfa: Dfa, domains: Sequence[Sequence[Value]], weights: EditWeights | None = None
) -> LayeredGraph:
    """
    The var graph plus a deletion arc (q_k, q_k) in every layer gap and the
    skeleton repeated as intra-layer insertion arcs in every layer.

    A self-loop that already is a transition keeps its labels and doubles as
    the deletion arc.
    """
    weights = weights or EditWeights()
    graph = build_layered_var(dfa, domains)
    graph.measure = RegularMeasure.EDIT
    graph.weights = weights

    for arcs in graph.layers:
        loops = {arc.source: arc for arc in arcs if arc.source == arc.target}
        for k in range(dfa.num_states):
            if k in loops:
                loops[k].deletion = True
            else:
                arcs.append(LayerArc(source=k, target=k, transition=False, deletion=True))

    graph.insertion_arcs = [(k, q) for k, q in dfa.skeleton() if k != q]
    return graph


def build_layered_graph(
    dfa: Dfa,
    domains: Sequence[Sequence[Value]],
    measure: RegularMeasure = RegularMeasure.VAR,
    weights: EditWeights | None = None,
) -> LayeredGraph:
    if measure == RegularMeasure.EDIT:
        return build_layered_edit(dfa, domains, weights)
    return build_layered_var(dfa, domains)


def _cheapest_steps(graph: LayeredGraph) -> list[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Per layer gap: (sources, targets, cheapest step cost over D_i)"""
    gaps = []
    for arcs, domain in zip(graph.layers, graph.domains, strict=True):
        sources = np.array([arc.source for arc in arcs], dtype=np.int64)
        targets = np.array([arc.target for arc in arcs], dtype=np.int64)
        costs = np.full(len(arcs), UNREACHED, dtype=np.int64)
        for j, arc in enumerate(arcs):
            steps = [c for c in (graph.step_cost(arc, v) for v in domain) if c is not None]
            if steps:
                costs[j] = min(steps)
        gaps.append((sources, targets, costs))
    return gaps


def _sweep(gaps, start: np.ndarray, num_states: int, backward: bool) -> np.ndarray:
    """Layer-by-layer relaxation of the acyclic var graph"""
    n = len(gaps)
    table = np.full((n + 1, num_states), UNREACHED, dtype=np.int64)
    if backward:
        table[n] = start
        for i in range(n - 1, -1, -1):
            sources, targets, costs = gaps[i]
            np.minimum.at(table[i], sources, table[i + 1][targets] + costs)
            np.minimum(table[i], UNREACHED, out=table[i])
    else:
        table[0] = start
        for i in range(n):
            sources, targets, costs = gaps[i]
            np.minimum.at(table[i + 1], targets, table[i][sources] + costs)
            np.minimum(table[i + 1], UNREACHED, out=table[i + 1])
    return table


def _dijkstra(
    graph: LayeredGraph, gaps, start: np.ndarray, backward: bool
) -> np.ndarray:
    """
    Priority-queue search over nodes (layer, state) of the edit graph,
    inter-layer and intra-layer arcs together. Ties pop by (layer, state).
    """
    n = graph.num_variables
    q_count = graph.num_states
    table = np.full((n + 1, q_count), UNREACHED, dtype=np.int64)

    inter: list[dict[int, list[tuple[int, int]]]] = []
    for sources, targets, costs in gaps:
        moves: dict[int, list[tuple[int, int]]] = {}
        for k, q, c in zip(sources.tolist(), targets.tolist(), costs.tolist(), strict=True):
            if c >= UNREACHED:
                continue
            if backward:
                moves.setdefault(q, []).append((k, c))
            else:
                moves.setdefault(k, []).append((q, c))
        inter.append(moves)

    intra: dict[int, list[int]] = {}
    for k, q in graph.insertion_arcs:
        if backward:
            intra.setdefault(q, []).append(k)
        else:
            intra.setdefault(k, []).append(q)

    heap = []
    origin_layer = n if backward else 0
    for q in range(q_count):
        if start[q] < UNREACHED:
            table[origin_layer, q] = start[q]
            heap.append((int(start[q]), origin_layer, q))
    heapq.heapify(heap)

    insertion = graph.weights.insertion
    while heap:
        d, i, k = heapq.heappop(heap)
        if d > table[i, k]:
            continue
        successors = [(i, q, insertion) for q in intra.get(k, ())]
        if backward and i > 0:
            successors += [(i - 1, q, c) for q, c in inter[i - 1].get(k, ())]
        elif not backward and i < n:
            successors += [(i + 1, q, c) for q, c in inter[i].get(k, ())]
        for j, q, w in successors:
            nd = d + w
            if nd < table[j, q]:
                table[j, q] = nd
                heapq.heappush(heap, (nd, j, q))
    return table


def shortest_costs(graph: LayeredGraph) -> tuple[np.ndarray, np.ndarray]:
    """
    Forward costs SP(start, node) and backward costs SP(node, goal) as
    (n+1) x |Q| tables; UNREACHED marks unreachable nodes.
    """
    gaps = _cheapest_steps(graph)

    start = np.full(graph.num_states, UNREACHED, dtype=np.int64)
    start[graph.start] = 0
    goals = np.where(graph.dfa.accepting_mask, 0, UNREACHED).astype(np.int64)

    if graph.measure == RegularMeasure.EDIT:
        return _dijkstra(graph, gaps, start, backward=False), _dijkstra(graph, gaps, goals, backward=True)
    return (
        _sweep(gaps, start, graph.num_states, backward=False),
        _sweep(gaps, goals, graph.num_states, backward=True),
    )


def min_violation(graph: LayeredGraph) -> int:
    """
    Cost of the cheapest start-to-goal path

    Raises:
        NoPathError: no accepting node of the last layer is reachable
    """
    forward, _ = shortest_costs(graph)
    best = forward[-1][graph.dfa.accepting_mask].min(initial=UNREACHED)
    if best >= UNREACHED:
        raise NoPathError(
            f"{graph.dfa.name}: no accepting state reachable after {graph.num_variables} steps"
        )
    return int(best)


class RegularPropagation(BaseModel):
    """Result of one soft_regular filtering pass"""

    domains: list[list[Value]]
    z_domain: list[int]
    min_violation: int
    pruned: int = 0

    @property
    def z_min(self) -> int:
        return self.z_domain[0]

    @property
    def z_max(self) -> int:
        return self.z_domain[-1]


class SoftRegularPropagator:
    """
    Domain-consistent filtering of soft_regular[measure](X, M, z)

    A value v stays in D_i iff some arc of layer gap i carries it with
    forward + step + backward <= max(D_z). The lower bound of z is raised to
    the cheapest path cost.
    """

    def __init__(
        self,
        dfa: Dfa,
        measure: RegularMeasure = RegularMeasure.VAR,
        weights: EditWeights | None = None,
    ):
        self.dfa = dfa
        self.measure = measure
        self.weights = weights or EditWeights()
        self.graph: LayeredGraph | None = None

    def propagate(
        self, domains: Sequence[Sequence[Value]], z_domain: Sequence[int]
    ) -> RegularPropagation:
        """
        Raises:
            PropagationFailure: no accepting path, too costly, or a domain empties
        """
        if not z_domain:
            raise PropagationFailure("empty cost domain")
        graph = build_layered_graph(self.dfa, domains, self.measure, self.weights)
        forward, backward = shortest_costs(graph)

        best = int(forward[-1][self.dfa.accepting_mask].min(initial=UNREACHED))
        if best >= UNREACHED:
            raise PropagationFailure(
                f"{self.dfa.name} accepts no word reachable with {len(domains)} variables"
            )
        z_max = max(z_domain)
        if best > z_max:
            raise PropagationFailure(f"minimum violation {best} exceeds max cost {z_max}")
        new_z = sorted(z for z in z_domain if z >= best)

        new_domains = []
        pruned = 0
        for i, (arcs, domain) in enumerate(zip(graph.layers, domains, strict=True)):
            kept = [v for v in sorted_values(domain) if self._supported(graph, forward, backward, i, arcs, v, z_max)]
            if not kept:
                raise PropagationFailure(f"domain of variable #{i + 1} emptied")
            pruned += len(domain) - len(kept)
            new_domains.append(kept)

        graph.update_labels(new_domains)
        self.graph = graph
        logger.debug(
            "soft_regular[%s] on %s: min violation %d, %d values pruned",
            self.measure.value,
            self.dfa.name,
            best,
            pruned,
        )
        return RegularPropagation(
            domains=new_domains, z_domain=new_z, min_violation=best, pruned=pruned
        )

    @staticmethod
    def _supported(
        graph: LayeredGraph,
        forward: np.ndarray,
        backward: np.ndarray,
        i: int,
        arcs: list[LayerArc],
        value: Value,
        z_max: int,
    ) -> bool:
        for arc in arcs:
            head = forward[i, arc.source]
            tail = backward[i + 1, arc.target]
            if head >= UNREACHED or tail >= UNREACHED:
                continue
            step = graph.step_cost(arc, value)
            if step is not None and head + step + tail <= z_max:
                return True
        return False


def propagate_soft_regular(
    domains: Sequence[Sequence[Value]],
    dfa: Dfa,
    z_domain: Sequence[int],
    measure: RegularMeasure = RegularMeasure.VAR,
    weights: EditWeights | None = None,
) -> RegularPropagation:
    """
    One-shot soft_regular filtering

    Args:
        domains: domains of x_1..x_n
        dfa: the automaton M
        z_domain: domain of the cost variable
        measure: Hamming (var) or weighted edit distance
        weights: edit penalties, ignored by the var measure

    Returns:
        RegularPropagation with the kept domains, the new z domain and the
        minimum violation
    """
    return SoftRegularPropagator(dfa, measure, weights).propagate(domains, z_domain)

