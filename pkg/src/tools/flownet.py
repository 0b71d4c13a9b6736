"""
Min-Cost Flow Engine

Successive shortest paths with vertex potentials on integral networks whose
arcs carry demands (lower bounds), capacities and nonnegative costs. Also
builds residual graphs and prices "forced" arcs, which is what every soft_gcc
filtering step asks of it.
"""

import heapq
import logging
from collections import deque

from src.data_models import (
    Arc,
    Flow,
    FlowNetwork,
    ResidualArc,
    ResidualGraph,
    ShortestPath,
)
from src.data_models.flow import Vertex
from src.utils.errors import InfeasibleError, UnreachableError

logger = logging.getLogger(__name__)

INF = float("inf")


class MinCostFlowSolver:
    """
    Minimum-cost feasible flow with lower bounds

    The network is first rewritten into a zero-demand network: an arc with
    demand d and capacity c keeps capacity c - d, and the d units become
    supplies/deficits at its endpoints, which are wired to an auxiliary
    source S* and sink T*. The flow is feasible iff every S* arc saturates.

    Each phase runs Dijkstra on reduced costs, updates the potentials and then
    saturates all zero-reduced-cost augmenting paths (level graph + DFS), so
    the number of Dijkstra runs is bounded by the number of distinct path
    costs rather than the flow value.

    Usage:
        solver = MinCostFlowSolver(network, required_value=4)
        flow = solver.solve()
    """

    def __init__(self, network: FlowNetwork, required_value: int | None = None):
        if required_value is not None and required_value < 0:
            raise ValueError(f"required value must be nonnegative, got {required_value}")
        self.network = network
        self.required_value = required_value
        self._build()

    def _build(self) -> None:
        net = self.network
        self.index = {v: i for i, v in enumerate(net.vertices)}
        n = len(net.vertices)
        self.super_source = n
        self.super_sink = n + 1
        self.size = n + 2

        self.tail: list[int] = []
        self.head: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(self.size)]
        self.potential = [0] * self.size

        # larger than any amount a single arc can ever carry
        self.infinity = (
            sum(a.capacity for a in net.arcs if a.capacity is not None)
            + sum(a.demand for a in net.arcs)
            + (self.required_value or 0)
            + 1
        )

        balance = [0] * n
        self.arc_edge: dict[int, int] = {}
        for arc in net.arcs:
            u, v = self.index[arc.tail], self.index[arc.head]
            capacity = self.infinity if arc.capacity is None else arc.capacity
            self.arc_edge[arc.id] = self._add_edge(u, v, capacity - arc.demand, arc.cost)
            balance[v] += arc.demand
            balance[u] -= arc.demand

        s, t = self.index[net.source], self.index[net.sink]
        if self.required_value is None:
            self._add_edge(t, s, self.infinity, 0)
        else:
            balance[s] += self.required_value
            balance[t] -= self.required_value

        self.required = 0
        for v, b in enumerate(balance):
            if b > 0:
                self._add_edge(self.super_source, v, b, 0)
                self.required += b
            elif b < 0:
                self._add_edge(v, self.super_sink, -b, 0)

    def _add_edge(self, u: int, v: int, capacity: int, cost: int) -> int:
        """Add edge u->v and its zero-capacity twin; twins are e and e ^ 1"""
        e = len(self.head)
        for a, b, c, w in ((u, v, capacity, cost), (v, u, 0, -cost)):
            self.tail.append(a)
            self.head.append(b)
            self.cap.append(c)
            self.cost.append(w)
            self.adj[a].append(len(self.head) - 1)
        return e

    def _reduced_cost(self, e: int) -> int:
        return self.cost[e] + self.potential[self.tail[e]] - self.potential[self.head[e]]

    def _shortest_distances(self) -> list:
        """Dijkstra from S* on reduced costs; ties broken by vertex index"""
        dist = [INF] * self.size
        dist[self.super_source] = 0
        heap = [(0, self.super_source)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for e in self.adj[u]:
                if self.cap[e] <= 0:
                    continue
                v = self.head[e]
                nd = d + self._reduced_cost(e)
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        return dist

    def _admissible_levels(self) -> list[int]:
        level = [-1] * self.size
        level[self.super_source] = 0
        queue = deque([self.super_source])
        while queue:
            u = queue.popleft()
            for e in self.adj[u]:
                v = self.head[e]
                if level[v] < 0 and self.cap[e] > 0 and self._reduced_cost(e) == 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level

    def _augment_once(self, level: list[int], cursor: list[int], limit: int) -> int:
        """Push along one admissible S*-T* path of the level graph"""
        path: list[int] = []
        u = self.super_source
        while True:
            if u == self.super_sink:
                amount = min(limit, min(self.cap[e] for e in path))
                for e in path:
                    self.cap[e] -= amount
                    self.cap[e ^ 1] += amount
                return amount

            edges = self.adj[u]
            while cursor[u] < len(edges):
                e = edges[cursor[u]]
                v = self.head[e]
                if (
                    self.cap[e] > 0
                    and level[v] == level[u] + 1
                    and self._reduced_cost(e) == 0
                ):
                    break
                cursor[u] += 1
            else:
                # dead end: retreat
                if u == self.super_source:
                    return 0
                level[u] = -1
                e = path.pop()
                u = self.tail[e]
                cursor[u] += 1
                continue

            path.append(e)
            u = self.head[e]

    def _blocking_flow(self, limit: int) -> int:
        total = 0
        while total < limit:
            level = self._admissible_levels()
            if level[self.super_sink] < 0:
                break
            cursor = [0] * self.size
            while total < limit:
                amount = self._augment_once(level, cursor, limit - total)
                if amount == 0:
                    break
                total += amount
        return total

    def solve(self) -> Flow:
        """
        Compute a minimum-cost feasible flow

        Returns:
            Integral Flow meeting every demand and the required value

        Raises:
            InfeasibleError: demands, capacities and required value conflict
        """
        pushed = 0
        phases = 0
        while pushed < self.required:
            dist = self._shortest_distances()
            if dist[self.super_sink] == INF:
                break
            # vertices beyond the sink move with it; reduced costs stay >= 0
            reach = dist[self.super_sink]
            for v in range(self.size):
                self.potential[v] += min(dist[v], reach)
            pushed += self._blocking_flow(self.required - pushed)
            phases += 1

        if pushed < self.required:
            raise InfeasibleError(
                f"no feasible flow: only {pushed} of {self.required} forced units routed"
            )

        flow = self._extract_flow()
        logger.debug(
            "min-cost flow: %d arcs, %d phases, value %d, cost %d",
            len(self.network.arcs),
            phases,
            flow.value,
            flow.cost,
        )
        return flow

    def _extract_flow(self) -> Flow:
        net = self.network
        values = {}
        for arc in net.arcs:
            # flow on an edge sits on its twin's capacity
            values[arc.id] = arc.demand + self.cap[self.arc_edge[arc.id] ^ 1]

        value = sum(values[a.id] for a in net.arcs if a.tail == net.source) - sum(
            values[a.id] for a in net.arcs if a.head == net.source
        )
        cost = sum(a.cost * values[a.id] for a in net.arcs)
        return Flow(
            values=values,
            value=value,
            cost=cost,
            fixed_value=self.required_value is not None,
        )


def feasible_min_cost_flow(net: FlowNetwork, required_value: int | None = None) -> Flow:
    """
    Minimum-cost feasible s-t flow of exactly `required_value` units.

    Args:
        net: network with arc demands, capacities (None: unbounded) and costs
        required_value: units leaving s; None leaves the value free and
            returns the cheapest feasible flow of any value

    Returns:
        Flow with per-arc amounts, total cost and value

    Raises:
        InfeasibleError: no feasible flow meets the demands and the value
    """
    return MinCostFlowSolver(net, required_value).solve()


def residual(net: FlowNetwork, flow: Flow) -> ResidualGraph:
    """
    Residual graph: forward arcs with f(a) < c(a), reverse arcs a⁻¹ with
    f(a) > d(a) and cost -w(a). A free-value flow also gets the t->s return
    arc (and its reverse while the value is positive).
    """
    arcs: list[ResidualArc] = []
    for arc in net.arcs:
        f = flow.on(arc)
        if arc.capacity is None or f < arc.capacity:
            arcs.append(
                ResidualArc(
                    tail=arc.tail,
                    head=arc.head,
                    residual_capacity=None if arc.capacity is None else arc.capacity - f,
                    cost=arc.cost,
                    arc_id=arc.id,
                )
            )
        if f > arc.demand:
            arcs.append(
                ResidualArc(
                    tail=arc.head,
                    head=arc.tail,
                    residual_capacity=f - arc.demand,
                    cost=-arc.cost,
                    arc_id=arc.id,
                    reverse=True,
                )
            )

    if not flow.fixed_value:
        arcs.append(ResidualArc(tail=net.sink, head=net.source, residual_capacity=None, cost=0))
        if flow.value > 0:
            arcs.append(
                ResidualArc(
                    tail=net.source,
                    head=net.sink,
                    residual_capacity=flow.value,
                    cost=0,
                    reverse=True,
                )
            )
    return ResidualGraph(vertices=list(net.vertices), arcs=arcs)


def _prepare(res: ResidualGraph) -> None:
    if res._index:
        return
    res._index = {v: i for i, v in enumerate(res.vertices)}
    res._adjacency = [[] for _ in res.vertices]
    for position, arc in enumerate(res.arcs):
        res._adjacency[res._index[arc.tail]].append(position)


def _label_correcting(res: ResidualGraph) -> list[int] | None:
    """
    Bellman-Ford (queue based) from a virtual root joined to every vertex
    at cost 0. Returns distances usable as potentials, or None when a
    negative-cost circuit exists.
    """
    _prepare(res)
    n = len(res.vertices)
    dist = [0] * n
    hops = [0] * n
    queued = [True] * n
    queue = deque(range(n))
    while queue:
        u = queue.popleft()
        queued[u] = False
        for position in res._adjacency[u]:
            arc = res.arcs[position]
            v = res._index[arc.head]
            candidate = dist[u] + arc.cost
            if candidate < dist[v]:
                dist[v] = candidate
                hops[v] = hops[u] + 1
                if hops[v] >= n:
                    return None
                if not queued[v]:
                    queued[v] = True
                    queue.append(v)
    return dist


def has_negative_cycle(res: ResidualGraph) -> bool:
    """Optimality certificate check: a min-cost flow has no negative circuit"""
    return _label_correcting(res) is None


def _potentials(res: ResidualGraph) -> list[int]:
    if res._potentials is None:
        potentials = _label_correcting(res)
        if potentials is None:
            raise ValueError("residual graph has a negative-cost circuit; flow is not optimal")
        res._potentials = potentials
    return res._potentials


def _dijkstra(res: ResidualGraph, origin: Vertex) -> tuple[list, list[int]]:
    """
    Shortest paths from origin with reduced costs w(a) + p(u) - p(v) >= 0.
    Returns real distances (INF when unreachable) and predecessor arc positions.
    Ties are broken by (distance, vertex index) and then residual arc order.
    """
    _prepare(res)
    potential = _potentials(res)
    start = res._index[origin]
    n = len(res.vertices)
    reduced = [INF] * n
    pred = [-1] * n
    reduced[start] = 0
    heap = [(0, start)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > reduced[u]:
            continue
        for position in res._adjacency[u]:
            arc = res.arcs[position]
            v = res._index[arc.head]
            nd = d + arc.cost + potential[u] - potential[v]
            if nd < reduced[v]:
                reduced[v] = nd
                pred[v] = position
                heapq.heappush(heap, (nd, v))

    dist = [
        INF if reduced[v] == INF else reduced[v] - potential[start] + potential[v]
        for v in range(n)
    ]
    return dist, pred


def residual_distances(res: ResidualGraph, origin: Vertex) -> dict[Vertex, int]:
    """Cost of a shortest residual path from origin to every reachable vertex"""
    dist, _ = _dijkstra(res, origin)
    return {v: dist[i] for i, v in enumerate(res.vertices) if dist[i] != INF}


def shortest_residual_path(res: ResidualGraph, origin: Vertex, target: Vertex) -> ShortestPath:
    """
    Minimum-cost directed residual path

    Returns:
        ShortestPath with the cost and the residual arcs in order

    Raises:
        UnreachableError: target cannot be reached from origin
    """
    if origin == target:
        return ShortestPath(cost=0)

    dist, pred = _dijkstra(res, origin)
    goal = res._index[target]
    if dist[goal] == INF:
        raise UnreachableError(f"no residual path from {origin!r} to {target!r}")

    arcs = []
    v = goal
    start = res._index[origin]
    while v != start:
        arc = res.arcs[pred[v]]
        arcs.append(arc)
        v = res._index[arc.tail]
    arcs.reverse()
    return ShortestPath(cost=int(dist[goal]), arcs=arcs)


def forced_arc_cost(
    net: FlowNetwork,
    flow: Flow,
    arc: Arc | int,
    residual_graph: ResidualGraph | None = None,
) -> int:
    """
    Cost of a cheapest flow of the same value that sends a unit through arc.

    Equals flow.cost when the arc already carries flow, otherwise
    flow.cost + w(arc) + cost of a shortest head -> tail residual path.

    Args:
        net: the network flow lives on
        flow: a min-cost flow of net
        arc: the arc or its id
        residual_graph: residual of flow, rebuilt when omitted

    Raises:
        UnreachableError: no feasible flow can use the arc
    """
    if isinstance(arc, int):
        arc = net.arc(arc)
    if flow.on(arc) >= 1:
        return flow.cost
    if arc.capacity == 0:
        raise UnreachableError(f"arc {arc.id} has no capacity")

    res = residual_graph if residual_graph is not None else residual(net, flow)
    path = shortest_residual_path(res, arc.head, arc.tail)
    return flow.cost + arc.cost + path.cost
