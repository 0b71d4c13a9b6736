from collections.abc import Hashable

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

Vertex = Hashable


class Arc(BaseModel):
    """Directed arc with demand (lower bound), capacity and unit cost"""

    model_config = ConfigDict(frozen=True)

    id: int = Field(ge=0)
    tail: Vertex
    head: Vertex
    demand: int = Field(default=0, ge=0)
    capacity: int | None = Field(default=1, ge=0)  # None means unbounded
    cost: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def check_demand(self) -> "Arc":
        if self.capacity is not None and self.demand > self.capacity:
            raise ValueError(
                f"arc {self.id}: demand {self.demand} exceeds capacity {self.capacity}"
            )
        return self


class FlowNetwork(BaseModel):
    """
    Directed network with a designated source and sink.

    Arcs form a family: parallel arcs are allowed and are told apart by id.
    Vertices keep their declaration order, which fixes every tie-break.
    """

    vertices: list[Vertex] = Field(default_factory=list)
    arcs: list[Arc] = Field(default_factory=list)
    source: Vertex
    sink: Vertex

    _vertex_set: set = PrivateAttr(default_factory=set)

    @model_validator(mode="after")
    def check_structure(self) -> "FlowNetwork":
        if self.source == self.sink:
            raise ValueError("source and sink must differ")

        vertex_set = set(self.vertices)
        if len(vertex_set) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        for vertex in (self.source, self.sink):
            if vertex not in vertex_set:
                raise ValueError(f"undeclared terminal vertex {vertex!r}")

        seen_ids = set()
        for arc in self.arcs:
            for endpoint in (arc.tail, arc.head):
                if endpoint not in vertex_set:
                    raise ValueError(f"arc {arc.id}: undeclared vertex {endpoint!r}")
            if arc.id in seen_ids:
                raise ValueError(f"duplicate arc id {arc.id}")
            seen_ids.add(arc.id)
        return self

    def model_post_init(self, __context) -> None:
        self._vertex_set = set(self.vertices)

    def _check_arc(self, arc: Arc) -> None:
        for endpoint in (arc.tail, arc.head):
            if endpoint not in self._vertex_set:
                raise ValueError(f"arc {arc.id}: undeclared vertex {endpoint!r}")

    def add_vertex(self, vertex: Vertex) -> None:
        if vertex not in self._vertex_set:
            self._vertex_set.add(vertex)
            self.vertices.append(vertex)

    def add_arc(
        self,
        tail: Vertex,
        head: Vertex,
        demand: int = 0,
        capacity: int | None = 1,
        cost: int = 0,
    ) -> Arc:
        """Append an arc with the next free id and return it"""
        arc = Arc(
            id=len(self.arcs),
            tail=tail,
            head=head,
            demand=demand,
            capacity=capacity,
            cost=cost,
        )
        self._check_arc(arc)
        self.arcs.append(arc)
        return arc

    def arc(self, arc_id: int) -> Arc:
        arc = self.arcs[arc_id] if arc_id < len(self.arcs) else None
        if arc is not None and arc.id == arc_id:
            return arc
        for candidate in self.arcs:
            if candidate.id == arc_id:
                return candidate
        raise KeyError(arc_id)

    def arcs_between(self, tail: Vertex, head: Vertex) -> list[Arc]:
        return [a for a in self.arcs if a.tail == tail and a.head == head]


class Flow(BaseModel):
    """
    Integral flow on a FlowNetwork.

    `fixed_value` is False when the flow value was left free; the residual
    graph of such a flow carries a zero-cost sink-to-source return arc.
    """

    values: dict[int, int] = Field(default_factory=dict)
    value: int = 0
    cost: int = 0
    fixed_value: bool = True

    def on(self, arc: Arc | int) -> int:
        arc_id = arc if isinstance(arc, int) else arc.id
        return self.values.get(arc_id, 0)


class ResidualArc(BaseModel):
    """
    Arc of a residual graph.

    `arc_id` names the network arc it stems from (None for the return arc);
    `reverse` marks a⁻¹, whose cost is the negation of its twin's.
    """

    model_config = ConfigDict(frozen=True)

    tail: Vertex
    head: Vertex
    residual_capacity: int | None = Field(default=1, ge=1)  # None means unbounded
    cost: int
    arc_id: int | None = None
    reverse: bool = False


class ResidualGraph(BaseModel):
    """Residual graph G^f of a flow"""

    vertices: list[Vertex] = Field(default_factory=list)
    arcs: list[ResidualArc] = Field(default_factory=list)

    # lazily built adjacency and feasible potentials, see tools.flownet
    _index: dict = PrivateAttr(default_factory=dict)
    _adjacency: list = PrivateAttr(default_factory=list)
    _potentials: list | None = PrivateAttr(default=None)

    def forward_arcs(self) -> list[ResidualArc]:
        return [a for a in self.arcs if not a.reverse]

    def reverse_arcs(self) -> list[ResidualArc]:
        return [a for a in self.arcs if a.reverse]


class ShortestPath(BaseModel):
    """Minimum-cost residual path"""

    cost: int
    arcs: list[ResidualArc] = Field(default_factory=list)

    @property
    def vertices(self) -> list[Vertex]:
        if not self.arcs:
            return []
        return [self.arcs[0].tail] + [a.head for a in self.arcs]
