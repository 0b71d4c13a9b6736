from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from config.settings import settings
from src.data_models.automaton import Dfa
from src.utils.utils import Value


class RegularMeasure(str, Enum):
    VAR = "var"  # Hamming distance
    EDIT = "edit"  # weighted edit distance


class EditWeights(BaseModel):
    """Penalties of the three edit operations"""

    model_config = ConfigDict(frozen=True)

    substitution: int = Field(default_factory=lambda: settings.DEFAULT_SUBSTITUTION_COST, ge=1)
    insertion: int = Field(default_factory=lambda: settings.DEFAULT_INSERTION_COST, ge=1)
    deletion: int = Field(default_factory=lambda: settings.DEFAULT_DELETION_COST, ge=1)

    @classmethod
    def unit(cls) -> "EditWeights":
        return cls(substitution=1, insertion=1, deletion=1)

    @classmethod
    def parse(cls, text: str) -> "EditWeights":
        """Read 's,i,d' as written on the command line"""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma separated weights, got {text!r}")
        substitution, insertion, deletion = (int(p) for p in parts)
        return cls(substitution=substitution, insertion=insertion, deletion=deletion)


class LayerArc(BaseModel):
    """
    Arc from state `source` in layer i to state `target` in layer i+1.

    `labels` is V_ikl: the values of D_i that realize the transition.
    `transition` marks arcs of the DFA skeleton (off-label use is a
    substitution); `deletion` marks the state-keeping arcs of the edit graph
    (off-label use wastes the value).
    """

    source: int
    target: int
    labels: set[Value] = Field(default_factory=set)
    transition: bool = True
    deletion: bool = False


class LayeredGraph(BaseModel):
    """
    (n+1)-layer graph over the DFA states.

    Layer i (0-based, 0 <= i < n) holds the arcs for variable x_{i+1};
    `domains` holds the current D_i; `insertion_arcs` are the intra-layer (source, target) pairs present in
    every layer 0..n with cost `weights.insertion`. Arcs are never removed,
    only their label sets shrink.
    """

    measure: RegularMeasure
    dfa: Dfa
    weights: EditWeights = Field(default_factory=EditWeights)
    domains: list[list[Value]] = Field(default_factory=list)
    layers: list[list[LayerArc]] = Field(default_factory=list)
    insertion_arcs: list[tuple[int, int]] = Field(default_factory=list)

    @property
    def num_variables(self) -> int:
        return len(self.layers)

    @property
    def num_states(self) -> int:
        return self.dfa.num_states

    @property
    def start(self) -> int:
        return self.dfa.initial_code

    @property
    def goals(self) -> list[int]:
        return [q for q in range(self.num_states) if self.dfa.accepting_mask[q]]

    def step_cost(self, arc: LayerArc, value: Value) -> int | None:
        """
        Cost of routing value over arc: 0 on-label, otherwise the cheapest
        applicable penalty. None when the arc cannot carry the value at all.
        """
        if value in arc.labels:
            return 0
        penalties = []
        if arc.transition:
            penalties.append(self.weights.substitution)
        if arc.deletion:
            penalties.append(self.weights.deletion)
        return min(penalties) if penalties else None

    def update_labels(self, domains: list[list[Value]]) -> None:
        """Shrink every V_ikl to the surviving values of D_i"""
        self.domains = [list(domain) for domain in domains]
        for arcs, domain in zip(self.layers, domains, strict=True):
            keep = set(domain)
            for arc in arcs:
                arc.labels &= keep
