from enum import Enum
from typing import Annotated, Literal

from pydantic import BaseModel, Field, model_validator

from src.data_models.automaton import Dfa
from src.data_models.gcc import GccBounds, ViolationMeasure
from src.data_models.regular import EditWeights, RegularMeasure
from src.utils.utils import Value


class Variable(BaseModel):
    """Finite-domain decision or cost variable"""

    name: str
    domain: list[Value]

    @model_validator(mode="after")
    def check_domain(self) -> "Variable":
        if not self.domain:
            raise ValueError(f"variable {self.name}: empty domain")
        if len(set(self.domain)) != len(self.domain):
            raise ValueError(f"variable {self.name}: repeated domain values")
        return self


class SoftGccSpec(BaseModel):
    """soft_gcc[measure](X, l, u, z)"""

    kind: Literal["soft_gcc"] = "soft_gcc"
    variables: list[str]
    bounds: GccBounds = Field(default_factory=GccBounds)
    measure: ViolationMeasure = Field(default_factory=ViolationMeasure.val)
    cost: str


class SoftRegularSpec(BaseModel):
    """soft_regular[measure](x, M, z)"""

    kind: Literal["soft_regular"] = "soft_regular"
    variables: list[str]
    dfa: str
    measure: RegularMeasure = RegularMeasure.VAR
    weights: EditWeights = Field(default_factory=EditWeights)
    cost: str


class SgcaSpec(BaseModel):
    """
    Soft global cardinality aggregator: a soft_gcc posted over the cost
    variables Z of other soft constraints with aggregate cost z_agg.
    """

    kind: Literal["sgca"] = "sgca"
    variables: list[str]
    bounds: GccBounds = Field(default_factory=GccBounds)
    measure: ViolationMeasure = Field(default_factory=ViolationMeasure.overflow_only)
    cost: str

    def as_soft_gcc(self) -> SoftGccSpec:
        return SoftGccSpec(
            variables=self.variables,
            bounds=self.bounds,
            measure=self.measure,
            cost=self.cost,
        )


ConstraintSpec = Annotated[
    SoftGccSpec | SoftRegularSpec | SgcaSpec, Field(discriminator="kind")
]


class Model(BaseModel):
    """Variables, named automata, soft constraints and an optional objective"""

    variables: list[Variable] = Field(default_factory=list)
    dfas: dict[str, Dfa] = Field(default_factory=dict)
    constraints: list[ConstraintSpec] = Field(default_factory=list)
    objective: str | None = None

    @model_validator(mode="after")
    def check_references(self) -> "Model":
        domains = {}
        for variable in self.variables:
            if variable.name in domains:
                raise ValueError(f"variable {variable.name} declared twice")
            domains[variable.name] = variable.domain

        for index, constraint in enumerate(self.constraints, 1):
            where = f"constraint #{index} ({constraint.kind})"
            for name in [*constraint.variables, constraint.cost]:
                if name not in domains:
                    raise ValueError(f"{where}: unknown variable {name}")
            if not constraint.variables:
                raise ValueError(f"{where}: no variables")
            if len(set(constraint.variables)) != len(constraint.variables):
                raise ValueError(f"{where}: repeated variables")
            if constraint.cost in constraint.variables:
                raise ValueError(f"{where}: cost variable {constraint.cost} is also constrained")
            if any(not isinstance(v, int) or v < 0 for v in domains[constraint.cost]):
                raise ValueError(f"{where}: cost variable {constraint.cost} needs a domain of naturals")

            if isinstance(constraint, SoftRegularSpec):
                dfa = self.dfas.get(constraint.dfa)
                if dfa is None:
                    raise ValueError(f"{where}: unknown dfa {constraint.dfa}")
                for name in constraint.variables:
                    foreign = [v for v in domains[name] if not dfa.has_symbol(v)]
                    if foreign:
                        raise ValueError(f"{where}: {name} has values {foreign} outside the alphabet of {dfa.name}")

            if isinstance(constraint, SgcaSpec):
                union = {v for name in constraint.variables for v in domains[name]}
                stray = [v for v in constraint.bounds.intervals if v not in union]
                if stray:
                    raise ValueError(f"{where}: bounds on values {stray} outside the cost domains")

            if isinstance(constraint, SoftGccSpec | SgcaSpec):
                if constraint.measure.proportional_overflow:
                    union = {v for name in constraint.variables for v in domains[name]}
                    if any(not isinstance(v, int) or v < 0 for v in union):
                        raise ValueError(f"{where}: proportional overflow needs naturals")

        if self.objective is not None and self.objective not in domains:
            raise ValueError(f"objective: unknown variable {self.objective}")
        return self

    def domain_of(self, name: str) -> list[Value]:
        for variable in self.variables:
            if variable.name == name:
                return variable.domain
        raise KeyError(name)

    @property
    def cost_variables(self) -> list[str]:
        """Cost variables in declaration order"""
        named = {c.cost for c in self.constraints}
        return [v.name for v in self.variables if v.name in named]


class SearchStatus(str, Enum):
    OPTIMAL = "optimal"
    SATISFIABLE = "satisfiable"
    INFEASIBLE = "infeasible"


class SearchStatistics(BaseModel):
    nodes: int = 0
    propagations: int = 0
    solutions: int = 0
    wall_time: float = 0.0
    limit_reached: bool = False


class SearchResult(BaseModel):
    """Outcome of branch-and-bound"""

    status: SearchStatus
    assignment: dict[str, Value] | None = None
    objective: int | None = None
    statistics: SearchStatistics = Field(default_factory=SearchStatistics)

    @model_validator(mode="after")
    def check_assignment(self) -> "SearchResult":
        if (self.assignment is None) != (self.status == SearchStatus.INFEASIBLE):
            raise ValueError("an assignment is present iff the status is not infeasible")
        return self
