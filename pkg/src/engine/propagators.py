"""
Posted Constraints

Binds a constraint spec to the variables of a DomainStore. The filtering
kernels work on plain domain lists; this layer reads them out of the store
and writes the narrowed domains back.
"""

import logging
from collections.abc import Callable, Sequence
from typing import Protocol

from src.data_models import (
    ConstraintSpec,
    Model,
    SgcaSpec,
    SoftGccSpec,
    SoftRegularSpec,
)
from src.engine.store import DomainStore
from src.tools.aggregator import sgca_propagator
from src.tools.softgcc import SoftGccPropagator, value_universe
from src.tools.softregular import SoftRegularPropagator
from src.utils.utils import Value

logger = logging.getLogger(__name__)


class FilterOutcome(Protocol):
    domains: list[list[Value]]
    z_domain: list[int]


class DomainFilter(Protocol):
    def propagate(
        self, domains: Sequence[Sequence[Value]], z_domain: Sequence[int]
    ) -> FilterOutcome: ...


class PostedConstraint:
    """A filtering kernel watching its variables and cost variable"""

    def __init__(self, spec: ConstraintSpec, kernel: DomainFilter):
        self.spec = spec
        self.kernel = kernel

    @property
    def variables(self) -> list[str]:
        return self.spec.variables

    @property
    def cost(self) -> str:
        return self.spec.cost

    @property
    def watched(self) -> list[str]:
        return [*self.spec.variables, self.spec.cost]

    def propagate(self, store: DomainStore) -> set[str]:
        """
        Narrow the store; returns the names whose domain shrank

        Raises:
            PropagationFailure: the kernel failed or a domain emptied
        """
        outcome = self.kernel.propagate(
            [list(store[name]) for name in self.variables], list(store[self.cost])
        )
        changed = set()
        for name, domain in zip(self.variables, outcome.domains, strict=True):
            if store.restrict(name, domain):
                changed.add(name)
        if store.restrict(self.cost, outcome.z_domain):
            changed.add(self.cost)
        return changed

    def __repr__(self) -> str:
        return f"{self.spec.kind}({', '.join(self.variables)}; {self.cost})"


PropagatorFactory = Callable[[ConstraintSpec, Model], PostedConstraint]


def build_propagator(spec: ConstraintSpec, model: Model) -> PostedConstraint:
    """Kernel for one constraint of the model, D_X fixed to the declared domains"""
    domains = [model.domain_of(name) for name in spec.variables]
    if isinstance(spec, SgcaSpec):
        return PostedConstraint(spec, sgca_propagator(spec, model))
    if isinstance(spec, SoftGccSpec):
        universe = value_universe(domains, spec.bounds)
        return PostedConstraint(spec, SoftGccPropagator(spec.bounds, spec.measure, universe))
    if isinstance(spec, SoftRegularSpec):
        kernel = SoftRegularPropagator(model.dfas[spec.dfa], spec.measure, spec.weights)
        return PostedConstraint(spec, kernel)
    raise TypeError(f"unsupported constraint {spec!r}")
