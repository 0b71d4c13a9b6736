"""
Soft Global Cardinality Aggregator

A soft_gcc posted over the cost variables of other soft constraints. The
occurrence bounds shape how violation is spread: forbid value 1 of binary
costs and the aggregate counts violated constraints (Max-CSP); weight each
overflow by its value and higher violations cost more.
"""

import logging
from collections.abc import Sequence

from pydantic import ValidationError

from src.data_models import (
    GccBounds,
    Model,
    SgcaSpec,
    ViolationMeasure,
)
from src.tools.softgcc import (
    GccPropagation,
    SoftGccPropagator,
    value_universe,
    violation,
)
from src.utils.errors import RejectedInputError
from src.utils.utils import Value

logger = logging.getLogger(__name__)


class SgcaPropagator:
    """
    Filtering of sgca(Z, l, u, z_agg)

    Delegates to the soft_gcc propagator over Z. Value-based measures with
    every l_d = 0 take the strongly connected component path, which filters
    identically.
    """

    def __init__(self, spec: SgcaSpec, universe: Sequence[Value] = ()):
        self.spec = spec
        self.inner = SoftGccPropagator(spec.bounds, spec.measure, universe)

    @property
    def uses_fast_path(self) -> bool:
        return self.spec.measure.is_value_based and self.spec.bounds.all_lower_zero()

    def propagate(
        self, domains: Sequence[Sequence[Value]], z_domain: Sequence[int]
    ) -> GccPropagation:
        if self.uses_fast_path:
            return self.inner.propagate_scc(domains, z_domain)
        return self.inner.propagate(domains, z_domain)


def sgca_propagator(spec: SgcaSpec, model: Model) -> SgcaPropagator:
    """Propagator over the cost variables of `model`, D_X fixed at post time"""
    domains = [model.domain_of(name) for name in spec.variables]
    return SgcaPropagator(spec, value_universe(domains, spec.bounds))


def post_sgca(model: Model, spec: SgcaSpec) -> SgcaPropagator:
    """
    Add an sgca to the model and return its propagator

    Args:
        model: the model to extend in place
        spec: aggregate over cost variables of model, with its own cost variable

    Returns:
        SgcaPropagator with D_X captured from the current cost domains

    Raises:
        RejectedInputError: unknown variables, bounds outside the cost
            domains, or any other malformed spec
    """
    try:
        checked = Model(
            variables=model.variables,
            dfas=model.dfas,
            constraints=[*model.constraints, spec],
            objective=model.objective,
        )
    except ValidationError as exc:
        raise RejectedInputError(f"sgca over {spec.variables}: {exc.errors()[0]['msg']}") from exc
    model.constraints.append(checked.constraints[-1])
    logger.debug("posted sgca over %s with cost %s", spec.variables, spec.cost)
    return sgca_propagator(spec, model)


def max_csp_spec(cost_variables: list[str], aggregate: str) -> SgcaSpec:
    """
    Binary costs z_i in {0, 1} with value 1 forbidden: the overflow of
    value 1 is the number of violated constraints.
    """
    return SgcaSpec(
        variables=cost_variables,
        bounds=GccBounds.of({1: (0, 0)}),
        measure=ViolationMeasure.overflow_only(),
        cost=aggregate,
    )


def linear_overflow_spec(spec: SgcaSpec) -> SgcaSpec:
    """
    Same Z and bounds, overflow of value d weighted by d, no underflow term

    Raises:
        RejectedInputError: some l_d > 0
    """
    if not spec.bounds.all_lower_zero():
        raise RejectedInputError("the weighted encoding needs l_d = 0 for every value")
    return spec.model_copy(update={"measure": ViolationMeasure.linear_overflow()})


def weighted_violation_encoding(spec: SgcaSpec, universe: Sequence[Value] = ()) -> SgcaPropagator:
    """Propagator of the linear-overflow reweighting; always on the SCC path"""
    return SgcaPropagator(linear_overflow_spec(spec), universe)


def sgca_violation(costs: Sequence[int], spec: SgcaSpec) -> int:
    """Aggregate violation of a full assignment of Z"""
    return violation(costs, spec.bounds, spec.measure)
