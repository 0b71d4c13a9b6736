"""
Audit Node

Checks every constraint's propagator against the brute-force oracle on the
declared domains and reports the first disagreement.
"""

import logging

from config.templates import (
    GUARD_LINE,
    MISMATCH_BOUND_LINE,
    MISMATCH_DOMAIN_LINE,
    MISMATCH_FAIL_LINE,
    MISMATCH_HEADER,
)
from src.data_models import Model, SoftRegularSpec
from src.engine import DomainStore, PropagatorFactory, build_propagator
from src.tools.oracle import enumerate_min_violation, oracle_filter
from src.utils.errors import InfeasibleError, PropagationFailure, RejectedInputError
from src.utils.utils import format_values, progress

logger = logging.getLogger(__name__)


class ConstraintAuditor:
    """
    Runs one propagation pass per constraint and the oracle on the same
    domains. Outcomes are (domains, z lower bound) or None for a failure.
    """

    def __init__(self, model: Model, propagator_factory: PropagatorFactory = build_propagator):
        self.model = model
        self.propagator_factory = propagator_factory

    def propagator_outcome(self, spec) -> tuple[list[list], int] | None:
        store = DomainStore.from_model(self.model)
        try:
            self.propagator_factory(spec, self.model).propagate(store)
        except PropagationFailure as exc:
            logger.debug("propagator failed on %s: %s", spec.kind, exc.reason)
            return None
        return [list(store[name]) for name in spec.variables], store[spec.cost][0]

    def oracle_outcome(self, spec) -> tuple[list[list], int] | None:
        """
        Raises:
            RejectedInputError: domain product above the enumeration limit
        """
        domains = [self.model.domain_of(name) for name in spec.variables]
        z_domain = sorted(self.model.domain_of(spec.cost))
        dfa = self.model.dfas.get(spec.dfa) if isinstance(spec, SoftRegularSpec) else None
        try:
            least = enumerate_min_violation(domains, spec, dfa)
            filtered = oracle_filter(domains, spec, z_domain[-1], dfa)
        except InfeasibleError:
            return None
        supported = [z for z in z_domain if z >= least]
        if not supported:
            return None
        return filtered, supported[0]

    def mismatch(self, index: int, spec) -> list[str]:
        """Dump of the disagreement on one constraint, empty when both agree"""
        ours = self.propagator_outcome(spec)
        truth = self.oracle_outcome(spec)
        header = MISMATCH_HEADER.format(index=index, kind=spec.kind, variables=",".join(spec.variables))

        if ours is None or truth is None:
            if ours is None and truth is None:
                return []
            return [
                header,
                MISMATCH_FAIL_LINE.format(
                    propagator="fail" if ours is None else "consistent",
                    oracle="fail" if truth is None else "consistent",
                ),
            ]

        lines = []
        for name, mine, real in zip(spec.variables, ours[0], truth[0], strict=True):
            if list(mine) != list(real):
                lines.append(
                    MISMATCH_DOMAIN_LINE.format(
                        name=name,
                        propagator="{" + format_values(mine) + "}",
                        oracle="{" + format_values(real) + "}",
                    )
                )
        if ours[1] != truth[1]:
            lines.append(MISMATCH_BOUND_LINE.format(name=spec.cost, propagator=ours[1], oracle=truth[1]))
        return [header, *lines] if lines else []

    def audit(self) -> list[str]:
        """First disagreeing constraint, empty when all agree"""
        for index, spec in enumerate(self.model.constraints, 1):
            dump = self.mismatch(index, spec)
            if dump:
                return dump
        return []


def audit_node(state: dict) -> dict:
    """LangGraph node: propagators vs oracle"""
    verbose = state.get("verbose", False)
    progress("🧪 Auditing propagators against the oracle...", verbose)

    auditor = ConstraintAuditor(state["model"], state.get("propagator_factory") or build_propagator)
    try:
        dump = auditor.audit()
    except RejectedInputError as exc:
        return {
            "errors": [GUARD_LINE.format(message=exc)],
            "exit_code": 2,
            "current_step": "audit_rejected",
        }

    progress("   ✓ All constraints agree" if not dump else "   ✗ Counterexample found", verbose)
    return {
        "audit": {"match": not dump, "counterexample": dump},
        "exit_code": 0 if not dump else 1,
        "current_step": "audit_complete",
    }
