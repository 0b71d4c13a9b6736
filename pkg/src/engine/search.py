"""
Fixpoint Propagation and Branch-and-Bound

Constraints run from a FIFO queue until no domain changes. Search is a
depth-first branch-and-bound on the smallest domain (declaration order
breaks ties), values ascending; every improving solution tightens the
objective to strictly below the incumbent.
"""

import logging
import time
from collections import deque

from config.settings import settings
from src.data_models import (
    Model,
    SearchResult,
    SearchStatistics,
    SearchStatus,
)
from src.engine.propagators import PostedConstraint, PropagatorFactory, build_propagator
from src.engine.store import DomainStore
from src.utils.errors import PropagationFailure

logger = logging.getLogger(__name__)


def run_fixpoint(
    store: DomainStore,
    constraints: list[PostedConstraint],
    statistics: SearchStatistics | None = None,
) -> DomainStore:
    """
    Narrow the store in place until every constraint is stable

    Raises:
        PropagationFailure: some constraint failed
    """
    watchers: dict[str, list[int]] = {}
    for index, constraint in enumerate(constraints):
        for name in constraint.watched:
            watchers.setdefault(name, []).append(index)

    queue = deque(range(len(constraints)))
    queued = set(queue)
    while queue:
        index = queue.popleft()
        queued.discard(index)
        changed = constraints[index].propagate(store)
        if statistics is not None:
            statistics.propagations += 1
        for name in changed:
            for watcher in watchers[name]:
                if watcher not in queued:
                    queue.append(watcher)
                    queued.add(watcher)
    return store


def propagate_fixpoint(
    model: Model, propagator_factory: PropagatorFactory = build_propagator
) -> DomainStore:
    """
    Declared domains narrowed by every constraint of the model

    Raises:
        PropagationFailure: some constraint failed
    """
    constraints = [propagator_factory(spec, model) for spec in model.constraints]
    return run_fixpoint(DomainStore.from_model(model), constraints)


class BranchAndBound:
    """Depth-first minimization of the model's objective variable"""

    def __init__(
        self,
        model: Model,
        propagator_factory: PropagatorFactory = build_propagator,
        node_limit: int | None = None,
    ):
        self.model = model
        self.constraints = [propagator_factory(spec, model) for spec in model.constraints]
        self.node_limit = node_limit if node_limit is not None else settings.SEARCH_NODE_LIMIT
        self.order = [variable.name for variable in model.variables]

        self.statistics = SearchStatistics()
        self.incumbent: dict | None = None
        self.best: int | None = None
        self._stop = False

    def solve(self) -> SearchResult:
        started = time.perf_counter()
        self._dive(DomainStore.from_model(self.model))
        self.statistics.wall_time = time.perf_counter() - started

        if self.incumbent is None:
            status = SearchStatus.INFEASIBLE
        elif self.statistics.limit_reached or self.model.objective is None:
            status = SearchStatus.SATISFIABLE
        else:
            status = SearchStatus.OPTIMAL
        logger.debug(
            "search %s after %d nodes, objective %s",
            status.value,
            self.statistics.nodes,
            self.best,
        )
        return SearchResult(
            status=status,
            assignment=self.incumbent,
            objective=self.best,
            statistics=self.statistics,
        )

    def _dive(self, store: DomainStore) -> None:
        if self.statistics.nodes >= self.node_limit:
            self.statistics.limit_reached = True
            self._stop = True
            return
        self.statistics.nodes += 1

        objective = self.model.objective
        try:
            if objective is not None and self.best is not None:
                store.restrict(objective, [v for v in store[objective] if v < self.best])
            run_fixpoint(store, self.constraints, self.statistics)
        except PropagationFailure as exc:
            logger.debug("node %d failed: %s", self.statistics.nodes, exc.reason)
            return

        branch = self._select(store)
        if branch is None:
            self._record(store)
            return
        for value in store[branch]:
            child = store.copy()
            child.assign(branch, value)
            self._dive(child)
            if self._stop:
                return

    def _select(self, store: DomainStore) -> str | None:
        """Smallest unassigned domain, first declared on ties"""
        candidates = [name for name in self.order if not store.is_assigned(name)]
        if not candidates:
            return None
        return min(candidates, key=store.size)

    def _record(self, store: DomainStore) -> None:
        self.incumbent = {name: store.value(name) for name in self.order}
        self.statistics.solutions += 1
        if self.model.objective is None:
            self.best = 0
            self._stop = True
            return
        self.best = store.value(self.model.objective)
        logger.debug("incumbent with objective %d at node %d", self.best, self.statistics.nodes)


def solve_min(
    model: Model,
    propagator_factory: PropagatorFactory = build_propagator,
    node_limit: int | None = None,
) -> SearchResult:
    return BranchAndBound(model, propagator_factory, node_limit).solve()
