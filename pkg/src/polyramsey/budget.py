"""Node and time budgets for backtracking searches."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from polyramsey.config import PolyramseySettings, get_settings
from polyramsey.exceptions import ResourceLimitError


@dataclass
class SearchBudget:
    """Counts search nodes and raises once a guard is exhausted.

    A budget is shared by all the nested searches of one operation so
    the guard bounds the whole operation, not each inner loop.
    """

    max_nodes: int
    deadline: float | None = None
    nodes: int = 0
    started: float = field(default_factory=time.perf_counter)

    @classmethod
    def from_settings(
        cls, settings: PolyramseySettings | None = None
    ) -> SearchBudget:
        actual = settings or get_settings()
        deadline = None
        if actual.time_budget_seconds is not None:
            deadline = time.perf_counter() + actual.time_budget_seconds
        return cls(max_nodes=actual.node_budget, deadline=deadline)

    def tick(self, count: int = 1) -> None:
        """Account for ``count`` search nodes."""
        self.nodes += count
        if self.nodes > self.max_nodes:
            raise ResourceLimitError("search node", self.max_nodes)
        # clock sampled every 4096 nodes
        if self.deadline is not None and not self.nodes & 0xFFF:
            self.check_time()

    def check_time(self) -> None:
        if self.deadline is not None and time.perf_counter() > self.deadline:
            raise ResourceLimitError("time budget (s)", self.elapsed())

    def elapsed(self) -> float:
        return time.perf_counter() - self.started


def resolve_budget(budget: SearchBudget | None) -> SearchBudget:
    """Return ``budget`` or a fresh one built from the settings."""
    return budget if budget is not None else SearchBudget.from_settings()
