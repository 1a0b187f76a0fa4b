from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass


class BudgetAction(str, enum.Enum):
    REJECT = "reject"
    PROCEED_WITH_WARNING = "proceed"


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, estimate: int, limit: int):
        super().__init__(f"{what}: estimated {estimate} evaluations exceeds budget of {limit}")
        self.what = what
        self.estimate = estimate
        self.limit = limit


class BudgetWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SearchBudget:
    """Cap on the evaluation count of an exhaustive search."""

    max_evaluations: int = 10**9
    on_overflow: BudgetAction = BudgetAction.REJECT

    def __post_init__(self) -> None:
        if self.max_evaluations < 1:
            raise ValueError("max_evaluations must be at least 1")
        object.__setattr__(self, "on_overflow", BudgetAction(self.on_overflow))

    def check(self, what: str, estimate: int) -> None:
        if estimate <= self.max_evaluations:
            return
        if self.on_overflow is BudgetAction.REJECT:
            raise BudgetExceeded(what, estimate, self.max_evaluations)
        warnings.warn(str(BudgetExceeded(what, estimate, self.max_evaluations)), BudgetWarning, stacklevel=3)


DEFAULT_BUDGET = SearchBudget()
