from seqfam.measures.bounds import (
    RatioRow,
    complete_weil_sum,
    largest_guaranteed,
    specification_guaranteed,
    theorem_bound_raw,
    theorem_lower_bound,
    theorem_orders,
    weil_limit,
    weil_ratio,
    weil_ratio_report,
)
from seqfam.measures.budget import BudgetAction, BudgetExceeded, SearchBudget
from seqfam.measures.complexity import (
    ComplexityResult,
    SpecificationPattern,
    count_matching_sequences,
    family_complexity,
)
from seqfam.measures.correlation import (
    CorrelationResult,
    CorrelationWitness,
    auto_correlation,
    correlation_cost,
    cross_correlation,
    evaluate_witness,
)

__all__ = [
    "BudgetAction",
    "BudgetExceeded",
    "ComplexityResult",
    "CorrelationResult",
    "CorrelationWitness",
    "RatioRow",
    "SearchBudget",
    "SpecificationPattern",
    "auto_correlation",
    "complete_weil_sum",
    "correlation_cost",
    "count_matching_sequences",
    "cross_correlation",
    "evaluate_witness",
    "family_complexity",
    "largest_guaranteed",
    "specification_guaranteed",
    "theorem_bound_raw",
    "theorem_lower_bound",
    "theorem_orders",
    "weil_limit",
    "weil_ratio",
    "weil_ratio_report",
]
