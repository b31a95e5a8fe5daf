"""Information Bell inequality toolkit.

Generates and judges pseudocomplementary classical measurement data against
the information Bell inequality: seeded Monte Carlo campaigns, an exact
enumeration oracle at small n, the spin-1/2 singlet reference curve, and an
exact-binomial experiment planner with sequential verdicts.
"""
from ._kernels import backend_name
from .campaign import (
    CampaignConfig,
    CampaignStats,
    Histogram,
    histogram,
    percentrank_fraction,
    run_campaign,
)
from .entropy import (
    DeficitResult,
    DeficitScheme,
    EntropyTerms,
    binary_entropy,
    conditional_entropy,
    deficit_generic,
    deficit_pseudo,
    index_deficit,
    index_norm,
    information_bell_holds,
)
from .inference import (
    Decision,
    DecisionPlan,
    HypothesisProbs,
    Verdict,
    binomial_cdf,
    estimate_p0,
    find_plan,
    plan_grid,
    tail_at_least,
    verdict,
)
from .model import (
    CaseKind,
    ColumnId,
    ExperimentMatrix,
    OutcomeRecord,
    SelectionDomain,
    SelectionMask,
)
from .quantum import (
    crossing_angle,
    max_quantum_deficit,
    quantum_conditional_entropy,
    quantum_deficit,
    singlet_prob_same,
    violation_fraction,
)
from .simulate import (
    ExactStats,
    SeedSpec,
    enumerate_exact,
    gen_anticorrelated,
    gen_stochastic,
)

__version__ = "0.1.0"

__all__ = [
    "CampaignConfig", "CampaignStats", "Histogram", "histogram",
    "percentrank_fraction", "run_campaign",
    "DeficitResult", "DeficitScheme", "EntropyTerms", "binary_entropy",
    "conditional_entropy", "deficit_generic", "deficit_pseudo",
    "index_deficit", "index_norm", "information_bell_holds",
    "Decision", "DecisionPlan", "HypothesisProbs", "Verdict", "binomial_cdf",
    "estimate_p0", "find_plan", "plan_grid", "tail_at_least", "verdict",
    "CaseKind", "ColumnId", "ExperimentMatrix", "OutcomeRecord",
    "SelectionDomain", "SelectionMask",
    "crossing_angle", "max_quantum_deficit", "quantum_conditional_entropy",
    "quantum_deficit", "singlet_prob_same", "violation_fraction",
    "ExactStats", "SeedSpec", "enumerate_exact", "gen_anticorrelated",
    "gen_stochastic",
    "backend_name",
]
