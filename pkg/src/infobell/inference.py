"""Hypothesis-testing machinery: exact binomial tails, the minimal
(N_req, k0) decision plan, the published-grid comparison, and verdicts.

All binomial arithmetic is exact-distribution (log-space lgamma), never a
normal approximation; `tail_at_least` is literally 1 - cdf so that
tail + cdf == 1.0 holds exactly in IEEE doubles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .errors import DomainError, EmptyCampaign, NoPlanWithinBudget


@dataclass(frozen=True)
class HypothesisProbs:
    """Per-experiment violation probabilities under the two hypotheses."""

    p0_h0: float
    p0_h1: float

    def __post_init__(self):
        if not (0.0 < self.p0_h0 < self.p0_h1 < 1.0):
            raise DomainError(
                f"need 0 < p0_h0 < p0_h1 < 1, got ({self.p0_h0}, {self.p0_h1})"
            )


@dataclass(frozen=True)
class DecisionPlan:
    probs: HypothesisProbs
    alpha: float
    gamma: float
    n_req: int
    k0: int


class Decision(Enum):
    ACCEPT_H1 = "AcceptH1"
    RETAIN_H0 = "RetainH0"
    IN_PROGRESS = "InProgress"


@dataclass(frozen=True)
class Verdict:
    k_e: int
    n_done: int
    decision: Decision
    delta: float = 0.0
    early: bool = False


def estimate_p0(positive_count: int, total: int) -> float:
    """Fraction of simulations with a deficit above the threshold."""
    if total < 1:
        raise EmptyCampaign("total must be >= 1")
    if not (0 <= positive_count <= total):
        raise DomainError("positive_count must be in [0, total]")
    return positive_count / total


def _log_pmf(k: int, n: int, p: float) -> float:
    return (
        math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
        + k * math.log(p) + (n - k) * math.log1p(-p)
    )


def binomial_pmf(k: int, n: int, p: float) -> float:
    if not (0 <= k <= n):
        raise DomainError("k must be in [0, n]")
    if not (0.0 <= p <= 1.0):
        raise DomainError("p must be in [0, 1]")
    if p == 0.0:
        return 1.0 if k == 0 else 0.0
    if p == 1.0:
        return 1.0 if k == n else 0.0
    return math.exp(_log_pmf(k, n, p))


def binomial_cdf(k0: int, n: int, p: float) -> float:
    """P(K <= k0) for K ~ Binomial(n, p); stable for n up to 1e6."""
    if not (0 <= k0 <= n):
        raise DomainError("k0 must be in [0, n]")
    if not (0.0 <= p <= 1.0):
        raise DomainError("p must be in [0, 1]")
    if k0 == n:
        return 1.0
    if p == 0.0:
        return 1.0
    if p == 1.0:
        return 0.0
    total = 0.0
    for k in range(k0 + 1):
        total += math.exp(_log_pmf(k, n, p))
    return min(max(total, 0.0), 1.0)


def tail_at_least(k_e: int, n: int, p0: float) -> float:
    """P(K >= k_e); the chance of at least k_e positive outcomes under the
    null. k_e = 0 returns 1.0 by convention."""
    if k_e == 0:
        return 1.0
    if not (1 <= k_e <= n):
        raise DomainError("k_e must be in [1, n]")
    return 1.0 - binomial_cdf(k_e - 1, n, p0)


def tail_more_than(k_e: int, n: int, p0: float) -> float:
    """Alternate reading: P(K > k_e)."""
    if not (0 <= k_e <= n):
        raise DomainError("k_e must be in [0, n]")
    return 1.0 - binomial_cdf(k_e, n, p0)


def _exceedance_tails(n: int, p: float) -> list[float]:
    """tails[k0] = P(K > k0) for k0 in 0..n, from one cdf sweep."""
    tails = [0.0] * (n + 1)
    if p == 0.0:
        return tails
    if p == 1.0:
        for k0 in range(n):
            tails[k0] = 1.0
        return tails
    cdf = 0.0
    for k0 in range(n + 1):
        cdf += math.exp(_log_pmf(k0, n, p))
        tails[k0] = 1.0 - min(max(cdf, 0.0), 1.0)
    return tails


def find_plan(probs: HypothesisProbs, alpha: float, gamma: float,
              n_max: int = 100_000) -> DecisionPlan:
    """Smallest N admitting a threshold k0 with
    P_N^H0(K > k0) < alpha  AND  P_N^H1(K > k0) >= gamma;
    the smallest such k0 at that N is returned."""
    if not (0.0 < alpha < 1.0):
        raise DomainError("alpha must be in (0, 1)")
    if not (0.0 < gamma < 1.0):
        raise DomainError("gamma must be in (0, 1)")
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    for n in range(1, n_max + 1):
        t0 = _exceedance_tails(n, probs.p0_h0)
        t1 = _exceedance_tails(n, probs.p0_h1)
        for k0 in range(n + 1):
            if t0[k0] < alpha:
                if t1[k0] >= gamma:
                    return DecisionPlan(probs, alpha, gamma, n, k0)
                break  # exceedance decreases in k0; larger k0 only lowers t1
    raise NoPlanWithinBudget(
        f"no (N, k0) with N <= {n_max} satisfies alpha={alpha}, gamma={gamma}"
    )


#: published reference grid for the default scenario (p0_h0=0.012, p0_h1=0.85):
#: (alpha_percent, gamma_percent) -> (n_req, k0)
REFERENCE_PLAN_TABLE = {
    (5.0, 80.0): (3, 0), (1.0, 80.0): (3, 1), (0.5, 80.0): (3, 1), (0.1, 80.0): (3, 1),
    (5.0, 90.0): (3, 0), (1.0, 90.0): (4, 1), (0.5, 90.0): (4, 1), (0.1, 90.0): (4, 1),
    (5.0, 95.0): (4, 0), (1.0, 95.0): (4, 1), (0.5, 95.0): (4, 1), (0.1, 95.0): (4, 1),
    (5.0, 99.0): (4, 0), (1.0, 99.0): (5, 1), (0.5, 99.0): (5, 1), (0.1, 99.0): (6, 2),
}
REFERENCE_SCENARIO = (0.012, 0.85)


@dataclass(frozen=True)
class PlanRow:
    alpha_percent: float
    gamma_percent: float
    n_req: int
    k0: int
    matches_paper: Optional[bool]  # None when no reference value applies


def plan_grid(probs: HypothesisProbs, alphas: Sequence[float],
              gammas: Sequence[float], n_max: int = 100_000) -> list[PlanRow]:
    """Cross-product of plans; rows are annotated against the published grid
    when the scenario has reference values."""
    is_reference = (
        abs(probs.p0_h0 - REFERENCE_SCENARIO[0]) < 1e-12
        and abs(probs.p0_h1 - REFERENCE_SCENARIO[1]) < 1e-12
    )
    rows = []
    for alpha in alphas:
        for gamma in gammas:
            plan = find_plan(probs, alpha, gamma, n_max)
            key = (round(alpha * 100, 6), round(gamma * 100, 6))
            matches: Optional[bool] = None
            if is_reference and key in REFERENCE_PLAN_TABLE:
                matches = REFERENCE_PLAN_TABLE[key] == (plan.n_req, plan.k0)
            rows.append(PlanRow(key[0], key[1], plan.n_req, plan.k0, matches))
    return rows


def verdict(k_e: int, n_done: int, plan: DecisionPlan, delta: float = 0.0,
            conservative: bool = False) -> Verdict:
    """Sequential decision for an observed count of positive experiments.

    Acceptance fires as soon as k_e exceeds k0 (more trials cannot lower
    k_e); the pre-N_req case is flagged early unless conservative mode defers
    it to InProgress.
    """
    if k_e > n_done:
        raise DomainError("k_e cannot exceed n_done")
    if k_e > plan.k0:
        if n_done >= plan.n_req:
            return Verdict(k_e, n_done, Decision.ACCEPT_H1, delta)
        if conservative:
            return Verdict(k_e, n_done, Decision.IN_PROGRESS, delta)
        return Verdict(k_e, n_done, Decision.ACCEPT_H1, delta, early=True)
    if n_done >= plan.n_req:
        return Verdict(k_e, n_done, Decision.RETAIN_H0, delta)
    return Verdict(k_e, n_done, Decision.IN_PROGRESS, delta)
