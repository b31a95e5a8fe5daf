"""Campaign runner: N independent experiments, aggregate statistics, and the
deficit histograms.

Experiments are keyed by index (experiment i always uses the stream derived
from mix(master_seed, i)), chunks may be evaluated on any number of worker
threads, and every aggregate is computed in a deterministic final pass over
the index-ordered results, so the output is identical for any worker count.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels as K
from .entropy import ZERO_TOL, DeficitResult, DeficitScheme, EntropyTerms
from .errors import DomainError, EmptyCampaign
from .model import CaseKind, SelectionDomain
from .simulate import _case_code, _domain_code, _scheme_code


@dataclass(frozen=True)
class CampaignConfig:
    case: CaseKind
    n: int
    experiments: int
    master_seed: int
    domain: SelectionDomain = SelectionDomain.THREE_ENTANGLED_PAIRS
    delta: float = 0.0
    scheme: DeficitScheme = DeficitScheme.CROSS_TABLE
    workers: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be >= 1")
        if self.experiments < 1:
            raise DomainError("experiments must be >= 1")
        if self.delta < 0:
            raise DomainError("delta must be >= 0")
        if self.workers < 1:
            raise DomainError("workers must be >= 1")


@dataclass(frozen=True)
class CampaignStats:
    """One row of campaign statistics (rank fraction, positive counts,
    positive average, extrema, and the two violation indices)."""

    p_rank: float
    n0: int
    avg_positive: Optional[float]
    max_deficit: float
    min_deficit: float
    index_deficit: Optional[float]
    index_norm: Optional[float]
    n_valid: int

    def as_dict(self) -> dict:
        return {
            "p_rank": self.p_rank,
            "n0": self.n0,
            "avg_positive": self.avg_positive,
            "max_deficit": self.max_deficit,
            "min_deficit": self.min_deficit,
            "index_deficit": self.index_deficit,
            "index_norm": self.index_norm,
            "n_valid": self.n_valid,
        }


@dataclass(frozen=True)
class Histogram:
    bin_width: float
    bins: tuple[tuple[float, int], ...] = field(repr=False)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.bins)

    def count_at_zero(self) -> int:
        for lo, c in self.bins:
            if abs(lo) < self.bin_width / 2:
                return c
        return 0

    def count_right_of_zero(self) -> int:
        return sum(c for lo, c in self.bins if lo > self.bin_width / 2)


def _results_from_rows(rows: np.ndarray, scheme: DeficitScheme,
                       ) -> list[DeficitResult]:
    out = []
    for r in rows.tolist():  # plain Python floats in the domain objects
        terms = EntropyTerms(r[0], r[1], r[2], r[3])
        out.append(DeficitResult(terms, r[5], r[4], scheme))
    return out


def run_campaign(config: CampaignConfig,
                 ) -> tuple[CampaignStats, list[DeficitResult]]:
    """Run all experiments and compute the campaign statistics."""
    N = config.experiments
    case = _case_code(config.case)
    scheme = _scheme_code(config.scheme)
    dom = _domain_code(config.domain)
    rows = np.empty((N, 6), dtype=np.float64)

    if config.workers == 1:
        rows[:, :] = K.campaign_chunk(case, scheme, config.n,
                                      config.master_seed, dom, 0, N)
    else:
        chunk = max(1, math.ceil(N / (config.workers * 4)))
        spans = [(s, min(chunk, N - s)) for s in range(0, N, chunk)]

        def job(span):
            start, count = span
            return start, K.campaign_chunk(case, scheme, config.n,
                                           config.master_seed, dom, start,
                                           count)

        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            for start, block in pool.map(job, spans):
                rows[start:start + block.shape[0], :] = block

    results = _results_from_rows(rows, config.scheme)
    stats = compute_stats(results, delta=config.delta)
    return stats, results


def compute_stats(results: list[DeficitResult], delta: float = 0.0,
                  ) -> CampaignStats:
    """Deterministic aggregation pass over index-ordered results."""
    if not results:
        raise EmptyCampaign("campaign produced no results")
    thresh = max(delta, ZERO_TOL)
    deficits = [r.deficit for r in results]
    n0 = 0
    pos_sum = 0.0
    zeros = 0
    for d in deficits:
        if d > thresh:
            n0 += 1
            pos_sum += d
        elif abs(d) <= ZERO_TOL:
            zeros += 1
    N = len(deficits)
    best_i = 0
    for i in range(1, N):
        if deficits[i] > deficits[best_i]:
            best_i = i
    mx = deficits[best_i]
    mn = min(deficits)
    denom = results[best_i].h_ab_hd
    index_deficit = (mx / denom) if abs(denom) > ZERO_TOL else None
    index_norm = (mx / (mx - mn)) if mx != mn else None
    return CampaignStats(
        p_rank=(zeros + n0) / N,
        n0=n0,
        avg_positive=(pos_sum / n0) if n0 else None,
        max_deficit=mx,
        min_deficit=mn,
        index_deficit=index_deficit,
        index_norm=index_norm,
        n_valid=N,
    )


def percentrank_fraction(deficits) -> float:
    """(#zeros + #positives) / total, zeros tested at the 1e-12 tolerance."""
    ds = [d.deficit if isinstance(d, DeficitResult) else float(d)
          for d in deficits]
    if not ds:
        raise EmptyCampaign("empty deficit list")
    keep = sum(1 for d in ds if d > ZERO_TOL or abs(d) <= ZERO_TOL)
    return keep / len(ds)


def histogram(deficits, bin_width: float) -> Histogram:
    """Left-closed bins aligned so an edge falls exactly at 0; values within
    the zero tolerance are snapped to 0 first so the zero spike stays in the
    [0, bin_width) bin."""
    if bin_width <= 0:
        raise DomainError("bin_width must be positive")
    ds = [d.deficit if isinstance(d, DeficitResult) else float(d)
          for d in deficits]
    if not ds:
        raise EmptyCampaign("empty deficit list")
    idxs = []
    for d in ds:
        if abs(d) <= ZERO_TOL:
            d = 0.0
        idxs.append(math.floor(d / bin_width + 1e-9))
    lo, hi = min(idxs), max(idxs)
    counts = [0] * (hi - lo + 1)
    for i in idxs:
        counts[i - lo] += 1
    bins = tuple((k * bin_width, counts[k - lo]) for k in range(lo, hi + 1))
    return Histogram(bin_width=bin_width, bins=bins)
