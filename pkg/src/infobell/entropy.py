"""Plug-in Shannon entropies and the pseudocomplementary information deficit.

Two deficit evaluation schemes exist, mirroring the two classical analysis
routes of the study design:

* ``FULL_MATRIX`` - every Eq.-style term is the margin-weighted plug-in
  conditional entropy over all n column pairs, ignoring the selection masks.
  A classical benchmark: a two-step triangle inequality for conditional
  entropies guarantees the deficit is never positive for any matrix, which is
  exactly the advertised behaviour of the no-selection analysis.

* ``CROSS_TABLE`` - the pseudocomplementary route, and the default. Each
  outcome tallies its selected pair and its hidden pair into the frequency
  cross-table quadrant matching their actual columns; each term is the
  quadrant-mass-weighted conditional entropy, Sum over cells of
  (N(x,y)/(2n)) * log2(N_quadrant(y)/N(x,y)). Because the four terms are
  estimated on different sub-ensembles the inequality can fail, and does so
  at the rates the campaign module reproduces.

Both schemes share the hidden-vs-selected term assignment: the (a,b) quadrant
plays the hidden-data role, the other three quadrants the pseudocomplementary
role.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import log2
from typing import Iterable, Sequence, Union

from .errors import DegenerateIndex, DomainError, EmptyCampaign, EmptyExperiment
from .model import ColumnId, ExperimentMatrix

#: absolute tolerance for treating a deficit as exactly zero
ZERO_TOL = 1e-12


class DeficitScheme(Enum):
    FULL_MATRIX = "full-matrix"
    CROSS_TABLE = "cross-table"


@dataclass(frozen=True)
class EntropyTerms:
    """The four conditional-entropy terms, in bits."""

    h_ab_hd: float
    h_ab_prime: float
    h_bprime_aprime: float
    h_aprime_b: float


@dataclass(frozen=True)
class DeficitResult:
    terms: EntropyTerms
    deficit: float
    h_marginal_a: float
    scheme: DeficitScheme = DeficitScheme.CROSS_TABLE

    @property
    def h_ab_hd(self) -> float:
        return self.terms.h_ab_hd


def binary_entropy(p: float) -> float:
    """Base-2 Shannon entropy of a Bernoulli(p), with 0*log2(0) := 0."""
    if p < 0.0 or p > 1.0:
        raise DomainError(f"probability out of [0,1]: {p}")
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * log2(p) - (1.0 - p) * log2(1.0 - p)


def conditional_entropy(pairs: Iterable[tuple[int, int]]) -> float:
    """Plug-in H(X|Y) over (x, y) bit pairs; an empty list estimates 0."""
    n0 = k0 = n1 = k1 = 0
    for x, y in pairs:
        if y == 0:
            n0 += 1
            k0 += x
        else:
            n1 += 1
            k1 += x
    n = n0 + n1
    if n == 0:
        return 0.0
    h = 0.0
    if n0:
        h += (n0 / n) * binary_entropy(k0 / n0)
    if n1:
        h += (n1 / n) * binary_entropy(k1 / n1)
    return h


def _full_matrix_terms(matrix: ExperimentMatrix) -> EntropyTerms:
    a = matrix.column(ColumnId.A)
    ap = matrix.column(ColumnId.A_PRIME)
    b = matrix.column(ColumnId.B)
    bp = matrix.column(ColumnId.B_PRIME)
    return EntropyTerms(
        h_ab_hd=conditional_entropy(zip(a, b)),
        h_ab_prime=conditional_entropy(zip(a, bp)),
        h_bprime_aprime=conditional_entropy(zip(bp, ap)),
        h_aprime_b=conditional_entropy(zip(ap, b)),
    )


def _quadrant_counts(matrix: ExperimentMatrix):
    """Counts[block][x][y] with both the selected and the hidden pair of each
    outcome tallied into the quadrant matching their columns."""
    counts = {
        (ColumnId.A, ColumnId.B): [[0, 0], [0, 0]],
        (ColumnId.A, ColumnId.B_PRIME): [[0, 0], [0, 0]],
        (ColumnId.A_PRIME, ColumnId.B): [[0, 0], [0, 0]],
        (ColumnId.A_PRIME, ColumnId.B_PRIME): [[0, 0], [0, 0]],
    }
    for o in matrix.outcomes:
        m = o.mask
        counts[(m.sel_a, m.sel_b)][o.value(m.sel_a)][o.value(m.sel_b)] += 1
        counts[(m.hidden_a, m.hidden_b)][o.value(m.hidden_a)][o.value(m.hidden_b)] += 1
    return counts


def _quadrant_term(block, weight_total: int, condition_on_a_side: bool) -> float:
    """Sum of (c/W) * log2(margin/c) over the block's nonempty cells."""
    h = 0.0
    if condition_on_a_side:
        for x in range(2):
            m = block[x][0] + block[x][1]
            for y in range(2):
                c = block[x][y]
                if c:
                    h += (c / weight_total) * log2(m / c)
    else:
        for y in range(2):
            m = block[0][y] + block[1][y]
            for x in range(2):
                c = block[x][y]
                if c:
                    h += (c / weight_total) * log2(m / c)
    return h


def _cross_table_terms(matrix: ExperimentMatrix) -> EntropyTerms:
    counts = _quadrant_counts(matrix)
    w = 2 * matrix.n
    return EntropyTerms(
        h_ab_hd=_quadrant_term(counts[(ColumnId.A, ColumnId.B)], w, False),
        h_ab_prime=_quadrant_term(counts[(ColumnId.A, ColumnId.B_PRIME)], w, False),
        h_bprime_aprime=_quadrant_term(
            counts[(ColumnId.A_PRIME, ColumnId.B_PRIME)], w, True),
        h_aprime_b=_quadrant_term(counts[(ColumnId.A_PRIME, ColumnId.B)], w, False),
    )


def deficit_pseudo(matrix: ExperimentMatrix,
                   scheme: DeficitScheme = DeficitScheme.CROSS_TABLE,
                   ) -> DeficitResult:
    """Evaluate the information deficit of one experiment.

    The deficit is the hidden-data term minus the three pseudocomplementary
    terms; a positive value flags a (possibly stochastic) violation of local
    realism.
    """
    if matrix.n < 1:
        raise EmptyExperiment("deficit needs at least one outcome")
    if scheme is DeficitScheme.FULL_MATRIX:
        terms = _full_matrix_terms(matrix)
    else:
        terms = _cross_table_terms(matrix)
    s = terms.h_ab_prime + terms.h_bprime_aprime
    s += terms.h_aprime_b
    deficit = terms.h_ab_hd - s
    a = matrix.column(ColumnId.A)
    h_marg = binary_entropy(sum(a) / len(a))
    return DeficitResult(terms, deficit, h_marg, scheme)


def deficit_generic(h_ab: float, h_ab_prime: float, h_bprime_aprime: float,
                    h_aprime_b: float) -> float:
    """Information deficit from four already-computed terms (bits)."""
    s = h_ab_prime + h_bprime_aprime
    s += h_aprime_b
    return h_ab - s


def information_bell_holds(result: Union[DeficitResult, float],
                           delta: float = 0.0) -> bool:
    """True iff the inequality holds, i.e. deficit <= delta.

    A violation requires deficit strictly above delta; equality within
    ZERO_TOL counts as holding.
    """
    if delta < 0:
        raise DomainError("delta must be >= 0")
    d = result.deficit if isinstance(result, DeficitResult) else float(result)
    return d <= delta + ZERO_TOL


def _deficit_of(r) -> float:
    return r.deficit if isinstance(r, DeficitResult) else float(r)


def index_deficit(results: Sequence[Union[DeficitResult, float]],
                  denominator: str = "conditional") -> float:
    """Max deficit over a campaign, normalized by the argmax experiment's
    hidden-term entropy.

    denominator="conditional" divides by that experiment's h_ab_hd (the
    reading that reproduces the published 1.000 at small n);
    denominator="marginal" divides by its marginal H(A) instead.
    """
    results = list(results)
    if not results:
        raise EmptyCampaign("no deficit results supplied")
    best = max(results, key=_deficit_of)
    if denominator == "conditional":
        if isinstance(best, DeficitResult):
            denom = best.h_ab_hd
        else:
            raise DomainError("conditional denominator needs DeficitResult inputs")
    elif denominator == "marginal":
        if isinstance(best, DeficitResult):
            denom = best.h_marginal_a
        else:
            raise DomainError("marginal denominator needs DeficitResult inputs")
    else:
        raise DomainError(f"unknown denominator {denominator!r}")
    if abs(denom) <= ZERO_TOL:
        raise DegenerateIndex("argmax experiment has zero denominator entropy")
    return _deficit_of(best) / denom


def index_norm(results: Sequence[Union[DeficitResult, float]]) -> float:
    """Max / (Max - Min) over a campaign's deficits."""
    ds = [_deficit_of(r) for r in results]
    if not ds:
        raise EmptyCampaign("no deficit results supplied")
    mx, mn = max(ds), min(ds)
    if mx == mn:
        raise DegenerateIndex("max equals min; normalized index undefined")
    return mx / (mx - mn)
