"""Domain types for dichotomous two-system measurement data.

An outcome is one fully populated row of four bits: two observables per
system (A/A' on system A, B/B' on system B) with a per-outcome selection mask
naming the pair treated as physically relevant (the pseudocomplementary
cells); the unselected cells are the hidden cells. This module also builds
the empirical frequency / conditional / joint probability cross tables and
checks the Bayes product identity those tables must satisfy under local
realism.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import DomainError, EmptyExperiment, ProvenanceMismatch

BAYES_TOL = 1e-12


class ColumnId(Enum):
    A = "a"
    A_PRIME = "a_prime"
    B = "b"
    B_PRIME = "b_prime"

    @property
    def system_a(self) -> bool:
        return self in (ColumnId.A, ColumnId.A_PRIME)


A_SIDE = (ColumnId.A, ColumnId.A_PRIME)
B_SIDE = (ColumnId.B, ColumnId.B_PRIME)


class SelectionDomain(Enum):
    """Admissible selection masks.

    THREE_ENTANGLED_PAIRS is the default: the three pairs that carry the
    entangled-setting terms of the deficit. FOUR_PAIRS adds (A, B).
    """

    THREE_ENTANGLED_PAIRS = "three"
    FOUR_PAIRS = "four"

    @property
    def masks(self) -> tuple["SelectionMask", ...]:
        return _DOMAIN_MASKS[self]


class CaseKind(Enum):
    STOCHASTIC = "random"
    ANTICORRELATED = "anticorrelation"


@dataclass(frozen=True)
class SelectionMask:
    """The selected (pseudocomplementary) column of each system."""

    sel_a: ColumnId
    sel_b: ColumnId

    def __post_init__(self):
        if self.sel_a not in A_SIDE:
            raise DomainError(f"sel_a must be A or A', got {self.sel_a}")
        if self.sel_b not in B_SIDE:
            raise DomainError(f"sel_b must be B or B', got {self.sel_b}")

    @property
    def hidden_a(self) -> ColumnId:
        return ColumnId.A_PRIME if self.sel_a is ColumnId.A else ColumnId.A

    @property
    def hidden_b(self) -> ColumnId:
        return ColumnId.B_PRIME if self.sel_b is ColumnId.B else ColumnId.B

    def selected(self, col: ColumnId) -> bool:
        return col is self.sel_a or col is self.sel_b


MASK_A_B = SelectionMask(ColumnId.A, ColumnId.B)
MASK_A_BP = SelectionMask(ColumnId.A, ColumnId.B_PRIME)
MASK_AP_BP = SelectionMask(ColumnId.A_PRIME, ColumnId.B_PRIME)
MASK_AP_B = SelectionMask(ColumnId.A_PRIME, ColumnId.B)

_DOMAIN_MASKS = {
    SelectionDomain.THREE_ENTANGLED_PAIRS: (MASK_A_BP, MASK_AP_BP, MASK_AP_B),
    SelectionDomain.FOUR_PAIRS: (MASK_A_B, MASK_A_BP, MASK_AP_BP, MASK_AP_B),
}


@dataclass(frozen=True)
class OutcomeRecord:
    """One run: all four cells populated (classical full matrix) plus mask."""

    a: int
    a_prime: int
    b: int
    b_prime: int
    mask: SelectionMask

    def __post_init__(self):
        for name in ("a", "a_prime", "b", "b_prime"):
            v = getattr(self, name)
            if v not in (0, 1):
                raise DomainError(f"{name} must be 0 or 1, got {v!r}")

    def value(self, col: ColumnId) -> int:
        return getattr(self, col.value)

    def check_domain(self, domain: SelectionDomain) -> None:
        if self.mask not in domain.masks:
            raise DomainError(
                f"mask ({self.mask.sel_a.value}, {self.mask.sel_b.value}) "
                f"not allowed in domain {domain.value}"
            )


@dataclass(frozen=True)
class ExperimentMatrix:
    """An ordered list of outcomes; the unit the deficit is evaluated on."""

    outcomes: tuple[OutcomeRecord, ...]

    def __post_init__(self):
        if len(self.outcomes) < 1:
            raise EmptyExperiment("an experiment needs at least one outcome")

    @property
    def n(self) -> int:
        return len(self.outcomes)

    def column(self, col: ColumnId) -> tuple[int, ...]:
        return tuple(o.value(col) for o in self.outcomes)

    def pairs(self, x: ColumnId, y: ColumnId) -> list[tuple[int, int]]:
        return [(o.value(x), o.value(y)) for o in self.outcomes]


class PairFilter(Enum):
    """Which per-outcome pairs a cross table tallies.

    ALL_PAIRS is the canonical full-matrix tally (each outcome lands in every
    block); the other two exist to explore the selection-based readings.
    """

    ALL_PAIRS = "all"
    SELECTED_ONLY = "selected"
    HIDDEN_ONLY = "hidden"


# block identifiers: (a-side column, b-side column)
BLOCKS = (
    (ColumnId.A, ColumnId.B),
    (ColumnId.A, ColumnId.B_PRIME),
    (ColumnId.A_PRIME, ColumnId.B),
    (ColumnId.A_PRIME, ColumnId.B_PRIME),
)
Block = tuple[ColumnId, ColumnId]


@dataclass(frozen=True)
class FrequencyCrossTable:
    """Four 2x2 count blocks indexed [a-side value][b-side value] + margins."""

    counts: dict[Block, tuple[tuple[int, int], tuple[int, int]]]
    margins: dict[ColumnId, tuple[int, int]]
    n_outcomes: int
    filter: PairFilter

    def block_total(self, block: Block) -> int:
        c = self.counts[block]
        return c[0][0] + c[0][1] + c[1][0] + c[1][1]


@dataclass(frozen=True)
class ConditionalProbabilityTable:
    """p(x|y) per block; cells conditioned on a zero margin are None."""

    probs: dict[Block, tuple[tuple[Optional[float], Optional[float]],
                             tuple[Optional[float], Optional[float]]]]
    n_outcomes: int
    filter: PairFilter


@dataclass(frozen=True)
class JointProbabilityTable:
    """p(x,y) per block, normalized by the outcome count."""

    probs: dict[Block, tuple[tuple[float, float], tuple[float, float]]]
    events_per_outcome: int
    n_outcomes: int
    filter: PairFilter


@dataclass(frozen=True)
class Marginals:
    """Conditioning-side probabilities per block: p(y) = N_block(y)/n."""

    probs: dict[Block, tuple[float, float]]
    n_outcomes: int
    filter: PairFilter


def _tallied_pairs(outcome: OutcomeRecord, filt: PairFilter) -> list[Block]:
    if filt is PairFilter.ALL_PAIRS:
        return list(BLOCKS)
    if filt is PairFilter.SELECTED_ONLY:
        return [(outcome.mask.sel_a, outcome.mask.sel_b)]
    return [(outcome.mask.hidden_a, outcome.mask.hidden_b)]


def build_cross_table(matrix: ExperimentMatrix,
                      filt: PairFilter = PairFilter.ALL_PAIRS,
                      ) -> FrequencyCrossTable:
    """Tally (a-side, b-side) value pairs into the four blocks.

    With ALL_PAIRS every block totals exactly n; the other filters tally one
    pair per outcome, into the block named by the mask (or its complement).
    """
    counts = {blk: [[0, 0], [0, 0]] for blk in BLOCKS}
    for o in matrix.outcomes:
        for blk in _tallied_pairs(o, filt):
            counts[blk][o.value(blk[0])][o.value(blk[1])] += 1
    frozen = {
        blk: ((c[0][0], c[0][1]), (c[1][0], c[1][1]))
        for blk, c in counts.items()
    }
    margins = {}
    for col in ColumnId:
        vals = matrix.column(col)
        ones = sum(vals)
        margins[col] = (len(vals) - ones, ones)
    return FrequencyCrossTable(frozen, margins, matrix.n, filt)


def conditional_from_frequency(freq: FrequencyCrossTable,
                               ) -> ConditionalProbabilityTable:
    """p(x|y) = N(x,y)/N(y) per block; zero-margin cells stay None."""
    probs = {}
    for blk, c in freq.counts.items():
        out = [[None, None], [None, None]]
        for y in range(2):
            ny = c[0][y] + c[1][y]
            if ny > 0:
                out[0][y] = c[0][y] / ny
                out[1][y] = c[1][y] / ny
        probs[blk] = ((out[0][0], out[0][1]), (out[1][0], out[1][1]))
    return ConditionalProbabilityTable(probs, freq.n_outcomes, freq.filter)


def joint_from_frequency(freq: FrequencyCrossTable,
                         events_per_outcome: int) -> JointProbabilityTable:
    """p(x,y) = N(x,y)/n_outcomes, with the events-per-outcome bookkeeping
    recorded (4 for the full classical tally, 2 for the selected-only one)."""
    if events_per_outcome not in (2, 4):
        raise DomainError("events_per_outcome must be 2 or 4")
    if freq.n_outcomes == 0:
        raise EmptyExperiment("frequency table built from zero outcomes")
    n = freq.n_outcomes
    probs = {
        blk: ((c[0][0] / n, c[0][1] / n), (c[1][0] / n, c[1][1] / n))
        for blk, c in freq.counts.items()
    }
    return JointProbabilityTable(probs, events_per_outcome, n, freq.filter)


def marginals_from_frequency(freq: FrequencyCrossTable) -> Marginals:
    """Per-block conditioning-side probabilities p(y) = N_block(y)/n."""
    if freq.n_outcomes == 0:
        raise EmptyExperiment("frequency table built from zero outcomes")
    n = freq.n_outcomes
    probs = {}
    for blk, c in freq.counts.items():
        probs[blk] = ((c[0][0] + c[1][0]) / n, (c[0][1] + c[1][1]) / n)
    return Marginals(probs, freq.n_outcomes, freq.filter)


def bayes_residual(joint: JointProbabilityTable, marginals: Marginals,
                   conditional: ConditionalProbabilityTable) -> float:
    """Max over defined cells of |p(x,y) - p(x|y) p(y)|.

    Zero (within 1e-12) by construction when all three tables derive from the
    same matrix and filter; perturbing any joint cell shows up directly.
    """
    same = (joint.n_outcomes == marginals.n_outcomes == conditional.n_outcomes
            and joint.filter == marginals.filter == conditional.filter)
    if not same:
        raise ProvenanceMismatch(
            "joint/marginal/conditional tables disagree on n_outcomes or filter"
        )
    worst = 0.0
    for blk in BLOCKS:
        for x in range(2):
            for y in range(2):
                p_cond = conditional.probs[blk][x][y]
                if p_cond is None:
                    continue
                resid = abs(joint.probs[blk][x][y]
                            - p_cond * marginals.probs[blk][y])
                worst = max(worst, resid)
    return worst
