"""Generators for the two simulated cases and the exhaustive oracle.

Determinism contract: the per-experiment bit stream depends only on
(master_seed, experiment_index) through the SplitMix64 protocol pinned in
`_kernels.pure`; call order, thread count, and backend choice do not change
any generated value.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import _kernels as K
from .entropy import DeficitScheme
from .errors import DomainError, TooLarge
from .model import (
    MASK_A_B,
    MASK_A_BP,
    MASK_AP_B,
    MASK_AP_BP,
    CaseKind,
    ExperimentMatrix,
    OutcomeRecord,
    SelectionDomain,
)

#: sample-space guard for exhaustive enumeration
ENUM_GUARD = 1 << 24

# mask code (kernel) <-> SelectionMask
_MASK_BY_CODE = (MASK_A_B, MASK_A_BP, MASK_AP_BP, MASK_AP_B)
_CODE_BY_MASK = {m: c for c, m in enumerate(_MASK_BY_CODE)}


@dataclass(frozen=True)
class SeedSpec:
    """Names one experiment's deterministic stream."""

    master_seed: int
    experiment_index: int = 0

    def __post_init__(self):
        if self.experiment_index < 0:
            raise DomainError("experiment_index must be >= 0")

    @property
    def stream_seed(self) -> int:
        return K.mix_seed(self.master_seed & ((1 << 64) - 1),
                          self.experiment_index)


def _case_code(case: CaseKind) -> int:
    return K.STOCHASTIC if case is CaseKind.STOCHASTIC else K.ANTICORRELATED


def _domain_code(domain: SelectionDomain) -> int:
    return K.THREE if domain is SelectionDomain.THREE_ENTANGLED_PAIRS else K.FOUR


def _scheme_code(scheme: DeficitScheme) -> int:
    return K.FULL_MATRIX if scheme is DeficitScheme.FULL_MATRIX else K.CROSS_TABLE


def _matrix_from_arrays(a, ap, b, bp, masks) -> ExperimentMatrix:
    outcomes = tuple(
        OutcomeRecord(a[i], ap[i], b[i], bp[i], _MASK_BY_CODE[masks[i]])
        for i in range(len(a))
    )
    return ExperimentMatrix(outcomes)


def gen_stochastic(n: int, seed: SeedSpec,
                   domain: SelectionDomain = SelectionDomain.THREE_ENTANGLED_PAIRS,
                   ) -> ExperimentMatrix:
    """All 4n cells independent fair bits; masks uniform over the domain and
    independent of the values."""
    if n < 1:
        raise DomainError("n must be >= 1")
    arrays = K.generate_experiment(K.STOCHASTIC, n, seed.master_seed,
                                   seed.experiment_index, _domain_code(domain))
    return _matrix_from_arrays(*arrays)


def gen_anticorrelated(n: int, seed: SeedSpec,
                       domain: SelectionDomain = SelectionDomain.THREE_ENTANGLED_PAIRS,
                       ) -> ExperimentMatrix:
    """Selected pair perfectly anticorrelated; hidden cells fair bits."""
    if n < 1:
        raise DomainError("n must be >= 1")
    arrays = K.generate_experiment(K.ANTICORRELATED, n, seed.master_seed,
                                   seed.experiment_index, _domain_code(domain))
    return _matrix_from_arrays(*arrays)


def generate(case: CaseKind, n: int, seed: SeedSpec,
             domain: SelectionDomain = SelectionDomain.THREE_ENTANGLED_PAIRS,
             ) -> ExperimentMatrix:
    if case is CaseKind.STOCHASTIC:
        return gen_stochastic(n, seed, domain)
    return gen_anticorrelated(n, seed, domain)


@dataclass(frozen=True)
class ExactStats:
    """Exact deficit distribution over the whole sample space.

    Probabilities are exact ratios; deficits are canonicalized to 1e-12
    resolution (the same zero tolerance the campaign statistics use).
    """

    p_strict_positive: Fraction
    p_zero: Fraction
    max_deficit: float
    min_deficit: float
    support_size: int
    sample_space: int
    distribution: dict[float, Fraction] = field(repr=False)

    @property
    def p_negative(self) -> Fraction:
        return 1 - self.p_strict_positive - self.p_zero

    @property
    def p_rank(self) -> Fraction:
        """Zeros + positives over total (the rank-fraction semantics)."""
        return self.p_strict_positive + self.p_zero

    @property
    def mean_positive(self) -> float:
        num = sum(d * float(p) for d, p in self.distribution.items() if d > 0)
        den = float(self.p_strict_positive)
        return num / den if den else float("nan")


def sample_space_size(case: CaseKind, n: int, domain: SelectionDomain,
                      scheme: DeficitScheme) -> int:
    """Size of the equiprobable space enumerate_exact sums over."""
    d = len(domain.masks)
    if case is CaseKind.STOCHASTIC:
        if scheme is DeficitScheme.FULL_MATRIX:
            # masks never influence full-matrix deficits
            return 2 ** (4 * n)
        return (16 * d) ** n
    return (8 * d) ** n  # masks x selected bit x two hidden bits


def enumerate_exact(case: CaseKind, n: int,
                    domain: SelectionDomain = SelectionDomain.THREE_ENTANGLED_PAIRS,
                    scheme: DeficitScheme = DeficitScheme.CROSS_TABLE,
                    ) -> ExactStats:
    """Brute-force ground truth for campaign statistics at small n."""
    if n < 1:
        raise DomainError("n must be >= 1")
    size = sample_space_size(case, n, domain, scheme)
    if size > ENUM_GUARD:
        raise TooLarge(
            f"sample space {size} exceeds the 2^24 enumeration guard"
        )
    if case is CaseKind.STOCHASTIC and scheme is DeficitScheme.FULL_MATRIX:
        # masks never influence full-matrix deficits: enumerate one mask copy
        dom_code = K.SINGLE
    else:
        dom_code = _domain_code(domain)
    dist_counts = K.enum_distribution(
        _case_code(case), _scheme_code(scheme), n, dom_code)
    total = sum(dist_counts.values())
    if total != size:
        raise AssertionError(
            f"enumeration covered {total} points, expected {size}")
    distribution = {
        key / 1e12: Fraction(count, total) for key, count in dist_counts.items()
    }
    p_pos = sum((p for d, p in distribution.items() if d > 0), Fraction(0))
    p_zero = distribution.get(0.0, Fraction(0))
    return ExactStats(
        p_strict_positive=p_pos,
        p_zero=p_zero,
        max_deficit=max(distribution),
        min_deficit=min(distribution),
        support_size=len(distribution),
        sample_space=size,
        distribution=distribution,
    )


def mask_code(mask) -> int:
    return _CODE_BY_MASK[mask]


def mask_from_code(code: int):
    return _MASK_BY_CODE[code]
