import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from infobell.entropy import (
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
from infobell.errors import DegenerateIndex, DomainError
from infobell.model import MASK_A_BP, MASK_AP_B, MASK_AP_BP, SelectionDomain
from infobell.simulate import SeedSpec, gen_stochastic

from conftest import matrix_from_columns

pairs_strategy = st.lists(
    st.tuples(st.integers(0, 1), st.integers(0, 1)), min_size=1, max_size=24
)


class TestBinaryEntropy:
    def test_uniform(self):
        assert binary_entropy(0.5) == 1.0

    def test_degenerate(self):
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0

    def test_quarter_closed_form(self):
        # 2 - 0.75*log2(3)
        assert binary_entropy(0.25) == pytest.approx(
            2.0 - 0.75 * math.log2(3.0), abs=1e-12)
        assert binary_entropy(0.25) == pytest.approx(0.811278, abs=1e-6)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            binary_entropy(-0.01)
        with pytest.raises(DomainError):
            binary_entropy(1.01)

    @given(st.floats(0.0, 1.0))
    def test_symmetry_and_bounds(self, p):
        h = binary_entropy(p)
        assert 0.0 <= h <= 1.0
        assert h == pytest.approx(binary_entropy(1.0 - p), abs=1e-12)


class TestConditionalEntropy:
    def test_perfect_anticorrelation(self):
        assert conditional_entropy([(0, 1), (1, 0), (0, 1), (1, 0)]) == 0.0

    def test_uniform_within_groups(self):
        assert conditional_entropy([(0, 0), (1, 0), (0, 1), (1, 1)]) == 1.0

    def test_hand_mixed(self):
        # (2/4)*h(1/2) + (2/4)*h(1) = 0.5
        assert conditional_entropy([(0, 0), (1, 0), (1, 1), (1, 1)]) == 0.5

    def test_empty_is_zero(self):
        assert conditional_entropy([]) == 0.0

    @given(pairs_strategy)
    def test_bounds_and_marginal_dominance(self, pairs):
        h = conditional_entropy(pairs)
        assert 0.0 <= h <= 1.0
        xs = [x for x, _ in pairs]
        hx = binary_entropy(sum(xs) / len(xs))
        assert h <= hx + 1e-12

    @given(pairs_strategy)
    def test_chain_rule(self, pairs):
        # H(X,Y) = H(Y) + H(X|Y) for the plug-in estimates
        n = len(pairs)
        counts = {}
        for xy in pairs:
            counts[xy] = counts.get(xy, 0) + 1
        h_joint = -sum((c / n) * math.log2(c / n) for c in counts.values())
        ys = [y for _, y in pairs]
        h_y = binary_entropy(sum(ys) / n)
        assert h_joint == pytest.approx(h_y + conditional_entropy(pairs),
                                        abs=1e-10)


class TestDeficitFullMatrix:
    def test_hand_worked_example(self, spec_example_matrix):
        r = deficit_pseudo(spec_example_matrix, DeficitScheme.FULL_MATRIX)
        assert r.terms.h_ab_hd == pytest.approx(0.5, abs=1e-12)
        assert r.terms.h_ab_prime == 0.0
        assert r.terms.h_bprime_aprime == pytest.approx(0.811278, abs=1e-6)
        assert r.terms.h_aprime_b == 0.0
        assert r.deficit == pytest.approx(-0.311278, abs=1e-6)

    def test_single_outcome_vanishes(self):
        m = matrix_from_columns([1], [0], [1], [0])
        r = deficit_pseudo(m, DeficitScheme.FULL_MATRIX)
        assert r.deficit == 0.0
        assert r.terms == EntropyTerms(0.0, 0.0, 0.0, 0.0)

    def test_constant_columns_vanish(self):
        m = matrix_from_columns([1] * 5, [1] * 5, [1] * 5, [1] * 5)
        r = deficit_pseudo(m, DeficitScheme.FULL_MATRIX)
        assert r.deficit == 0.0

    def test_mask_independence(self):
        # full-matrix terms read columns only; masks cannot matter
        cols = dict(a=[0, 1, 1, 0, 1], ap=[1, 1, 0, 0, 0],
                    b=[0, 0, 1, 1, 1], bp=[1, 0, 0, 1, 1])
        m1 = matrix_from_columns(**cols, masks=["abp"] * 5)
        m2 = matrix_from_columns(**cols, masks=["apb", "apbp", "abp", "apb",
                                                "apbp"])
        r1 = deficit_pseudo(m1, DeficitScheme.FULL_MATRIX)
        r2 = deficit_pseudo(m2, DeficitScheme.FULL_MATRIX)
        assert r1.deficit == r2.deficit
        assert r1.terms == r2.terms

    @given(st.integers(0, 2**40), st.integers(1, 10))
    def test_never_positive(self, seed, n):
        """The two-step triangle inequality: evaluating every term on the
        same empirical joint can never violate the inequality."""
        m = gen_stochastic(n, SeedSpec(seed))
        r = deficit_pseudo(m, DeficitScheme.FULL_MATRIX)
        assert r.deficit <= 1e-12


class TestDeficitCrossTable:
    def test_single_outcome_vanishes(self):
        m = matrix_from_columns([1], [0], [1], [0])
        assert deficit_pseudo(m).deficit == 0.0

    def test_known_positive_configuration(self):
        # all masks (A',B'): hidden (a,b) pairs 2/2-split with a determined
        # in one group; the (b',a') quadrant constant; other quadrants empty
        m = matrix_from_columns(
            a=[0, 1, 0, 0], ap=[0, 0, 0, 0], b=[0, 0, 1, 1], bp=[0, 0, 0, 0],
            masks=["apbp"] * 4)
        r = deficit_pseudo(m)
        assert r.terms.h_ab_hd == pytest.approx(0.25)  # (2/8)*1
        assert r.terms.h_bprime_aprime == 0.0
        assert r.deficit == pytest.approx(0.25)

    def test_deficit_bounded_by_hd_term(self):
        for seed in range(40):
            m = gen_stochastic(6, SeedSpec(seed))
            r = deficit_pseudo(m)
            assert r.deficit <= r.h_ab_hd + 1e-12
            assert r.h_ab_hd <= 1.0

    def test_terms_in_unit_interval(self):
        for seed in range(20):
            m = gen_stochastic(5, SeedSpec(seed, 3))
            t = deficit_pseudo(m).terms
            for v in (t.h_ab_hd, t.h_ab_prime, t.h_bprime_aprime,
                      t.h_aprime_b):
                assert 0.0 <= v <= 1.0

    def test_deficit_combination_invariant(self):
        for seed in range(20):
            m = gen_stochastic(7, SeedSpec(seed, 1))
            r = deficit_pseudo(m)
            t = r.terms
            s = t.h_ab_prime + t.h_bprime_aprime
            s += t.h_aprime_b
            assert r.deficit == pytest.approx(t.h_ab_hd - s, abs=1e-12)

    def test_row_permutation_invariance(self):
        cols = dict(a=[0, 1, 1, 0], ap=[1, 0, 0, 1], b=[0, 0, 1, 1],
                    bp=[1, 1, 0, 0])
        masks = [MASK_A_BP, MASK_AP_BP, MASK_AP_B, MASK_AP_BP]
        m1 = matrix_from_columns(**cols, masks=masks)
        perm = [2, 0, 3, 1]
        m2 = matrix_from_columns(
            a=[cols["a"][i] for i in perm], ap=[cols["ap"][i] for i in perm],
            b=[cols["b"][i] for i in perm], bp=[cols["bp"][i] for i in perm],
            masks=[masks[i] for i in perm])
        assert deficit_pseudo(m1).deficit == deficit_pseudo(m2).deficit


def test_bit_flip_symmetry_both_schemes():
    cols = dict(a=[0, 1, 1, 0, 1, 0], ap=[1, 0, 0, 1, 1, 1],
                b=[0, 0, 1, 1, 0, 1], bp=[1, 1, 0, 0, 1, 0])
    masks = ["abp", "apbp", "apb", "apbp", "abp", "apb"]
    m1 = matrix_from_columns(**cols, masks=masks)
    for col in ("a", "ap", "b", "bp"):
        flipped = dict(cols)
        flipped[col] = [1 - v for v in cols[col]]
        m2 = matrix_from_columns(**flipped, masks=masks)
        for scheme in DeficitScheme:
            r1, r2 = deficit_pseudo(m1, scheme), deficit_pseudo(m2, scheme)
            assert r1.deficit == pytest.approx(r2.deficit, abs=1e-12)
            assert r1.terms.h_ab_hd == pytest.approx(r2.terms.h_ab_hd,
                                                     abs=1e-12)


class TestBellPredicate:
    def test_negative_deficit_holds(self):
        assert information_bell_holds(-0.3, 0.0) is True

    def test_zero_deficit_holds(self):
        assert information_bell_holds(0.0, 0.0) is True

    def test_violation(self):
        assert information_bell_holds(0.2, 0.1) is False

    def test_negative_delta_rejected(self):
        with pytest.raises(DomainError):
            information_bell_holds(0.0, -0.1)


class TestDeficitGeneric:
    def test_plain(self):
        assert deficit_generic(1.0, 0.0, 0.0, 0.0) == 1.0
        assert deficit_generic(0.5, 0.5, 0.0, 0.0) == 0.0

    def test_quantum_terms(self):
        assert deficit_generic(1.0, 0.3547, 0.3547, 0.3547) == pytest.approx(
            -0.0641, abs=1e-4)


def _result(deficit, h_ab_hd, h_marg=1.0):
    return DeficitResult(EntropyTerms(h_ab_hd, 0, 0, 0), deficit, h_marg)


class TestIndices:
    def test_index_deficit_unity(self):
        assert index_deficit([_result(0.5, 0.5)]) == pytest.approx(1.0)

    def test_index_deficit_ratio(self):
        assert index_deficit([_result(0.25, 0.5)]) == pytest.approx(0.5)

    def test_index_deficit_uses_argmax(self):
        rs = [_result(0.1, 0.2), _result(0.4, 0.8), _result(-1.0, 1.0)]
        assert index_deficit(rs) == pytest.approx(0.5)

    def test_index_deficit_marginal_variant(self):
        r = _result(0.5, 0.25, h_marg=1.0)
        assert index_deficit([r], denominator="marginal") == pytest.approx(0.5)

    def test_index_deficit_degenerate(self):
        with pytest.raises(DegenerateIndex):
            index_deficit([_result(0.0, 0.0)])

    def test_index_norm(self):
        assert index_norm([0.5, -1.0]) == pytest.approx(0.5 / 1.5)
        assert index_norm([1.0, 0.0]) == pytest.approx(1.0)

    def test_index_norm_degenerate(self):
        with pytest.raises(DegenerateIndex):
            index_norm([0.3, 0.3])


def test_full_matrix_selection_independence_under_generation():
    """For a fixed stream of cell values the full-matrix deficit ignores any
    reassignment of masks (they only matter for generation)."""
    m = gen_stochastic(8, SeedSpec(99), SelectionDomain.THREE_ENTANGLED_PAIRS)
    r1 = deficit_pseudo(m, DeficitScheme.FULL_MATRIX)
    remasked = matrix_from_columns(
        [o.a for o in m.outcomes],
        [o.a_prime for o in m.outcomes],
        [o.b for o in m.outcomes],
        [o.b_prime for o in m.outcomes],
        masks=["abp"] * 8,
    )
    r2 = deficit_pseudo(remasked, DeficitScheme.FULL_MATRIX)
    assert r1.deficit == r2.deficit
