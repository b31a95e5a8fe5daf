import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infobell.errors import DomainError, EmptyCampaign, NoPlanWithinBudget
from infobell.inference import (
    REFERENCE_PLAN_TABLE,
    Decision,
    DecisionPlan,
    HypothesisProbs,
    binomial_cdf,
    binomial_pmf,
    estimate_p0,
    find_plan,
    plan_grid,
    tail_at_least,
    tail_more_than,
    verdict,
)

PROBS = HypothesisProbs(0.012, 0.85)


class TestEstimateP0:
    def test_published_cell(self):
        assert estimate_p0(108, 10000) == pytest.approx(0.0108)

    def test_zero(self):
        assert estimate_p0(0, 100) == 0.0

    def test_anticorrelated_cell(self):
        assert estimate_p0(500, 10000) == pytest.approx(0.052, abs=0.003)

    def test_empty_rejected(self):
        with pytest.raises(EmptyCampaign):
            estimate_p0(0, 0)

    def test_bounds(self):
        with pytest.raises(DomainError):
            estimate_p0(5, 4)


class TestBinomialCdf:
    def test_full_support_is_one(self):
        assert binomial_cdf(7, 7, 0.3) == 1.0

    def test_power_of_q(self):
        assert binomial_cdf(0, 3, 0.012) == pytest.approx(0.988 ** 3, abs=1e-5)
        assert binomial_cdf(0, 3, 0.012) == pytest.approx(0.96443, abs=1e-5)

    def test_three_term_sum(self):
        assert binomial_cdf(2, 6, 0.85) == pytest.approx(0.00588, abs=1e-4)

    def test_degenerate_p(self):
        assert binomial_cdf(3, 5, 0.0) == 1.0
        assert binomial_cdf(3, 5, 1.0) == 0.0

    def test_domain_checks(self):
        with pytest.raises(DomainError):
            binomial_cdf(-1, 5, 0.5)
        with pytest.raises(DomainError):
            binomial_cdf(2, 5, 1.5)

    @given(st.integers(1, 400), st.floats(0.01, 0.99))
    @settings(max_examples=60, deadline=None)
    def test_pmf_sums_to_one(self, n, p):
        total = sum(binomial_pmf(k, n, p) for k in range(n + 1))
        assert total == pytest.approx(1.0, abs=1e-12)

    @given(st.integers(2, 200), st.floats(0.05, 0.95), st.integers(0, 199))
    @settings(max_examples=60, deadline=None)
    def test_monotone_in_k0(self, n, p, k0):
        k0 = min(k0, n - 1)
        assert binomial_cdf(k0, n, p) <= binomial_cdf(k0 + 1, n, p) + 1e-15

    def test_strictly_decreasing_in_p(self):
        for k0 in (0, 3, 7):
            assert binomial_cdf(k0, 10, 0.2) > binomial_cdf(k0, 10, 0.4)

    def test_against_scipy(self):
        from scipy import stats as sps

        for n in (10, 312, 5000):
            for p in (0.012, 0.052, 0.85):
                for k0 in (0, 1, n // 3, n - 1):
                    assert binomial_cdf(k0, n, p) == pytest.approx(
                        sps.binom.cdf(k0, n, p), rel=1e-10, abs=1e-14)


class TestTail:
    def test_single_trial(self):
        assert tail_at_least(1, 1, 0.5) == pytest.approx(0.5)

    def test_three_of_six(self):
        assert tail_at_least(3, 6, 0.012) == pytest.approx(3.3e-5, abs=1e-6)

    def test_one_of_three(self):
        assert tail_at_least(1, 3, 0.012) == pytest.approx(0.0356, abs=1e-4)

    def test_zero_convention(self):
        assert tail_at_least(0, 10, 0.3) == 1.0

    def test_alternate_reading(self):
        assert tail_more_than(2, 6, 0.85) == pytest.approx(1 - 0.00588,
                                                           abs=1e-4)

    @given(st.integers(1, 200), st.floats(0.01, 0.99), st.integers(1, 200))
    @settings(max_examples=80, deadline=None)
    def test_exact_complement(self, n, p, k_e):
        k_e = min(k_e, n)
        # the identity must hold exactly in IEEE doubles, not approximately
        assert tail_at_least(k_e, n, p) + binomial_cdf(k_e - 1, n, p) == 1.0


class TestFindPlan:
    @pytest.mark.parametrize("alpha,gamma,expected", [
        (0.01, 0.80, (3, 1)),
        (0.01, 0.95, (4, 1)),
        (0.01, 0.99, (5, 1)),
        (0.001, 0.99, (6, 2)),
    ])
    def test_reference_rows(self, alpha, gamma, expected):
        plan = find_plan(PROBS, alpha, gamma)
        assert (plan.n_req, plan.k0) == expected

    def test_row_6_2_tail_values(self):
        # the pinned probabilities behind the (6, 2) row
        assert tail_more_than(2, 6, 0.012) == pytest.approx(3.3e-5, abs=3e-6)
        assert tail_more_than(2, 6, 0.85) == pytest.approx(0.994, abs=1e-3)

    def test_minimality_exhaustive(self):
        plan = find_plan(PROBS, 0.001, 0.99)
        n = plan.n_req - 1
        for k0 in range(n + 1):
            ok_alpha = tail_more_than(k0, n, PROBS.p0_h0) < 0.001
            ok_gamma = tail_more_than(k0, n, PROBS.p0_h1) >= 0.99
            assert not (ok_alpha and ok_gamma)

    def test_smallest_k0_returned(self):
        plan = find_plan(PROBS, 0.01, 0.80)
        assert plan.k0 == 1
        # k0 = 0 fails the alpha condition at N = 3
        assert tail_more_than(0, 3, PROBS.p0_h0) >= 0.01

    def test_monotone_in_alpha_and_gamma(self):
        base = find_plan(PROBS, 0.01, 0.90).n_req
        assert find_plan(PROBS, 0.001, 0.90).n_req >= base
        assert find_plan(PROBS, 0.01, 0.99).n_req >= base

    def test_budget_error(self):
        with pytest.raises(NoPlanWithinBudget):
            find_plan(HypothesisProbs(0.49, 0.51), 0.001, 0.99, n_max=10)

    def test_close_hypotheses_plan(self):
        """Exact-binomial minimum for the 0.012-vs-0.052 comparison.

        The published figure for this cell was (312, 10), produced by an
        approximate power routine; exact arithmetic shows (312, 10) does not
        even satisfy the power constraint (P_312(k > 10 | p=0.052) = 0.935 <
        0.95) and the true minimum is (275, 8). See REPORT.md.
        """
        plan = find_plan(HypothesisProbs(0.012, 0.052), 0.01, 0.95)
        assert (plan.n_req, plan.k0) == (275, 8)
        assert tail_more_than(8, 275, 0.012) < 0.01
        assert tail_more_than(8, 275, 0.052) >= 0.95
        for k0 in range(275):
            ok = (tail_more_than(k0, 274, 0.012) < 0.01
                  and tail_more_than(k0, 274, 0.052) >= 0.95)
            assert not ok

    def test_invalid_probs(self):
        with pytest.raises(DomainError):
            HypothesisProbs(0.85, 0.012)


class TestPlanGrid:
    def test_reference_grid_matches_at_least_nine(self):
        rows = plan_grid(PROBS, [0.05, 0.01, 0.005, 0.001],
                         [0.80, 0.90, 0.95, 0.99])
        assert len(rows) == 16
        assert all(r.matches_paper is not None for r in rows)
        matches = sum(1 for r in rows if r.matches_paper)
        assert matches >= 9

    def test_known_deviations(self):
        """Exact minima undercut the published table in the expected cells:
        the alpha=5% column and the gamma=90% rows at alpha<=1%."""
        rows = {(r.alpha_percent, r.gamma_percent): r
                for r in plan_grid(PROBS, [0.05, 0.01, 0.005, 0.001],
                                   [0.80, 0.90, 0.95, 0.99])}
        for gamma in (80.0, 90.0, 95.0, 99.0):
            row = rows[(5.0, gamma)]
            assert row.matches_paper is False
            assert row.n_req < REFERENCE_PLAN_TABLE[(5.0, gamma)][0]
        for alpha in (1.0, 0.5, 0.1):
            row = rows[(alpha, 90.0)]
            assert (row.n_req, row.k0) == (3, 1)
            assert row.matches_paper is False

    def test_singleton_grid_equals_find_plan(self):
        rows = plan_grid(PROBS, [0.01], [0.95])
        plan = find_plan(PROBS, 0.01, 0.95)
        assert len(rows) == 1
        assert (rows[0].n_req, rows[0].k0) == (plan.n_req, plan.k0)
        assert rows[0].matches_paper is True

    def test_non_reference_scenario_unannotated(self):
        rows = plan_grid(HypothesisProbs(0.02, 0.8), [0.01], [0.95])
        assert rows[0].matches_paper is None


class TestVerdict:
    PLAN = DecisionPlan(PROBS, 0.001, 0.99, 6, 2)

    def test_accept(self):
        v = verdict(3, 6, self.PLAN)
        assert v.decision is Decision.ACCEPT_H1
        assert not v.early

    def test_retain(self):
        assert verdict(1, 6, self.PLAN).decision is Decision.RETAIN_H0

    def test_in_progress(self):
        assert verdict(0, 2, self.PLAN).decision is Decision.IN_PROGRESS

    def test_early_acceptance_flagged(self):
        v = verdict(3, 4, self.PLAN)
        assert v.decision is Decision.ACCEPT_H1
        assert v.early

    def test_conservative_mode_defers(self):
        v = verdict(3, 4, self.PLAN, conservative=True)
        assert v.decision is Decision.IN_PROGRESS

    def test_k_e_exceeding_n_done_rejected(self):
        with pytest.raises(DomainError):
            verdict(5, 4, self.PLAN)
