"""Regenerate REPORT.md (the reproduction report) from actual runs.

Run:  python scripts/build_report.py > REPORT.md
"""
import io
import sys

from infobell.campaign import CampaignConfig, run_campaign
from infobell.inference import (
    REFERENCE_PLAN_TABLE,
    HypothesisProbs,
    find_plan,
    plan_grid,
    tail_more_than,
)
from infobell.model import CaseKind, SelectionDomain
from infobell.quantum import crossing_angle, max_quantum_deficit, violation_fraction
from infobell.simulate import enumerate_exact
from infobell._kernels import backend_name

SEED = 2026
N = 10_000

# published campaign statistics: (p_rank, n0, avg_pos, max)
PUBLISHED = {
    ("random", 4): (0.348, 933, 0.19, 0.50),
    ("random", 8): (0.056, 443, 0.11, 0.50),
    ("random", 12): (0.012, 108, 0.07, 0.30),
    ("random", 16): (0.003, 25, 0.07, 0.21),
    ("anticorrelation", 4): (0.483, 1327, 0.21, 0.50),
    ("anticorrelation", 8): (0.157, 1198, 0.12, 0.50),
    ("anticorrelation", 12): (0.052, 500, 0.09, 0.41),
    ("anticorrelation", 16): (0.024, 237, 0.08, 0.34),
}
PUBLISHED_INDICES = {
    ("random", 4): (1.000, 0.327), ("random", 8): (1.000, 0.317),
    ("random", 12): (0.698, 0.225), ("random", 16): (0.429, 0.181),
    ("anticorrelation", 4): (1.000, 0.400), ("anticorrelation", 8): (1.000, 0.413),
    ("anticorrelation", 12): (0.823, 0.362), ("anticorrelation", 16): (0.711, 0.326),
}


def main(out=sys.stdout):
    w = out.write
    w("# Reproduction report\n\n")
    w(f"Campaigns: N = {N:,} experiments per cell, master seed {SEED}, "
      f"three-pair selection domain, cross-table estimator, kernel backend "
      f"`{backend_name()}`.\n\n")

    w("## Estimator reconstruction\n\n")
    w("The published statistics come from an unpublished spreadsheet; the\n"
      "toolkit therefore implements two deficit evaluation schemes and runs\n"
      "all campaign statistics on the reconstructed one:\n\n")
    w("* **full-matrix** (benchmark): every term is the margin-weighted\n"
      "  plug-in conditional entropy over all n column pairs. A two-step\n"
      "  triangle inequality proves the deficit is never positive for any\n"
      "  matrix, matching the documented behaviour of the no-selection\n"
      "  analysis route; exhaustive enumeration (n <= 4) confirms a maximum\n"
      "  of exactly 0 over the whole sample space. The positive rates in the\n"
      "  published table cannot come from this estimator.\n")
    w("* **cross-table** (canonical): each outcome tallies its selected pair\n"
      "  and its hidden pair into the frequency-table quadrant matching\n"
      "  their columns; a term is the quadrant-mass-weighted conditional\n"
      "  entropy (weights N(x,y)/(2n), per-quadrant margins). Evidence this\n"
      "  is the published pipeline: exact enumeration at n = 4 gives maximum\n"
      "  deficit 0.500000 (published 0.50), violation-index 1.000 exactly\n"
      "  (published 1.000), normalized index 0.333 (published 0.327),\n"
      "  campaign minimum -1.0 at every n (implied by the published\n"
      "  normalized-index column), stochastic p_zero 0.2509 vs the 0.2547\n"
      "  implied by the published rank fraction, and anticorrelated p_rank\n"
      "  0.4805 vs the published 0.483.\n\n")

    w("## Campaign statistics vs published values\n\n")
    w("| case | n | p_rank | pub | n0 | pub | avg_pos | pub | max | pub | "
      "idx_deficit | pub | idx_norm | pub |\n")
    w("|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n")
    for case in CaseKind:
        for n in (4, 8, 12, 16):
            stats, _ = run_campaign(CampaignConfig(case, n, N,
                                                   master_seed=SEED))
            pub = PUBLISHED[(case.value, n)]
            pidx = PUBLISHED_INDICES[(case.value, n)]
            avg = f"{stats.avg_positive:.3f}" if stats.avg_positive else "-"
            idxd = f"{stats.index_deficit:.3f}" if stats.index_deficit else "-"
            idxn = f"{stats.index_norm:.3f}" if stats.index_norm else "-"
            w(f"| {case.value} | {n} | {stats.p_rank:.4f} | {pub[0]:.3f} | "
              f"{stats.n0} | {pub[1]} | {avg} | {pub[2]:.2f} | "
              f"{stats.max_deficit:.3f} | {pub[3]:.2f} | "
              f"{idxd} | {pidx[0]:.3f} | {idxn} | {pidx[1]:.3f} |\n")
    w("\nTrends reproduce exactly (rank fraction strictly decreasing in n,\n"
      "anticorrelated above stochastic everywhere); cell-level rate gaps\n"
      "(stochastic decaying somewhat faster, anticorrelated somewhat slower\n"
      "than published) are attributed to unrecoverable spreadsheet details.\n"
      "The published minimum implied by max/(max - min) is about -1.03 at\n"
      "every n; the reconstructed estimator's exact minimum is -1.0.\n\n")

    w("## Exact enumeration (oracle) at small n\n\n")
    w("| case | n | sample space | p_positive | p_zero | max | min |\n")
    w("|---|---|---|---|---|---|---|\n")
    for case in CaseKind:
        for n in (1, 2, 3, 4):
            ex = enumerate_exact(case, n)
            w(f"| {case.value} | {n} | {ex.sample_space:,} | "
              f"{float(ex.p_strict_positive):.6f} | {float(ex.p_zero):.6f} | "
              f"{ex.max_deficit:.4f} | {ex.min_deficit:.4f} |\n")
    w("\nThe enumerated maximum at n = 4 is exactly 0.5 bits for both cases,\n"
      "matching the published 0.50 with no discrepancy.\n\n")

    w("## Four-pair selection domain (open question)\n\n")
    for domain, label in ((SelectionDomain.THREE_ENTANGLED_PAIRS, "three"),
                          (SelectionDomain.FOUR_PAIRS, "four")):
        stats, _ = run_campaign(CampaignConfig(
            CaseKind.STOCHASTIC, 4, N, master_seed=SEED, domain=domain))
        w(f"* {label}-pair domain, stochastic n=4: p_rank = "
          f"{stats.p_rank:.4f} (published 0.348)\n")
    w("\nThe three-pair domain matches substantially better and is the "
      "default.\n\n")

    w("## Decision planner vs the published grid\n\n")
    rows = plan_grid(HypothesisProbs(0.012, 0.85),
                     [0.05, 0.01, 0.005, 0.001], [0.80, 0.90, 0.95, 0.99])
    matches = sum(1 for r in rows if r.matches_paper)
    w(f"{matches} of 16 rows match exactly. Deviating rows (exact binomial "
      f"vs published):\n\n")
    w("| alpha % | gamma % | exact (N, k0) | published (N, k0) |\n")
    w("|---|---|---|---|\n")
    for r in rows:
        if r.matches_paper is False:
            pub = REFERENCE_PLAN_TABLE[(r.alpha_percent, r.gamma_percent)]
            w(f"| {r.alpha_percent} | {r.gamma_percent} | "
              f"({r.n_req}, {r.k0}) | {pub} |\n")
    w("\nEvery deviation has the exact minimum *below* the published value,\n"
      "consistent with the published grid coming from an approximate power\n"
      "routine. The alpha = 5% column and the gamma = 90% rows at alpha <=\n"
      "1% are exactly the cells predicted to deviate.\n\n")

    w("## Close-hypotheses plan (0.012 vs 0.052, alpha 1%, gamma 95%)\n\n")
    plan = find_plan(HypothesisProbs(0.012, 0.052), 0.01, 0.95)
    w(f"Exact-binomial minimum: (N_req, k0) = ({plan.n_req}, {plan.k0}); "
      f"published: (312, 10).\n\n")
    w(f"* The published pair fails its own power constraint under exact\n"
      f"  arithmetic: P_312(k > 10 | p = 0.052) = "
      f"{tail_more_than(10, 312, 0.052):.4f} < 0.95.\n")
    w(f"* The exact minimum satisfies both constraints: "
      f"P_275(k > 8 | 0.012) = {tail_more_than(8, 275, 0.012):.2e} < 0.01 and "
      f"P_275(k > 8 | 0.052) = {tail_more_than(8, 275, 0.052):.4f} >= 0.95; "
      f"no k0 works at N = 274 (exhaustively checked).\n")
    w("* No standard convention reproduces (312, 10): two-sided alpha gives\n"
      "  (299, 9); halving the power miss gives (325, 9); both give\n"
      "  (350, 10).\n\n")
    w("Acceptance criterion 3 binds the published figure and is therefore\n"
      "left honestly red (xfail) with this analysis.\n\n")

    w("## Proximity bands (acceptance criterion 6)\n\n")
    s12, _ = run_campaign(CampaignConfig(CaseKind.STOCHASTIC, 12, N,
                                         master_seed=SEED))
    a4, _ = run_campaign(CampaignConfig(CaseKind.ANTICORRELATED, 4, N,
                                        master_seed=SEED))
    ex4 = enumerate_exact(CaseKind.ANTICORRELATED, 4)
    w(f"* Stochastic n=12 p_rank: observed {s12.p_rank:.4f}; band "
      f"[0.006, 0.024] around the published 0.012. The reconstructed\n"
      f"  estimator's expectation is about 0.0055, so the cell sits just\n"
      f"  under the band floor. Honest red (xfail).\n")
    w(f"* Anticorrelated n=4 avg_positive: observed {a4.avg_positive:.4f}; "
      f"band [0.15, 0.27] around the published 0.21. The exact expected\n"
      f"  positive mean is {ex4.mean_positive:.4f} "
      f"(enumerated), just above the band ceiling. Honest red (xfail).\n\n")
    w("Both gaps are small and systematic, consistent with residual\n"
      "estimator details (not sampling noise); no tolerance was widened to\n"
      "force agreement.\n\n")

    w("## Quantum reference curve\n\n")
    frac = violation_fraction(0.0, 100.0, 0.01)
    cross = crossing_angle(0.01)
    theta_star, d_star = max_quantum_deficit()
    w(f"* violation fraction over (0, 100] deg at 0.01 deg: {frac:.4f} "
      f"(published 0.85; the residual 0.009 matches the figure-reading\n"
      f"  precision caveat)\n")
    w(f"* crossing angle: {cross:.3f} deg\n")
    w(f"* maximum deficit: {d_star:.4f} bits at {theta_star:.2f} deg "
      f"(published: about 0.25 bits)\n")


if __name__ == "__main__":
    buf = io.StringIO()
    main(buf)
    sys.stdout.write(buf.getvalue())
