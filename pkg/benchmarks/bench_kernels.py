"""Benchmark the pure-Python kernels against the compiled extension.

Run:  python benchmarks/bench_kernels.py
"""
import time

from infobell._kernels import get_backend


def _time(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    pure = get_backend("pure")
    try:
        fast = get_backend("fast")
    except ImportError:
        fast = None
        print("compiled kernel not built; benchmarking pure only")

    rows = []

    # campaign evaluation: N experiments generated + evaluated
    for case, label in ((0, "stochastic"), (1, "anticorrelated")):
        for n, N in ((4, 10_000), (16, 10_000)):
            args = (case, 1, n, 2026, 3, 0, N)
            tp = _time(pure.campaign_chunk, *args)
            tf = _time(fast.campaign_chunk, *args) if fast else None
            rows.append((f"campaign {label} n={n} N={N}", tp, tf))

    # exhaustive enumeration
    enum_cases = [("enum stochastic full-matrix n=4 (2^16)", (0, 0, 4, 1)),
                  ("enum stochastic cross-table n=3", (0, 1, 3, 3)),
                  ("enum anticorrelated cross-table n=4", (1, 1, 4, 3))]
    for label, args in enum_cases:
        tp = _time(pure.enum_distribution, *args, repeat=1)
        tf = _time(fast.enum_distribution, *args, repeat=1) if fast else None
        rows.append((label, tp, tf))

    if fast:
        # the big one only makes sense compiled
        t0 = time.perf_counter()
        fast.enum_distribution(0, 1, 4, 3)
        rows.append(("enum stochastic cross-table n=4 (48^4)", None,
                     time.perf_counter() - t0))

    width = max(len(r[0]) for r in rows) + 2
    print(f"{'benchmark':<{width}}{'pure':>12}{'fast':>12}{'speedup':>10}")
    for label, tp, tf in rows:
        pure_s = f"{tp:.3f}s" if tp is not None else "-"
        fast_s = f"{tf:.3f}s" if tf is not None else "-"
        speedup = f"{tp / tf:.1f}x" if tp and tf else "-"
        print(f"{label:<{width}}{pure_s:>12}{fast_s:>12}{speedup:>10}")


if __name__ == "__main__":
    main()
