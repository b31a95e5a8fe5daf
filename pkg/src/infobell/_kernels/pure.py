"""Pure-Python kernels: generation, deficit evaluation, campaign loop, and
the exhaustive enumeration oracle.

This module is the reference implementation; the compiled extension
(`fast.pyx`) replicates the arithmetic expression-for-expression so both
backends produce bitwise-identical doubles. Keep the two in sync.

Pinned pseudo-random protocol
-----------------------------
Per-experiment stream = SplitMix64. Stream seed for experiment ``i`` is
``avalanche(master_seed + (i + 1) * GAMMA)``; each draw advances the state by
GAMMA and avalanches it (period 2^64). Draws consume one 64-bit word each:

* bit: top bit of the next word
* mask: top two bits of successive words, rejecting 3 in the three-pair
  domain (mask codes: 0=(A,B) 1=(A,B') 2=(A',B') 3=(A',B); the three-pair
  domain draws from codes (1, 2, 3), the four-pair domain from (0, 1, 2, 3))

Outcome draw order: stochastic - a, a', b, b' bits then the mask;
anticorrelated - mask, selected A-side bit (B-side is its complement),
hidden A-side bit, hidden B-side bit.
"""
from __future__ import annotations

from math import factorial, floor, ceil, log2

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

# case codes
STOCHASTIC = 0
ANTICORRELATED = 1
# scheme codes
FULL_MATRIX = 0
CROSS_TABLE = 1
# domain codes (SINGLE: fixed mask, for enumerations where masks are inert)
SINGLE = 1
THREE = 3
FOUR = 4

# mask code -> (a-side column is A', b-side column is B') for the selected pair
_SEL_AP = (0, 0, 1, 1)   # codes 0..3: selected a-side column (0=A, 1=A')
_SEL_BP = (0, 1, 1, 0)   # selected b-side column (0=B, 1=B')

ZERO_TOL = 1e-12


def avalanche(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def mix_seed(master_seed: int, experiment_index: int) -> int:
    """Stream seed for one experiment; avalanche guarantees stream separation."""
    return avalanche((master_seed + (experiment_index + 1) * GAMMA) & MASK64)


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_word(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return avalanche(self.state)

    def draw_bit(self) -> int:
        return self.next_word() >> 63

    def draw_mask(self, domain_code: int) -> int:
        if domain_code == FOUR:
            return self.next_word() >> 62
        while True:
            r = self.next_word() >> 62
            if r != 3:
                return r + 1  # codes 1, 2, 3


def generate_experiment(case_code: int, n: int, master_seed: int,
                        experiment_index: int, domain_code: int):
    """Return (a, ap, b, bp, masks) as lists of ints for one experiment."""
    rng = SplitMix64(mix_seed(master_seed, experiment_index))
    a = [0] * n
    ap = [0] * n
    b = [0] * n
    bp = [0] * n
    masks = [0] * n
    for i in range(n):
        if case_code == STOCHASTIC:
            a[i] = rng.draw_bit()
            ap[i] = rng.draw_bit()
            b[i] = rng.draw_bit()
            bp[i] = rng.draw_bit()
            masks[i] = rng.draw_mask(domain_code)
        else:
            mc = rng.draw_mask(domain_code)
            masks[i] = mc
            s = rng.draw_bit()
            h1 = rng.draw_bit()
            h2 = rng.draw_bit()
            if _SEL_AP[mc]:
                ap[i] = s
                a[i] = h1
            else:
                a[i] = s
                ap[i] = h1
            if _SEL_BP[mc]:
                bp[i] = 1 - s
                b[i] = h2
            else:
                b[i] = 1 - s
                bp[i] = h2
    return a, ap, b, bp, masks


def _cond_weighted(xs, ys, n: int) -> float:
    """Margin-weighted plug-in H(X|Y); the FULL_MATRIX term."""
    n0 = k0 = n1 = k1 = 0
    for i in range(n):
        if ys[i] == 0:
            n0 += 1
            k0 += xs[i]
        else:
            n1 += 1
            k1 += xs[i]
    h = 0.0
    if n0:
        h += (n0 / n) * _bh(k0 / n0)
    if n1:
        h += (n1 / n) * _bh(k1 / n1)
    return h


def _bh(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * log2(p) - (1.0 - p) * log2(1.0 - p)


def _quadrant_term(c00, c01, c10, c11, w: int, condition_on_a: bool) -> float:
    """Sum of (c/w)*log2(margin/c); margin along y unless condition_on_a."""
    h = 0.0
    if condition_on_a:
        m0 = c00 + c01
        if c00:
            h += (c00 / w) * log2(m0 / c00)
        if c01:
            h += (c01 / w) * log2(m0 / c01)
        m1 = c10 + c11
        if c10:
            h += (c10 / w) * log2(m1 / c10)
        if c11:
            h += (c11 / w) * log2(m1 / c11)
    else:
        m0 = c00 + c10
        if c00:
            h += (c00 / w) * log2(m0 / c00)
        if c10:
            h += (c10 / w) * log2(m0 / c10)
        m1 = c01 + c11
        if c01:
            h += (c01 / w) * log2(m1 / c01)
        if c11:
            h += (c11 / w) * log2(m1 / c11)
    return h


def deficit_parts(a, ap, b, bp, masks, scheme_code: int):
    """(h_ab, h_ab', h_b'a', h_a'b, h_marginal_a, deficit) for one experiment."""
    n = len(a)
    if scheme_code == FULL_MATRIX:
        t0 = _cond_weighted(a, b, n)
        t1 = _cond_weighted(a, bp, n)
        t2 = _cond_weighted(bp, ap, n)
        t3 = _cond_weighted(ap, b, n)
    else:
        # quadrant counts [x][y] flattened: q_xy
        q = [[0, 0, 0, 0] for _ in range(4)]  # blocks: ab, abp, apbp, apb
        for i in range(n):
            mc = masks[i]
            sa = _SEL_AP[mc]
            sb = _SEL_BP[mc]
            # selected pair
            x = ap[i] if sa else a[i]
            y = bp[i] if sb else b[i]
            blk = _block_index(sa, sb)
            q[blk][(x << 1) | y] += 1
            # hidden pair (complement columns)
            x = a[i] if sa else ap[i]
            y = b[i] if sb else bp[i]
            blk = _block_index(1 - sa, 1 - sb)
            q[blk][(x << 1) | y] += 1
        w = 2 * n
        t0 = _quadrant_term(q[0][0], q[0][1], q[0][2], q[0][3], w, False)
        t1 = _quadrant_term(q[1][0], q[1][1], q[1][2], q[1][3], w, False)
        t2 = _quadrant_term(q[2][0], q[2][1], q[2][2], q[2][3], w, True)
        t3 = _quadrant_term(q[3][0], q[3][1], q[3][2], q[3][3], w, False)
    s = t1 + t2
    s += t3
    deficit = t0 - s
    h_marg = _bh(sum(a) / n)
    return t0, t1, t2, t3, h_marg, deficit


def _block_index(a_side: int, b_side: int) -> int:
    # 0: (A,B)  1: (A,B')  2: (A',B')  3: (A',B)
    if a_side == 0:
        return 1 if b_side else 0
    return 2 if b_side else 3


def campaign_chunk(case_code: int, scheme_code: int, n: int, master_seed: int,
                   domain_code: int, start: int, count: int) -> np.ndarray:
    """Evaluate experiments [start, start+count); rows are the 6-tuple of
    deficit_parts. Deterministic per (master_seed, experiment index)."""
    out = np.empty((count, 6), dtype=np.float64)
    for j in range(count):
        arrays = generate_experiment(case_code, n, master_seed, start + j,
                                     domain_code)
        out[j, :] = deficit_parts(arrays[0], arrays[1], arrays[2], arrays[3],
                                  arrays[4], scheme_code)
    return out


def canonical_key(d: float) -> int:
    """Integer key at 1e-12 resolution; |d| <= 1e-12 snaps to zero."""
    if abs(d) <= ZERO_TOL:
        return 0
    x = d * 1e12
    return int(floor(x + 0.5)) if x >= 0 else int(ceil(x - 0.5))


def _outcome_patterns(case_code: int, domain_code: int):
    """Equally likely per-outcome generation patterns (a, ap, b, bp, mask)."""
    codes = {SINGLE: (2,), THREE: (1, 2, 3), FOUR: (0, 1, 2, 3)}[domain_code]
    pats = []
    if case_code == STOCHASTIC:
        for mc in codes:
            for nib in range(16):
                pats.append((nib & 1, (nib >> 1) & 1, (nib >> 2) & 1,
                             (nib >> 3) & 1, mc))
    else:
        for mc in codes:
            for s in range(2):
                for h1 in range(2):
                    for h2 in range(2):
                        if _SEL_AP[mc]:
                            ap_, a_ = s, h1
                        else:
                            a_, ap_ = s, h1
                        if _SEL_BP[mc]:
                            bp_, b_ = 1 - s, h2
                        else:
                            b_, bp_ = 1 - s, h2
                        pats.append((a_, ap_, b_, bp_, mc))
    return pats


def enum_distribution(case_code: int, scheme_code: int, n: int,
                      domain_code: int) -> dict[int, int]:
    """Exact deficit distribution over the full equiprobable sample space.

    Aggregates over multisets of the iid per-outcome patterns with exact
    multinomial counts rather than looping the product space; the returned
    counts are identical to a direct enumeration (the compiled backend does
    the direct loop, and the two are cross-checked in tests).
    """
    from itertools import combinations_with_replacement

    pats = _outcome_patterns(case_code, domain_code)
    dist: dict[int, int] = {}
    fact = [factorial(k) for k in range(n + 1)]
    n_fact = fact[n]

    a = [0] * n
    ap = [0] * n
    b = [0] * n
    bp = [0] * n
    masks = [0] * n

    for combo in combinations_with_replacement(pats, n):
        mult = n_fact
        run = 1
        prev = combo[0]
        for i in range(n):
            pat = combo[i]
            if i and pat == prev:
                run += 1
            elif i:
                mult //= fact[run]
                run = 1
                prev = pat
            a[i], ap[i], b[i], bp[i], masks[i] = pat
        mult //= fact[run]
        d = deficit_parts(a, ap, b, bp, masks, scheme_code)[5]
        k = canonical_key(d)
        dist[k] = dist.get(k, 0) + mult
    return dist


def backend_name() -> str:
    return "pure"
