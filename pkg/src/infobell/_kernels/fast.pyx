# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Mirrors `pure.py` expression-for-expression; both
backends must return bitwise-identical doubles (compile with -O2, never
-ffast-math). Keep in sync with the pinned protocol documented there."""

from libc.math cimport log2, floor, ceil, llround
from libc.stdlib cimport malloc, free
from libc.string cimport memset

import numpy as np

cdef extern from *:
    """
    typedef unsigned long long u64;
    typedef long long i64;
    """
    ctypedef unsigned long long u64
    ctypedef long long i64

DEF GAMMA = 0x9E3779B97F4A7C15
DEF MIX1 = 0xBF58476D1CE4E5B9
DEF MIX2 = 0x94D049BB133111EB

STOCHASTIC = 0
ANTICORRELATED = 1
FULL_MATRIX = 0
CROSS_TABLE = 1
SINGLE = 1
THREE = 3
FOUR = 4
ZERO_TOL = 1e-12

cdef int[4] SEL_AP = [0, 0, 1, 1]
cdef int[4] SEL_BP = [0, 1, 1, 0]


cdef inline u64 _avalanche(u64 z) nogil:
    z = (z ^ (z >> 30)) * <u64>MIX1
    z = (z ^ (z >> 27)) * <u64>MIX2
    return z ^ (z >> 31)


cdef inline u64 _mix_seed(u64 master_seed, u64 experiment_index) nogil:
    return _avalanche(master_seed + (experiment_index + 1) * <u64>GAMMA)


cdef inline u64 _next_word(u64* state) nogil:
    state[0] = state[0] + <u64>GAMMA
    return _avalanche(state[0])


cdef inline int _draw_bit(u64* state) nogil:
    return <int>(_next_word(state) >> 63)


cdef inline int _draw_mask(u64* state, int domain_code) nogil:
    cdef int r
    if domain_code == 4:
        return <int>(_next_word(state) >> 62)
    while True:
        r = <int>(_next_word(state) >> 62)
        if r != 3:
            return r + 1


cdef inline double _bh(double p) nogil:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * log2(p) - (1.0 - p) * log2(1.0 - p)


cdef inline double _cond_weighted(const int* xs, const int* ys, int n) nogil:
    cdef int n0 = 0, k0 = 0, n1 = 0, k1 = 0, i
    cdef double h = 0.0
    for i in range(n):
        if ys[i] == 0:
            n0 += 1
            k0 += xs[i]
        else:
            n1 += 1
            k1 += xs[i]
    if n0:
        h += (<double>n0 / n) * _bh(<double>k0 / n0)
    if n1:
        h += (<double>n1 / n) * _bh(<double>k1 / n1)
    return h


cdef inline double _quadrant_term(i64 c00, i64 c01, i64 c10, i64 c11,
                                  i64 w, bint condition_on_a) nogil:
    cdef double h = 0.0
    cdef i64 m0, m1
    if condition_on_a:
        m0 = c00 + c01
        if c00:
            h += (<double>c00 / w) * log2(<double>m0 / c00)
        if c01:
            h += (<double>c01 / w) * log2(<double>m0 / c01)
        m1 = c10 + c11
        if c10:
            h += (<double>c10 / w) * log2(<double>m1 / c10)
        if c11:
            h += (<double>c11 / w) * log2(<double>m1 / c11)
    else:
        m0 = c00 + c10
        if c00:
            h += (<double>c00 / w) * log2(<double>m0 / c00)
        if c10:
            h += (<double>c10 / w) * log2(<double>m0 / c10)
        m1 = c01 + c11
        if c01:
            h += (<double>c01 / w) * log2(<double>m1 / c01)
        if c11:
            h += (<double>c11 / w) * log2(<double>m1 / c11)
    return h


cdef inline int _block_index(int a_side, int b_side) nogil:
    if a_side == 0:
        return 1 if b_side else 0
    return 2 if b_side else 3


cdef void _deficit_parts_c(const int* a, const int* ap, const int* b,
                           const int* bp, const int* masks, int n,
                           int scheme_code, double* out) nogil:
    cdef double t0, t1, t2, t3, s
    cdef i64 q[4][4]
    cdef int i, mc, sa, sb, x, y, blk, asum = 0
    if scheme_code == 0:
        t0 = _cond_weighted(a, b, n)
        t1 = _cond_weighted(a, bp, n)
        t2 = _cond_weighted(bp, ap, n)
        t3 = _cond_weighted(ap, b, n)
    else:
        memset(q, 0, sizeof(q))
        for i in range(n):
            mc = masks[i]
            sa = SEL_AP[mc]
            sb = SEL_BP[mc]
            x = ap[i] if sa else a[i]
            y = bp[i] if sb else b[i]
            blk = _block_index(sa, sb)
            q[blk][(x << 1) | y] += 1
            x = a[i] if sa else ap[i]
            y = b[i] if sb else bp[i]
            blk = _block_index(1 - sa, 1 - sb)
            q[blk][(x << 1) | y] += 1
        t0 = _quadrant_term(q[0][0], q[0][1], q[0][2], q[0][3], 2 * n, False)
        t1 = _quadrant_term(q[1][0], q[1][1], q[1][2], q[1][3], 2 * n, False)
        t2 = _quadrant_term(q[2][0], q[2][1], q[2][2], q[2][3], 2 * n, True)
        t3 = _quadrant_term(q[3][0], q[3][1], q[3][2], q[3][3], 2 * n, False)
    s = t1 + t2
    s += t3
    for i in range(n):
        asum += a[i]
    out[0] = t0
    out[1] = t1
    out[2] = t2
    out[3] = t3
    out[4] = _bh(<double>asum / n)
    out[5] = t0 - s


cdef void _generate_c(int case_code, int n, u64 master_seed, u64 index,
                      int domain_code, int* a, int* ap, int* b, int* bp,
                      int* masks) nogil:
    cdef u64 state = _mix_seed(master_seed, index)
    cdef int i, mc, s, h1, h2
    for i in range(n):
        if case_code == 0:
            a[i] = _draw_bit(&state)
            ap[i] = _draw_bit(&state)
            b[i] = _draw_bit(&state)
            bp[i] = _draw_bit(&state)
            masks[i] = _draw_mask(&state, domain_code)
        else:
            mc = _draw_mask(&state, domain_code)
            masks[i] = mc
            s = _draw_bit(&state)
            h1 = _draw_bit(&state)
            h2 = _draw_bit(&state)
            if SEL_AP[mc]:
                ap[i] = s
                a[i] = h1
            else:
                a[i] = s
                ap[i] = h1
            if SEL_BP[mc]:
                bp[i] = 1 - s
                b[i] = h2
            else:
                b[i] = 1 - s
                bp[i] = h2


def mix_seed(master_seed, experiment_index):
    return _mix_seed(<u64>(master_seed & 0xFFFFFFFFFFFFFFFF),
                     <u64>experiment_index)


def generate_experiment(int case_code, int n, master_seed, experiment_index,
                        int domain_code):
    """Same contract as the pure backend: lists (a, ap, b, bp, masks)."""
    cdef u64 ms = <u64>(master_seed & 0xFFFFFFFFFFFFFFFF)
    cdef u64 idx = <u64>experiment_index
    cdef int* buf = <int*>malloc(5 * n * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    try:
        _generate_c(case_code, n, ms, idx, domain_code,
                    buf, buf + n, buf + 2 * n, buf + 3 * n, buf + 4 * n)
        a = [buf[i] for i in range(n)]
        ap = [buf[n + i] for i in range(n)]
        b = [buf[2 * n + i] for i in range(n)]
        bp = [buf[3 * n + i] for i in range(n)]
        masks = [buf[4 * n + i] for i in range(n)]
        return a, ap, b, bp, masks
    finally:
        free(buf)


def deficit_parts(a, ap, b, bp, masks, int scheme_code):
    cdef int n = len(a)
    cdef int* buf = <int*>malloc(5 * n * sizeof(int))
    cdef double out[6]
    cdef int i
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            buf[i] = a[i]
            buf[n + i] = ap[i]
            buf[2 * n + i] = b[i]
            buf[3 * n + i] = bp[i]
            buf[4 * n + i] = masks[i]
        _deficit_parts_c(buf, buf + n, buf + 2 * n, buf + 3 * n, buf + 4 * n,
                         n, scheme_code, out)
        return (out[0], out[1], out[2], out[3], out[4], out[5])
    finally:
        free(buf)


def campaign_chunk(int case_code, int scheme_code, int n, master_seed,
                   int domain_code, start, count):
    """Evaluate experiments [start, start+count); releases the GIL."""
    cdef u64 ms = <u64>(master_seed & 0xFFFFFFFFFFFFFFFF)
    cdef u64 first = <u64>start
    cdef i64 cnt = <i64>count
    out_arr = np.empty((count, 6), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef int* buf = <int*>malloc(5 * n * sizeof(int))
    cdef i64 j
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            for j in range(cnt):
                _generate_c(case_code, n, ms, first + <u64>j, domain_code,
                            buf, buf + n, buf + 2 * n, buf + 3 * n,
                            buf + 4 * n)
                _deficit_parts_c(buf, buf + n, buf + 2 * n, buf + 3 * n,
                                 buf + 4 * n, n, scheme_code, &out[j, 0])
    finally:
        free(buf)
    return out_arr


def canonical_key(double d):
    if d <= ZERO_TOL and d >= -ZERO_TOL:
        return 0
    cdef double x = d * 1e12
    if x >= 0:
        return <i64>floor(x + 0.5)
    return <i64>ceil(x - 0.5)


cdef inline i64 _canonical_key_c(double d) nogil:
    cdef double x
    if d <= 1e-12 and d >= -1e-12:
        return 0
    x = d * 1e12
    if x >= 0:
        return <i64>floor(x + 0.5)
    return <i64>ceil(x - 0.5)


DEF HASH_SIZE = 65536  # open-addressing table; distinct keys stay far below


def enum_distribution(int case_code, int scheme_code, int n, int domain_code):
    """Direct loop over the full equiprobable product space of per-outcome
    generation patterns; returns {canonical key: count}."""
    # build the per-outcome pattern table (same order as the pure backend)
    cdef int npat = 0
    cdef int[256] pa, pap, pb, pbm, pmc
    cdef int mc, nib, s, h1, h2
    if domain_code == 1:
        codes = (2,)
    elif domain_code == 3:
        codes = (1, 2, 3)
    else:
        codes = (0, 1, 2, 3)
    if case_code == 0:
        for mc in codes:
            for nib in range(16):
                pa[npat] = nib & 1
                pap[npat] = (nib >> 1) & 1
                pb[npat] = (nib >> 2) & 1
                pbm[npat] = (nib >> 3) & 1
                pmc[npat] = mc
                npat += 1
    else:
        for mc in codes:
            for s in range(2):
                for h1 in range(2):
                    for h2 in range(2):
                        if SEL_AP[mc]:
                            pap[npat] = s
                            pa[npat] = h1
                        else:
                            pa[npat] = s
                            pap[npat] = h1
                        if SEL_BP[mc]:
                            pbm[npat] = 1 - s
                            pb[npat] = h2
                        else:
                            pb[npat] = 1 - s
                            pbm[npat] = h2
                        pmc[npat] = mc
                        npat += 1

    cdef u64 total = 1
    cdef int i
    for i in range(n):
        total *= <u64>npat

    cdef i64* keys = <i64*>malloc(HASH_SIZE * sizeof(i64))
    cdef i64* counts = <i64*>malloc(HASH_SIZE * sizeof(i64))
    cdef int* buf = <int*>malloc(5 * n * sizeof(int))
    if keys == NULL or counts == NULL or buf == NULL:
        free(keys)
        free(counts)
        free(buf)
        raise MemoryError()
    cdef u64 idx, tmp
    cdef int p
    cdef double parts[6]
    cdef i64 k, used = 0
    cdef u64 slot
    cdef bint overflow = False
    try:
        memset(counts, 0, HASH_SIZE * sizeof(i64))
        with nogil:
            for idx in range(total):
                tmp = idx
                for i in range(n):
                    p = <int>(tmp % <u64>npat)
                    tmp //= <u64>npat
                    buf[i] = pa[p]
                    buf[n + i] = pap[p]
                    buf[2 * n + i] = pb[p]
                    buf[3 * n + i] = pbm[p]
                    buf[4 * n + i] = pmc[p]
                _deficit_parts_c(buf, buf + n, buf + 2 * n, buf + 3 * n,
                                 buf + 4 * n, n, scheme_code, parts)
                k = _canonical_key_c(parts[5])
                slot = (<u64>k * <u64>GAMMA) >> 48
                slot &= HASH_SIZE - 1
                while counts[slot] != 0 and keys[slot] != k:
                    slot = (slot + 1) & (HASH_SIZE - 1)
                if counts[slot] == 0:
                    used += 1
                    if used > HASH_SIZE - 4096:
                        overflow = True
                        break
                keys[slot] = k
                counts[slot] += 1
        if overflow:
            raise RuntimeError(
                "enum_distribution: distinct-deficit table overflow")
        dist = {}
        for slot in range(HASH_SIZE):
            if counts[slot] != 0:
                dist[keys[slot]] = counts[slot]
        return dist
    finally:
        free(keys)
        free(counts)
        free(buf)


def backend_name():
    return "fast"
