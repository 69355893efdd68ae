"""Numba kernels: PRNG, path sampling, Sturm bisection, compensated sums.

Everything here releases the GIL so replica blocks can run on a thread pool.
All integer state is explicit uint64/int64; no kernel touches global state.
"""

import numpy as np
from numba import int64, njit, uint64

GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_INV53 = 1.0 / 9007199254740992.0  # 2**-53


@njit(cache=True, nogil=True, inline="always")
def _rotl64(x, k):
    return uint64((x << k) | (x >> (uint64(64) - k)))


@njit(cache=True, nogil=True, inline="always")
def mix64(z):
    # SplitMix64 finalizer
    z = uint64((z ^ (z >> uint64(30))) * uint64(0xBF58476D1CE4E5B9))
    z = uint64((z ^ (z >> uint64(27))) * uint64(0x94D049BB133111EB))
    return uint64(z ^ (z >> uint64(31)))


@njit(cache=True, nogil=True)
def stream_state(seed, stream):
    """xoshiro256** state for (seed, stream), via a per-stream SplitMix64 chain."""
    out = np.empty(4, dtype=np.uint64)
    base = mix64(uint64(seed))
    key = mix64(uint64(base ^ uint64(uint64(stream + uint64(1)) * GOLDEN_GAMMA)))
    s = key
    nonzero = False
    for i in range(4):
        s = uint64(s + GOLDEN_GAMMA)
        out[i] = mix64(s)
        if out[i] != uint64(0):
            nonzero = True
    if not nonzero:
        out[0] = GOLDEN_GAMMA
    return out


@njit(cache=True, nogil=True, inline="always")
def next_u64(state):
    s1 = state[1]
    result = uint64(_rotl64(uint64(s1 * uint64(5)), uint64(7)) * uint64(9))
    t = uint64(s1 << uint64(17))
    state[2] ^= state[0]
    state[3] ^= s1
    state[1] ^= state[2]
    state[0] ^= state[3]
    state[2] ^= t
    state[3] = _rotl64(state[3], uint64(45))
    return result


@njit(cache=True, nogil=True, inline="always")
def next_uniform(state):
    return float(next_u64(state) >> uint64(11)) * _INV53


@njit(cache=True, nogil=True)
def fill_uniforms(state, out):
    for i in range(out.shape[0]):
        out[i] = next_uniform(state)


# ---------------------------------------------------------------------------
# birth-death dynamics


@njit(cache=True, nogil=True, inline="always")
def _up_prob(x, fam, par0, par1, ptab):
    # x >= 1; fam: 0 constant, 1 power-law drift, 2 table w/ repeated last entry
    if fam == 0:
        return par0
    elif fam == 1:
        return 0.5 - par0 * float(x) ** (-par1)
    else:
        i = x - 1
        n = ptab.shape[0]
        if i >= n:
            i = n - 1
        return ptab[i]


@njit(cache=True, nogil=True, inline="always")
def _step(state, x, fam, par0, par1, ptab):
    u = next_uniform(state)
    if x == 0:
        return 1
    if u < _up_prob(x, fam, par0, par1, ptab):
        return x + 1
    return x - 1


@njit(cache=True, nogil=True, inline="always")
def _inverse_cdf(cdf, u):
    lo = 0
    hi = cdf.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        if cdf[mid] <= u:
            lo = mid + 1
        else:
            hi = mid
    if lo >= cdf.shape[0]:
        lo = cdf.shape[0] - 1
    return lo


@njit(cache=True, nogil=True)
def walk_positions(state, x0, steps, fam, par0, par1, ptab, out):
    out[0] = x0
    x = x0
    for n in range(1, steps + 1):
        x = _step(state, x, fam, par0, par1, ptab)
        out[n] = x
    return x


@njit(cache=True, nogil=True, inline="always")
def _observe(x, vtab, v_beyond):
    if x < vtab.shape[0]:
        return vtab[x]
    return v_beyond


@njit(cache=True, nogil=True)
def walk_replica_block(seed, rep_lo, rep_hi, fixed_start, cdf, burn_in,
                       fam, par0, par1, ptab, vtab, v_beyond,
                       checkpoints, out_sums, out_snaps, out_beyond):
    """Simulate replicas [rep_lo, rep_hi), each on its own stream.

    Records running sums of V over n = 0..N at each checkpoint N, state
    snapshots at n in {0, steps//2, steps}, and visits past the value table.
    fixed_start < 0 means a stationary start drawn by inverse CDF.
    """
    nck = checkpoints.shape[0]
    steps = checkpoints[nck - 1]
    half = steps // 2
    for rep in range(rep_lo, rep_hi):
        st = stream_state(seed, uint64(rep))
        if fixed_start < 0:
            u = next_uniform(st)
            x = _inverse_cdf(cdf, u)
        else:
            x = fixed_start
        for _ in range(burn_in):
            x = _step(st, x, fam, par0, par1, ptab)
        beyond = int64(0)
        if x >= vtab.shape[0]:
            beyond += 1
        s = _observe(x, vtab, v_beyond)
        c = 0.0  # Kahan compensation
        out_snaps[rep, 0] = x
        j = 0
        for n in range(1, steps + 1):
            x = _step(st, x, fam, par0, par1, ptab)
            if x >= vtab.shape[0]:
                beyond += 1
            y = _observe(x, vtab, v_beyond) - c
            t = s + y
            c = (t - s) - y
            s = t
            if n == half:
                out_snaps[rep, 1] = x
            while j < nck and checkpoints[j] == n:
                out_sums[rep, j] = s
                j += 1
        out_snaps[rep, 2] = x
        out_beyond[rep] = beyond


@njit(cache=True, nogil=True)
def walk_value_series(seed, stream, fixed_start, cdf, fam, par0, par1, ptab,
                      vtab, v_beyond, out):
    """V(X_n) for n = 0..len(out)-1 along a single stream's trajectory."""
    st = stream_state(seed, uint64(stream))
    if fixed_start < 0:
        u = next_uniform(st)
        x = _inverse_cdf(cdf, u)
    else:
        x = fixed_start
    out[0] = _observe(x, vtab, v_beyond)
    for n in range(1, out.shape[0]):
        x = _step(st, x, fam, par0, par1, ptab)
        out[n] = _observe(x, vtab, v_beyond)


@njit(cache=True, nogil=True)
def walk_batch_means(seed, stream, fixed_start, cdf, fam, par0, par1, ptab,
                     vtab, v_beyond, batch_len, out_means):
    """Batch means of V over consecutive disjoint blocks of one long run."""
    st = stream_state(seed, uint64(stream))
    if fixed_start < 0:
        u = next_uniform(st)
        x = _inverse_cdf(cdf, u)
    else:
        x = fixed_start
    first = True
    for b in range(out_means.shape[0]):
        s = 0.0
        c = 0.0
        for _ in range(batch_len):
            if first:
                first = False  # batch 0 includes the start state
            else:
                x = _step(st, x, fam, par0, par1, ptab)
            y = _observe(x, vtab, v_beyond) - c
            t = s + y
            c = (t - s) - y
            s = t
        out_means[b] = s / batch_len


# ---------------------------------------------------------------------------
# symmetric tridiagonal eigenvalues (zero diagonal unless given)


@njit(cache=True, nogil=True)
def sturm_count(diag, b2, shift, pivmin):
    """Number of eigenvalues strictly below `shift` (LDL^T sign count)."""
    count = 0
    d = diag[0] - shift
    if d < 0.0:
        count += 1
    for i in range(b2.shape[0]):
        if abs(d) < pivmin:
            d = -pivmin
        d = (diag[i + 1] - shift) - b2[i] / d
        if d < 0.0:
            count += 1
    return count


@njit(cache=True, nogil=True)
def kth_largest_eigenvalue(diag, b2, k, lo, hi, tol, pivmin):
    """k-th largest eigenvalue by bisection on the Sturm count."""
    n = b2.shape[0] + 1
    target = n - k + 1  # count(< x) >= target  <=>  x is above the k-th largest
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if sturm_count(diag, b2, mid, pivmin) >= target:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# compensated sums


@njit(cache=True, nogil=True)
def neg_suffix_kahan(m, out):
    """out[x] = -sum_{y > x} m[y], accumulated tail-first with compensation.

    Telescoping survives: entries beyond the support of m come out exactly 0.
    """
    n = m.shape[0]
    out[n - 1] = 0.0
    s = 0.0
    c = 0.0
    for x in range(n - 2, -1, -1):
        y = m[x + 1] - c
        t = s + y
        c = (t - s) - y
        s = t
        out[x] = -s
