"""Pure-numpy implementations of the hot inner loops.

Same signatures as the compiled module latgen._fastpath; latgen._kernels picks
one of the two at import time.
"""

import numpy as np

BACKEND = "numpy"


def dbd_score_pair(p, ktab, n, v, x0, gamma):
    """Digit-wise quality of the two candidate bits at level v.

    p[k * 2^(n-t) - 1] holds the running product q(r-1, t, k); ktab is the
    padded log-sin table of modulus N = 2^n. Returns the pair of scores for
    x0 and x0 + 2^(v-1), fused so the q gather is shared.
    """
    x1 = x0 + (1 << (v - 1))
    mask = (1 << v) - 1
    shift = n - v
    s0 = 0.0
    s1 = 0.0
    scale = 1.0
    for t in range(v, n + 1):
        k = np.arange(1, 1 << t, 2, dtype=np.int64)
        q = p[(k << (n - t)) - 1]
        i0 = ((k * x0) & mask) << shift
        i1 = ((k * x1) & mask) << shift
        s0 += scale * float(q @ (1.0 + gamma * ktab[i0]))
        s1 += scale * float(q @ (1.0 + gamma * ktab[i1]))
        scale *= 0.5
    return s0, s1


def dbd_update(p, ktab, n, v, z, gamma):
    """Fold the freshly selected bits into the level-v slots of p, in place."""
    k = np.arange(1, 1 << v, 2, dtype=np.int64)
    idx = ((k * z) & ((1 << v) - 1)) << (n - v)
    p[(k << (n - v)) - 1] *= 1.0 + gamma * ktab[idx]


def accumulate_product(acc, tab, z, gamma, k0=0):
    """acc[i] *= 1 + gamma * tab[(k0 + i) * z mod N], N = len(tab), in place."""
    N = tab.shape[0]
    idx = (np.arange(k0, k0 + acc.shape[0], dtype=np.int64) * z) % N
    acc *= 1.0 + gamma * tab[idx]


def gather_score(q, tab, z, k0=1):
    """sum_i q[i] * tab[(k0 + i) * z mod N] -- one exact candidate score."""
    N = tab.shape[0]
    idx = (np.arange(k0, k0 + q.shape[0], dtype=np.int64) * z) % N
    return float(q @ tab[idx])
