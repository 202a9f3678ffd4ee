"""Whole-component CBC constructions.

Two quality functions are supported: the log-sine quality V (smoothness-free,
prime N) and the worst-case error itself (the standard CBC benchmark, prime or
power-of-two N). For prime N all candidate scores come from one cyclic
convolution after Rader's primitive-root reindexing; for N = 2^n the odd
residues split into the two cosets +-5^i, giving per-level convolutions.
Both fast paths re-score near-minimal candidates with the exact gather sum, so
they make bit-identical selections with the naive O(N^2) mode.
"""

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Tuple

import numpy as np

from . import _kernels
from .fft import cyclic_convolution
from .kernel import LN4, fourier_decay_table, kernel_table
from .numtheory import GeneratingVector, is_prime, primitive_root
from .weights import ProductWeights, weight_of

__all__ = [
    "CbcState",
    "V_quality",
    "construct_korobov_cbc",
    "construct_standard_cbc",
    "rader_scores",
]


@dataclass
class CbcState:
    """Running CBC state: q[k-1] = prod_{j<=r} (1 + gamma_j * ker[(k z_j) mod N])."""

    N: int
    q: np.ndarray
    r: int


def _omega_padded(N: int) -> np.ndarray:
    tab = kernel_table(N).padded()
    tab[1:] -= LN4
    return tab


def V_quality(v: GeneratingVector, w) -> float:
    """V = sum over nonempty u of gamma_u sum_{k=1}^{N-1} prod_{j in u} omega({k z_j / N})."""
    N = v.N
    tab = _omega_padded(N)
    if isinstance(w, ProductWeights):
        acc = np.ones(N - 1)
        for j, zj in enumerate(v.z, start=1):
            _kernels.accumulate_product(acc, tab, zj, w.gamma(j), 1)
        return math.fsum(acc) - (N - 1)
    k = np.arange(1, N, dtype=np.int64)
    cols = {j: tab[(k * zj) % N] for j, zj in enumerate(v.z, start=1)}
    total = []
    for size in range(1, v.s + 1):
        for u in combinations(range(1, v.s + 1), size):
            prod = np.ones(N - 1)
            for j in u:
                prod = prod * cols[j]
            total.append(weight_of(frozenset(u), w) * float(prod.sum()))
    return math.fsum(total)


def rader_scores(q: np.ndarray, kernel: np.ndarray, N: int) -> np.ndarray:
    """scores[z-1] = sum_{k=1}^{N-1} q[k-1] * kernel[(k z mod N) - 1] for prime N.

    Reindexing k = g^i, z = g^m turns the score matrix into a circulant, so a
    single length-(N-1) cyclic convolution produces every candidate's score.
    """
    if not is_prime(N) or N < 3:
        raise ValueError("rader_scores requires a prime N >= 3")
    L = N - 1
    if q.shape[0] != L or kernel.shape[0] != L:
        raise ValueError("arrays must have length N-1")
    g = primitive_root(N)
    pw = np.empty(L, dtype=np.int64)
    val = 1
    for i in range(L):
        pw[i] = val
        val = (val * g) % N
    a = np.asarray(q, dtype=float)[pw - 1]
    b = np.asarray(kernel, dtype=float)[pw - 1]
    a_rev = a[(-np.arange(L)) % L]
    c = cyclic_convolution(a_rev, b)
    out = np.empty(L)
    out[pw - 1] = c
    return out


def _refined_argmin(z_candidates: np.ndarray, scores: np.ndarray, q, tab) -> int:
    """Exact-rescore every near-minimal candidate; smallest z wins ties."""
    m = float(scores.min())
    thresh = m + 1e-9 * abs(m) + 1e-12
    best_z = None
    best_val = math.inf
    for i in np.flatnonzero(scores <= thresh):
        zz = int(z_candidates[i])
        val = _kernels.gather_score(q, tab, zz, 1)
        if val < best_val:
            best_val = val
            best_z = zz
    return best_z


def _scores_pow2_fast(q: np.ndarray, tab: np.ndarray, N: int) -> np.ndarray:
    """Scores for every odd candidate, indexed (z-1)//2, for N = 2^n >= 16.

    Split k = 2^c * k' with k' odd; each level is a correlation over the odd
    residues mod M = N / 2^c. Because the kernel table is symmetric and the
    odd residues are the two cosets +-5^i, folding q over +- reduces each
    level to one cyclic correlation of length M/4.
    """
    n = N.bit_length() - 1
    quarter = N // 4
    vec = np.zeros(quarter)
    const = 0.0
    for c in range(n):
        M = N >> c
        if M == 2:
            const += q[(1 << c) - 1] * tab[1 << c]
        elif M == 4:
            const += (q[(1 << c) - 1] + q[3 * (1 << c) - 1]) * tab[N // 4]
        else:
            order = M // 4
            pw = np.empty(order, dtype=np.int64)
            val = 1
            for i in range(order):
                pw[i] = val
                val = (val * 5) % M
            aq = q[(pw << c) - 1] + q[((M - pw) << c) - 1]
            kt = tab[pw << c]
            aq_rev = aq[(-np.arange(order)) % order]
            corr = cyclic_convolution(aq_rev, kt)
            vec += np.tile(corr, quarter // order)
    pw_n = np.empty(quarter, dtype=np.int64)
    val = 1
    for i in range(quarter):
        pw_n[i] = val
        val = (val * 5) % N
    sc = np.empty(N // 2)
    sc[(pw_n - 1) // 2] = vec + const
    sc[(N - pw_n - 1) // 2] = vec + const
    return sc


def _cbc_greedy(N: int, s: int, gammas: Tuple[float, ...], tab: np.ndarray, mode: str):
    """Shared greedy loop; tab is the padded per-residue kernel table."""
    if mode not in ("fast", "naive"):
        raise ValueError("mode must be 'fast' or 'naive'")
    power_of_two = N & (N - 1) == 0
    if power_of_two:
        z_candidates = np.arange(1, N, 2, dtype=np.int64)
    else:
        z_candidates = np.arange(1, N, dtype=np.int64)
    q = 1.0 + gammas[0] * tab[1:]
    state = CbcState(N=N, q=q, r=1)
    z = [1]
    for d in range(2, s + 1):
        gamma_d = gammas[d - 1]
        use_fast = mode == "fast" and (not power_of_two or N >= 16)
        if use_fast:
            if power_of_two:
                sc = _scores_pow2_fast(state.q, tab, N)
            else:
                sc = rader_scores(state.q, tab[1:], N)
                # scores for z and N-z agree in exact arithmetic (kernel
                # symmetry); make that exact so ties resolve to smaller z
                sc = 0.5 * (sc + sc[::-1])
            zd = _refined_argmin(z_candidates, sc, state.q, tab)
        else:
            vals = np.array(
                [_kernels.gather_score(state.q, tab, int(zz), 1) for zz in z_candidates]
            )
            zd = int(z_candidates[int(np.argmin(vals))])
        z.append(zd)
        _kernels.accumulate_product(state.q, tab, zd, gamma_d, 1)
        state.r = d
    return GeneratingVector(N, tuple(z))


def construct_korobov_cbc(
    N: int, s: int, w: ProductWeights, mode: str = "fast"
) -> GeneratingVector:
    """Greedy per-component minimization of the log-sine quality V, prime N."""
    if not is_prime(N) or N < 3:
        raise ValueError("N must be prime (>= 3)")
    if s < 1:
        raise ValueError("need s >= 1")
    if w.s < s:
        raise ValueError("weight sequence shorter than requested dimension")
    tab = _omega_padded(N)
    return _cbc_greedy(N, s, w.gammas[:s], tab, mode)


def construct_standard_cbc(
    N: int, s: int, alpha: float, w_alpha: ProductWeights, mode: str = "fast"
) -> GeneratingVector:
    """Greedy per-component minimization of the worst-case error itself.

    w_alpha is the weight sequence as it should enter the error (i.e. already
    raised to the power alpha if that is intended). N must be prime or 2^n.
    """
    if alpha <= 1.0:
        raise ValueError("requires alpha > 1")
    if s < 1:
        raise ValueError("need s >= 1")
    if w_alpha.s < s:
        raise ValueError("weight sequence shorter than requested dimension")
    power_of_two = N & (N - 1) == 0 and N >= 2
    if not power_of_two and not (is_prime(N) and N >= 3):
        raise ValueError("N must be prime or a power of two")
    tab = fourier_decay_table(alpha, N)
    return _cbc_greedy(N, s, w_alpha.gammas[:s], tab, mode)
