# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot inner loops (see _slowpath for the
reference numpy versions and the docstrings)."""

BACKEND = "cython"


def dbd_score_pair(double[::1] p, double[::1] ktab, int n, int v, long x0, double gamma):
    cdef long x1 = x0 + (1 << (v - 1))
    cdef long mask = (<long> 1 << v) - 1
    cdef int shift = n - v
    cdef int t
    cdef long k, limit
    cdef double q, a0, a1, s0 = 0.0, s1 = 0.0, scale = 1.0
    for t in range(v, n + 1):
        limit = <long> 1 << t
        a0 = 0.0
        a1 = 0.0
        for k in range(1, limit, 2):
            q = p[(k << (n - t)) - 1]
            a0 += q * (1.0 + gamma * ktab[((k * x0) & mask) << shift])
            a1 += q * (1.0 + gamma * ktab[((k * x1) & mask) << shift])
        s0 += scale * a0
        s1 += scale * a1
        scale *= 0.5
    return s0, s1


def dbd_update(double[::1] p, double[::1] ktab, int n, int v, long z, double gamma):
    cdef long mask = (<long> 1 << v) - 1
    cdef int shift = n - v
    cdef long k, limit = <long> 1 << v
    for k in range(1, limit, 2):
        p[(k << shift) - 1] *= 1.0 + gamma * ktab[((k * z) & mask) << shift]


def accumulate_product(double[::1] acc, double[::1] tab, long z, double gamma, long k0=0):
    cdef long N = tab.shape[0]
    cdef long i, idx
    for i in range(acc.shape[0]):
        idx = ((k0 + i) * z) % N
        acc[i] *= 1.0 + gamma * tab[idx]


def gather_score(double[::1] q, double[::1] tab, long z, long k0=1):
    cdef long N = tab.shape[0]
    cdef long i
    cdef double total = 0.0
    for i in range(q.shape[0]):
        total += q[i] * tab[((k0 + i) * z) % N]
    return total
