"""Complex FFT of arbitrary length and cyclic convolution.

Power-of-two lengths use an iterative radix-2 transform; every other length
goes through the Bluestein chirp-z reduction to a power-of-two convolution.
Written here rather than taken from numpy so the convolution engine behind the
fast CBC constructions can be cross-checked against naive O(n^2) references.
"""

import functools
import math

import numpy as np

__all__ = ["fft", "cyclic_convolution"]

#: Below this length the naive convolution beats the transform overhead.
NAIVE_CONV_THRESHOLD = 64


@functools.lru_cache(maxsize=64)
def _twiddles(size: int, sign: int) -> np.ndarray:
    half = size // 2
    return np.exp(sign * 2j * np.pi * np.arange(half) / size)


@functools.lru_cache(maxsize=64)
def _bit_reversal(n: int) -> np.ndarray:
    levels = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for i in range(levels):
        rev = (rev << 1) | ((idx >> i) & 1)
    return rev


def _fft_pow2(x: np.ndarray, sign: int) -> np.ndarray:
    n = x.shape[0]
    if n == 1:
        return x.astype(complex)
    a = x[_bit_reversal(n)].astype(complex)
    size = 2
    while size <= n:
        half = size // 2
        tw = _twiddles(size, sign)
        a2 = a.reshape(-1, size)
        t = a2[:, half:] * tw
        a2[:, half:] = a2[:, :half] - t
        a2[:, :half] += t
        size *= 2
    return a


def _bluestein(x: np.ndarray, sign: int) -> np.ndarray:
    n = x.shape[0]
    k = np.arange(n, dtype=np.int64)
    # k^2 reduced mod 2n before the division keeps the chirp angles accurate
    # for large n.
    expo = (k * k) % (2 * n)
    w = np.exp(sign * 1j * np.pi * expo / n)
    a = x * w
    m = 1 << (2 * n - 1).bit_length()
    c = np.conj(w)
    b = np.zeros(m, dtype=complex)
    b[:n] = c
    b[m - n + 1 :] = c[1:][::-1]
    fa = _fft_pow2(np.concatenate([a, np.zeros(m - n, dtype=complex)]), -1)
    fb = _fft_pow2(b, -1)
    conv = _fft_pow2(fa * fb, +1) / m
    return conv[:n] * w


def fft(x, direction: str = "forward") -> np.ndarray:
    """DFT X_k = sum_j x_j e^{-+ 2 pi i jk/n}; the inverse is scaled by 1/n."""
    if direction not in ("forward", "inverse"):
        raise ValueError("direction must be 'forward' or 'inverse'")
    x = np.asarray(x, dtype=complex)
    n = x.shape[0]
    if n < 1:
        raise ValueError("empty input")
    sign = -1 if direction == "forward" else +1
    if n & (n - 1) == 0:
        out = _fft_pow2(x, sign)
    else:
        out = _bluestein(x, sign)
    if direction == "inverse":
        out /= n
    return out


def _cyclic_convolution_naive(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    full = np.convolve(a, b)
    out = full[:n].copy()
    out[: n - 1] += full[n:]
    return out


def cyclic_convolution(a, b) -> np.ndarray:
    """c_k = sum_j a_j b_{(k-j) mod n} for real inputs of equal length."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("inputs must be 1-d arrays of equal length")
    n = a.shape[0]
    if n <= NAIVE_CONV_THRESHOLD:
        return _cyclic_convolution_naive(a, b)
    # Real-packing trick: one complex transform carries both sequences.
    X = fft(a + 1j * b, "forward")
    Xr = np.conj(np.roll(X[::-1], 1))  # X at index -k
    A = 0.5 * (X + Xr)
    B = -0.5j * (X - Xr)
    return np.real(fft(A * B, "inverse"))
