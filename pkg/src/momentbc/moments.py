"""Hankel matrices and the integer triangular bridge between moments and
response entries.

The bridge matrix L_n is unit lower triangular with integer entries: row t
(0-based) lists the monomial coefficients of the degree-t polynomial produced
by the recurrence T_{t+1} = x T_t - T_{t-1}, T_0 = 0, T_1 = 1, so that
r = L_n s maps power moments to response entries and the inverse map is an
exact forward substitution.  Entry (i, j) is zero for i < j or i + j odd and
binom((i+j)/2, j) * (-1)^((i+j)/2 + j) otherwise; the 0-based indexing is the
one that reproduces the recurrence expansion (the 1-based reading fails
r_2 = s_2 - s_0).

Both conversion directions run the same fixed-order integer-weighted loops,
so they are exact whenever the intermediate combinations are representable
(integer-valued data, or dyadic data with headroom); in general each output
component carries one rounding of a correctly-ordered sum.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import TooFewMoments

_INT64_MAX = 2**63 - 1


def hankel(s, n: int) -> np.ndarray:
    """Hankel matrix S^n with entries s_{2n-2-i-j}: top-left s_{2n-2},
    bottom-right s_0.

    Needs len(s) >= 2n - 1.
    """
    s = np.asarray(s, dtype=complex)
    if n < 1:
        raise ValueError("need n >= 1")
    if len(s) < 2 * n - 1:
        raise TooFewMoments(f"Hankel S^{n} needs {2 * n - 1} moments, got {len(s)}")
    out = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            out[i, j] = s[2 * n - 2 - i - j]
    return out


def exchange_matrix(n: int) -> np.ndarray:
    """Anti-diagonal exchange matrix J_n."""
    return np.fliplr(np.eye(n, dtype=np.int64))


def _bridge_entry(i: int, j: int) -> int:
    if i < j or (i + j) % 2 == 1:
        return 0
    m = (i + j) // 2
    value = math.comb(m, j) * (-1) ** (m + j)
    if abs(value) > _INT64_MAX:
        raise ValueError(f"bridge coefficient at ({i}, {j}) overflows 64-bit integers")
    return value


def lambda_matrix(n: int) -> np.ndarray:
    """Unit lower triangular integer matrix L_n relating moments to response.

    Row t reproduces the monomial expansion of the recurrence polynomial of
    degree t (e.g. row 4 of L_5 is (1, 0, -3, 0, 1) for x^4 - 3x^2 + 1).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1):
            out[i, j] = _bridge_entry(i, j)
    return out


def moments_to_response(s) -> np.ndarray:
    """r = L_n s with n = len(s); fixed-order integer-weighted sums."""
    s = np.asarray(s, dtype=complex)
    n = len(s)
    r = np.zeros(n, dtype=complex)
    for i in range(n):
        acc = 0j
        for j in range(i % 2, i + 1, 2):
            acc += _bridge_entry(i, j) * s[j]
        r[i] = acc
    return r


def response_to_moments(r) -> np.ndarray:
    """s = L_n^{-1} r by forward substitution (L is unit lower triangular).

    The partial sums mirror :func:`moments_to_response` exactly, so the
    roundtrip is the identity whenever intermediates are representable.
    """
    r = np.asarray(r, dtype=complex)
    n = len(r)
    s = np.zeros(n, dtype=complex)
    for i in range(n):
        acc = 0j
        for j in range(i % 2, i + 1, 2):
            if j < i:
                acc += _bridge_entry(i, j) * s[j]
        s[i] = r[i] - acc
    return s


def verify_factorization(C, s) -> float:
    """Max-entry residual of the connecting-matrix factorization
    C^N = s_0 * (J L J) S^N (J L J)^T.

    The bridge matrix is real, so the conjugate transpose in the identity is
    a plain transpose.  The s_0 prefactor is the boundary-coupling mass; under
    the usual a_0 = 1 normalization it drops out and the identity reads
    C^N = (J L J) S^N (J L J)^T verbatim.
    """
    C = np.asarray(C, dtype=complex)
    N = C.shape[0]
    if C.shape != (N, N):
        raise ValueError("connecting matrix must be square")
    s = np.asarray(s, dtype=complex)
    if len(s) < 2 * N - 1:
        raise TooFewMoments(f"need {2 * N - 1} moments for an {N}x{N} check, got {len(s)}")
    S = hankel(s, N)
    J = exchange_matrix(N).astype(float)
    Lt = J @ lambda_matrix(N).astype(float) @ J
    rhs = s[0] * (Lt @ S @ Lt.T)
    return float(np.max(np.abs(C - rhs)))
