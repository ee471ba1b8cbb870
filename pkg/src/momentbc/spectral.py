"""Spectral data and the discrete measure of a finite Jacobi block.

Starting from a distinct-diagonal Takagi factorization U A U^T = diag(d),
the columns u-hat^i of U^T satisfy A u-hat^i = d_i conj(u-hat^i) and have
nonzero first components, so they normalize to first component one.  The
derived quantities are

    rho_i  = sum_n |u^i_n|^2           (= 1 / |u-hat^i_1|^2 by unitarity),
    H_ki   = sum_n conj(u^k_n) conj(u^i_n),
    beta_i = conj(u-hat^i_1) / u-hat^i_1,
    omega_i = sum_k d_i beta_i H_ki / rho_k.

Expanding the walled evolution in the conjugated normalized vectors turns it
into the second-order recurrence

    c_{t+1} + c_{t-1} - M c_t = a_0 f_t g,     M = diag(d beta / rho) H,
    g = (1/rho_1, ..., 1/rho_N),

where M is similar to A through the expansion basis.  Whenever M is diagonal
(real coefficients; any 1x1 block) its diagonal is exactly omega and the
recurrence polynomials T_t decouple, giving the closed-form response
representation with weights a_0/rho_k.  For genuinely complex coefficients
the coupling does not collapse: the closed-form omega_i has the modulus of a
singular value rather than an eigenvalue and cannot support a reproducing
measure.  The measure is therefore built from the eigen-decoupling of M: its
eigenvalues are the support and the drive vector g transforms into the
weights, which reduce to a_0/rho_k whenever M is diagonal and always sum to
the total mass a_0.

The beta_i factor in omega is itself a normalization correction: the
uncorrected variant (omega_i = sum_k d_i H_ki / rho_k) fails already for a
1x1 block, where the response demands omega_1 = b_1 but the uncorrected sum
returns |b_1|.  Both variants, and both denominator readings (rho_k vs
rho_i), remain selectable for side-by-side comparison.  (Unitarity gives
sum_k H_ki / rho_k = 1, so the corrected closed form collapses to
d_i beta_i, a gauge-invariant quantity.)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DuplicateDiagonal, DuplicateSupport, NonDiagonalizable, ZeroFirstComponent
from .takagi import TakagiFactorization, _as_matrix

SUPPORT_SEPARATION = 1e-10


@dataclass(frozen=True)
class SpectralData:
    """Factorization-derived spectral quantities of an n-by-n block.

    ``u`` holds the normalized vectors padded with zero components at
    positions 0 and n+1 (shape (n+2, n), column i is u^i).  ``omega`` is the
    closed-form value; ``coupling`` is the recurrence coupling matrix M whose
    eigen-decoupling yields ``support`` and unit-mass ``weights`` (equal to
    omega and 1/rho whenever M is diagonal).
    """

    n: int
    d: np.ndarray
    uhat_first: np.ndarray
    u: np.ndarray
    rho: np.ndarray
    H: np.ndarray
    beta: np.ndarray
    omega: np.ndarray
    coupling: np.ndarray
    support: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finitely supported measure on the complex plane."""

    support: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "support", np.asarray(self.support, dtype=complex))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=complex))
        if len(self.support) != len(self.weights):
            raise ValueError("support and weights must have equal length")

    @property
    def npoints(self) -> int:
        return len(self.support)

    def mass(self) -> complex:
        return complex(_compensated_sum(self.weights))


def _compensated_sum(values) -> complex:
    """Neumaier summation, largest magnitudes first."""
    values = np.asarray(values, dtype=complex)
    if values.size == 0:
        return 0j
    order = np.argsort(-np.abs(values), kind="stable")
    total = 0j
    comp = 0j
    for v in values[order]:
        v = complex(v)
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp


def chebyshev_like(omega: complex, t: int) -> complex:
    """Recurrence polynomial T_t(omega): T_{t+1} = omega T_t - T_{t-1},
    seeded T_{-1} = -1, T_0 = 0 (so T_1 = 1, T_2 = omega, T_3 = omega^2 - 1).

    Defined for t >= -1.
    """
    if t < -1:
        raise ValueError("need t >= -1")
    prev, cur = -1.0 + 0j, 0j          # T_{-1}, T_0
    if t == -1:
        return prev
    for _ in range(t):
        prev, cur = cur, complex(omega) * cur - prev
    return cur


def spectral_data(A, fac: TakagiFactorization, phase_corrected: bool = True,
                  rho_index: str = "k") -> SpectralData:
    """Spectral quantities of A from a distinct-diagonal factorization.

    ``phase_corrected`` toggles the beta_i factor in the closed-form omega
    (the uncorrected form is retained for comparison); ``rho_index`` selects
    its denominator, "k" (default) or "i".  The decoupled ``support`` and
    ``weights`` are unaffected by either switch.
    """
    M = _as_matrix(A)
    n = M.shape[0]
    d = np.asarray(fac.d, dtype=complex)
    if len(d) != n:
        raise ValueError("factorization size does not match the matrix")
    if rho_index not in ("k", "i"):
        raise ValueError("rho_index must be 'k' or 'i'")

    scale = float(np.max(np.abs(d))) if n else 0.0
    for i in range(n):
        for j in range(i + 1, n):
            if abs(d[i] - d[j]) < SUPPORT_SEPARATION * scale:
                raise DuplicateDiagonal(
                    f"diagonal entries {i} and {j} coincide; run enforce_distinct first"
                )

    uhat = fac.U.T.copy()
    first = uhat[0, :].copy()
    if np.min(np.abs(first)) < 1e-12:
        i = int(np.argmin(np.abs(first)))
        raise ZeroFirstComponent(f"vector {i} has first component {abs(first[i]):.3e}")
    u = uhat / first[None, :]

    rho = np.sum(np.abs(u) ** 2, axis=0)

    H = np.zeros((n, n), dtype=complex)
    for k in range(n):
        for i in range(k, n):
            value = np.conj(np.dot(u[:, k], u[:, i]))
            H[k, i] = value
            H[i, k] = value

    beta = np.conj(first) / first
    factor = d * beta if phase_corrected else d
    if rho_index == "k":
        omega = factor * (H.T @ (1.0 / rho))
    else:
        omega = factor * np.sum(H, axis=0) / rho

    coupling = ((d * beta / rho)[:, None]) * H
    support, weights = _decouple(coupling, 1.0 / rho)

    u_padded = np.zeros((n + 2, n), dtype=complex)
    u_padded[1 : n + 1, :] = u
    return SpectralData(
        n=n, d=d, uhat_first=first, u=u_padded, rho=rho, H=H, beta=beta,
        omega=omega, coupling=coupling, support=support, weights=weights,
    )


def _decouple(coupling: np.ndarray, drive: np.ndarray):
    """Eigen-decouple the recurrence c_{t+1} + c_{t-1} - M c_t = (drive) f_t.

    Returns the decoupled frequencies and the unit-mass weights carrying the
    drive into the scalar response.  For diagonal M this is (diag(M), drive).
    """
    n = coupling.shape[0]
    off = float(np.max(np.abs(coupling - np.diag(np.diag(coupling))))) if n > 1 else 0.0
    if off <= 1e-14 * max(1.0, float(np.max(np.abs(coupling)))):
        return np.diag(coupling).astype(complex), drive.astype(complex)
    freqs, P = np.linalg.eig(coupling)
    cond = np.linalg.cond(P)
    if not np.isfinite(cond) or cond > 1e12:
        raise NonDiagonalizable(
            f"recurrence coupling matrix is numerically defective (basis condition {cond:.2e})"
        )
    weights = (np.ones(n) @ P) * np.linalg.solve(P, drive)
    return freqs, weights


def build_measure(sd: SpectralData, a0: complex = 1.0) -> DiscreteMeasure:
    """Measure with total mass a0 from the decoupled spectral data.

    The weight at each support point is a0 times the unit-mass decoupled
    weight, which is 1/rho_k whenever the coupling collapses (real
    coefficients, 1x1 blocks).  Points are put in a canonical order
    (descending real part, then descending imaginary part).  Support points
    closer than the separation threshold are reported as an error, not
    merged: a collision signals that the distinctness post-processing or the
    decoupling failed upstream.
    """
    omega = sd.support
    weights = complex(a0) * sd.weights
    scale = max(1.0, float(np.max(np.abs(omega))) if len(omega) else 0.0)
    for i in range(len(omega)):
        for j in range(i + 1, len(omega)):
            if abs(omega[i] - omega[j]) < SUPPORT_SEPARATION * scale:
                raise DuplicateSupport(
                    f"support points {i} and {j} within {SUPPORT_SEPARATION:.1e} * {scale:.3e}"
                )
    order = np.lexsort((-omega.imag, -omega.real))
    return DiscreteMeasure(support=omega[order], weights=weights[order])


def spectral_response(m: DiscreteMeasure, L: int) -> np.ndarray:
    """Response entries r_{t-1} = sum_k weight_k T_t(omega_k), t = 1..L."""
    if L < 1:
        raise ValueError("need L >= 1")
    r = np.zeros(L, dtype=complex)
    if m.npoints == 0:
        return r
    omega = m.support
    prev = -np.ones(m.npoints, dtype=complex)   # T_{-1}
    cur = np.zeros(m.npoints, dtype=complex)    # T_0
    for t in range(1, L + 1):
        prev, cur = cur, omega * cur - prev
        r[t - 1] = _compensated_sum(m.weights * cur)
    return r


def measure_moment(m: DiscreteMeasure, k: int) -> complex:
    """k-th power moment, sum_j weight_j support_j^k.

    Powers are built by iterated multiplication and the sum is compensated,
    largest terms first.
    """
    if k < 0:
        raise ValueError("need k >= 0")
    powers = np.ones(m.npoints, dtype=complex)
    for _ in range(k):
        powers = powers * m.support
    return complex(_compensated_sum(m.weights * powers))
