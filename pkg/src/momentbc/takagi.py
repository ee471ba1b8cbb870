"""Autonne-Takagi factorization of complex symmetric matrices.

For complex symmetric A there is a unitary U with U A U^T = diag(d), d_i >= 0
equal to the singular values of A.  The computation goes through the SVD
A = V S W^H: symmetry forces V^H conj(W) to be block diagonal over the
distinct singular values, and each block is a unitary *symmetric* matrix
Phi_b, which factors as Phi_b = Z_b Z_b^T with Z_b unitary.  Writing
Psi = blockdiag(Z_b), the pair Q = V Psi, U = Q^H satisfies U A U^T = S.

The per-block factor Z_b comes from splitting Phi_b = X + iY into commuting
real symmetric parts: a joint orthogonal diagonalization O gives
Phi_b = O diag(e^{i theta}) O^T and Z_b = O diag(e^{i theta / 2}).

``enforce_distinct`` post-processes a factorization whose diagonal has
coincident values: multiplying U on the left by half-angle phases rotates
each tied value d to d e^{i phi} without touching unitarity or the
diagonalization, at the price of a complex (no longer canonical) diagonal.
Singular-value clusters are detected at a fixed relative threshold; inputs
with genuinely distinct but closer-than-threshold values are treated as tied,
which trades a commensurate diagonalization residual for stability of the
block split.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CannotSeparate, NotSymmetric, SingularInput

# relative gap below which singular values / diagonal entries count as tied
COINCIDENCE_RTOL = 1e-8


@dataclass(frozen=True)
class TakagiFactorization:
    """Unitary U and diagonal d with U A U^T = diag(d).

    Straight from :func:`takagi_factorize` the diagonal is real nonnegative
    and sorted descending; after :func:`enforce_distinct` entries may be
    complex but keep descending modulus (phase ascending within former ties).
    """

    U: np.ndarray
    d: np.ndarray

    @property
    def n(self) -> int:
        return len(self.d)


def _as_matrix(A) -> np.ndarray:
    entries = getattr(A, "entries", A)
    M = np.asarray(entries, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("need a square matrix")
    return M


def _group_indices(values: np.ndarray, atol: float):
    """Consecutive grouping of a descending (or ascending) real sequence."""
    groups = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or abs(values[i] - values[start]) > atol:
            groups.append(list(range(start, i)))
            start = i
    return groups


def _factor_unitary_symmetric(phi: np.ndarray) -> np.ndarray:
    """Z with Z Z^T = phi for unitary symmetric phi.

    phi = X + iY with X, Y commuting real symmetric matrices; a joint
    orthogonal eigenbasis O gives phi = O E O^T with unimodular diagonal E,
    and Z = O E^{1/2}.
    """
    m = phi.shape[0]
    if m == 1:
        return np.array([[np.exp(0.5j * np.angle(phi[0, 0]))]], dtype=complex)
    X = 0.5 * (phi.real + phi.real.T)
    Y = 0.5 * (phi.imag + phi.imag.T)
    xvals, O = np.linalg.eigh(X)
    # X eigenvalues are cosines of the block phases; +/- theta collide, so Y
    # must be diagonalized inside every X eigenspace.
    for idx in _group_indices(xvals, atol=1e-7):
        if len(idx) == 1:
            continue
        Og = O[:, idx]
        _, R = np.linalg.eigh(Og.T @ Y @ Og)
        O[:, idx] = Og @ R
    e = np.array([O[:, j] @ phi @ O[:, j] for j in range(m)])
    e = e / np.abs(e)
    return O * np.exp(0.5j * np.angle(e))[None, :]


def takagi_factorize(A, tol: float = 1e-10) -> TakagiFactorization:
    """Canonical Takagi factorization U A U^T = diag(d), d >= 0 descending.

    Parameters
    ----------
    A : array or FiniteJacobiMatrix
        Complex symmetric matrix (relative asymmetry below ``tol``).
    tol : float
        Symmetry tolerance and relative singular-value floor.

    Raises
    ------
    NotSymmetric
        if ||A - A^T|| exceeds tol relative to the entry scale
    SingularInput
        if sigma_min <= tol * sigma_max (the construction downstream divides
        by the diagonal values, so singular inputs are excluded)
    """
    M = _as_matrix(A)
    scale = max(1.0, float(np.max(np.abs(M))))
    asym = float(np.max(np.abs(M - M.T)))
    if asym > tol * scale:
        raise NotSymmetric(f"asymmetry {asym:.3e} exceeds {tol:.1e} * {scale:.3e}")
    M = 0.5 * (M + M.T)

    V, sigma, Wh = np.linalg.svd(M)
    if sigma[0] == 0 or sigma[-1] <= tol * sigma[0]:
        raise SingularInput(
            f"smallest singular value {sigma[-1]:.3e} below threshold "
            f"{tol:.1e} * {sigma[0]:.3e}"
        )
    phi = V.conj().T @ Wh.T
    psi = np.zeros_like(phi)
    for idx in _group_indices(sigma, atol=COINCIDENCE_RTOL * sigma[0]):
        block = np.ix_(idx, idx)
        phi_b = 0.5 * (phi[block] + phi[block].T)
        psi[block] = _factor_unitary_symmetric(phi_b)
    Q = V @ psi
    return TakagiFactorization(U=Q.conj().T, d=sigma.astype(complex))


def enforce_distinct(fac: TakagiFactorization, gap: float = COINCIDENCE_RTOL,
                     phase_step: float | None = None) -> TakagiFactorization:
    """Rotate coincident diagonal values apart by half-angle phase rows.

    Within a tie group of size m the j-th member picks up the phase
    phi_j = j * phase_step (default pi / (2m)), applied as e^{i phi_j / 2} on
    the corresponding row of U, so the diagonal entry becomes d e^{i phi_j}.
    Already-distinct input is returned unchanged.  ``gap`` is the relative
    separation verified on the result (free phases make failure impossible in
    practice, but the check is kept).
    """
    d = fac.d.astype(complex)
    n = len(d)
    scale = float(np.max(np.abs(d))) if n else 0.0

    groups = []
    used = np.zeros(n, dtype=bool)
    for i in range(n):
        if used[i]:
            continue
        group = [i]
        used[i] = True
        for j in range(i + 1, n):
            if not used[j] and abs(d[j] - d[i]) <= COINCIDENCE_RTOL * scale:
                group.append(j)
                used[j] = True
        groups.append(group)

    if all(len(g) == 1 for g in groups):
        return fac

    phases = np.zeros(n)
    for group in groups:
        m = len(group)
        if m == 1:
            continue
        step = phase_step if phase_step is not None else np.pi / (2 * m)
        for j, idx in enumerate(group):
            phases[idx] = j * step

    rot = np.exp(0.5j * phases)
    U = fac.U * rot[:, None]
    d = d * rot * rot

    for i in range(n):
        for j in range(i + 1, n):
            if abs(d[i] - d[j]) < gap * scale:
                raise CannotSeparate(
                    f"entries {i} and {j} still within {gap:.1e} * {scale:.3e} after phasing"
                )
    return TakagiFactorization(U=U, d=d)
