"""Control and connecting matrices, and the response admissibility test.

The control matrix W maps control samples (f_0..f_{T-1}) to the final state
profile (u_{1,T}..u_{T,T}); it is assembled from the Goursat kernel, and its
columns equal simulated final states of basis controls.  The connecting
matrix C couples the original system with its conjugate companion and has two
constructions that must agree: the Gram form W^T W (plain transpose), and the
inverse-data form

    C_{ij} = a_0 * sum_{k=0}^{T-max(i,j)} r_{|i-j|+2k}        (1-based i, j)

built purely from the response vector.  C is complex symmetric by either
construction; both are assembled half-and-mirror so the symmetry is exact at
the bit level.

A vector (r_0, ..., r_{2T-2}) is an admissible response for some coefficient
family exactly when every nested matrix C^{T-k}, k = 0..T-1, is an
isomorphism; numerically this is a relative smallest-singular-value test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import goursat_kernel
from .errors import InsufficientCoefficients, TooFewResponseEntries
from .jacobi import JacobiSpec, validate


@dataclass(frozen=True)
class AdmissibilityVerdict:
    """Outcome of the nested nonsingularity scan.

    ``margins[k]`` is the ratio sigma_min/sigma_max of C^{T-k}; verdicts close
    to ``tol`` should be read with the margin, not as a hard binary.
    ``failing_k`` is the first k (largest matrix first) whose margin is at or
    below ``tol``, or None when admissible.
    """

    admissible: bool
    failing_k: int | None
    margins: tuple
    tol: float

    @property
    def max_regular_depth(self) -> int:
        """Largest m such that C^1..C^m are all numerically nonsingular."""
        T = len(self.margins)
        depth = 0
        for m in range(1, T + 1):
            if self.margins[T - m] <= self.tol:
                break
            depth = m
        return depth


def control_matrix(spec: JacobiSpec, T: int, dtype=np.complex128) -> np.ndarray:
    """T-by-T matrix of the control map f -> (u_{1,T}, ..., u_{T,T}).

    Row n (1-based) carries the leading product a_0...a_{n-1} against f_{T-n}
    plus the kernel tail sum_{s=n}^{T-1} w_{n,s} f_{T-s-1}.
    """
    validate(spec)
    if T < 1:
        raise ValueError("need T >= 1")
    if spec.size < T:
        raise InsufficientCoefficients(
            f"control matrix at horizon {T} needs {T} stored coefficients, got {spec.size}"
        )
    kernel = goursat_kernel(spec, T, dtype=dtype)
    prod = np.zeros(T + 1, dtype=dtype)
    prod[: len(kernel.products)] = kernel.products
    if T > kernel.wall_row:
        # wall_row = min(T-1, size) = T-1 here; one more product for row T
        prod[T] = prod[T - 1] * spec.off_diagonal(T - 1)
    W = np.zeros((T, T), dtype=dtype)
    for n in range(1, T + 1):
        W[n - 1, T - n] = prod[n]
        for j in range(0, T - n):
            W[n - 1, j] += kernel.w[n, T - 1 - j]
    return W


def connecting_from_response(r, T: int) -> np.ndarray:
    """Connecting matrix from inverse data (needs r_0..r_{2T-2}; r_0 = a_0)."""
    r = np.asarray(r)
    if T < 1:
        raise ValueError("need T >= 1")
    if len(r) < 2 * T - 1:
        raise TooFewResponseEntries(
            f"connecting matrix C^{T} needs {2 * T - 1} response entries, got {len(r)}"
        )
    a0 = r[0]
    C = np.zeros((T, T), dtype=r.dtype if np.issubdtype(r.dtype, np.complexfloating) else complex)
    for i in range(1, T + 1):
        for j in range(i, T + 1):
            acc = C[0, 0] * 0
            for k in range(T - j + 1):          # j = max(i, j)
                acc += r[j - i + 2 * k]
            C[i - 1, j - 1] = a0 * acc
            C[j - 1, i - 1] = C[i - 1, j - 1]
    return C


def connecting_from_gram(spec: JacobiSpec, T: int, dtype=np.complex128) -> np.ndarray:
    """Connecting matrix as the bilinear Gram form W^T W (plain transpose).

    The companion system's control matrix is the entrywise conjugate of W, so
    the sesquilinear pairing of the two state profiles collapses to the
    bilinear product of W with itself.
    """
    W = control_matrix(spec, T, dtype=dtype)
    C = np.zeros((T, T), dtype=W.dtype)
    for i in range(T):
        for j in range(i, T):
            value = np.dot(W[:, i], W[:, j])
            C[i, j] = value
            C[j, i] = value
    return C


def check_admissibility(r, T: int, tol: float = 1e-10) -> AdmissibilityVerdict:
    """Nested nonsingularity scan of C^{T-k}, k = 0..T-1.

    Each nested matrix is rebuilt from the response entries (not sliced); a
    matrix counts as singular when sigma_min <= tol * sigma_max.  The verdict
    records the margin of every k and the first failing k.
    """
    r = np.asarray(r, dtype=complex)
    if len(r) < 2 * T - 1:
        raise TooFewResponseEntries(
            f"admissibility at horizon {T} needs {2 * T - 1} response entries, got {len(r)}"
        )
    margins = []
    failing = None
    for k in range(T):
        m = T - k
        C = connecting_from_response(r, m)
        sigma = np.linalg.svd(C, compute_uv=False)
        top = float(sigma[0])
        ratio = float(sigma[-1] / top) if top > 0 else 0.0
        margins.append(ratio)
        if failing is None and ratio <= tol:
            failing = k
    return AdmissibilityVerdict(
        admissible=failing is None,
        failing_k=failing,
        margins=tuple(margins),
        tol=tol,
    )
