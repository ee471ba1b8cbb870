"""Coefficient recovery and the truncated-moment-problem solver.

``recover_coefficients`` turns a moment sequence into Jacobi data through the
classical recurrence construction: monic polynomials orthogonal with respect
to the non-conjugated bilinear pairing <x^i, x^j> = s_{i+j} satisfy

    x p_n = p_{n+1} + b_{n+1} p_n + (a_n)^2 p_{n-1},

and the recursion on the mixed products sigma_{k,l} = <p_k, x^l> (ordinary
moments as the modified moments) reads the coefficients off directly.  Only
the squares (a_n)^2 are determined; reported square roots follow the
principal-branch convention.  The diagonal entry b_N needs s_{2N-1}; when the
data stops at s_{2N-2} that entry is a free parameter of the truncated
problem (any value reproduces the given moments) and is set to 0, stepping
through small integers only if the resulting block would be singular.

``solve_truncated`` chains the full pipeline: moments -> response ->
admissibility scan -> coefficients -> factorization -> spectral data ->
measure, then verifies every given moment against the measure.  When the
nested nonsingularity test fails at the full depth, the solver drops to the
largest depth whose nested minors are all regular; if the reduced measure
still reproduces every moment the sequence was degenerate but consistent
(the report carries the reduced depth), otherwise the input is rejected.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EvenLengthMoments,
    Inadmissible,
    NonDiagonalizable,
    SingularInput,
    SingularMinor,
    SizeExceedsSpec,
    TooFewMoments,
)
from .jacobi import JacobiSpec, truncate, validate
from .moments import hankel, moments_to_response
from .operators import AdmissibilityVerdict, check_admissibility
from .spectral import DiscreteMeasure, _compensated_sum, build_measure, measure_moment, spectral_data
from .takagi import enforce_distinct, takagi_factorize

_FALLBACK_TAIL = (0.0, 1.0, -1.0, 2.0, -2.0, 3.0, -3.0)


@dataclass(frozen=True)
class RecoveryResult:
    """Recovered Jacobi data with per-depth conditioning.

    ``condition_report`` holds one (k, sigma_min, sigma_max) triple per
    nested Hankel minor; ``tail_defaulted`` flags that b_N was not determined
    by the data and carries the convention value.
    """

    a0: complex
    a_squared: np.ndarray
    a_principal: np.ndarray
    b: np.ndarray
    condition_report: tuple
    tail_defaulted: bool = False

    def spec(self) -> JacobiSpec:
        return JacobiSpec(a0=self.a0, a=self.a_principal, b=self.b)


@dataclass(frozen=True)
class SolveReport:
    """Outcome of the truncated solver."""

    measure: DiscreteMeasure
    moment_residuals: np.ndarray
    admissibility: AdmissibilityVerdict
    backend: str
    depth: int
    recovery: RecoveryResult


@dataclass(frozen=True)
class ScanEntry:
    N: int
    measure: DiscreteMeasure
    moments: np.ndarray


@dataclass(frozen=True)
class ScanReport:
    """Moments of the truncation measures across sizes.

    ``max_shared_deviation`` is the largest absolute difference, over the
    orders every size provides (k <= 2 min(Ns) - 2), between any measure's
    moment and the largest truncation's, normalized by max(1, |moment|).
    """

    entries: tuple
    shared_orders: int
    max_shared_deviation: float


def _principal_sqrt(z: complex) -> complex:
    z = complex(z)
    if z.imag == 0.0:
        z = complex(z.real, 0.0)      # normalize -0.0 so the branch is stable
    root = np.sqrt(z)
    if root.real < 0 or (root.real == 0 and root.imag < 0):
        root = -root
    return complex(root)


def recover_coefficients(s, depth: int, tol: float = 1e-10) -> RecoveryResult:
    """Jacobi data (b_1..b_N, (a_1)^2..(a_{N-1})^2) from moments, N = depth.

    Needs len(s) >= 2N - 1 and every nested Hankel minor up to order N
    numerically regular (relative sigma_min above ``tol``); ratios in
    (tol, 1e-6) proceed with a warning.  a_0 is s_0 itself (the mass).
    """
    s = np.asarray(s, dtype=complex)
    N = depth
    if N < 1:
        raise ValueError("need depth >= 1")
    if len(s) < 2 * N - 1:
        raise TooFewMoments(f"depth {N} needs at least {2 * N - 1} moments, got {len(s)}")

    report = []
    for k in range(1, N + 1):
        sigma = np.linalg.svd(hankel(s, k), compute_uv=False)
        top = float(sigma[0])
        report.append((k, float(sigma[-1]), top))
        ratio = float(sigma[-1] / top) if top > 0 else 0.0
        if ratio <= tol:
            raise SingularMinor(
                k, f"Hankel minor of order {k} has sigma_min/sigma_max = {ratio:.3e}"
            )
        if ratio < 1e-6:
            warnings.warn(
                f"Hankel minor of order {k} is ill-conditioned "
                f"(sigma_min/sigma_max = {ratio:.3e}); recovered coefficients "
                f"at this depth may lose accuracy",
                stacklevel=2,
            )

    L = len(s)
    b = np.zeros(N, dtype=complex)
    a_sq = np.zeros(max(N - 1, 0), dtype=complex)
    tail_defaulted = False

    # sigma rows for p_{k-1} and p_k against the monomials
    prev = np.zeros(L + 1, dtype=complex)       # k = -1 row (zero)
    cur = s.copy()                              # k = 0 row: <p_0, x^l> = s_l
    alpha = s[1] / s[0] if L >= 2 else None
    beta = 0j
    if alpha is None:
        tail_defaulted = True
        alpha = 0j
    b[0] = alpha
    for k in range(1, N):
        hi = L - 1 - k
        nxt = np.zeros(L + 1, dtype=complex)
        for l in range(k, hi + 1):
            nxt[l] = cur[l + 1] - alpha * cur[l] - beta * prev[l]
        beta = nxt[k] / cur[k - 1]
        a_sq[k - 1] = beta
        if k + 1 <= hi:
            alpha = nxt[k + 1] / nxt[k] - cur[k] / cur[k - 1]
        else:
            # s_{2N-1} is absent: b_N is free in the truncated problem
            alpha = 0j
            tail_defaulted = True
        b[k] = alpha
        prev, cur = cur, nxt

    return RecoveryResult(
        a0=complex(s[0]),
        a_squared=a_sq,
        a_principal=np.array([_principal_sqrt(z) for z in a_sq], dtype=complex),
        b=b,
        condition_report=tuple(report),
        tail_defaulted=tail_defaulted,
    )


def _eigen_measure(A: np.ndarray, a0: complex) -> DiscreteMeasure:
    """Measure from the complex-orthogonal eigendecomposition A = Q L Q^T.

    Support are the eigenvalues; the weight at lambda_k is a0 q_k(1)^2 for
    the bilinearly normalized eigenvector (q^T q = 1).  Coincident
    eigenvalues or isotropic eigenvectors (v^T v ~ 0) mean no such basis
    exists.
    """
    lam, V = np.linalg.eig(A)
    n = len(lam)
    scale = max(1.0, float(np.max(np.abs(lam))))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(lam[i] - lam[j]) < 1e-10 * scale:
                raise NonDiagonalizable(
                    f"eigenvalues {i} and {j} coincide; no complex-orthogonal eigenbasis"
                )
    qnorm = np.sum(V * V, axis=0)
    if np.min(np.abs(qnorm)) < 1e-10:
        raise NonDiagonalizable("isotropic eigenvector: bilinear normalization impossible")
    weights = complex(a0) * V[0, :] ** 2 / qnorm
    order = np.lexsort((-lam.imag, -lam.real))
    return DiscreteMeasure(support=lam[order], weights=weights[order])


def _reconstruct_block(rec: RecoveryResult, depth: int, tol: float):
    """Finite block from recovered data, stepping the free tail entry off a
    singular configuration when it was defaulted."""
    spec = rec.spec()
    if not rec.tail_defaulted:
        return truncate(spec, depth).entries, rec
    for candidate in _FALLBACK_TAIL:
        b = rec.b.copy()
        b[depth - 1] = candidate
        trial = JacobiSpec(a0=rec.a0, a=rec.a_principal, b=b)
        A = truncate(trial, depth).entries
        sigma = np.linalg.svd(A, compute_uv=False)
        if sigma[-1] > 10 * tol * sigma[0]:
            rec2 = RecoveryResult(
                a0=rec.a0, a_squared=rec.a_squared, a_principal=rec.a_principal,
                b=b, condition_report=rec.condition_report, tail_defaulted=True,
            )
            return A, rec2
    raise SingularInput("no regular block found while scanning the free diagonal tail")


def verify_measure(m: DiscreteMeasure, s) -> np.ndarray:
    """Absolute residuals |moment_k(m) - s_k| for every provided k."""
    s = np.asarray(s, dtype=complex)
    return np.array([abs(measure_moment(m, k) - s[k]) for k in range(len(s))])


def solve_truncated(s, backend: str = "paper_takagi", tol_singular: float = 1e-10,
                    tol_residual: float = 1e-8) -> SolveReport:
    """Construct a finitely supported measure matching s_0..s_{2N-2}.

    Steps: bridge the moments to a response vector; scan the nested
    connecting matrices; recover coefficients at the deepest regular depth;
    factorize the block and decouple its spectral data (backend
    "paper_takagi") or eigendecompose it directly (backend "eigen_oracle");
    integrate and compare every moment.

    Raises
    ------
    EvenLengthMoments
        unless len(s) = 2N - 1 for some N >= 1
    Inadmissible
        if not even a depth-1 chain exists (s_0 ~ 0), or if the sequence is
        degenerate and the reduced-depth measure fails to reproduce it
    """
    s = np.asarray(s, dtype=complex)
    if len(s) % 2 == 0:
        raise EvenLengthMoments(f"need an odd number of moments, got {len(s)}")
    if backend not in ("paper_takagi", "eigen_oracle"):
        raise ValueError(f"unknown backend {backend!r}")
    N = (len(s) + 1) // 2

    r = moments_to_response(s)
    verdict = check_admissibility(r, N, tol=tol_singular)
    depth = verdict.max_regular_depth
    if depth == 0:
        raise Inadmissible(N - 1, "zero-mass data: the order-1 connecting matrix is singular")

    rec = recover_coefficients(s, depth, tol=tol_singular)
    A, rec = _reconstruct_block(rec, depth, tol_singular)

    if backend == "paper_takagi":
        fac = enforce_distinct(takagi_factorize(A, tol=tol_singular))
        sd = spectral_data(A, fac)
        measure = build_measure(sd, a0=rec.a0)
    else:
        measure = _eigen_measure(A, rec.a0)

    residuals = verify_measure(measure, s)
    if not verdict.admissible:
        floor = np.maximum(1.0, np.abs(s))
        if np.max(residuals / floor) > tol_residual:
            raise Inadmissible(
                verdict.failing_k,
                f"connecting matrix of order {N - verdict.failing_k} is singular and the "
                f"depth-{depth} reduction does not reproduce the data "
                f"(max relative residual {np.max(residuals / floor):.3e})",
            )
    return SolveReport(
        measure=measure,
        moment_residuals=residuals,
        admissibility=verdict,
        backend=backend,
        depth=depth,
        recovery=rec,
    )


def convergence_scan(spec: JacobiSpec, Ns) -> ScanReport:
    """Measures of nested truncations and the stability of shared moments.

    For each N the truncation block's measure is built through the
    factorization route and integrated up to order 2N - 2.  Orders shared by
    every requested size must agree: a truncation only changes the response
    past the echo horizon, so the low moments are common to all sizes.
    """
    validate(spec)
    Ns = [int(N) for N in Ns]
    if not Ns:
        raise ValueError("need at least one truncation size")
    if max(Ns) > spec.size:
        raise SizeExceedsSpec(f"scan size {max(Ns)} exceeds the {spec.size} stored entries")
    if min(Ns) < 1:
        raise ValueError("truncation sizes must be positive")

    entries = []
    for N in Ns:
        A = truncate(spec, N).entries
        fac = enforce_distinct(takagi_factorize(A))
        sd = spectral_data(A, fac)
        measure = build_measure(sd, a0=spec.a0)
        moments = np.array([measure_moment(measure, k) for k in range(2 * N - 1)])
        entries.append(ScanEntry(N=N, measure=measure, moments=moments))

    shared = 2 * min(Ns) - 1
    ref = max(entries, key=lambda e: e.N)
    dev = 0.0
    for entry in entries:
        for k in range(shared):
            floor = max(1.0, abs(ref.moments[k]))
            dev = max(dev, abs(entry.moments[k] - ref.moments[k]) / floor)
    return ScanReport(entries=tuple(entries), shared_orders=shared, max_shared_deviation=dev)
