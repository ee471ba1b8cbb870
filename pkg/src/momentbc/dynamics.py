"""Discrete-time wave dynamics driven through the boundary node.

Two solvers live here.  ``simulate_finite`` time-steps the three-term
recurrence

    u_{n,t+1} = a_n u_{n+1,t} + a_{n-1} u_{n-1,t} + b_n u_{n,t} - u_{n,t-1}

on nodes n = 1..N with zero initial state, Dirichlet wall u_{N+1,t} = 0 and
boundary drive u_{0,t} = f_t.  ``goursat_kernel`` / ``solution_via_kernel``
realize the same dynamics through the triangular kernel w_{n,s} of the
Duhamel-type representation

    u_{n,t} = (a_0 a_1 ... a_{n-1}) f_{t-n} + sum_{s=n}^{t-1} w_{n,s} f_{t-s-1},

an independent computational route and therefore a useful oracle for the time
stepper.  Waves move one node per step, so u_{n,t} = 0 for n > t, and
truncating at a Dirichlet wall is exact inside the light cone: the first wall
echo reaches node n only at t = 2N + 2 - n.

The response of a spec is read off the n = 1 row.  It is defined here as the
response of the finite system on all stored coefficients (N = len(b)); for
t <= 2N it coincides with the semi-infinite response, and beyond that the
wall echo is part of the answer by design, since that is exactly what the
spectral measure of the N-by-N block reproduces.

Every solver takes a ``dtype``.  Entries grow like ||A||^t, so on larger
instances the default complex128 leaves only a few ulps of headroom at the
final times; cross-route certification at tight absolute tolerances should
run both routes with ``numpy.complex256`` where the platform provides it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import HorizonMismatch, InsufficientCoefficients, SizeExceedsSpec
from .jacobi import JacobiSpec, validate


@dataclass(frozen=True)
class Control:
    """Boundary control samples f_0..f_{T-1}; the horizon is the length."""

    samples: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "samples", np.asarray(self.samples, dtype=complex))

    @property
    def horizon(self) -> int:
        return len(self.samples)

    @classmethod
    def delta(cls, horizon: int = 1) -> "Control":
        """Unit impulse (1, 0, ..., 0)."""
        samples = np.zeros(horizon, dtype=complex)
        samples[0] = 1.0
        return cls(samples)


@dataclass(frozen=True)
class WaveField:
    """Solution table indexed by node and time.

    ``values[n, t + 1]`` holds u_{n,t} for t = -1..horizon; rows run from the
    boundary node 0 through ``n_interior`` interior nodes (plus the Dirichlet
    wall row for time-stepped fields).  Columns 0 and 1 are the zero initial
    state.
    """

    values: np.ndarray
    n_interior: int
    horizon: int

    def at(self, n: int, t: int) -> complex:
        """u_{n,t}; accepts t = -1..horizon."""
        return complex(self.values[n, t + 1])


@dataclass(frozen=True)
class GoursatKernel:
    """Triangular kernel w_{n,s}, 1 <= n <= s <= horizon - 1.

    ``w[n, s]`` stores w_{n,s} (row 0 is the zero boundary row; entries below
    the diagonal s < n are zero by convention).  ``products[n]`` holds
    a_0 a_1 ... a_{n-1}.  Rows stop at ``wall_row`` = min(horizon - 1, len(b)):
    beyond the stored coefficients the kernel belongs to the Dirichlet-walled
    system, obtained by dropping the coupling past the last stored node.
    """

    w: np.ndarray
    products: np.ndarray
    horizon: int
    wall_row: int


def _extended_samples(f: Control, length: int, dtype) -> np.ndarray:
    out = np.zeros(length, dtype=dtype)
    m = min(f.horizon, length)
    out[:m] = f.samples[:m].astype(dtype)
    return out


def simulate_finite(spec: JacobiSpec, f: Control, N: int, T: int,
                    dtype=np.complex128) -> WaveField:
    """Time-step the Dirichlet system on nodes 1..N up to time T.

    Parameters
    ----------
    spec : JacobiSpec
        Coefficients; must store at least N diagonal entries.
    f : Control
        Boundary samples; zero-extended past its horizon.
    N, T : int
        Number of interior nodes and number of time steps.
    dtype : numpy dtype
        Working precision of the march.

    Returns
    -------
    WaveField
        Rows 0..N+1 (boundary, interior, wall), times -1..T.
    """
    validate(spec)
    if N < 1 or T < 1:
        raise ValueError("need N >= 1 and T >= 1")
    if N > spec.size:
        raise SizeExceedsSpec(f"N={N} exceeds the {spec.size} stored diagonal entries")

    # a_up[n-1] multiplies u_{n+1,t}; at n = N the wall value is zero so the
    # (possibly missing) coupling a_N never enters.
    b = spec.b[:N].astype(dtype)
    a_up = np.zeros(N, dtype=dtype)
    a_up[: min(N, len(spec.a))] = spec.a[: min(N, len(spec.a))].astype(dtype)
    a_dn = spec.a[: N - 1].astype(dtype)
    a0 = np.asarray(spec.a0, dtype=dtype)

    field = np.zeros((N + 2, T + 2), dtype=dtype)
    field[0, 1:] = _extended_samples(f, T + 1, dtype)
    for t in range(T):
        tc = t + 1
        nxt = b * field[1 : N + 1, tc] - field[1 : N + 1, tc - 1]
        nxt[:N] += a_up * field[2 : N + 2, tc]
        nxt[0] += a0 * field[0, tc]
        if N > 1:
            nxt[1:] += a_dn * field[1:N, tc]
        field[1 : N + 1, tc + 1] = nxt
    return WaveField(values=field, n_interior=N, horizon=T)


def simulate_semi_infinite(spec: JacobiSpec, f: Control, T: int,
                           dtype=np.complex128) -> WaveField:
    """Semi-infinite dynamics up to time T, realized by a walled truncation.

    With at least T stored coefficients the wall sits at node T + 1 and every
    returned value equals the semi-infinite one (the first echo would arrive
    at t = T + 1 or later).  With M = len(b) in [ceil(T/2), T) the field only
    covers nodes up to M and the n = 1 row is still exact for all t <= T;
    deeper rows are exact for t <= 2M + 1 - n.  Shorter specs are rejected.
    """
    if T < 1:
        raise ValueError("need T >= 1")
    validate(spec)
    if 2 * spec.size < T:
        raise InsufficientCoefficients(
            f"horizon T={T} needs at least ceil(T/2)={-(-T // 2)} coefficients, got {spec.size}"
        )
    return simulate_finite(spec, f, min(T, spec.size), T, dtype=dtype)


def goursat_kernel(spec: JacobiSpec, T: int, dtype=np.complex128) -> GoursatKernel:
    """March the triangular kernel w_{n,s} out to s = T - 1.

    The diagonal obeys w_{n,n} = b_n P_n + a_{n-1} w_{n-1,n-1} with
    P_n = a_0...a_{n-1}, and above the diagonal

        w_{n,s+1} = a_n w_{n+1,s} + a_{n-1} w_{n-1,s} + b_n w_{n,s}
                    - w_{n,s-1} - delta_{s,n} (1 - a_n^2) P_n,

    with w_{0,s} = 0 and w_{n,s} = 0 below the diagonal.  At the Dirichlet
    wall row (when the march outruns the stored coefficients) the coupling
    a_n is absent and the same relations hold with a_n = 0.
    """
    validate(spec)
    if T < 1:
        raise ValueError("need T >= 1")
    rows = min(T - 1, spec.size)

    # couplings[n] = a_n with a_0 the boundary coupling; zero past the wall
    couplings = np.zeros(rows + 2, dtype=dtype)
    couplings[0] = spec.a0
    m = min(rows + 1, len(spec.a))
    couplings[1 : m + 1] = spec.a[:m].astype(dtype)
    b = spec.b.astype(dtype)

    products = np.zeros(rows + 1, dtype=dtype)
    products[0] = 1.0
    for n in range(1, rows + 1):
        products[n] = products[n - 1] * couplings[n - 1]

    w = np.zeros((rows + 1, max(T, 1)), dtype=dtype)
    for s in range(1, T):
        for n in range(1, min(s, rows) + 1):
            if n == s:
                w[n, s] = b[n - 1] * products[n] + couplings[n - 1] * w[n - 1, s - 1]
                continue
            an = couplings[n]
            value = (
                couplings[n - 1] * w[n - 1, s - 1]
                + b[n - 1] * w[n, s - 1]
                - (w[n, s - 2] if s - 2 >= n else 0.0)
            )
            if n + 1 <= rows:
                value += an * w[n + 1, s - 1]
            if s - 1 == n:
                value -= (1.0 - an * an) * products[n]
            w[n, s] = value
    return GoursatKernel(w=w, products=products, horizon=T, wall_row=rows)


def solution_via_kernel(spec: JacobiSpec, kernel: GoursatKernel, f: Control) -> WaveField:
    """Assemble u_{n,t} from the kernel representation (f_j = 0 for j < 0)."""
    if kernel.horizon < f.horizon:
        raise HorizonMismatch(
            f"kernel horizon {kernel.horizon} < control horizon {f.horizon}"
        )
    T = kernel.horizon
    rows = kernel.wall_row
    dtype = kernel.w.dtype
    fsam = _extended_samples(f, T + 1, dtype)
    field = np.zeros((rows + 1, T + 2), dtype=dtype)
    field[0, 1:] = fsam
    for n in range(1, rows + 1):
        for t in range(1, T + 1):
            value = kernel.products[n] * (fsam[t - n] if t - n >= 0 else 0.0)
            for s in range(n, t):
                value += kernel.w[n, s] * fsam[t - s - 1]
            field[n, t + 1] = value
    return WaveField(values=field, n_interior=rows, horizon=T)


def response_vector(spec: JacobiSpec, L: int, method: str = "timestep",
                    dtype=np.complex128) -> np.ndarray:
    """First L response entries r_0..r_{L-1}, with r_{t-1} = u_{1,t}.

    The underlying system is the finite one on all stored coefficients, which
    agrees with the semi-infinite response for L <= 2 len(b); past that the
    wall echo is included (it is what the truncated spectral measure
    reproduces).  ``method`` selects the time stepper or the Goursat-kernel
    route; both must agree (r_0 = a_0, r_s = w_{1,s}).
    """
    validate(spec)
    if L < 1:
        raise ValueError("need L >= 1")
    if method == "timestep":
        field = simulate_finite(spec, Control.delta(), spec.size, L, dtype=dtype)
        return field.values[1, 2 : L + 2].copy()
    if method == "kernel":
        kernel = goursat_kernel(spec, L, dtype=dtype)
        r = np.zeros(L, dtype=dtype)
        r[0] = spec.a0
        if L > 1:
            r[1:] = kernel.w[1, 1:L]
        return r
    raise ValueError(f"unknown method {method!r} (expected 'timestep' or 'kernel')")


def auxiliary_response(spec: JacobiSpec, L: int, dtype=np.complex128) -> np.ndarray:
    """Response of the companion system with conjugated coefficients.

    Simulated directly (not by conjugating the original response); equality
    with conj(r) is the adjoint relation the tests certify.
    """
    return response_vector(spec.conjugate(), L, dtype=dtype)


def convolve(f, g) -> np.ndarray:
    """Full convolution c_t = sum_{s=0}^{t} f_s g_{t-s}."""
    f = np.asarray(f)
    g = np.asarray(g)
    dtype = np.result_type(f.dtype, g.dtype, np.complex128)
    f = f.astype(dtype)
    g = g.astype(dtype)
    if f.size == 0 or g.size == 0:
        return np.zeros(0, dtype=dtype)
    return np.convolve(f, g)


def apply_response(r, f: Control) -> np.ndarray:
    """Apply the response map: output_t = sum_{s=0}^{t-1} r_s f_{t-1-s}.

    Returns the values at t = 1..T for T = f.horizon; equals the n = 1 row of
    the simulated field driven by f.
    """
    r = np.asarray(r)
    T = f.horizon
    if len(r) < T:
        raise HorizonMismatch(f"response vector has {len(r)} entries, control needs {T}")
    return convolve(r[:T], f.samples)[:T]
