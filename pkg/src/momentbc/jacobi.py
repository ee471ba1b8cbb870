"""Complex Jacobi coefficient data and finite truncations.

The coefficient model is the classical 1-based family: diagonal entries
b_1..b_N, off-diagonal couplings a_1..a_{N-1} (all nonzero), plus a nonzero
boundary coupling a_0 tying the chain to the driving endpoint.  Storage is
0-based throughout the package, so ``spec.b[n-1]`` holds b_n and
``spec.a[k-1]`` holds a_k; public docstrings always refer to the 1-based
labels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, NonFiniteEntry, SizeExceedsSpec, ZeroCoefficient


@dataclass(frozen=True)
class JacobiSpec:
    """Coefficients (a_0; a_1..a_{N-1}; b_1..b_N) of a complex Jacobi matrix."""

    a0: complex
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a0", complex(self.a0))
        object.__setattr__(self, "a", np.asarray(self.a, dtype=complex))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=complex))

    @property
    def size(self) -> int:
        """Number of stored diagonal entries (largest valid truncation)."""
        return len(self.b)

    def conjugate(self) -> "JacobiSpec":
        """Spec with every coefficient replaced by its complex conjugate."""
        return JacobiSpec(np.conj(self.a0), np.conj(self.a), np.conj(self.b))

    def off_diagonal(self, n: int) -> complex:
        """a_n in 1-based labelling; a_0 is the boundary coupling."""
        if n == 0:
            return self.a0
        return complex(self.a[n - 1])


@dataclass(frozen=True)
class FiniteJacobiMatrix:
    """Leading n-by-n tridiagonal block of the infinite matrix."""

    n: int
    entries: np.ndarray


def validate(spec: JacobiSpec) -> None:
    """Check the coefficient invariants, raising on the first violation.

    Raises
    ------
    LengthMismatch
        if len(b) != len(a) + 1
    ZeroCoefficient
        if a_0 = 0 or any a_k = 0
    NonFiniteEntry
        if any coefficient is NaN or infinite
    """
    if len(spec.b) != len(spec.a) + 1:
        raise LengthMismatch(
            f"need len(b) == len(a) + 1, got len(b)={len(spec.b)}, len(a)={len(spec.a)}"
        )
    for name, values in (("a0", np.array([spec.a0])), ("a", spec.a), ("b", spec.b)):
        if values.size and not np.all(np.isfinite(values.view(float))):
            raise NonFiniteEntry(f"non-finite entry in {name}")
    if spec.a0 == 0:
        raise ZeroCoefficient("boundary coupling a_0 must be nonzero")
    if spec.a.size and np.any(spec.a == 0):
        k = int(np.flatnonzero(spec.a == 0)[0]) + 1
        raise ZeroCoefficient(f"off-diagonal coupling a_{k} must be nonzero")


def truncate(spec: JacobiSpec, n: int) -> FiniteJacobiMatrix:
    """Leading n-by-n block: diagonal b_1..b_n, off-diagonal a_1..a_{n-1}.

    Entries are copied, not recomputed, so ``entries[i, i] == b[i]`` exactly.
    """
    validate(spec)
    if n < 1:
        raise ValueError("truncation size must be positive")
    if n > spec.size:
        raise SizeExceedsSpec(f"requested {n}x{n} block, spec stores {spec.size} rows")
    entries = np.zeros((n, n), dtype=complex)
    entries[np.arange(n), np.arange(n)] = spec.b[:n]
    if n > 1:
        idx = np.arange(n - 1)
        entries[idx, idx + 1] = spec.a[: n - 1]
        entries[idx + 1, idx] = spec.a[: n - 1]
    return FiniteJacobiMatrix(n=n, entries=entries)


def random_spec(n: int, rng: np.random.Generator, min_coupling: float = 0.1) -> JacobiSpec:
    """Random test instance with re/im parts in [-2, 2].

    Couplings with |a_k| < ``min_coupling`` are redrawn so instances stay away
    from the forbidden a_k = 0 boundary.
    """

    def draw(size):
        return rng.uniform(-2.0, 2.0, size) + 1j * rng.uniform(-2.0, 2.0, size)

    def draw_coupling(size):
        out = draw(size)
        while True:
            weak = np.abs(out) < min_coupling
            if not np.any(weak):
                return out
            out[weak] = draw(int(np.sum(weak)))

    a0 = draw_coupling(1)[0]
    a = draw_coupling(n - 1) if n > 1 else np.zeros(0, dtype=complex)
    b = draw(n)
    return JacobiSpec(a0=a0, a=a, b=b)
