"""Exception hierarchy.

Two families matter downstream: :class:`InputError` covers violated
contracts (bad shapes, missing data, invalid coefficients) and maps to CLI
exit code 2; :class:`NumericalRejection` covers inputs that are structurally
fine but fail a numerical solvability condition (singular minors, inadmissible
response data) and maps to CLI exit code 3.
"""


class MomentBCError(Exception):
    """Base class for all library errors."""


class InputError(MomentBCError):
    """A contract violation in the supplied data."""


class NumericalRejection(MomentBCError):
    """Input rejected by a numerical solvability test."""


# --- coefficient / shape contract violations -------------------------------

class ZeroCoefficient(InputError):
    """An off-diagonal coupling a_k (or the boundary coupling a_0) is zero."""


class LengthMismatch(InputError):
    """len(b) != len(a) + 1."""


class NonFiniteEntry(InputError):
    """A coefficient contains NaN or Inf."""


class SizeExceedsSpec(InputError):
    """A truncation size larger than the stored coefficient range."""


class InsufficientCoefficients(InputError):
    """The coefficient range does not cover the requested time horizon."""


class HorizonMismatch(InputError):
    """Kernel or response data shorter than the control it is applied to."""


class TooFewResponseEntries(InputError):
    """Connecting-matrix construction needs r_0..r_{2T-2}."""


class TooFewMoments(InputError):
    """An operation needs more moments than were supplied."""


class EvenLengthMoments(InputError):
    """The truncated solver consumes s_0..s_{2N-2}; an odd count is required."""


class NotSymmetric(InputError):
    """Takagi factorization requires a complex symmetric matrix."""


# --- numerical rejections ---------------------------------------------------

class SingularInput(NumericalRejection):
    """Matrix numerically singular where the construction requires otherwise."""


class CannotSeparate(NumericalRejection):
    """Phase rotation failed to separate coincident diagonal values."""


class ZeroFirstComponent(NumericalRejection):
    """A factorization vector has (numerically) vanishing first component."""


class DuplicateDiagonal(NumericalRejection):
    """Spectral data requested from a factorization with coincident diagonal."""


class DuplicateSupport(NumericalRejection):
    """Two measure support points closer than the separation threshold."""


class SingularMinor(NumericalRejection):
    """A nested Hankel (or connecting) minor is numerically singular."""

    def __init__(self, k, message=None):
        self.k = k
        super().__init__(message or f"minor of order {k} is numerically singular")


class Inadmissible(NumericalRejection):
    """Response data fails the nested nonsingularity characterization."""

    def __init__(self, k, message=None):
        self.k = k
        super().__init__(
            message or f"connecting matrix C^(T-k) is numerically singular at k={k}"
        )


class NonDiagonalizable(NumericalRejection):
    """Eigen-oracle path: matrix lacks a complex-orthogonal eigenbasis."""
