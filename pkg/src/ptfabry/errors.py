"""Exception types raised by the scattering and pole-finding routines."""


class PTScatteringError(Exception):
    """Base class for all numerical failures in this package."""


class DivergentAmplitude(PTScatteringError, ArithmeticError):
    """A scattering amplitude has a vanishing denominator (pole on the real axis)."""

    def __init__(self, message, k=None, denominator=None):
        super().__init__(message)
        self.k = k
        self.denominator = denominator


class PoleOfAlpha(DivergentAmplitude):
    """The modulation factor alpha has a vanishing denominator."""


class SeriesDivergent(PTScatteringError):
    """The multiple-bounce series has a ratio of modulus >= 1.

    The partial sums accumulated so far are attached for inspection.
    """

    def __init__(self, message, t_partial=None, r_partial=None, ratio=None):
        super().__init__(message)
        self.t_partial = t_partial
        self.r_partial = r_partial
        self.ratio = ratio


class SingularMatrix(PTScatteringError, ArithmeticError):
    """det M_L vanishes at the requested wave number (an S-matrix pole)."""

    def __init__(self, message, det=None, scale=None):
        super().__init__(message)
        self.det = det
        self.scale = scale


class BandEdge(PTScatteringError, ValueError):
    """sin k vanishes, so the closed forms are undefined."""


class DegenerateSpectrum(PTScatteringError):
    """No discrete poles exist (gamma = 0)."""


class RootFindingFailure(PTScatteringError):
    """A root did not reach the residual tolerance."""

    def __init__(self, message, roots=None, residuals=None, partial=None):
        super().__init__(message)
        self.roots = roots
        self.residuals = residuals
        self.partial = partial


class FitRejected(PTScatteringError):
    """A Lorentzian fit was refused (overlapping or on-axis pole)."""


class MatchingAmbiguity(UserWarning):
    """Pole matching between two sweep steps was nearly degenerate."""
