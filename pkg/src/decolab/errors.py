"""Exception hierarchy for decolab.

Everything derives from :class:`DecolabError` so callers can catch the
whole family; the CLI maps validation failures to exit code 2 and
domain failures to exit code 3.
"""


class DecolabError(Exception):
    """Base class for all decolab errors."""


class ZeroVector(DecolabError):
    """Both superposition amplitudes are zero; no direction to normalize."""


class NotNormalized(DecolabError):
    """Amplitudes do not satisfy |alpha|^2 + |beta|^2 = 1 within tolerance."""


class NonPhysical(DecolabError):
    """A density matrix violates trace, hermiticity, or positivity bounds."""


class OverflowGuard(DecolabError):
    """Matrix exponential argument too large; refusing to return garbage."""


class BracketFailure(DecolabError):
    """Cubic root bracket sign conditions failed; coefficients are bad."""


class DegenerateSpectrum(DecolabError):
    """Generator eigenvalues (nearly) collide; spectral routines refuse."""


class DegenerateAmplitude(DecolabError):
    """An amplitude magnitude is (nearly) zero, forcing a zero rate."""


class DegenerateCase(DecolabError):
    """Splitting factors commute; error slope is undefined (product exact)."""


class DimensionMismatch(DecolabError):
    """Operands do not have compatible square shapes."""
