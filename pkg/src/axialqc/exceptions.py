"""Exception types raised by axialqc."""


class AxialQCError(Exception):
    """Base class for all errors raised by this package."""


class InvalidState(AxialQCError, ValueError):
    """The parameters do not describe a valid axially symmetric density matrix."""


class InvalidSpectrum(AxialQCError, ValueError):
    """Eigenvalues do not sum to one."""


class NotHermitian(AxialQCError, ValueError):
    pass


class NotDensityMatrix(AxialQCError, ValueError):
    pass


class NonpositiveTemperature(AxialQCError, ValueError):
    pass


class SinkError(AxialQCError, OSError):
    """Writing CSV output failed."""
