"""Exception hierarchy shared by the library and the command line driver."""


class GWLocError(Exception):
    """Base class for all errors raised by gwloc."""

    exit_code = 1


class InvalidArgumentError(GWLocError, ValueError):
    exit_code = 2


class DimensionMismatchError(InvalidArgumentError):
    """Insertion degrees do not add up to the virtual dimension."""


class UnsupportedGenusError(GWLocError):
    """A vertex or query needs Hodge integrals in genus >= 2."""

    exit_code = 3


class MissingHodgeIntegralError(GWLocError):
    """A supplied Hodge table lacks records needed by a computation."""

    exit_code = 4

    def __init__(self, missing):
        self.missing = sorted(missing)
        lines = "\n".join("  " + rec for rec in self.missing)
        super().__init__(
            f"Hodge table is missing {len(self.missing)} record(s):\n{lines}"
        )


class GraphCapExceededError(GWLocError):
    """Fixed-graph enumeration produced more graphs than allowed."""

    exit_code = 5

    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"graph enumeration exceeded the cap of {cap} graphs")


class NonGenericWeightsError(GWLocError, ZeroDivisionError):
    """A denominator vanished for the chosen torus weights."""

    exit_code = 6
