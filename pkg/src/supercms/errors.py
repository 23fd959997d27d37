"""Exception types shared across the package."""


class SupercmsError(Exception):
    pass


class UnsupportedOrderError(SupercmsError, ValueError):
    """Requested derivative order exceeds the jet truncation."""


class AccuracyError(SupercmsError, ArithmeticError):
    """A series or quadrature failed to reach its tolerance."""


class DomainError(SupercmsError, ValueError):
    pass


class DimensionError(SupercmsError, ValueError):
    pass


class SingularConfigurationError(SupercmsError, ZeroDivisionError):
    """A weight or operator hit a pole; ``pair`` names the colliding coordinates."""

    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class DegenerateParametersError(SupercmsError, ValueError):
    pass


class NoSolutionError(SupercmsError, ValueError):
    pass


class UnphysicalConfigurationError(SupercmsError, ValueError):
    pass
