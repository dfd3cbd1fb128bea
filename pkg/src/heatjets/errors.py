"""Exception hierarchy for the heatjets package."""


class HeatjetsError(Exception):
    """Base class for all package-specific errors."""


class NonInvertibleConstantTerm(HeatjetsError):
    """A series inversion or logarithm hit a non-invertible constant term."""


class OrderExhausted(HeatjetsError):
    """A jet does not carry enough truncation order for the requested operation."""


class IndexOutOfRange(HeatjetsError):
    """Constant indices (n, k, s, m) outside their admissible ranges."""


class DegenerateCurvatureCoordinates(HeatjetsError):
    """The Jacobian of (K, Laplacian K) vanishes at the base point."""


class SingularFrame(HeatjetsError):
    """A curvature frame denominator (E or E*G - F^2) vanishes."""


class TailNotConverged(HeatjetsError):
    """The dropped tail of a spectral sum exceeds the requested tolerance."""


class IllConditionedFit(HeatjetsError):
    """The extrapolation ladder lost all significant digits."""


class SchemaError(HeatjetsError):
    """Malformed metric-spec document.  `path` points at the offending field."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class InvalidMetric(HeatjetsError):
    """Structurally valid metric spec with inadmissible mathematical content."""
