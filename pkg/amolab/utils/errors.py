"""Numerical failure signals shared across the amolab packages."""


class NumericalFailure(ArithmeticError):
    """Base class for every numerical failure a command can hit."""


class BoundaryBlowup(NumericalFailure):
    pass


class NotElliptic(NumericalFailure):
    pass


class BandResolutionFailure(NumericalFailure):
    pass


class EdgeSingularity(NumericalFailure):
    pass


class ContractionFailure(NumericalFailure):
    pass


class DegeneratePair(NumericalFailure):
    pass


class DegenerateSample(NumericalFailure):
    pass


class ResolutionError(NumericalFailure):
    pass
