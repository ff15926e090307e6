"""Exception hierarchy."""


class TukeyRegionError(Exception):
    """Base class for all errors raised by this package."""


class GeneralPositionError(TukeyRegionError):
    """The data violate general position in a way the computation can detect."""


class RankDeficient(GeneralPositionError):
    """Ridge differences do not span a (p-2)-dimensional space."""


class DegenerateProjection(GeneralPositionError):
    """A projected point lies on the ridge, or two angles coincide."""


class TiedProjection(GeneralPositionError):
    """Projections onto a random direction are not strictly ordered."""


class SeedingFailed(TukeyRegionError):
    """No critical hyperplane was found through the lowest ridge after all retries."""


class DuplicateIndex(TukeyRegionError, ValueError):
    pass


class UnboundedLP(TukeyRegionError):
    """The halfspace set does not bound a polytope."""


class NumericalDegeneracy(TukeyRegionError):
    """A vertex system is singular beyond tolerance."""


class DegenerateInput(TukeyRegionError, ValueError):
    """Point set has affine dimension lower than the ambient dimension."""


class InconsistentOffset(TukeyRegionError):
    """Points of a critical tuple disagree on the hyperplane offset."""


class CapExceeded(TukeyRegionError):
    """An exhaustive oracle was asked to enumerate more candidates than allowed."""


class FormatUnsupported(TukeyRegionError, ValueError):
    pass


class ParseError(TukeyRegionError, ValueError):
    pass


class DimensionMismatch(TukeyRegionError, ValueError):
    pass
