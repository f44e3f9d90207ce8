"""Exception types shared across the toolkit."""


class ClusterError(Exception):
    """Base class for all toolkit errors."""


class FrozenVertex(ClusterError):
    """Mutation or X-coordinate access requested at a frozen vertex."""


class ShapeMismatch(ClusterError):
    """Two seeds do not share a vertex set / frozen subset."""


class InvalidStep(ClusterError):
    """A word step refers to a vertex that is not mutable at that point."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class NotMappingClass(ClusterError):
    """Word does not preserve the exchange matrix of its base seed."""


class NotSkewSymmetric(ClusterError):
    """Quiver conversion requires a skew-symmetric seed (all d_i = 1)."""


class ZeroPoint(ClusterError):
    """The zero tropical point has no projective class."""


class BadWeights(ClusterError):
    """Barycentric weights must be nonnegative and not all zero."""


class UnsupportedRank(ClusterError):
    """Direction sampling is only implemented for small mutable rank."""


class BudgetExceeded(ClusterError):
    """Exploration exceeded its node budget."""

    def __init__(self, message, nodes=None):
        super().__init__(message)
        self.nodes = nodes


class CellNotFound(ClusterError):
    """No explored cluster contains the requested cell."""


class NotMutable(ClusterError):
    """Cluster reduction may only freeze mutable vertices."""


class NotPointwiseFixed(ClusterError):
    """Word reduction requires the frozen set to be fixed vertex by vertex."""


class NoWitness(ClusterError):
    """No non-negative cluster was found within the budget."""


class NoConvergence(ClusterError):
    """Orbit limit did not settle within the step budget."""


class InvalidTriangulation(ClusterError):
    """Combinatorial triangulation data is inconsistent."""


class NotFlippable(ClusterError):
    """The arc is the inner arc of a self-folded triangle."""


class UnknownName(ClusterError):
    """Catalog lookup with an unknown name."""


class ParseError(ClusterError):
    """Malformed seed/word/triangulation document."""


class ValidationError(ClusterError):
    """Document parsed but the resulting object violates invariants."""
