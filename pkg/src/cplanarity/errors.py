"""Exception types raised across the package."""


class CPlanarityError(ValueError):
    """Base class for every error raised by this package."""


class InvalidEmbedding(CPlanarityError):
    pass


class NonSymmetricRotation(InvalidEmbedding):
    pass


class Disconnected(InvalidEmbedding):
    pass


class NonPlanarEmbedding(InvalidEmbedding):
    pass


class DuplicateEdge(InvalidEmbedding):
    pass


class MissingOuterFace(CPlanarityError):
    pass


class NotACycle(CPlanarityError):
    pass


class CycleMismatch(CPlanarityError):
    pass


class VertexClash(CPlanarityError):
    pass


class ForeignEdge(CPlanarityError):
    pass


class PreconditionDegree(CPlanarityError):
    pass


class TooSmall(CPlanarityError):
    pass


class NotTwoConnected(CPlanarityError):
    pass


class NotNested(CPlanarityError):
    pass


class ClusterSeparatorCycle(CPlanarityError):
    pass


class NotCConnected(CPlanarityError):
    pass


class MergeIncompatible(CPlanarityError):
    pass


class TooLarge(CPlanarityError):
    pass


class SchemaError(CPlanarityError):
    pass


class BadParams(CPlanarityError):
    pass


class NotThreeConnectedContext(UserWarning):
    """Formula emitted for a graph that may have several embeddings."""
