"""Exception hierarchy. Names mirror the failure they report."""


class TropnetError(ValueError):
    pass


# network construction / manipulation
class NetworkError(TropnetError):
    pass


class VerticalEdge(NetworkError):
    pass


class CrossingEdges(NetworkError):
    def __init__(self, first, second, detail=""):
        self.pair = (first, second)
        msg = f"edges {first} and {second} intersect away from a shared endpoint"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class VertexOutsideStrip(NetworkError):
    pass


class DuplicateId(NetworkError):
    pass


class InvalidRank(NetworkError):
    pass


class RankMissing(NetworkError):
    pass


class KOutOfRange(NetworkError):
    pass


class NotComposable(NetworkError):
    pass


class NOutOfRange(NetworkError):
    pass


class IncompleteWeighting(NetworkError):
    pass


# path systems
class ExplosionGuard(TropnetError):
    pass


class InvalidMultipath(TropnetError):
    pass


# tableaux / cones
class NonFiniteEntry(TropnetError):
    pass


class NonZeroFirstColumn(TropnetError):
    pass


class TraceMismatch(TropnetError):
    pass


class NTooLarge(TropnetError):
    pass


class SingularSystem(TropnetError):
    pass


# collections
class UnknownCell(TropnetError):
    pass


class UnknownRegion(TropnetError):
    pass


# recombination
class TripleContact(TropnetError):
    pass


class TypeMismatch(TropnetError):
    pass


class InfeasibleColoring(TropnetError):
    pass


# spectra
class NotSymmetric(TropnetError):
    pass


class NoConvergence(TropnetError):
    pass
