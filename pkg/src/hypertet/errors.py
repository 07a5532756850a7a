"""Exception types raised by hypertet."""


class GeometryError(ValueError):
    """Base class for all geometric failures."""


class LightlikeVector(GeometryError):
    pass


class PlanesDoNotIntersect(GeometryError):
    pass


class IdealContact(GeometryError):
    """Two planes meet only at a point at infinity."""


class PointAtInfinity(GeometryError):
    pass


class DegenerateSpan(GeometryError):
    pass


class OutOfDomain(GeometryError):
    """The face-angle cosine falls outside [-1, 1]: no spherical triangle."""


class DegenerateInput(GeometryError):
    pass


class UndefinedFaceAngle(GeometryError):
    def __init__(self, vertex, message=None):
        self.vertex = vertex
        super().__init__(message or f"no spherical link triangle at vertex p{''.join(map(str, vertex))}")


class NotRealizable(GeometryError):
    pass


class NotAMember(GeometryError):
    pass


class NumericalBreakdown(GeometryError):
    pass


class InconsistentLengths(GeometryError):
    pass


class ObtuseTriangle(GeometryError):
    pass


class InvalidSpec(GeometryError):
    pass
