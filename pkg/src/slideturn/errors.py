"""Exception hierarchy.

Every domain failure raised by the library derives from
:class:`GeometryError`; the CLI maps these to exit code 2.
"""


class GeometryError(Exception):
    """Base class for domain errors."""


class InvalidBody(GeometryError, ValueError):
    pass


class NotDisjoint(GeometryError):
    pass


class NotOnBoundary(GeometryError):
    pass


class InteriorRequired(GeometryError):
    pass


class DegenerateBody(GeometryError):
    pass


class OutOfDomain(GeometryError):
    pass


class OutOfRange(GeometryError):
    pass


class NotOnSlideCurve(GeometryError):
    pass


class NotOnParallelBoundary(GeometryError):
    pass
