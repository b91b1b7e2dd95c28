"""Exception types raised across the package."""


class GeometryError(Exception):
    pass


class InvalidPolygon(GeometryError):
    pass


class QueryOutsidePolygon(GeometryError):
    pass


class NotAMirror(GeometryError):
    pass


class LineBudgetExceeded(GeometryError):
    def __init__(self, cap: int, needed: int | None = None):
        self.cap = cap
        self.needed = needed
        msg = f"line budget of {cap} exceeded"
        if needed is not None:
            msg += f" (at least {needed} lines)"
        super().__init__(msg)


class TsrOutsideCell(GeometryError):
    pass


class PointOutsideCell(GeometryError):
    pass


class Uncoverable(GeometryError):
    pass


class CapExceeded(GeometryError):
    pass


class DegenerateRegion(GeometryError):
    pass
