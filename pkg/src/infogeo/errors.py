"""Exception hierarchy shared by all modules."""


class InfogeoError(Exception):
    """Base class for errors raised by :mod:`infogeo`."""


class DomainError(InfogeoError, ValueError):
    """An argument lies outside the domain of the operation."""


class ChartDomainError(DomainError):
    """A chart coordinate lies outside the open unit ball of its model space."""


class NumericalError(InfogeoError, ArithmeticError):
    """A numerical procedure (differencing, root finding) broke down."""
