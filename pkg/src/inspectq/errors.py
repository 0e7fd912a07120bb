"""Typed errors raised by the solver modules."""


class InspectqError(Exception):
    """Base class for all library errors."""


class InvalidParams(InspectqError):
    """A positivity or sign constraint on the market parameters is violated."""


class UnstableRegime(InspectqError):
    """(1-p)*rho >= 1: the queue has no stationary distribution at this p."""


class DomainError(InspectqError):
    """The operation's preconditions do not hold for these parameters."""


class NeedsBisection(InspectqError):
    """The closed-form equilibrium is inapplicable; use the bisection solver."""


class DivergenceDetected(InspectqError):
    """Simulated queue state exceeded the cap with positive drift."""
