"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class QMatroidError(Exception):
    """Base class for every error raised by this package."""


# fields
class NotPrime(QMatroidError, ValueError):
    pass


class NotIrreducible(QMatroidError, ValueError):
    pass


class DegreeMismatch(QMatroidError, ValueError):
    pass


class DivisionByZero(QMatroidError, ZeroDivisionError):
    pass


class SpecMismatch(QMatroidError, ValueError):
    pass


class NotABasis(QMatroidError, ValueError):
    pass


# spaces
class DimensionMismatch(QMatroidError, ValueError):
    pass


class FieldMismatch(QMatroidError, ValueError):
    pass


class AmbientMismatch(QMatroidError, ValueError):
    pass


class CapExceeded(QMatroidError, ValueError):
    pass


class KernelNotContained(QMatroidError, ValueError):
    pass


class SelfOrthogonalDegenerate(QMatroidError, ValueError):
    pass


# matroids
class AxiomViolation(QMatroidError, ValueError):
    """A family handed to a constructor failed its axiom suite.

    ``reports`` maps axiom ids to the :class:`~qmatroids.qmatroid.AxiomReport`
    objects produced by the check, so callers can see which axiom broke.
    """

    def __init__(self, reports):
        self.reports = reports
        failed = [name for name, rep in reports.items() if not rep.holds]
        super().__init__("axioms violated: " + ", ".join(failed))


class InternalConsistencyError(QMatroidError, RuntimeError):
    """Two routes that must agree produced different answers."""


class BadParams(QMatroidError, ValueError):
    pass


class NotHyperplane(QMatroidError, ValueError):
    pass


class NoBasisContained(QMatroidError, ValueError):
    pass


class LoopContraction(QMatroidError, ValueError):
    pass


class RankZero(QMatroidError, ValueError):
    pass


class PreconditionViolated(QMatroidError, ValueError):
    pass


# codes
class LengthMismatch(QMatroidError, ValueError):
    pass


class NotACodeword(QMatroidError, ValueError):
    pass


class PointsDependent(QMatroidError, ValueError):
    pass
