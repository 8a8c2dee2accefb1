"""Exception hierarchy shared by every stage of the pipeline."""

from __future__ import annotations


class LinsymError(Exception):
    """Base class; the CLI maps each subclass to its own exit code."""

    exit_code = 1


class UnsupportedDiscriminant(LinsymError):
    """A value needs a second quadratic extension or a nested radical."""

    exit_code = 3


class ConflictingDiscriminant(UnsupportedDiscriminant):
    """Two inputs carry different square roots."""

    exit_code = 3


class MalformedInput(LinsymError):
    exit_code = 2


class SingularP(LinsymError):
    exit_code = 4


class NotCommuting(LinsymError):
    exit_code = 5


class NoPolynomialParticularSolution(LinsymError):
    exit_code = 6


class InternalInconsistency(LinsymError):
    """Two independent routes to the same answer disagree."""

    exit_code = 7


class NonlinearAnsatz(LinsymError):
    exit_code = 8


class NonFiniteState(LinsymError):
    exit_code = 9


class NonMonotoneReparametrization(LinsymError):
    exit_code = 10
