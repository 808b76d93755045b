"""
@file core/exceptions.py
@brief Exception hierarchy shared by every lab module.

@details
Each error class carries the exit status the command-line front end maps it
to, so management commands never need their own lookup tables.
"""

from enum import IntEnum


class ExitStatus(IntEnum):
    """
    @brief Process exit codes of the lab commands.
    """
    SUCCESS = 0
    HYPOTHESIS = 2
    CONFIGURATION = 3
    NUMERICAL = 4


class LabError(Exception):
    """
    @brief Root of all errors raised by the lab.
    """
    exit_status = ExitStatus.CONFIGURATION


class DomainError(LabError, ValueError):
    """
    @brief An argument lies outside the domain of the operation (J <= 0, empty samples, delta out of range).
    """


class ShapeError(LabError, ValueError):
    """
    @brief Sample vector or lattice does not match the grid it is used with.
    """


class ParameterError(LabError, ValueError):
    """
    @brief Physical parameters violate kappa > 0 or r > 1.
    """


class PreconditionError(LabError):
    """
    @brief A documented precondition of an operation does not hold.
    """


class ConfigurationError(LabError):
    """
    @brief Malformed run configuration or solver setup (CFL, missing curves).
    """


class HypothesisError(LabError):
    """
    @brief H1/H2 or the positivity of the bound bracket fails.
    """
    exit_status = ExitStatus.HYPOTHESIS


class NumericalError(LabError):
    """
    @brief A deterministic computation could not finish.
    """
    exit_status = ExitStatus.NUMERICAL


class ConvergenceError(NumericalError):
    """
    @brief Quadrature tolerance could not be met.
    """


class SolverStallError(NumericalError):
    """
    @brief Step size underflowed before the ODE reached its cap.
    """


class InsufficientDataError(NumericalError):
    """
    @brief Too few checkpoints for a finite-difference diagnostic.
    """


class PathCrashError(NumericalError):
    """
    @brief A Monte Carlo path raised; the campaign is aborted.

    @param seed The per-path seed of the offending path.
    """

    def __init__(self, seed, message=None):
        self.seed = seed
        super().__init__(message or f"path with seed {seed} crashed")
