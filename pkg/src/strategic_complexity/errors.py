"""Exception hierarchy shared by the solvers and the CLI.

Each error carries a stable ``code`` that the CLI prints verbatim and an
``exit_code`` used as the process status.
"""


class ModelError(Exception):
    code = "MODEL_ERROR"
    exit_code = 1


class DomainError(ModelError, ValueError):
    """Argument outside the domain of a primitive."""

    code = "DOMAIN_ERROR"
    exit_code = 2


class NoInteriorEquilibrium(ModelError):
    """The parameter lies outside the region where the equilibrium exists."""

    code = "NO_INTERIOR_EQUILIBRIUM"
    exit_code = 2


class InvalidOrdering(ModelError, ValueError):
    """Price sensitivities violate chi*rho_u < rho_s < chi."""

    code = "INVALID_ORDERING"
    exit_code = 2


class NoConvergence(ModelError):
    code = "NO_CONVERGENCE"
    exit_code = 3

    def __init__(self, message, residual=float("nan"), iterations=0):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class OffPathMessage(ModelError):
    """Requested a statistic for a message sent with probability zero."""

    code = "OFF_PATH_MESSAGE"
    exit_code = 2


class ConfigError(ModelError, ValueError):
    code = "CONFIG_ERROR"
    exit_code = 1
