"""Exception hierarchy shared across the package."""


class IRSCovError(Exception):
    """Base class for all package errors."""


class DomainError(IRSCovError, ValueError):
    """An argument lies outside the mathematical domain of a function."""


class ConvergenceError(IRSCovError, ArithmeticError):
    """An iterative evaluation hit its iteration cap."""


class PreconditionError(IRSCovError, ValueError):
    """A query is well-formed but not accepted by the chosen method."""


class NoSolutionError(IRSCovError, ArithmeticError):
    """A search ran to its cap without meeting the target."""


class ValidationError(IRSCovError, ValueError):
    """A scenario failed validation; ``diagnostics`` lists every problem."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = "; ".join(f"{d.field}: {d.message}" for d in self.diagnostics)
        super().__init__(f"invalid scenario: {lines}")


class ConfigError(IRSCovError, ValueError):
    """A config file line could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
