"""
Exception hierarchy and exit-code mapping for the recovery toolkit.
"""
import logging
from typing import Any, Optional

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_MISSING_RESOURCE = 3
EXIT_NUMERICAL = 4


class CSRecoveryError(Exception):
    """Base class for all toolkit errors."""

    exit_code = EXIT_USAGE


class UsageError(CSRecoveryError):
    """Invalid command-line usage."""


class ConfigError(CSRecoveryError, ValueError):
    """Invalid configuration value or combination."""


class DimensionError(CSRecoveryError, ValueError):
    """Operand shapes do not agree."""


class FormatError(CSRecoveryError, ValueError):
    """Malformed file contents."""

    exit_code = EXIT_IO


class ResourceError(CSRecoveryError, FileNotFoundError):
    """A required input resource (e.g. a user-supplied image) is missing."""

    exit_code = EXIT_MISSING_RESOURCE


class NumericalError(CSRecoveryError, ArithmeticError):
    """Non-finite data or a failed factorization."""

    exit_code = EXIT_NUMERICAL


class DivergenceError(NumericalError):
    """An iterate became non-finite. Carries the trace recorded so far."""

    def __init__(self, message: str, trace: Optional[Any] = None):
        super().__init__(message)
        self.trace = trace


class ErrorHandler:
    """Logs errors and maps them onto the CLI exit-code contract."""

    def __init__(self, raise_on_error: bool = False):
        """
        Initialize the error handler.

        Args:
            raise_on_error: Re-raise handled errors after logging them
        """
        self.raise_on_error = raise_on_error
        self.error_count = 0

    def exit_code(self, error: BaseException) -> int:
        """
        Map an exception to a process exit code.

        Args:
            error: The exception raised by a command

        Returns:
            int: Exit code (1 usage, 2 I/O, 3 missing resource, 4 numerical)
        """
        if isinstance(error, CSRecoveryError):
            return error.exit_code
        if isinstance(error, OSError):
            return EXIT_IO
        return EXIT_USAGE

    def is_critical_error(self, error: BaseException) -> bool:
        """
        Check whether an error should abort a batch of runs.

        Args:
            error: The exception to classify

        Returns:
            bool: True for numerical failures and unexpected exceptions
        """
        if isinstance(error, NumericalError):
            return True
        return not isinstance(error, (CSRecoveryError, OSError))

    def handle(self, error: BaseException, context: str) -> int:
        """
        Log an error raised in ``context`` and return its exit code.

        Args:
            error: The exception to handle
            context: Short name of the failing stage

        Returns:
            int: Exit code for the error
        """
        self.error_count += 1
        code = self.exit_code(error)
        if self.is_critical_error(error):
            logger.error(f"Critical error in {context}: {str(error)}")
        else:
            logger.error(f"Error in {context}: {str(error)}")
        if self.raise_on_error:
            raise error
        return code
