"""Exception hierarchy.

Every error carries the process exit code the CLI reports for it.
"""


class ScimapsError(Exception):
    exit_code = 3
    kind = "error"


class ConfigError(ScimapsError):
    exit_code = 2
    kind = "config"


class DataError(ScimapsError):
    exit_code = 3
    kind = "data"


class NumericError(ScimapsError):
    exit_code = 4
    kind = "numeric"


class EmptyCorpusError(DataError):
    kind = "empty-corpus"


class EmptyMatrixError(DataError):
    kind = "empty-matrix"


class SeedNotFoundError(DataError):
    kind = "seed-not-found"


class NoEnvironmentError(DataError):
    kind = "no-environment"


class SchemaError(DataError):
    kind = "schema"


class NetFormatError(DataError):
    kind = "format"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DegenerateVariableError(NumericError):
    kind = "degenerate-variable"

    def __init__(self, journal):
        super().__init__(f"citing pattern of {journal!r} has zero variance")
        self.journal = journal


class InvalidCorrelationError(NumericError):
    kind = "invalid-correlation"


class DegenerateEmbeddingError(NumericError):
    """Fewer than two positive eigenvalues; ``fallback`` holds the 1-D map."""

    kind = "degenerate-embedding"

    def __init__(self, message, fallback=None):
        super().__init__(message)
        self.fallback = fallback
