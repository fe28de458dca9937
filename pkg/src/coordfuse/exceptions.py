"""Exception taxonomy; the CLI maps these onto its exit codes."""


class CoordfuseError(Exception):
    """Base class for all toolkit errors."""


class DataValidationError(CoordfuseError):
    """Malformed or out-of-contract input data (CLI exit code 2)."""


class TrainingFailure(CoordfuseError):
    """A model failed to train or a fold round aborted (CLI exit code 3)."""
