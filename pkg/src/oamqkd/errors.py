"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A parameter combination that cannot produce meaningful results."""


class DegenerateEnsembleError(RuntimeError):
    """No coincidences survived post-selection, so no state can be formed."""
