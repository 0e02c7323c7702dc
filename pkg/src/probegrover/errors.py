"""Exception types shared across the simulator and the experiment harness."""


class ConfigurationError(ValueError):
    """An experiment configuration is invalid (sizes, indices, strategy, flags)."""


class ProtocolError(RuntimeError):
    """A protocol step was invoked out of order or on the wrong sub-system."""


class UsageError(ValueError):
    """Aggregation or reporting was called with inconsistent inputs."""


class InvariantError(RuntimeError):
    """An internal simulator invariant was violated; indicates a bug."""
