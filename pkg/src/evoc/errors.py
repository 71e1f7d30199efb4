class ConfigError(ValueError):
    """Invalid configuration value; the message names the offending key."""


class ContractError(RuntimeError):
    """An operation was called with a violated precondition."""
