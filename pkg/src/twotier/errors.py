"""Errors that the command layer maps to distinct exit codes."""


class ToolkitError(Exception):
    pass


class ConfigError(ToolkitError):
    """Invalid or inconsistent configuration."""


class BudgetError(ToolkitError):
    """An enumeration would exceed the configured budget."""
