"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all errors raised by xlemo."""


class InputError(ToolkitError):
    """Bad input data: missing files, parse failures, schema violations."""


class NumericError(ToolkitError):
    """Numeric failure: non-finite loss, degenerate statistics."""
