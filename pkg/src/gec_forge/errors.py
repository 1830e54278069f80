"""Exception types shared across the toolkit.

The CLI maps GecForgeError (and OS-level file errors) to exit code 1;
anything else is treated as an internal error (exit code 2).
"""


class GecForgeError(Exception):
    """Base class for all errors raised deliberately by this package."""


class SchemaError(GecForgeError):
    """A file does not match its documented schema (headers, sections)."""


class ParseError(GecForgeError):
    """A file is syntactically malformed (bad row, bad encoding)."""


class InputError(GecForgeError):
    """Arguments violate an operation's preconditions."""


class UsageError(GecForgeError):
    """Bad command line (unknown subcommand, missing flag)."""
