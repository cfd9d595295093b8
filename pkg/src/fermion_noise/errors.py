"""Exception types shared across the package.

Input validation raises plain ``ValueError`` (bad arguments, unsupported
configurations, dimension mismatches).  ``InvariantViolation`` is reserved for
numerical states that have become unphysical, e.g. a correlation matrix whose
singular values exceed one beyond tolerance.  The command-line driver maps
``ValueError``/``ConfigError`` to exit code 2 and ``InvariantViolation`` to
exit code 3.
"""


class InvariantViolation(RuntimeError):
    """A numerical invariant of a physical object failed beyond tolerance."""


class ConfigError(ValueError):
    """A command-line or config-file entry could not be validated."""
