"""Exception hierarchy shared by all modules.

The CLI maps PreconditionError to exit code 2 and anything else to 1,
so domain code should raise these rather than bare ValueError where the
failure is a violated contract rather than a bug.
"""


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class BudgetError(PreconditionError):
    """The requested computation exceeds the configured compute budget."""

    def __init__(self, estimated_ops: float, limit: float, what: str = ""):
        self.estimated_ops = estimated_ops
        self.limit = limit
        msg = f"estimated cost {estimated_ops:.3g} ops exceeds budget {limit:.3g}"
        if what:
            msg = f"{what}: {msg}"
        super().__init__(msg + " (pass force=True / --force to override)")


class CacheError(IOError):
    """A cache file failed a version or checksum test."""
