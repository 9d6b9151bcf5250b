"""Exception types shared across the package."""


class InputError(ValueError):
    """Bad caller input: dimension mismatch, infeasible start, unknown name."""


class InternalError(RuntimeError):
    """A numerical routine failed in a way that indicates a bug or breakdown."""
