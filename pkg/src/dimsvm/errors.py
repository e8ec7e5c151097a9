"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid argument or malformed input data."""


class NumericalError(RuntimeError):
    """Numerical failure: diverged trajectory, unsolvable system, unusable fit."""
