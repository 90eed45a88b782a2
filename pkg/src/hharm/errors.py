"""Shared exception types."""


class GuardError(ValueError):
    """Raised when a computation exceeds its size guard.

    Guards exist because several verification sweeps enumerate subset
    pairs or materialize dense matrices; past the guarded ground-set
    size they would silently eat minutes of CPU or gigabytes of RAM.
    """


def require_guard(name: str, n: int, limit: int) -> None:
    if n < 0:
        raise ValueError(f"{name}: n must be nonnegative, got {n}")
    if n > limit:
        raise GuardError(f"{name}: n={n} exceeds guard n <= {limit}")
