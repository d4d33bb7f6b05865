"""Exception types shared across the package."""


class BoundExceededError(ValueError):
    """A size limit (group degree, tableau count, dense dimension) was exceeded."""


class DomainError(ValueError):
    """A mathematically valid request that has no answer for the given input,
    e.g. a seed ket annihilated by a projector."""
