"""Exception types shared across the toolkit."""

from __future__ import annotations


class StructuralError(ValueError):
    """An input object violates a representation invariant."""


class PreconditionError(ValueError):
    """An operation was called on an input outside its domain."""


class CapExceeded(RuntimeError):
    """A resource cap would be exceeded; the computation is refused."""

    def __init__(self, stage: str, size: int, cap: int):
        self.stage = stage
        self.size = size
        self.cap = cap
        super().__init__(f"{stage}: search space {size} exceeds cap {cap}")
