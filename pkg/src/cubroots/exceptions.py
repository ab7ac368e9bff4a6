class CubatureError(Exception):
    """Base class for errors raised by cubroots."""


class IncorrectPairError(CubatureError, ValueError):
    """The evaluation matrix of (design, basis) is not square and nonsingular."""

    def __init__(self, message: str, n: int, size: int, rank: int | None = None) -> None:
        super().__init__(message)
        self.n = n
        self.size = size
        self.rank = rank

    @property
    def rank_defect(self) -> int | None:
        if self.rank is None:
            return None
        return min(self.n, self.size) - self.rank


class PreconditionError(CubatureError, ValueError):
    """An operation was called outside the hypotheses it relies on."""


class InvariantError(CubatureError, AssertionError):
    """An internal consistency check failed; this indicates a bug."""
