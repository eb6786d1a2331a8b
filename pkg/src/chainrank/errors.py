"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: InputError (and subclasses) -> 2,
ResourceCapError -> 3, AmbiguityError / ContractError / AssertionError -> 4.
"""


class ChainRankError(Exception):
    """Base class for all library errors."""


class InputError(ChainRankError):
    """Malformed input: bad labels, dimensions, file contents or parameters."""


class NotChainError(InputError):
    """A chain tournament was required but the input lacks the chain property."""


class ResourceCapError(ChainRankError):
    """An enumeration limit was exceeded; raise the cap or use a greedy operator."""


class AmbiguityError(ChainRankError):
    """A computation that must produce a unique result found a tie."""


class ContractError(ChainRankError):
    """A user-supplied selection function violated its contract."""
