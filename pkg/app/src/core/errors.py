"""
Exception hierarchy shared by every module.

All domain errors derive from ``OperatorFrameError`` (a ``ValueError``) so the
command-line layer can map them to the usage/parse exit code in one place.
"""

from typing import List, Optional, Tuple


class OperatorFrameError(ValueError):
    """Base class for invalid input to any operation."""


class DimensionMismatchError(OperatorFrameError):
    """Operator shapes or subsystem factors disagree."""


class NotHermitianError(OperatorFrameError):
    """An operation that needs a Hermitian operator received something else."""

    def __init__(self, max_asymmetry: float, context: str = "operator"):
        self.max_asymmetry = max_asymmetry
        super().__init__(f"{context} is not Hermitian (max |A - A^dagger| entry = {max_asymmetry:.3e})")


class NotBipartiteError(OperatorFrameError):
    """Partial trace or transpose requested on a single-factor operator."""


class StateValidationError(OperatorFrameError):
    """A density operator or state vector violates physicality."""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__("non-physical state: " + "; ".join(self.violations))


class FrameConstructionError(OperatorFrameError):
    """A frame cannot be built from the supplied parameters."""

    def __init__(self, message: str, offending_pair: Optional[Tuple[int, int]] = None):
        self.offending_pair = offending_pair
        super().__init__(message)


class IncompleteFrameError(OperatorFrameError):
    """The frame does not span the full operator space."""

    def __init__(self, rank: int, target_rank: int, operation: str = "operation"):
        self.rank = rank
        self.target_rank = target_rank
        super().__init__(f"{operation} requires a complete frame: rank {rank} < {target_rank}")


class RankDeficientFrameError(OperatorFrameError):
    """No dual exists because the elements are linearly dependent without spanning."""

    def __init__(self, rank: int, size: int):
        self.rank = rank
        self.size = size
        super().__init__(f"frame elements are rank deficient: rank {rank} for {size} elements, no dual exists")


class MissingWeightsError(OperatorFrameError):
    """Orthogonality fails, so the weights lambda_i are undefined."""


class WrongFlavorError(OperatorFrameError):
    """The frame flavor or index scheme does not fit the requested operation."""


class InternalInconsistencyError(RuntimeError):
    """A frame reported all three conditions at once, which signals a numerical bug."""


class InvalidIndexError(OperatorFrameError):
    """A frame index or teleportation outcome is out of range."""


class InputParseError(OperatorFrameError):
    """A JSON input file is malformed; carries the 1-based line and column."""

    def __init__(self, path: str, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.path = path
        self.line = line
        self.column = column
        location = f":{line}:{column}" if line is not None else ""
        super().__init__(f"cannot parse {path}{location}: {message}")


class UnknownSelectorError(OperatorFrameError):
    """A verification selector names no module and no check tag."""

    def __init__(self, selector: str, known: List[str]):
        self.selector = selector
        self.known = list(known)
        super().__init__(f"unknown selector '{selector}'; choose 'all', a module or one of: {', '.join(self.known)}")
