"""
Exception hierarchy for flatbst.

Every concrete error also derives from ValueError so callers that only
guard against bad values keep working.
"""


class FlatBSTError(Exception):
    """Base class for all flatbst errors"""


class CapacityError(FlatBSTError, ValueError):
    """Requested tree size exceeds the 64-bit index space"""


class EmptyTreeError(FlatBSTError, ValueError):
    """Operation needs at least one node"""


class PreconditionError(FlatBSTError, ValueError):
    """Argument violates a documented precondition"""


class ParameterError(FlatBSTError, ValueError):
    """Invalid tuning parameter such as a worker count"""


class CorruptTreeError(FlatBSTError, ValueError):
    """Tree arrays do not describe a tree (cycle, bad index, wrong shape)"""


class LocalityError(FlatBSTError, ValueError):
    """A missing-node edge lies off the ascending path from the last node"""


class InputFormatError(FlatBSTError, ValueError):
    """Input file could not be parsed"""


class UnsortedInputError(FlatBSTError, ValueError):
    """Key file is not sorted in non-decreasing order"""

    def __init__(self, line: int, message: str = ""):
        self.line = line
        super().__init__(message or f"Input is not sorted at line {line}")
