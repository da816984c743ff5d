"""Exception hierarchy.

Every error carries the process exit code the command line front end uses
for it, so callers never need a lookup table.
"""


class DirloudError(Exception):
    exit_code = 5


class UsageError(DirloudError):
    exit_code = 2


class InputFormatError(DirloudError):
    exit_code = 3


class MismatchError(DirloudError):
    exit_code = 4


class NotStereo(InputFormatError):
    pass


class UnsupportedRate(InputFormatError):
    pass


class UnsupportedEncoding(InputFormatError):
    pass


class CorruptFile(InputFormatError):
    pass


class InputTooShort(InputFormatError):
    pass


class RateMismatch(MismatchError):
    pass


class ShapeMismatch(MismatchError):
    pass


class ParameterMismatch(MismatchError):
    pass


class InfeasiblePartition(UsageError):
    pass


class EmptySubset(UsageError):
    pass


class BadInterval(UsageError):
    pass


class DegenerateInput(DirloudError):
    pass
