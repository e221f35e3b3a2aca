"""Exception kinds shared by every module.

Verification outcomes ("the mathematics says no") are returned as values;
these exceptions are reserved for misuse, broken preconditions and bugs.
"""


class LabError(RuntimeError):
    """Root of every error raised by cremona_lab."""


class StructuralError(LabError, ValueError):
    """Variable lists, lengths or dimensions do not line up."""


class DomainError(LabError, ValueError):
    """A mathematical precondition of the operation is violated."""


class GenericityError(LabError):
    """Randomised trials disagree; widen the coefficient range or change the seed."""


class InternalError(LabError):
    """A post-condition guaranteed by the theory failed to hold."""


class CatalogError(LabError):
    """Shipped catalog data is malformed."""


class InputError(LabError, ValueError):
    """Malformed user input. ``field`` names the offending location."""

    def __init__(self, message: str, field: str = ""):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)
