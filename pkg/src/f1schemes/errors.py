"""Exception hierarchy shared by all f1schemes modules."""


class F1Error(Exception):
    """Base class for all domain errors raised by this package."""


class UnsupportedInstanceError(F1Error):
    """The requested operation is not decidable / not implemented for this
    combination of monoid or scheme instances."""


class ElementError(F1Error):
    """An element does not belong to the monoid it was used with."""


class GluingError(F1Error):
    """Gluing data is inconsistent (non-open overlap, cocycle failure, ...)."""


class RankDefectError(F1Error):
    """A sheaf expected to be locally free of rank one is not."""


class DslError(F1Error):
    """Syntax or resolution error in a DSL document.  Carries a source span."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{line}:{col}: {message}"
        super().__init__(message)
