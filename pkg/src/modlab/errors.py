"""Exception types shared across the package."""


class ModlabError(Exception):
    """Base class for all errors raised by this package."""


class AxiomViolation(ModlabError):
    """A structure failed one of its defining axioms.

    Carries the name of the failed axiom and a concrete witness (usually a
    tuple of element indices) so the failure can be replayed by hand.
    """

    def __init__(self, axiom, witness=None, message=None):
        self.axiom = axiom
        self.witness = witness
        text = message or f"axiom violated: {axiom}"
        if witness is not None:
            text += f" (witness: {witness})"
        super().__init__(text)


class SizeCapExceeded(ModlabError):
    """A construction or scan would exceed the configured size cap."""


class RingMismatch(ModlabError):
    """Two objects over different rings were combined."""


class NotFullyInvariant(ModlabError):
    """A submodule required to be fully invariant is not."""


class InternalInconsistency(ModlabError):
    """Independently computed routes to the same verdict disagree.

    This never reflects a mathematical fact; it signals an implementation
    bug and is the only error class that fails a CLI run outright.
    """


class JobParseError(ModlabError):
    """A job document failed to parse or resolve."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", column {column}" if column else "")
        super().__init__(f"{message}{where}")
