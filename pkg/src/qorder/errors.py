"""Exception hierarchy shared by every module."""


class QorderError(Exception):
    """Base class for all library errors."""


class ParseError(QorderError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class AxiomError(QorderError):
    """A quantale table violates an axiom.

    ``kind`` is one of ``not-a-lattice``, ``unit-failure``,
    ``non-associative``, ``non-distributive``, ``trivial``.
    """

    def __init__(self, kind, detail):
        self.kind = kind
        self.detail = detail
        super().__init__(f"{kind}: {detail}")


class UnsupportedSize(QorderError):
    pass


class SizeCap(QorderError):
    pass


class DimensionMismatch(QorderError, ValueError):
    pass


class EntryOutOfDiagonal(QorderError):
    def __init__(self, x, y, value, allowed):
        self.x, self.y, self.value, self.allowed = x, y, value, allowed
        super().__init__(
            f"entry ({x}, {y}) = {value} is not in the diagonal set {{{', '.join(allowed)}}}"
        )


class PreorderError(QorderError):
    """Base for the three preorder axiom failures; ``witness`` is a label tuple."""

    axiom = ""

    def __init__(self, witness, detail=""):
        self.witness = witness
        msg = f"{self.axiom} fails at {witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotInDiagonal(PreorderError):
    axiom = "divisibility"


class NotReflexive(PreorderError):
    axiom = "reflexivity"


class NotTransitive(PreorderError):
    axiom = "transitivity"


class InvalidMap(QorderError):
    pass


class NotHoehlePreorder(QorderError):
    def __init__(self, witness, detail):
        self.witness = witness
        super().__init__(f"not a Q-valued preorder at {witness}: {detail}")


class InvalidScalar(QorderError, ValueError):
    pass


class NotAdjoint(QorderError):
    pass


class NotClosed(QorderError):
    """A value vector is not a potential lower (or upper) Q-subset."""

    def __init__(self, witness, detail):
        self.witness = witness
        super().__init__(f"not closed at {witness}: {detail}")
