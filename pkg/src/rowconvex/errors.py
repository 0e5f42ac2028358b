"""Exception hierarchy.  Every error carries a short machine code for the CLI."""


class RowConvexError(Exception):
    code = "error"

    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness


class EmptyRow(RowConvexError):
    code = "EmptyRow"


class EmptyShape(RowConvexError):
    code = "EmptyShape"


class LengthMismatch(RowConvexError):
    code = "LengthMismatch"


class UnsortedColumnSegment(RowConvexError):
    code = "UnsortedColumnSegment"


class BadFlag(RowConvexError):
    code = "BadFlag"


class MissingPlace(RowConvexError):
    code = "MissingPlace"


class ZeroPolynomial(RowConvexError):
    code = "ZeroPolynomial"


class NotRowStandard(RowConvexError):
    code = "NotRowStandard"


class BadSpec(RowConvexError):
    code = "BadSpec"


class NonUnitPivot(RowConvexError):
    code = "NonUnitPivot"


class OracleMismatch(RowConvexError):
    code = "OracleMismatch"


class AlreadyStraight(RowConvexError):
    code = "AlreadyStraight"


class CertificateFailure(RowConvexError):
    code = "CertificateFailure"


class NotInModule(RowConvexError):
    code = "NotInModule"


class ShapeMismatch(RowConvexError):
    code = "ShapeMismatch"


class NotHomogeneous(RowConvexError):
    code = "NotHomogeneous"


class NotMember(RowConvexError):
    code = "NotMember"


class KindMismatch(RowConvexError):
    code = "KindMismatch"


class IdentityFailure(RowConvexError):
    code = "IdentityFailure"
