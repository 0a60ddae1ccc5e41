#!/usr/bin/env python3
"""
FFL Error Types
One exception class per failure the library can report, all sharing a code
"""


class FFLError(Exception):
    """Base error: carries a short code name and a human readable message"""

    code = "FFLError"

    def __init__(self, message=None):
        self.message = message or "found an error"
        super().__init__(self.message)

    def __str__(self):
        return f"{self.code}: {self.message}"


class NonPrimeP(FFLError):
    code = "NonPrimeP"


class ReducibleModulus(FFLError):
    code = "ReducibleModulus"


class NoDefaultModulus(FFLError):
    code = "NoDefaultModulus"


class ZeroPolynomial(FFLError):
    code = "ZeroPolynomial"


class IncompatibleContexts(FFLError):
    code = "IncompatibleContexts"


class NonSquare(FFLError):
    code = "NonSquare"


class NotMonic(FFLError):
    code = "NotMonic"


class UnknownVariable(FFLError):
    code = "UnknownVariable"


class NegativePrecision(FFLError):
    code = "NegativePrecision"


class NotInvertible(FFLError):
    code = "NotInvertible"


class ZeroTail(FFLError):
    code = "ZeroTail"


class ReducibleF(FFLError):
    code = "ReducibleF"


class StructureViolation(FFLError):
    """Raised when a proven structural property fails: always a bug"""
    code = "StructureViolation"


class DegreeOutOfTable(FFLError):
    code = "DegreeOutOfTable"


class TableTooSmall(FFLError):
    code = "TableTooSmall"


class NZero(FFLError):
    code = "NZero"


class NotApplicable(FFLError):
    code = "NotApplicable"


class TermBudgetExceeded(FFLError):
    code = "TermBudgetExceeded"


class ParseError(FFLError):
    code = "ParseError"


class UsageError(FFLError):
    code = "UsageError"
