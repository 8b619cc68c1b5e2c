"""Exception hierarchy.

Every error carries the CLI exit code it maps to: 2 for domain validation
failures, 3 for spec-file parse failures, 1 for internal invariant
violations (a theorem that should hold did not).
"""

from __future__ import annotations


class CycleError(Exception):
    exit_code = 2


class DomainError(CycleError, ValueError):
    pass


class ZeroDenominator(DomainError, ZeroDivisionError):
    pass


class NotCoprime(DomainError):
    pass


class BadModulus(DomainError):
    pass


class BadArgument(DomainError):
    pass


class ValidationError(DomainError):
    pass


class BadRange(DomainError):
    pass


class NotTwoType(DomainError):
    pass


class DegenerateCycle(DomainError):
    pass


class BadB(DomainError):
    pass


class ZeroCoefficient(DomainError):
    pass


class NotCertified(DomainError):
    pass


class NoValidB(DomainError):
    pass


class BaseNotCoprime(DomainError):
    pass


class BadBase(DomainError):
    pass


class NoPeriodWithinBound(DomainError):
    pass


class WraparoundUnsupported(DomainError):
    pass


class ParseError(CycleError):
    exit_code = 3

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class InvariantViolation(CycleError, AssertionError):
    exit_code = 1


class NotInteger(InvariantViolation):
    pass
