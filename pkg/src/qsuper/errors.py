"""Typed errors shared across the package.

The CLI maps these onto exit codes: parameter/usage problems exit 2,
verification failures exit 1, exhausted budgets exit 3.
"""


class QSuperError(Exception):
    """Base class for all package errors."""


class ParityError(QSuperError):
    """An index violates an integrality/parity precondition."""


class DomainError(QSuperError):
    """Arguments lie outside the domain an operation is defined on."""


class BudgetError(QSuperError):
    """A configurable enumeration or escalation budget was exhausted."""


class ConvergenceError(QSuperError):
    """A truncated-series limit failed to stabilise within its budget."""


class SupportError(QSuperError):
    """A fermionic sum has unbounded support; the value is not a polynomial."""
