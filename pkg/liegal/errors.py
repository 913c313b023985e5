"""
liegal.errors – Exception hierarchy
===================================

Every failure the library raises on purpose derives from ``LieGalError``
and from the builtin that best describes it: bad input is a ``ValueError``,
a computation that cannot be carried out is a ``RuntimeError``.  Results
that are ordinary answers (a singular matrix, an inconsistent system, a
failed membership test) are *returned*, never raised.

``EXIT_CODES`` maps each class onto the status ``run.py`` exits with.
"""
from __future__ import annotations

from typing import Optional, Sequence


class LieGalError(Exception):
    """Base class for all liegal errors."""


# ---------------------------------------------------------------------------
# Invalid input
# ---------------------------------------------------------------------------
class FieldMismatchError(LieGalError, ValueError):
    pass


class DimensionMismatchError(LieGalError, ValueError):
    pass


class BracketTableError(LieGalError, ValueError):
    """Duplicate, out-of-range or diagonal entry in a bracket table."""


class JacobiViolation(LieGalError, ValueError):
    """The bracket table fails the Jacobi identity on a basis triple."""

    def __init__(self, triple: tuple[int, int, int], jacobiator: Sequence, names: Sequence[str] = ()):
        self.triple = triple
        self.jacobiator = tuple(jacobiator)
        labels = [names[i] if names else f"e{i + 1}" for i in triple]
        terms = " + ".join(
            f"{c}*{names[k] if names else f'e{k + 1}'}" for k, c in enumerate(self.jacobiator) if c != 0
        )
        super().__init__(f"Jacobi identity fails on ({', '.join(labels)}): jacobiator = {terms}")


class NotASubalgebraError(LieGalError, ValueError):
    pass


class ExtendingAxiomError(LieGalError, ValueError):
    """An extending datum fails one of its compatibility axioms."""

    def __init__(self, axiom: str, indices: tuple[int, ...], residual: Sequence = ()):
        self.axiom = axiom
        self.indices = indices
        self.residual = tuple(residual)
        super().__init__(f"axiom {axiom} fails on basis tuple {indices}: residual {list(self.residual)}")


class TwistedDerivationError(LieGalError, ValueError):
    pass


class GaloisAdmissionError(LieGalError, ValueError):
    """A pair (sigma, r) does not satisfy the Galois compatibilities."""

    def __init__(self, axiom: str, indices: tuple[int, ...]):
        self.axiom = axiom
        self.indices = indices
        super().__init__(f"pair is not admissible: {axiom} fails on {indices}")


class PreconditionError(LieGalError, ValueError):
    """A named structural precondition (cyclic, gamma-abelian, …) is unmet."""

    def __init__(self, precondition: str, detail: Optional[str] = None):
        self.precondition = precondition
        msg = f"precondition not met: {precondition}"
        super().__init__(f"{msg} ({detail})" if detail else msg)


class RadicalChainError(LieGalError, ValueError):
    pass


class AlgebraFileError(LieGalError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


# ---------------------------------------------------------------------------
# Infeasible computations
# ---------------------------------------------------------------------------
class InfiniteFieldError(LieGalError, RuntimeError):
    """Enumeration was requested over Q."""


class BudgetExceededError(LieGalError, RuntimeError):
    def __init__(self, count: int, budget: int, what: str = "candidates"):
        self.count = count
        self.budget = budget
        super().__init__(f"{count} {what} exceed the budget of {budget}")


class ModularCaseError(LieGalError, RuntimeError):
    """|G| is divisible by the characteristic; no Reynolds operator exists."""


class GroupClosureError(LieGalError, RuntimeError):
    """An element list is not closed under its multiplication."""


class GroupTooLargeError(LieGalError, RuntimeError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"group closure exceeded {cap} elements")


# ── CLI exit statuses ────────────────────────────────────────────────────────
EXIT_OK = 0
EXIT_VERDICT_FALSE = 1
EXIT_INVALID_INPUT = 2

EXIT_CODES: dict[type, int] = {
    BudgetExceededError: 3,
    ModularCaseError: 4,
    InfiniteFieldError: 5,
    GroupTooLargeError: 6,
    PreconditionError: 7,
}


def exit_code_for(exc: BaseException) -> int:
    """Return the CLI status for *exc* (most specific class wins)."""
    for cls in type(exc).__mro__:
        if cls in EXIT_CODES:
            return EXIT_CODES[cls]
    return EXIT_INVALID_INPUT
