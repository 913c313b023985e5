"""
liegal.linalg – Exact scalars, dense matrices and canonical subspaces
=====================================================================

Two kinds of field are supported: the rationals (scalars are
``fractions.Fraction``) and prime fields F_p (scalars are ``int`` residues in
``[0, p)``).  Matrices and vectors carry these *raw* values directly; the
``Field`` object owns the arithmetic and the normal form, and ``Scalar`` wraps
a raw value for callers that want operator syntax.

Conventions
-----------
* A vector is a plain ``tuple`` of raw values.
* A ``Matrix`` acts on column vectors: column *j* is the image of basis
  vector *j*.
* A ``Subspace`` is stored by its reduced row-echelon basis, so two spans are
  equal exactly when their dataclasses compare equal.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from sympy import isprime

from liegal.errors import DimensionMismatchError, FieldMismatchError, InfiniteFieldError

log = logging.getLogger(__name__)

Raw = Union[int, Fraction]
Vector = tuple

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*([+-]?\d+))?\s*$")
_FIELD_RE = re.compile(r"^F_?(\d+)$")


# ---------------------------------------------------------------------------
# Fields and scalars
# ---------------------------------------------------------------------------
class FieldKind(str, Enum):
    RATIONALS = "Q"
    PRIME = "F"


@dataclass(frozen=True)
class Field:
    """The rationals or a prime field F_p with ``p < 2**31``."""

    kind: FieldKind
    p: int = 0

    def __post_init__(self):
        if self.kind is FieldKind.PRIME:
            if not (2 <= self.p < 2**31) or not isprime(self.p):
                raise ValueError(f"F{self.p}: the modulus must be a prime below 2^31")
        elif self.p != 0:
            raise ValueError("the rational field takes no modulus")

    # ── constructors ─────────────────────────────────────────────────────
    @classmethod
    def rationals(cls) -> Field:
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> Field:
        return cls(FieldKind.PRIME, int(p))

    @classmethod
    def parse(cls, text: str) -> Field:
        """Parse ``Q`` or ``F<p>`` (``F_p`` is accepted too)."""
        t = text.strip()
        if t in ("Q", "QQ"):
            return cls.rationals()
        m = _FIELD_RE.match(t)
        if not m:
            raise ValueError(f"unknown field {text!r} (expected Q or F<p>)")
        return cls.prime(int(m.group(1)))

    def __str__(self) -> str:
        return "Q" if self.kind is FieldKind.RATIONALS else f"F{self.p}"

    # ── properties ───────────────────────────────────────────────────────
    @property
    def is_finite(self) -> bool:
        return self.kind is FieldKind.PRIME

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> Optional[int]:
        return self.p if self.is_finite else None

    @property
    def zero(self) -> Raw:
        return 0 if self.is_finite else Fraction(0)

    @property
    def one(self) -> Raw:
        return 1 if self.is_finite else Fraction(1)

    # ── normal form ──────────────────────────────────────────────────────
    def coerce(self, value) -> Raw:
        """Bring *value* (int, Fraction, str or Scalar) into normal form."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"scalar over {value.field} used over {self}")
            return value.value
        if isinstance(value, str):
            return self.parse_scalar(value)
        if self.is_finite:
            if isinstance(value, Fraction):
                den = value.denominator % self.p
                if den == 0:
                    raise ZeroDivisionError(f"{value} has no image in {self}")
                return value.numerator * pow(den, -1, self.p) % self.p
            return int(value) % self.p
        return Fraction(value)

    def normalize(self, values: Iterable) -> Vector:
        """Normalize a sequence of raw ints/Fractions produced by plain arithmetic."""
        if self.is_finite:
            p = self.p
            return tuple(int(v) % p for v in values)
        return tuple(Fraction(v) for v in values)

    def parse_scalar(self, text: str) -> Raw:
        m = _RATIONAL_RE.match(text)
        if not m:
            raise ValueError(f"not a scalar over {self}: {text!r}")
        num, den = int(m.group(1)), int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        if self.is_finite and m.group(2):
            raise ValueError(f"scalars over {self} are decimal residues, got {text!r}")
        return self.coerce(Fraction(num, den))

    def format(self, value: Raw) -> str:
        return str(value)

    # ── arithmetic on raw values ─────────────────────────────────────────
    def add(self, a: Raw, b: Raw) -> Raw:
        return (a + b) % self.p if self.is_finite else a + b

    def sub(self, a: Raw, b: Raw) -> Raw:
        return (a - b) % self.p if self.is_finite else a - b

    def neg(self, a: Raw) -> Raw:
        return -a % self.p if self.is_finite else -a

    def mul(self, a: Raw, b: Raw) -> Raw:
        return a * b % self.p if self.is_finite else a * b

    def inv(self, a: Raw) -> Raw:
        if a == 0:
            raise ZeroDivisionError(f"0 is not invertible in {self}")
        return pow(a, -1, self.p) if self.is_finite else 1 / a

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    def power(self, a: Raw, k: int) -> Raw:
        if self.is_finite:
            return pow(a, k, self.p)
        return a**k

    def dot(self, u: Sequence[Raw], v: Sequence[Raw]) -> Raw:
        if self.is_finite:
            return sum(x * y for x, y in zip(u, v)) % self.p
        return sum((x * y for x, y in zip(u, v)), Fraction(0))

    # ── enumeration ──────────────────────────────────────────────────────
    def elements(self) -> Iterator[Raw]:
        if not self.is_finite:
            raise InfiniteFieldError("cannot enumerate the elements of Q")
        return iter(range(self.p))

    def units(self) -> Iterator[Raw]:
        if not self.is_finite:
            raise InfiniteFieldError("cannot enumerate the units of Q")
        return iter(range(1, self.p))

    def __call__(self, value) -> Scalar:
        return Scalar(self, value)


@dataclass(frozen=True)
class Scalar:
    """A field element with operator syntax.  Always in normal form."""

    field: Field
    value: Raw

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.coerce(self.value))

    def _raw(self, other) -> Raw:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._raw(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._raw(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._raw(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._raw(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._raw(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._raw(other), self.value))

    def inverse(self) -> Scalar:
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return self.field.format(self.value)


# ---------------------------------------------------------------------------
# Vectors
# ---------------------------------------------------------------------------
def zero_vector(field: Field, n: int) -> Vector:
    return (field.zero,) * n


def unit_vector(field: Field, n: int, i: int) -> Vector:
    v = [field.zero] * n
    v[i] = field.one
    return tuple(v)


def vec_add(field: Field, u: Vector, v: Vector) -> Vector:
    return field.normalize(a + b for a, b in zip(u, v))


def vec_sub(field: Field, u: Vector, v: Vector) -> Vector:
    return field.normalize(a - b for a, b in zip(u, v))


def vec_neg(field: Field, u: Vector) -> Vector:
    return field.normalize(-a for a in u)


def vec_scale(field: Field, c: Raw, u: Vector) -> Vector:
    return field.normalize(c * a for a in u)


def vec_combination(field: Field, coeffs: Sequence[Raw], vectors: Sequence[Vector], n: int) -> Vector:
    """Return sum(coeffs[i] * vectors[i]) in dimension *n*."""
    acc = [0] * n
    for c, v in zip(coeffs, vectors):
        if c == 0:
            continue
        for k, x in enumerate(v):
            if x != 0:
                acc[k] += c * x
    return field.normalize(acc)


def is_zero_vector(u: Vector) -> bool:
    return all(x == 0 for x in u)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Matrix:
    """Dense ``rows x cols`` matrix of raw values in row-major order."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    # ── constructors ─────────────────────────────────────────────────────
    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: Optional[int] = None) -> Matrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else (cols or 0)
        if cols is not None and rows and ncols != cols:
            raise DimensionMismatchError(f"expected {cols} columns, got {ncols}")
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatchError("ragged rows")
        return cls(field, len(rows), ncols, tuple(field.coerce(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: Optional[int] = None) -> Matrix:
        columns = [list(c) for c in columns]
        nrows = len(columns[0]) if columns else (rows or 0)
        if any(len(c) != nrows for c in columns):
            raise DimensionMismatchError("ragged columns")
        entries = tuple(field.coerce(columns[j][i]) for i in range(nrows) for j in range(len(columns)))
        return cls(field, nrows, len(columns), entries)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> Matrix:
        return cls(field, rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        return cls(field, n, n, tuple(field.one if i == j else field.zero for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, field: Field, values: Sequence) -> Matrix:
        n = len(values)
        vals = [field.coerce(v) for v in values]
        return cls(field, n, n, tuple(vals[i] if i == j else field.zero for i in range(n) for j in range(n)))

    # ── access ───────────────────────────────────────────────────────────
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Raw:
        i, j = ij
        return self.entries[i * self.cols + j]

    def scalar(self, i: int, j: int) -> Scalar:
        return Scalar(self.field, self[i, j])

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> Matrix:
        return Matrix.from_rows(self.field, [self.row(i)[c0:c1] for i in range(r0, r1)], cols=c1 - c0)

    # ── arithmetic ───────────────────────────────────────────────────────
    def _check(self, other: Matrix) -> None:
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"{self.shape} + {other.shape}")
        return Matrix(self.field, self.rows, self.cols, vec_add(self.field, self.entries, other.entries))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"{self.shape} - {other.shape}")
        return Matrix(self.field, self.rows, self.cols, vec_sub(self.field, self.entries, other.entries))

    def __neg__(self) -> Matrix:
        return Matrix(self.field, self.rows, self.cols, vec_neg(self.field, self.entries))

    def scale(self, c) -> Matrix:
        return Matrix(self.field, self.rows, self.cols, vec_scale(self.field, self.field.coerce(c), self.entries))

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.rows:
            raise DimensionMismatchError(f"{self.shape} @ {other.shape}")
        cols = other.columns()
        f = self.field
        entries = tuple(f.dot(self.row(i), c) for i in range(self.rows) for c in cols)
        return Matrix(f, self.rows, other.cols, entries)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatchError(f"{self.shape} applied to a vector of length {len(v)}")
        return tuple(self.field.dot(self.row(i), v) for i in range(self.rows))

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.cols, self.rows, tuple(x for c in self.columns() for x in c))

    def hstack(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.rows != other.rows:
            raise DimensionMismatchError("hstack needs equal row counts")
        rows = [self.row(i) + other.row(i) for i in range(self.rows)]
        return Matrix(self.field, self.rows, self.cols + other.cols, tuple(x for r in rows for x in r))

    def vstack(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.cols:
            raise DimensionMismatchError("vstack needs equal column counts")
        return Matrix(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)

    def is_zero(self) -> bool:
        return is_zero_vector(self.entries)

    def is_identity(self) -> bool:
        return self.is_square and self == Matrix.identity(self.field, self.rows)

    def __str__(self) -> str:
        fmt = self.field.format
        return "\n".join("[" + " ".join(fmt(x) for x in self.row(i)) + "]" for i in range(self.rows))


# ---------------------------------------------------------------------------
# Row reduction
# ---------------------------------------------------------------------------
def _echelon(field: Field, rows: list[list[Raw]], pivot_cols: int) -> tuple[list[list[Raw]], list[int]]:
    """Gauss-Jordan reduce *rows* in place, choosing pivots among the first
    *pivot_cols* columns.  Returns all rows (pivot rows first) and the pivots."""
    pivots: list[int] = []
    r = 0
    for c in range(pivot_cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        lead = rows[r]
        for i in range(len(rows)):
            f = rows[i][c]
            if i != r and f != 0:
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], lead)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``field**ambient`` kept in reduced row-echelon form."""

    field: Field
    ambient: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, field: Field, ambient: int, vectors: Iterable[Sequence]) -> Subspace:
        rows = []
        for v in vectors:
            if len(v) != ambient:
                raise DimensionMismatchError(f"vector of length {len(v)} in ambient dimension {ambient}")
            rows.append([field.coerce(x) for x in v])
        reduced, pivots = _echelon(field, rows, ambient)
        basis = tuple(tuple(reduced[i]) for i in range(len(pivots)))
        return cls(field, ambient, basis, tuple(pivots))

    @classmethod
    def zero(cls, field: Field, ambient: int) -> Subspace:
        return cls(field, ambient, (), ())

    @classmethod
    def full(cls, field: Field, ambient: int) -> Subspace:
        return cls.span(field, ambient, [unit_vector(field, ambient, i) for i in range(ambient)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> Matrix:
        """Basis vectors as the *rows* of a ``dim x ambient`` matrix."""
        return Matrix.from_rows(self.field, self.basis, cols=self.ambient)

    def coordinates(self, v: Sequence) -> Optional[Vector]:
        """Coordinates of *v* in the echelon basis, or None if v is not in the span."""
        if len(v) != self.ambient:
            raise DimensionMismatchError(f"vector of length {len(v)} in ambient dimension {self.ambient}")
        v = self.field.normalize(v)
        coords = tuple(v[p] for p in self.pivots)
        if vec_combination(self.field, coords, self.basis, self.ambient) != v:
            return None
        return coords

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    __contains__ = contains

    def _check(self, other: Subspace) -> None:
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if other.ambient != self.ambient:
            raise DimensionMismatchError(f"ambient {self.ambient} vs {other.ambient}")

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(self.field, self.ambient, self.basis + other.basis)

    def intersection(self, other: Subspace) -> Subspace:
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient)
        # (a, b) with sum a_i u_i = sum b_j w_j
        cols = list(self.basis) + [vec_neg(self.field, w) for w in other.basis]
        ker = kernel(Matrix.from_columns(self.field, cols, rows=self.ambient))
        vectors = [vec_combination(self.field, k[:self.dim], self.basis, self.ambient) for k in ker.basis]
        return Subspace.span(self.field, self.ambient, vectors)

    def is_subspace_of(self, other: Subspace) -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    def complement_basis(self) -> list[Vector]:
        """Standard basis vectors at the non-pivot positions (greedy completion)."""
        piv = set(self.pivots)
        return [unit_vector(self.field, self.ambient, i) for i in range(self.ambient) if i not in piv]

    def image(self, M: Matrix) -> Subspace:
        return Subspace.span(self.field, M.rows, [M.apply(b) for b in self.basis])


def rref(A: Matrix) -> tuple[Subspace, int]:
    """Row space of *A* in canonical form, and the rank."""
    S = Subspace.span(A.field, A.cols, A.to_rows())
    return S, S.dim


def kernel(A: Matrix) -> Subspace:
    """Null space {x : A x = 0} as a subspace of ``field**A.cols``."""
    sol = solve_linear(A, Matrix.zeros(A.field, A.rows, 0))
    return sol.kernel


def column_space(A: Matrix) -> Subspace:
    return Subspace.span(A.field, A.rows, A.columns())


@dataclass(frozen=True)
class LinearSolution:
    """All X with A X = B: ``particular`` plus any matrix whose columns lie in ``kernel``."""

    particular: Matrix
    kernel: Subspace

    def contains(self, X: Matrix) -> bool:
        diff = X - self.particular
        return all(self.kernel.contains(c) for c in diff.columns())


def solve_linear(A: Matrix, B: Matrix) -> Optional[LinearSolution]:
    """Solve A X = B exactly.  Returns None when the system is inconsistent."""
    if A.field != B.field:
        raise FieldMismatchError(f"{A.field} vs {B.field}")
    if A.rows != B.rows:
        raise DimensionMismatchError(f"A has {A.rows} rows, B has {B.rows}")
    f = A.field
    rows = [list(A.row(i)) + list(B.row(i)) for i in range(A.rows)]
    rows, pivots = _echelon(f, rows, A.cols)
    rank = len(pivots)
    for r in rows[rank:]:
        if any(x != 0 for x in r[A.cols:]):
            return None
    part = [[f.zero] * B.cols for _ in range(A.cols)]
    for i, c in enumerate(pivots):
        part[c] = list(rows[i][A.cols:])
    free = [c for c in range(A.cols) if c not in set(pivots)]
    null = []
    for fc in free:
        v = [f.zero] * A.cols
        v[fc] = f.one
        for i, c in enumerate(pivots):
            v[c] = f.neg(rows[i][fc])
        null.append(v)
    particular = Matrix.from_rows(f, part, cols=B.cols) if A.cols else Matrix.zeros(f, 0, B.cols)
    return LinearSolution(particular, Subspace.span(f, A.cols, null))


def invert(A: Matrix) -> Optional[Matrix]:
    """Inverse of a square matrix, or None if it is singular."""
    if not A.is_square:
        raise DimensionMismatchError(f"cannot invert a {A.rows}x{A.cols} matrix")
    n = A.rows
    f = A.field
    rows = [list(A.row(i)) + list(unit_vector(f, n, i)) for i in range(n)]
    rows, pivots = _echelon(f, rows, n)
    if len(pivots) < n:
        return None
    return Matrix.from_rows(f, [r[n:] for r in rows], cols=n)


def determinant(A: Matrix) -> Raw:
    if not A.is_square:
        raise DimensionMismatchError("determinant of a non-square matrix")
    f = A.field
    rows = [list(A.row(i)) for i in range(A.rows)]
    det = f.one
    for c in range(A.rows):
        piv = next((i for i in range(c, A.rows) if rows[i][c] != 0), None)
        if piv is None:
            return f.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = f.neg(det)
        det = f.mul(det, rows[c][c])
        inv = f.inv(rows[c][c])
        for i in range(c + 1, A.rows):
            factor = f.mul(rows[i][c], inv)
            if factor != 0:
                rows[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[i], rows[c])]
    return det


# ---------------------------------------------------------------------------
# Subspace comparison
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class SubspaceReport:
    sum: Subspace
    intersection: Subspace
    equal: bool
    first_in_second: bool
    second_in_first: bool


def subspace_ops(U: Subspace, W: Subspace) -> SubspaceReport:
    """Sum, intersection, equality and containment of two subspaces."""
    return SubspaceReport(
        sum=U + W,
        intersection=U.intersection(W),
        equal=U == W,
        first_in_second=U.is_subspace_of(W),
        second_in_first=W.is_subspace_of(U),
    )
