"""
liegal.lie – Lie algebras by structure constants
================================================

A ``LieAlgebra`` is a basis of size *n* over a ``Field`` together with the
brackets ``[e_i, e_j]`` for ``i < j``; antisymmetry fills in the rest.  The
constructor refuses tables that break the Jacobi identity, so every
``LieAlgebra`` in circulation is a genuine Lie algebra.

The module also carries the basic linear solvers on top of an algebra:
center, centralizers, derived and lower central series, the derivation
space with its inner part, and automorphism / morphism tests.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from liegal import config
from liegal.errors import (
    BracketTableError,
    BudgetExceededError,
    DimensionMismatchError,
    FieldMismatchError,
    InfiniteFieldError,
    JacobiViolation,
    NotASubalgebraError,
)
from liegal.linalg import (
    Field,
    Matrix,
    Subspace,
    Vector,
    invert,
    is_zero_vector,
    kernel,
    solve_linear,
    unit_vector,
    vec_combination,
    zero_vector,
)

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# The algebra type
# ---------------------------------------------------------------------------
class LieAlgebra:
    """Finite-dimensional Lie algebra over Q or F_p.

    Build one with :func:`make_lie_algebra`; the constructor validates the
    Jacobi identity and raises :class:`~liegal.errors.JacobiViolation`.
    """

    def __init__(
        self,
        field: Field,
        dim: int,
        structure: Mapping[tuple[int, int], Sequence],
        names: Optional[Sequence[str]] = None,
    ):
        if dim < 0:
            raise DimensionMismatchError(f"negative dimension {dim}")
        self.field = field
        self.dim = dim
        self.names: tuple[str, ...] = tuple(names) if names else tuple(f"e{i + 1}" for i in range(dim))
        if len(self.names) != dim:
            raise DimensionMismatchError(f"{len(self.names)} names for dimension {dim}")
        clean: dict[tuple[int, int], Vector] = {}
        for (i, j), vec in structure.items():
            if not (0 <= i < j < dim):
                raise BracketTableError(f"structure key ({i},{j}) must satisfy 0 <= i < j < {dim}")
            if len(vec) != dim:
                raise DimensionMismatchError(f"[{i},{j}] has {len(vec)} coefficients, expected {dim}")
            v = tuple(field.coerce(c) for c in vec)
            if not is_zero_vector(v):
                clean[(i, j)] = v
        self.structure: dict[tuple[int, int], Vector] = dict(sorted(clean.items()))
        # sparse table: _table[i][j] = ((k, c), ...) for [e_i, e_j]
        table: list[list[tuple]] = [[() for _ in range(dim)] for _ in range(dim)]
        for (i, j), v in self.structure.items():
            table[i][j] = tuple((k, c) for k, c in enumerate(v) if c != 0)
            table[j][i] = tuple((k, field.neg(c)) for k, c in enumerate(v) if c != 0)
        self._table = table
        self._check_jacobi()

    # ── basic access ─────────────────────────────────────────────────────
    def __repr__(self) -> str:
        return f"LieAlgebra({self.field}, dim={self.dim}, brackets={len(self.structure)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (self.field, self.dim, self.structure, self.names) == (
            other.field, other.dim, other.structure, other.names
        )

    def __hash__(self) -> int:
        return hash((self.field, self.dim, tuple(self.structure.items()), self.names))

    def same_structure(self, other: LieAlgebra) -> bool:
        """Equal structure constants, names ignored."""
        return (self.field, self.dim, self.structure) == (other.field, other.dim, other.structure)

    def unit(self, i: int) -> Vector:
        return unit_vector(self.field, self.dim, i)

    def zero(self) -> Vector:
        return zero_vector(self.field, self.dim)

    def basis_bracket(self, i: int, j: int) -> Vector:
        acc = [0] * self.dim
        for k, c in self._table[i][j]:
            acc[k] = c
        return self.field.normalize(acc)

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        """Bilinear extension of the structure constants."""
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatchError(f"bracket of vectors of length {len(x)}, {len(y)} in dim {self.dim}")
        acc = [0] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self._table[i]
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                for k, c in row[j]:
                    acc[k] += xi * yj * c
        return self.field.normalize(acc)

    def structure_tensor(self) -> list[list[Vector]]:
        """Dense ``T[i][j] = [e_i, e_j]`` with antisymmetry filled in."""
        return [[self.basis_bracket(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def brackets(self) -> Iterable[tuple[tuple[int, int], Vector]]:
        return self.structure.items()

    def with_names(self, names: Sequence[str]) -> LieAlgebra:
        return LieAlgebra(self.field, self.dim, self.structure, names)

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of ad_x = [x, -]."""
        return Matrix.from_columns(self.field, [self.bracket(x, self.unit(j)) for j in range(self.dim)], rows=self.dim)

    def format_vector(self, v: Sequence) -> str:
        terms = []
        for k, c in enumerate(v):
            if c == 0:
                continue
            coeff = self.field.format(c)
            terms.append(self.names[k] if coeff == "1" else f"{coeff}*{self.names[k]}")
        return " + ".join(terms) if terms else "0"

    # ── validation ───────────────────────────────────────────────────────
    def jacobiator(self, i: int, j: int, k: int) -> Vector:
        x, y, z = self.unit(i), self.unit(j), self.unit(k)
        terms = (
            self.bracket(x, self.bracket(y, z)),
            self.bracket(y, self.bracket(z, x)),
            self.bracket(z, self.bracket(x, y)),
        )
        return vec_combination(self.field, (1, 1, 1), terms, self.dim)

    def _check_jacobi(self) -> None:
        for i, j, k in itertools.combinations(range(self.dim), 3):
            jac = self.jacobiator(i, j, k)
            if not is_zero_vector(jac):
                raise JacobiViolation((i, j, k), jac, self.names)


def make_lie_algebra(
    field: Field,
    dim: int,
    entries: Iterable[tuple[tuple[int, int], Sequence]] | Mapping[tuple[int, int], Sequence],
    names: Optional[Sequence[str]] = None,
) -> LieAlgebra:
    """Build and validate a Lie algebra from bracket entries.

    Parameters
    ----------
    entries:
        ``((i, j), coeffs)`` pairs with 0-based ``i != j``; an entry for
        ``(j, i)`` is read as ``-coeffs`` for ``(i, j)``.  Giving the same
        unordered pair twice is an error.
    """
    items = entries.items() if isinstance(entries, Mapping) else entries
    table: dict[tuple[int, int], Vector] = {}
    for (i, j), coeffs in items:
        if i == j:
            raise BracketTableError(f"diagonal entry [{i + 1},{j + 1}] (brackets [x,x] are zero)")
        if not (0 <= i < dim and 0 <= j < dim):
            raise BracketTableError(f"index out of range in [{i + 1},{j + 1}] for dimension {dim}")
        if len(coeffs) != dim:
            raise DimensionMismatchError(f"[{i + 1},{j + 1}] has {len(coeffs)} coefficients, expected {dim}")
        key = (min(i, j), max(i, j))
        if key in table:
            raise BracketTableError(f"duplicate bracket [{key[0] + 1},{key[1] + 1}]")
        vec = tuple(field.coerce(c) for c in coeffs)
        table[key] = vec if i < j else tuple(field.neg(c) for c in vec)
    return LieAlgebra(field, dim, table, names)


def matrix_lie_algebra(field: Field, matrices: Sequence[Matrix], names: Optional[Sequence[str]] = None) -> LieAlgebra:
    """Lie algebra spanned by square matrices under the commutator.

    The matrices must be linearly independent and closed under [A,B] = AB - BA.
    """
    if not matrices:
        return make_lie_algebra(field, 0, {}, names)
    flat = [m.entries for m in matrices]
    B = Matrix.from_columns(field, flat)
    n = len(matrices)
    rhs = []
    pairs = list(itertools.combinations(range(n), 2))
    for i, j in pairs:
        a, b = matrices[i], matrices[j]
        rhs.append(((a @ b) - (b @ a)).entries)
    if not rhs:
        return make_lie_algebra(field, n, {}, names)
    sol = solve_linear(B, Matrix.from_columns(field, rhs, rows=B.rows))
    if sol is None:
        raise BracketTableError("the matrices do not span a Lie subalgebra of gl")
    if sol.kernel.dim:
        raise BracketTableError("the matrices are linearly dependent")
    entries = {pair: sol.particular.column(c) for c, pair in enumerate(pairs)}
    return make_lie_algebra(field, n, entries, names)


# ---------------------------------------------------------------------------
# Subspaces defined by the bracket
# ---------------------------------------------------------------------------
def bracket(L: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    return L.bracket(x, y)


def derived_subalgebra(L: LieAlgebra) -> Subspace:
    return Subspace.span(L.field, L.dim, L.structure.values())


def _bracket_image(L: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    return Subspace.span(L.field, L.dim, [L.bracket(a, b) for a in A.basis for b in B.basis])


def centralizer(L: LieAlgebra, S: Subspace) -> Subspace:
    """{x : [x, s] = 0 for every s in S}."""
    if S.ambient != L.dim:
        raise DimensionMismatchError(f"subspace of ambient {S.ambient} in an algebra of dim {L.dim}")
    if not S.basis:
        return Subspace.full(L.field, L.dim)
    rows: list[Vector] = []
    for s in S.basis:
        # column i of ad-rows: [e_i, s]
        cols = [L.bracket(L.unit(i), s) for i in range(L.dim)]
        rows.extend(Matrix.from_columns(L.field, cols, rows=L.dim).to_rows())
    return kernel(Matrix.from_rows(L.field, rows, cols=L.dim))


def center(L: LieAlgebra) -> Subspace:
    return centralizer(L, Subspace.full(L.field, L.dim))


def derived_series(L: LieAlgebra) -> list[Subspace]:
    """L = D0 ⊇ D1 ⊇ … until it stabilises (last entry repeats nothing)."""
    series = [Subspace.full(L.field, L.dim)]
    while True:
        nxt = _bracket_image(L, series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    full = Subspace.full(L.field, L.dim)
    series = [full]
    while True:
        nxt = _bracket_image(L, full, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def is_subalgebra(L: LieAlgebra, S: Subspace) -> bool:
    return all(S.contains(L.bracket(a, b)) for a, b in itertools.combinations(S.basis, 2))


def is_ideal(L: LieAlgebra, S: Subspace) -> bool:
    return all(S.contains(L.bracket(L.unit(i), s)) for i in range(L.dim) for s in S.basis)


def restrict(L: LieAlgebra, S: Subspace, names: Optional[Sequence[str]] = None) -> LieAlgebra:
    """The subalgebra S as a Lie algebra in its echelon basis."""
    entries = {}
    for a, b in itertools.combinations(range(S.dim), 2):
        coords = S.coordinates(L.bracket(S.basis[a], S.basis[b]))
        if coords is None:
            raise NotASubalgebraError(f"[{L.format_vector(S.basis[a])}, {L.format_vector(S.basis[b])}] leaves the subspace")
        entries[(a, b)] = coords
    if names is None:
        names = [L.names[p] if S.basis[k] == L.unit(p) else f"s{k + 1}" for k, p in enumerate(S.pivots)]
    return make_lie_algebra(L.field, S.dim, entries, names)


# ---------------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------------
def flatten(M: Matrix) -> Vector:
    """Row-major flattening; index a*n + b holds M[a, b]."""
    return M.entries


def unflatten(field: Field, n: int, v: Sequence) -> Matrix:
    return Matrix(field, n, n, tuple(field.coerce(x) for x in v))


def derivations(L: LieAlgebra) -> Subspace:
    """Der(L) as a subspace of k^(n*n) (row-major flattened matrices)."""
    n = L.dim
    T = L.structure_tensor()
    rows: list[list] = []
    for i, j in itertools.combinations(range(n), 2):
        cij = T[i][j]
        for c in range(n):
            row = [0] * (n * n)
            # D[e_i, e_j]_c
            for a in range(n):
                if cij[a] != 0:
                    row[c * n + a] += cij[a]
            # - [D e_i, e_j]_c - [e_i, D e_j]_c
            for a in range(n):
                t1 = T[a][j][c]
                if t1 != 0:
                    row[a * n + i] -= t1
                t2 = T[i][a][c]
                if t2 != 0:
                    row[a * n + j] -= t2
            rows.append(row)
    A = Matrix.from_rows(L.field, rows, cols=n * n) if rows else Matrix.zeros(L.field, 0, n * n)
    return kernel(A)


def is_derivation(L: LieAlgebra, D: Matrix) -> bool:
    for i, j in itertools.combinations(range(L.dim), 2):
        lhs = D.apply(L.basis_bracket(i, j))
        rhs = vec_combination(
            L.field, (1, 1), (L.bracket(D.column(i), L.unit(j)), L.bracket(L.unit(i), D.column(j))), L.dim
        )
        if lhs != rhs:
            return False
    return True


def inner_derivations(L: LieAlgebra) -> Subspace:
    return Subspace.span(L.field, L.dim * L.dim, [flatten(L.ad(L.unit(i))) for i in range(L.dim)])


def is_inner(L: LieAlgebra, D: Matrix) -> Optional[Vector]:
    """Return x with ad_x = D, or None if D is not inner."""
    n = L.dim
    if D.shape != (n, n):
        raise DimensionMismatchError(f"{D.shape} is not an endomorphism of a {n}-dim algebra")
    T = L.structure_tensor()
    # ad_x(e_j)_c = sum_i x_i T[i][j][c] = D[c, j]
    rows = [[T[i][j][c] for i in range(n)] for j in range(n) for c in range(n)]
    rhs = [[D[c, j]] for j in range(n) for c in range(n)]
    if not rows:
        return ()
    sol = solve_linear(Matrix.from_rows(L.field, rows, cols=n), Matrix.from_rows(L.field, rhs, cols=1))
    if sol is None:
        return None
    return sol.particular.column(0)


# ---------------------------------------------------------------------------
# Structural predicates
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class StructureReport:
    dim: int
    perfect: bool
    abelian: bool
    solvable: bool
    nilpotent: bool
    complete: bool
    sympathetic: bool
    center_dim: int
    derived_dims: tuple[int, ...]
    lower_central_dims: tuple[int, ...]
    derivation_dim: int
    inner_derivation_dim: int

    def as_dict(self) -> dict:
        return {
            "perfect": self.perfect,
            "abelian": self.abelian,
            "solvable": self.solvable,
            "nilpotent": self.nilpotent,
            "complete": self.complete,
            "sympathetic": self.sympathetic,
        }


def structural_predicates(L: LieAlgebra) -> StructureReport:
    """Perfect, abelian, solvable, nilpotent, complete and sympathetic flags.

    complete: trivial center and every derivation inner.
    sympathetic: complete and perfect.
    """
    derived = derived_series(L)
    lower = lower_central_series(L)
    z = center(L)
    der = derivations(L)
    inner = inner_derivations(L)
    perfect = derived_subalgebra(L).dim == L.dim
    complete = z.dim == 0 and der == inner
    log.debug("%r: center %d, Der %d, inner %d", L, z.dim, der.dim, inner.dim)
    return StructureReport(
        dim=L.dim,
        perfect=perfect,
        abelian=not L.structure,
        solvable=derived[-1].dim == 0,
        nilpotent=lower[-1].dim == 0,
        complete=complete,
        sympathetic=complete and perfect,
        center_dim=z.dim,
        derived_dims=tuple(s.dim for s in derived),
        lower_central_dims=tuple(s.dim for s in lower),
        derivation_dim=der.dim,
        inner_derivation_dim=inner.dim,
    )


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------
def is_lie_morphism(source: LieAlgebra, target: LieAlgebra, M: Matrix) -> bool:
    """M[x, y] = [Mx, My] on all basis pairs of *source*."""
    if source.field != target.field:
        raise FieldMismatchError(f"{source.field} vs {target.field}")
    if M.shape != (target.dim, source.dim):
        raise DimensionMismatchError(f"{M.shape} is not a map from dim {source.dim} to dim {target.dim}")
    cols = M.columns()
    for i, j in itertools.combinations(range(source.dim), 2):
        if M.apply(source.basis_bracket(i, j)) != target.bracket(cols[i], cols[j]):
            return False
    return True


def is_automorphism(L: LieAlgebra, M: Matrix) -> bool:
    if M.shape != (L.dim, L.dim):
        raise DimensionMismatchError(f"{M.shape} is not an endomorphism of a {L.dim}-dim algebra")
    return invert(M) is not None and is_lie_morphism(L, L, M)


def automorphism_group(L: LieAlgebra, *, budget: Optional[int] = None) -> list[Matrix]:
    """Every automorphism of L by exhaustive scan of k^(n*n).  Finite fields only."""
    f = L.field
    if not f.is_finite:
        raise InfiniteFieldError("automorphisms can only be enumerated over a finite field")
    budget = config.CANDIDATE_BUDGET if budget is None else budget
    count = f.p ** (L.dim * L.dim)
    if count > budget:
        raise BudgetExceededError(count, budget)
    found = []
    for entries in itertools.product(range(f.p), repeat=L.dim * L.dim):
        M = Matrix(f, L.dim, L.dim, entries)
        if is_automorphism(L, M):
            found.append(M)
    log.info("Aut of %r: %d elements from %d candidates", L, len(found), count)
    return found
