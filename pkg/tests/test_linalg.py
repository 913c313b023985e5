import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liegal.errors import DimensionMismatchError, FieldMismatchError, InfiniteFieldError
from liegal.linalg import (
    Field,
    Matrix,
    Subspace,
    column_space,
    determinant,
    invert,
    kernel,
    rref,
    solve_linear,
    subspace_ops,
    vec_combination,
)

F5 = Field.prime(5)
F2 = Field.prime(2)
Q = Field.rationals()


def matrices(field, max_rows=4, max_cols=4, lo=-3, hi=3):
    """Random small matrices; entries are reduced by the field."""
    @st.composite
    def build(draw):
        r = draw(st.integers(1, max_rows))
        c = draw(st.integers(1, max_cols))
        entries = draw(st.lists(st.integers(lo, hi), min_size=r * c, max_size=r * c))
        return Matrix(field, r, c, field.normalize(entries) if field.is_finite else tuple(Fraction(e) for e in entries))
    return build()


# ── fields ───────────────────────────────────────────────────────────────────
def test_parse_fields():
    assert Field.parse("Q") == Q
    assert Field.parse("F5") == F5
    assert Field.parse("F_5") == F5
    assert str(F5) == "F5"
    with pytest.raises(ValueError):
        Field.parse("F4")
    with pytest.raises(ValueError):
        Field.parse("R")


def test_prime_arithmetic():
    assert F5.add(3, 4) == 2
    assert F5.mul(3, 4) == 2
    assert F5.inv(2) == 3
    assert F5.neg(1) == 4
    assert F5.coerce(-1) == 4
    assert F5.coerce(Fraction(1, 2)) == 3
    assert F5.power(2, 4) == 1
    with pytest.raises(ZeroDivisionError):
        F5.inv(0)


def test_rationals_are_reduced():
    x = Q.parse_scalar("6/4")
    assert x == Fraction(3, 2)
    assert Q.parse_scalar("-3") == -3
    assert Q.div(Q.one, Q.coerce(3)) == Fraction(1, 3)


def test_prime_scalars_are_decimal_residues():
    assert F5.parse_scalar("7") == 2
    with pytest.raises(ValueError):
        F5.parse_scalar("1/2")


def test_enumeration_needs_a_finite_field():
    assert list(F5.units()) == [1, 2, 3, 4]
    with pytest.raises(InfiniteFieldError):
        list(Q.elements())


def test_scalar_operators():
    a, b = F5(3), F5(4)
    assert (a + b).value == 2
    assert (a * b).value == 2
    assert (a / b).value == 2
    assert (-a).value == 2
    with pytest.raises(FieldMismatchError):
        F5.coerce(Field.prime(7)(1))


# ── matrices ─────────────────────────────────────────────────────────────────
def test_matrix_basics():
    A = Matrix.from_rows(Q, [[1, 2], [3, 4]])
    assert A[0, 1] == 2
    assert A.column(0) == (1, 3)
    assert A.apply((1, 1)) == (3, 7)
    assert (A @ Matrix.identity(Q, 2)) == A
    assert A.transpose().row(0) == (1, 3)
    assert determinant(A) == -2
    with pytest.raises(DimensionMismatchError):
        A @ Matrix.zeros(Q, 3, 1)


def test_invert_and_singular():
    A = Matrix.from_rows(F5, [[1, 2], [3, 4]])
    assert (A @ invert(A)).is_identity()
    assert invert(Matrix.from_rows(F5, [[1, 2], [2, 4]])) is None


def test_solve_inconsistent_returns_none():
    A = Matrix.from_rows(Q, [[1, 1], [1, 1]])
    B = Matrix.from_rows(Q, [[1], [2]])
    assert solve_linear(A, B) is None


def test_kernel_of_rank_one():
    A = Matrix.from_rows(Q, [[1, 2, 3]])
    K = kernel(A)
    assert K.dim == 2
    assert all(A.apply(v) == (0,) for v in K.basis)


# ── subspaces ────────────────────────────────────────────────────────────────
def test_subspace_membership_and_coordinates():
    S = Subspace.span(Q, 3, [(1, 1, 0), (0, 1, 1)])
    assert S.contains((1, 2, 1))
    assert not S.contains((0, 0, 1))
    c = S.coordinates((2, 3, 1))
    assert vec_combination(Q, c, S.basis, 3) == (2, 3, 1)


def test_subspace_ops():
    U = Subspace.span(F5, 3, [(1, 0, 0), (0, 1, 0)])
    W = Subspace.span(F5, 3, [(0, 1, 0), (0, 0, 1)])
    rep = subspace_ops(U, W)
    assert rep.sum.dim == 3
    assert rep.intersection == Subspace.span(F5, 3, [(0, 1, 0)])
    assert not rep.equal and not rep.first_in_second


def test_complement_and_image():
    S = Subspace.span(Q, 3, [(1, 1, 0)])
    comp = S.complement_basis()
    assert len(comp) == 2
    assert (S + Subspace.span(Q, 3, comp)).dim == 3
    P = Matrix.from_rows(Q, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert S.image(P) == S


# ── properties ───────────────────────────────────────────────────────────────
@given(matrices(F5))
def test_rref_is_idempotent(A):
    S, rank = rref(A)
    S2, rank2 = rref(S.basis_matrix()) if S.dim else (S, 0)
    assert S2 == S and rank2 == rank


@given(matrices(Q))
def test_rank_nullity(A):
    _, rank = rref(A)
    assert rank + kernel(A).dim == A.cols
    assert column_space(A).dim == rank


@given(matrices(F5), st.lists(st.integers(0, 4), min_size=4, max_size=4))
def test_solve_substitution(A, xs):
    x = F5.normalize(xs[: A.cols])
    b = Matrix(F5, A.rows, 1, A.apply(x))
    sol = solve_linear(A, b)
    assert sol is not None
    assert A @ sol.particular == b
    assert sol.contains(Matrix(F5, A.cols, 1, x))


@settings(max_examples=40)
@given(matrices(F2, max_rows=3, max_cols=3))
def test_membership_matches_enumeration(A):
    S = column_space(A)
    span = {
        vec_combination(F2, coeffs, A.columns(), A.rows)
        for coeffs in itertools.product(range(2), repeat=A.cols)
    }
    for v in itertools.product(range(2), repeat=A.rows):
        assert S.contains(v) == (v in span)
