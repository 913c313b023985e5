import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liegal.catalog import aff, fivedim_perfect, gl, heisenberg, sl
from liegal.errors import BracketTableError, JacobiViolation, NotASubalgebraError
from liegal.lie import (
    automorphism_group,
    center,
    centralizer,
    derivations,
    derived_series,
    derived_subalgebra,
    inner_derivations,
    is_automorphism,
    is_derivation,
    is_ideal,
    is_inner,
    is_subalgebra,
    lower_central_series,
    make_lie_algebra,
    matrix_lie_algebra,
    restrict,
    structural_predicates,
    unflatten,
)
from liegal.linalg import Field, Matrix, Subspace

Q = Field.rationals()
F3 = Field.prime(3)
F5 = Field.prime(5)


def test_sl2_brackets(sl2_q):
    e1, e2, e3 = (sl2_q.unit(i) for i in range(3))
    assert sl2_q.bracket(e1, e2) == e3
    assert sl2_q.bracket(e1, e3) == (-2, 0, 0)
    assert sl2_q.bracket(e2, e3) == (0, 2, 0)
    assert sl2_q.bracket(e3, e1) == (2, 0, 0)


def test_jacobi_violation_names_the_triple():
    with pytest.raises(JacobiViolation) as exc:
        make_lie_algebra(Q, 3, {(0, 1): (0, 0, 1), (0, 2): (1, 0, 0), (1, 2): (0, 1, 0)})
    assert exc.value.triple == (0, 1, 2)
    assert exc.value.jacobiator == (0, 0, 2)


def test_bracket_table_guards():
    with pytest.raises(BracketTableError):
        make_lie_algebra(Q, 2, [((0, 1), (0, 1)), ((1, 0), (0, -1))])
    with pytest.raises(BracketTableError):
        make_lie_algebra(Q, 2, {(0, 0): (1, 0)})
    with pytest.raises(BracketTableError):
        make_lie_algebra(Q, 2, {(0, 2): (1, 0)})


def test_reversed_entry_is_negated():
    L = make_lie_algebra(Q, 2, {(1, 0): (0, -1)})
    assert L == aff(Q)


def test_matrix_algebra_matches_sl2():
    E12 = Matrix.from_rows(Q, [[0, 1], [0, 0]])
    E21 = Matrix.from_rows(Q, [[0, 0], [1, 0]])
    H = Matrix.from_rows(Q, [[1, 0], [0, -1]])
    assert matrix_lie_algebra(Q, [E12, E21, H]).same_structure(sl(Q, 2))


def test_derived_center_centralizer(h3_q):
    assert derived_subalgebra(h3_q) == Subspace.span(Q, 3, [(1, 0, 0)])
    assert center(h3_q).dim == 1
    x = Subspace.span(Q, 3, [(0, 1, 0)])
    assert centralizer(h3_q, x) == Subspace.span(Q, 3, [(1, 0, 0), (0, 1, 0)])
    assert [S.dim for S in lower_central_series(h3_q)] == [3, 1, 0]
    assert [S.dim for S in derived_series(aff(Q))] == [2, 1, 0]


def test_subalgebras_and_ideals(sl2_q):
    h = Subspace.span(Q, 3, [(0, 0, 1)])
    b = Subspace.span(Q, 3, [(1, 0, 0), (0, 0, 1)])
    assert is_subalgebra(sl2_q, h) and is_subalgebra(sl2_q, b)
    assert not is_ideal(sl2_q, b)
    assert not is_subalgebra(sl2_q, Subspace.span(Q, 3, [(1, 0, 0), (0, 1, 0)]))


def test_restrict_keeps_names_of_unit_vectors():
    L = heisenberg(Q, 2)
    sub = restrict(L, Subspace.span(Q, 5, [L.unit(i) for i in range(3)]))
    assert sub.names == ("w", "x1", "y1")
    assert sub.same_structure(heisenberg(Q, 1))
    with pytest.raises(NotASubalgebraError):
        restrict(sl(Q, 2), Subspace.span(Q, 3, [(1, 0, 0), (0, 1, 0)]))


def test_heisenberg_derivations(h3_q):
    der = derivations(h3_q)
    assert der.dim == 6
    assert inner_derivations(h3_q).dim == 2
    for v in der.basis:
        assert is_derivation(h3_q, unflatten(Q, 3, v))


def test_inner_witness(sl2_q):
    x = (1, 2, 3)
    D = sl2_q.ad(x)
    assert is_inner(sl2_q, D) == x
    # w -> w, x1 -> x1, y1 -> 0 is an outer derivation of h3
    D = Matrix.diagonal(Q, [1, 1, 0])
    assert is_derivation(heisenberg(Q, 1), D)
    assert is_inner(heisenberg(Q, 1), D) is None


def test_structural_predicates():
    s = structural_predicates(sl(Q, 2))
    assert s.perfect and s.complete and s.sympathetic and not s.solvable
    h = structural_predicates(heisenberg(Q, 1))
    assert h.nilpotent and h.solvable and not h.perfect and h.center_dim == 1
    a = structural_predicates(aff(Q))
    assert a.solvable and not a.nilpotent and a.complete


def test_fivedim_is_perfect_with_trivial_center():
    s = structural_predicates(fivedim_perfect(F3))
    assert s.perfect
    assert s.center_dim == 0


def test_gl_structure():
    s = structural_predicates(gl(Q, 2))
    assert s.center_dim == 1 and not s.perfect


def test_automorphisms_of_aff():
    auts = automorphism_group(aff(F3))
    # e1 -> e1 + b e2, e2 -> c e2 with c != 0
    assert len(auts) == 3 * 2
    assert all(is_automorphism(aff(F3), M) for M in auts)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=9, max_size=9))
def test_derivation_membership_matches_direct_check(entries):
    L = sl(F5, 2)
    D = Matrix(F5, 3, 3, F5.normalize(entries))
    assert derivations(L).contains(D.entries) == is_derivation(L, D)
