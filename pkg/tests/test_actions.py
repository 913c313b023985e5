import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liegal.actions import (
    artin_reconstruct,
    close_group,
    conjugation_matrix,
    cyclic_structure,
    fixed_point_galois_pairs,
    gamma_abelian_check,
    gamma_part,
    grading_action,
    hilbert90_check,
    invariants,
    permutation_conjugation,
    permutation_matrix,
    reynolds,
)
from liegal.catalog import abelian, aff, gl, heisenberg, sl
from liegal.errors import GroupTooLargeError, ModularCaseError, PreconditionError
from liegal.galois import galois_group_structured
from liegal.lie import is_automorphism, is_subalgebra
from liegal.linalg import Field, Matrix, Subspace, invert
from liegal.products import Extension, SystemKind

F3 = Field.prime(3)
F5 = Field.prime(5)


def c2_on_aff():
    return close_group(aff(F5), [Matrix.diagonal(F5, [1, -1])])


def s3_on_gl3(field):
    gens = [permutation_conjugation(field, (1, 0, 2)), permutation_conjugation(field, (1, 2, 0))]
    return close_group(gl(field, 3), gens)


# ── closure ──────────────────────────────────────────────────────────────────
def test_closure_orders():
    assert c2_on_aff().order == 2
    assert close_group(sl(F5, 2), [Matrix.diagonal(F5, [2, 3, 1])]).order == 4
    action = s3_on_gl3(F5)
    assert action.order == 6
    assert not action.is_cyclic()
    assert action.elements[0].is_identity()


def test_closure_guards():
    with pytest.raises(ValueError):
        close_group(aff(F5), [Matrix.diagonal(F5, [2, 1])])
    with pytest.raises(GroupTooLargeError):
        close_group(sl(F5, 2), [Matrix.diagonal(F5, [2, 3, 1])], cap=2)


def test_gl_helpers():
    P = permutation_matrix(F5, [1, 2, 0])
    assert P.apply((1, 2, 3)) == (2, 3, 1)
    with pytest.raises(ValueError):
        permutation_matrix(F5, [0, 0, 1])
    with pytest.raises(ValueError):
        conjugation_matrix(F5, Matrix.from_rows(F5, [[1, 2], [2, 4]]))
    U = Matrix.from_rows(F5, [[1, 1], [0, 1]])
    assert is_automorphism(gl(F5, 2), conjugation_matrix(F5, U))
    assert is_automorphism(heisenberg(F5, 1), grading_action(F5, (2, 1, 1), 3))
    with pytest.raises(ValueError):
        grading_action(F5, (2, 1, 1), 0)


# ── invariants and averaging ─────────────────────────────────────────────────
def test_invariants_of_aff():
    action = c2_on_aff()
    assert invariants(action) == Subspace.span(F5, 2, [(1, 0)])
    data = reynolds(action)
    assert data.idempotent and data.image_is_invariants and data.equivariant
    assert data.kernel == Subspace.span(F5, 2, [(0, 1)])


@pytest.mark.parametrize("n", [2, 3])
def test_circulant_invariants(n):
    cycle = tuple(range(1, n)) + (0,)
    action = close_group(gl(F5, n), [permutation_conjugation(F5, cycle)])
    assert action.order == n
    P = permutation_matrix(F5, cycle)
    powers = [Matrix.identity(F5, n)]
    for _ in range(n - 1):
        powers.append(powers[-1] @ P)
    assert invariants(action) == Subspace.span(F5, n * n, [M.entries for M in powers])
    assert hilbert90_check(action, action.generators[0]).holds


def test_symmetric_invariants_of_gl3():
    action = s3_on_gl3(F5)
    fixed = invariants(action)
    assert fixed.dim == 2
    assert fixed.contains(Matrix.identity(F5, 3).entries)
    assert fixed.contains((1,) * 9)
    data = reynolds(action)
    assert data.image_is_invariants and data.idempotent and data.equivariant


def test_modular_case_is_refused():
    with pytest.raises(ModularCaseError):
        reynolds(s3_on_gl3(F3))


# ── cyclic groups ────────────────────────────────────────────────────────────
def test_hilbert90_on_aff():
    action = c2_on_aff()
    gamma = Matrix.diagonal(F5, [1, -1])
    result = hilbert90_check(action, gamma)
    assert result.holds
    assert result.image == Subspace.span(F5, 2, [(0, 1)])
    assert gamma_part(action, 1) == result.image


def test_hilbert90_for_a_transposition_on_gl3():
    action = close_group(gl(F5, 3), [permutation_conjugation(F5, (1, 0, 2))])
    assert action.order == 2
    assert invariants(action).dim == 5
    result = hilbert90_check(action, 1)
    assert result.holds
    assert result.image.dim == 4


def test_hilbert90_needs_a_generator():
    with pytest.raises(PreconditionError):
        hilbert90_check(s3_on_gl3(F5), 1)


def test_gamma_abelian():
    assert gamma_abelian_check(c2_on_aff(), 1).abelian
    flip = close_group(sl(F5, 2), [Matrix.diagonal(F5, [4, 4, 1])])
    result = gamma_abelian_check(flip, 1)
    assert not result.abelian
    assert result.witness is not None
    assert hilbert90_check(flip, 1).holds


def test_cyclic_structure_of_aff():
    s = cyclic_structure(c2_on_aff(), 1)
    assert s.theta_vanishes and s.ideal and s.isomorphic
    assert s.fixed.dim == 1 and s.gamma_part.dim == 1
    assert s.product.same_structure(aff(F5))


def test_cyclic_structure_needs_gamma_abelian():
    c4 = close_group(sl(F5, 2), [Matrix.diagonal(F5, [2, 3, 1])])
    assert c4.is_cyclic_generator(1)
    with pytest.raises(PreconditionError):
        cyclic_structure(c4, 1)
    result = artin_reconstruct(c4)
    assert result.kind is SystemKind.SKEW
    assert result.system.cocycle((1, 0), (0, 1)) == (1,)


# ── reconstruction ───────────────────────────────────────────────────────────
def test_artin_on_aff_is_semidirect():
    result = artin_reconstruct(c2_on_aff())
    assert result.kind is SystemKind.SEMIDIRECT
    assert result.axioms.passed and result.formulas_match and result.isomorphic


@pytest.mark.parametrize(
    "action",
    [
        pytest.param(lambda: close_group(sl(F5, 2), [Matrix.diagonal(F5, [4, 4, 1])]), id="U2-sl2"),
        pytest.param(lambda: close_group(sl(F5, 2), [Matrix.diagonal(F5, [2, 3, 1])]), id="C4-sl2"),
        pytest.param(lambda: s3_on_gl3(F5), id="S3-gl3"),
    ],
)
def test_artin_reconstruction(action):
    result = artin_reconstruct(action())
    assert result.axioms.passed
    assert result.system.right_trivial
    assert result.formulas_match and result.isomorphic


def test_fixed_point_pairs_match_the_galois_group():
    action = c2_on_aff()
    pairs = fixed_point_galois_pairs(action, 1)
    data = reynolds(action)
    ext = Extension.from_subalgebra(action.algebra, data.image, complement=gamma_part(action, 1).basis)
    assert tuple(pairs) == galois_group_structured(ext).elements
    assert len(pairs) == 4


# ── random conjugation actions ───────────────────────────────────────────────
def transvection(field, m, i, j, c):
    entries = [int(a == b) for a in range(m) for b in range(m)]
    entries[i * m + j] = c
    return Matrix(field, m, m, field.normalize(entries))


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_random_cyclic_conjugations(data):
    # U = S D S⁻¹ with D diagonal and not scalar: |G| divides p - 1 and exceeds 1
    field = data.draw(st.sampled_from([F3, F5]), label="field")
    m = data.draw(st.sampled_from([2, 3]), label="m")
    p = field.p
    S = Matrix.identity(field, m)
    steps = data.draw(st.lists(st.tuples(st.integers(0, m - 1), st.integers(0, m - 1), st.integers(1, p - 1)), max_size=6))
    for i, j, c in steps:
        if i != j:
            S = S @ transvection(field, m, i, j, c)
    d = [data.draw(st.integers(1, p - 1)) for _ in range(m)]
    d[1] = field.mul(d[0], data.draw(st.integers(2, p - 1)))
    U = S @ Matrix.diagonal(field, d) @ invert(S)
    action = close_group(gl(field, m), [conjugation_matrix(field, U)])
    assert action.order > 1 and (p - 1) % action.order == 0
    reynolds_data = reynolds(action)
    assert reynolds_data.idempotent and reynolds_data.image_is_invariants and reynolds_data.equivariant
    assert hilbert90_check(action, action.generators[0]).holds
    result = artin_reconstruct(action)
    assert result.axioms.passed and result.isomorphic and result.formulas_match


# ── small cases ──────────────────────────────────────────────────────────────
def test_swap_on_abelian_plane():
    plane = abelian(F5, 2)
    action = close_group(plane, [permutation_matrix(F5, [1, 0])])
    assert gamma_abelian_check(action, 1).abelian
    s = cyclic_structure(action, 1)
    assert s.fixed == Subspace.span(F5, 2, [(1, 1)])
    assert s.gamma_part == Subspace.span(F5, 2, [(1, -1)])
    assert not s.product.structure and s.isomorphic


def test_trivial_group():
    L = sl(F5, 2)
    action = close_group(L, [Matrix.identity(F5, 3)])
    assert action.order == 1
    assert invariants(action).dim == 3
    assert reynolds(action).operator.is_identity()
    assert hilbert90_check(action, 0).holds
    assert gamma_abelian_check(action, 0).abelian


def test_generator_invariants_match_the_whole_group():
    action = s3_on_gl3(F5)
    fixed = invariants(action)
    for M in action.elements:
        assert all(M.apply(v) == v for v in fixed.basis)
    assert is_subalgebra(action.algebra, fixed)


def test_closure_is_deterministic():
    gens = [permutation_conjugation(F5, (1, 0, 2)), permutation_conjugation(F5, (1, 2, 0))]
    first = close_group(gl(F5, 3), gens)
    second = close_group(gl(F5, 3), gens)
    assert first.elements == second.elements
