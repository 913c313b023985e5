import pytest

from liegal.catalog import (
    aff,
    b_algebra,
    basis_subspace,
    catalog_extensions,
    fivedim_extension,
    fivedim_outer_derivation,
    gl_semidirect,
    heisenberg,
    heisenberg_outer_derivation,
    heisenberg_twisted_derivation,
    holomorph,
    metabelian_l,
    sl,
    t_algebra,
)
from liegal.errors import BudgetExceededError, GaloisAdmissionError, InfiniteFieldError, PreconditionError, RadicalChainError
from liegal.galois import (
    GaloisElement,
    codim1_fiber,
    codim1_group,
    codim1_to_galois,
    compare_oracles,
    galois_group_direct,
    galois_group_structured,
    group_analysis,
    is_galois_pair,
    omega,
    omega_adapted,
    probe_gl_over_sl,
    verify_radical_chain,
)
from liegal.lie import automorphism_group, derived_subalgebra, is_automorphism
from liegal.linalg import Field, Matrix, Subspace
from liegal.products import Extension

Q = Field.rationals()
F2 = Field.prime(2)
F3 = Field.prime(3)
F5 = Field.prime(5)
F7 = Field.prime(7)


def ext_of(h, indices):
    return Extension.from_subalgebra(h, basis_subspace(h.field, h.dim, indices))


# ── elements ─────────────────────────────────────────────────────────────────
def test_group_law_matches_block_matrices():
    a = GaloisElement(Matrix.from_rows(F5, [[2]]), Matrix.from_rows(F5, [[1], [3]]))
    b = GaloisElement(Matrix.from_rows(F5, [[3]]), Matrix.from_rows(F5, [[4], [0]]))
    assert omega_adapted((a * b).sigma, (a * b).r) == omega_adapted(a.sigma, a.r) @ omega_adapted(b.sigma, b.r)
    ident = GaloisElement.identity(F5, 2, 1)
    assert a * a.inverse() == ident
    with pytest.raises(GaloisAdmissionError):
        GaloisElement(Matrix.zeros(F5, 1, 1), Matrix.zeros(F5, 2, 1)).inverse()


def test_pair_check_reports_first_failure():
    ext = ext_of(aff(F5), [0])
    one = Matrix.identity(F5, 1)
    assert is_galois_pair(ext, one, Matrix.zeros(F5, 1, 1)).passed
    bad = is_galois_pair(ext, one, Matrix.from_rows(F5, [[1]]))
    assert bad.first_failure() == ("G2", (0, 0))
    singular = is_galois_pair(ext, Matrix.zeros(F5, 1, 1), Matrix.zeros(F5, 1, 1))
    assert singular.first_failure() == ("sigma invertible", ())
    with pytest.raises(GaloisAdmissionError):
        omega(ext, one, Matrix.from_rows(F5, [[1]]))


# ── orders ───────────────────────────────────────────────────────────────────
@pytest.mark.parametrize("field", [F3, F5, F7], ids=str)
def test_aff_over_its_line_is_the_unit_group(field):
    comparison = compare_oracles(ext_of(aff(field), [0]))
    assert comparison.agree
    gal = comparison.structured
    assert gal.order == field.p - 1
    assert all(e.r.is_zero() for e in gal.elements)
    assert group_analysis(gal).cyclic


@pytest.mark.parametrize("field", [F3, F5], ids=str)
def test_sl2_over_cartan(field):
    comparison = compare_oracles(ext_of(sl(field, 2), [2]))
    assert comparison.agree
    gal = comparison.structured
    assert gal.order == field.p - 1
    assert group_analysis(gal).cyclic
    for M in gal.automorphisms():
        u = M[0, 0]
        assert M == Matrix.diagonal(field, [u, field.inv(u), 1])


@pytest.mark.parametrize(
    "build, indices, field, order, flags",
    [
        (lambda f: heisenberg(f, 2), [0, 1, 2], F2, 24, {"abelian": False, "solvable": True}),
        (lambda f: heisenberg(f, 2), [0, 1, 2], F3, 216, {"abelian": False, "solvable": True}),
        (lambda f: metabelian_l(f, 2), [0, 1, 2], F3, 36, {"metabelian": True}),
        (lambda f: t_algebra(f, 1), [0, 1, 2], F5, 4, {"cyclic": True}),
        (lambda f: b_algebra(f, 1), [0, 1, 2], F5, 5, {"elementary_abelian": True}),
        (fivedim_extension, [0, 1, 2, 3, 4], F3, 1, {"abelian": True}),
        (fivedim_extension, [0, 1, 2, 3, 4], F5, 1, {"abelian": True}),
    ],
    ids=["h5/h3-F2", "h5/h3-F3", "l5/l3-F3", "t4/h3-F5", "b4/h3-F5", "fivedim-F3", "fivedim-F5"],
)
def test_known_orders(build, indices, field, order, flags):
    comparison = compare_oracles(ext_of(build(field), indices))
    assert comparison.agree
    assert comparison.structured.order == order
    analysis = group_analysis(comparison.structured).as_dict()
    for name, value in flags.items():
        assert analysis[name] is value


def test_b4_fixes_the_new_vector_up_to_w():
    gal = galois_group_structured(ext_of(b_algebra(F5, 1), [0, 1, 2]))
    for e in gal.elements:
        assert e.sigma == Matrix.identity(F5, 1)
        assert e.r[1, 0] == 0 and e.r[2, 0] == 0


def test_gl_semidirect_over_its_derived_algebra():
    gs = gl_semidirect(F3, 2)
    ext = Extension.from_subalgebra(gs, derived_subalgebra(gs))
    comparison = compare_oracles(ext)
    assert comparison.agree
    assert comparison.structured.order == 2


def test_group_properties():
    ext = ext_of(heisenberg(F2, 2), [0, 1, 2])
    gal = galois_group_structured(ext)
    assert gal.verify_closure()
    assert gal.identity() in gal
    assert all(is_automorphism(ext.h, M) for M in gal.automorphisms())
    inv = gal.invariant_subspace()
    assert inv.dim == ext.n and ext.g.is_subspace_of(inv)


def _oracle_cases():
    for field in (F2, F3, F5):
        for label, ext in catalog_extensions(field):
            N, m = ext.h.dim, ext.m
            if field.p ** (N * m) <= 10**6:
                yield pytest.param(ext, id=f"{label}-{field}")


@pytest.mark.parametrize("ext", list(_oracle_cases()))
def test_oracles_agree_on_the_catalog(ext):
    comparison = compare_oracles(ext)
    assert comparison.agree
    assert comparison.structured.verify_closure()
    images = {e: omega(ext, e.sigma, e.r) for e in comparison.structured.elements}
    for a in images:
        for b in images:
            assert images[a * b] == images[a] @ images[b]


def test_enumeration_guards():
    with pytest.raises(InfiniteFieldError):
        galois_group_structured(ext_of(aff(Q), [0]))
    with pytest.raises(InfiniteFieldError):
        galois_group_direct(ext_of(aff(Q), [0]))
    with pytest.raises(BudgetExceededError) as exc:
        galois_group_direct(ext_of(heisenberg(F3, 2), [0, 1, 2]), budget=100)
    assert exc.value.count == 3**10


def test_workers_do_not_change_the_result():
    ext = ext_of(heisenberg(F3, 2), [0, 1, 2])
    single = galois_group_direct(ext, workers=1)
    pooled = galois_group_direct(ext, workers=4, batch_size=1000)
    assert single.elements == pooled.elements


@pytest.mark.slow
def test_holomorph_of_sl2_realises_its_automorphisms():
    h = holomorph(sl(F3, 2))
    gal = galois_group_structured(ext_of(h, [0, 1, 2]))
    assert gal.order == len(automorphism_group(sl(F3, 2)))


# ── codimension one ──────────────────────────────────────────────────────────
def test_codim1_group_of_t4():
    td = heisenberg_twisted_derivation(F5, 1)
    group = codim1_group(td.g, td.lam, td.delta)
    assert group.order == 4
    for e in group.elements:
        assert e.g0 == (F5.sub(e.u, 1), 0, 0)
    analysis = group_analysis(group)
    assert analysis.cyclic and analysis.metabelian
    ext = ext_of(t_algebra(F5, 1), [0, 1, 2])
    gal = codim1_to_galois(ext, group)
    assert gal.elements == galois_group_direct(ext).elements
    assert group_analysis(gal).metabelian


def test_codim1_group_of_b4():
    td = heisenberg_outer_derivation(F5, 1)
    group = codim1_group(td.g, td.lam, td.delta)
    assert group.order == 5
    assert {e.u for e in group.elements} == {1}
    analysis = group_analysis(group)
    assert analysis.elementary_abelian and analysis.metabelian
    ext = ext_of(b_algebra(F5, 1), [0, 1, 2])
    gal = codim1_to_galois(ext, group)
    assert gal.elements == galois_group_structured(ext).elements
    assert group_analysis(gal).metabelian


def test_codim1_fiber_over_rationals():
    td = heisenberg_twisted_derivation(Q, 1)
    sol = codim1_fiber(td, 3)
    assert sol.kernel.dim == 0
    assert sol.particular.column(0) == (2, 0, 0)
    five = fivedim_outer_derivation(Q)
    assert codim1_fiber(five, 2) is None
    with pytest.raises(ValueError):
        codim1_fiber(td, 0)


def test_codim1_to_galois_rejects_other_derivations():
    td = heisenberg_outer_derivation(F5, 1)
    group = codim1_group(td.g, td.lam, td.delta)
    with pytest.raises(PreconditionError):
        codim1_to_galois(ext_of(t_algebra(F5, 1), [0, 1, 2]), group)


# ── radical chains ───────────────────────────────────────────────────────────
def test_codimension_one_extension_is_radical():
    h = t_algebra(F5, 1)
    report = verify_radical_chain(h, [basis_subspace(F5, 4, [0, 1, 2])])
    assert report.radical and report.solvable and report.consistent
    assert report.galois_order == 4
    assert [s.dim for s in report.steps] == [4]


def test_metabelian_chain_is_radical():
    h = metabelian_l(F3, 2)
    chain = [basis_subspace(F3, 5, [0, 1, 2]), basis_subspace(F3, 5, [0, 1, 2, 3])]
    report = verify_radical_chain(h, chain)
    assert report.radical
    assert report.galois_order == 36
    assert report.analysis.metabelian


def test_heisenberg_chain_is_not_radical():
    h = heisenberg(F2, 2)
    chain = [basis_subspace(F2, 5, [0, 1, 2]), basis_subspace(F2, 5, [0, 1, 2, 3])]
    report = verify_radical_chain(h, chain)
    assert not report.radical
    assert report.steps[0].invariant and not report.steps[1].invariant
    assert report.galois_order == 24 and report.solvable


def test_radical_chain_validation():
    h = heisenberg(F2, 2)
    with pytest.raises(RadicalChainError):
        verify_radical_chain(h, [basis_subspace(F2, 5, [0, 1, 2])])
    with pytest.raises(RadicalChainError):
        verify_radical_chain(h, [basis_subspace(F2, 5, [1, 2])])
    with pytest.raises(RadicalChainError):
        verify_radical_chain(h, [basis_subspace(F2, 5, [0, 1, 2]), basis_subspace(F2, 5, [0, 1, 3, 4])])
    with pytest.raises(RadicalChainError):
        verify_radical_chain(h, [])


# ── gl(m) over sl(m) ─────────────────────────────────────────────────────────
def test_probe_gl_over_sl():
    probe = probe_gl_over_sl(F5, 2)
    assert probe.galois_order == 4
    assert probe.agree
    with pytest.raises(InfiniteFieldError):
        probe_gl_over_sl(Q, 2)


def test_invariant_subspace_of_aff_is_the_line():
    ext = ext_of(aff(F5), [0])
    inv = galois_group_structured(ext).invariant_subspace()
    assert inv == Subspace.span(F5, 2, [(1, 0)])
