"""
liegal.actions – Finite groups acting on a Lie algebra by automorphisms
=======================================================================

A ``GroupAction`` is the closure of a few automorphism matrices of h.  When
|G| is invertible in the field the Reynolds operator t = |G|⁻¹ Σ g projects h
onto the fixed subalgebra h^G along an h^G-stable complement, and the
extension h^G ⊂ h becomes a skew crossed product: the right action ⇀
vanishes and

    x ↼ a   = [x, a]
    θ(x, y) = t([x, y])
    {x, y}  = [x, y] - t([x, y])

For a cyclic group generated by γ the complement is h_γ = Im(id - γ)
(Hilbert 90), and when the translates g ▷ h_γ pairwise commute the cocycle
vanishes and h ≅ h^G ⋉ h_γ.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from liegal import config
from liegal.errors import GroupTooLargeError, ModularCaseError, PreconditionError
from liegal.galois import GaloisElement, check_budget, require_finite
from liegal.groups import FiniteGroup
from liegal.lie import LieAlgebra, is_automorphism, is_ideal, restrict
from liegal.linalg import (
    Field,
    Matrix,
    Subspace,
    Vector,
    column_space,
    invert,
    is_zero_vector,
    kernel,
    vec_sub,
)
from liegal.products import (
    AxiomReport,
    Extension,
    ExtendingSystem,
    SystemKind,
    canonical_extending_system,
    check_skew_axioms,
    classify,
    phi_iso_check,
    semidirect_product,
    unified_product,
)

log = logging.getLogger(__name__)

ElementRef = Union[int, Matrix]


# ---------------------------------------------------------------------------
# Closure
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class GroupAction:
    """G ⊂ Aut(h) listed in BFS order from the identity (elements[0])."""

    algebra: LieAlgebra
    elements: tuple[Matrix, ...]
    generators: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def field(self) -> Field:
        return self.algebra.field

    def index_of(self, M: Matrix) -> int:
        try:
            return self.elements.index(M)
        except ValueError:
            raise ValueError("matrix is not an element of the group") from None

    def resolve(self, ref: ElementRef) -> int:
        return ref if isinstance(ref, int) else self.index_of(ref)

    def finite_group(self) -> FiniteGroup:
        return FiniteGroup(self.elements, lambda a, b: a @ b, self.elements[0])

    def element_order(self, ref: ElementRef) -> int:
        i = self.resolve(ref)
        M = self.elements[i]
        k, cur = 1, M
        while not cur.is_identity():
            cur = cur @ M
            k += 1
        return k

    def is_cyclic_generator(self, ref: ElementRef) -> bool:
        return self.element_order(ref) == self.order

    def is_cyclic(self) -> bool:
        return any(self.is_cyclic_generator(i) for i in range(self.order))


def close_group(
    algebra: LieAlgebra,
    generators: Sequence[Matrix],
    *,
    cap: Optional[int] = None,
) -> GroupAction:
    """Close *generators* under composition.

    Each BFS layer is sorted by matrix entries so the element order does not
    depend on set iteration.  Raises GroupTooLargeError past *cap* elements.
    """
    cap = config.CLOSURE_CAP if cap is None else cap
    f = algebra.field
    for k, g in enumerate(generators):
        if not is_automorphism(algebra, g):
            raise ValueError(f"generator {k} is not an automorphism of {algebra!r}")
    identity = Matrix.identity(f, algebra.dim)
    elements = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        layer = set()
        for a in frontier:
            for g in generators:
                b = a @ g
                if b not in seen:
                    layer.add(b)
        layer = sorted(layer, key=lambda M: M.entries)
        seen.update(layer)
        elements.extend(layer)
        if len(elements) > cap:
            raise GroupTooLargeError(cap)
        frontier = layer
    log.info("closed %d generators into a group of order %d", len(generators), len(elements))
    gens = tuple(elements.index(g) for g in generators)
    return GroupAction(algebra, tuple(elements), gens)


def invariants(action: GroupAction) -> Subspace:
    """h^G: the common fixed vectors of the generators."""
    f, n = action.field, action.algebra.dim
    I = Matrix.identity(f, n)
    rows: list[Vector] = []
    for i in action.generators:
        rows.extend((action.elements[i] - I).to_rows())
    if not rows:
        return Subspace.full(f, n)
    return kernel(Matrix.from_rows(f, rows, cols=n))


# ---------------------------------------------------------------------------
# Reynolds operator
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class ReynoldsData:
    operator: Matrix
    image: Subspace
    kernel: Subspace
    idempotent: bool
    image_is_invariants: bool
    equivariant: bool

    def as_dict(self) -> dict[str, bool]:
        return {
            "idempotent": self.idempotent,
            "image_is_invariants": self.image_is_invariants,
            "equivariant": self.equivariant,
        }


def _require_nonmodular(action: GroupAction) -> None:
    f = action.field
    if f.is_finite and action.order % f.p == 0:
        raise ModularCaseError(f"|G| = {action.order} is divisible by the characteristic {f.p}")


def reynolds(action: GroupAction) -> ReynoldsData:
    """t = |G|⁻¹ Σ_g g together with its image, kernel and sanity checks.

    equivariant: t([a, x]) = [a, t(x)] for a ∈ h^G and every basis vector x.
    """
    _require_nonmodular(action)
    h = action.algebra
    f, n = h.field, h.dim
    total = Matrix.zeros(f, n, n)
    for M in action.elements:
        total = total + M
    t = total.scale(f.inv(f.coerce(action.order)))
    image = column_space(t)
    fixed = invariants(action)
    equivariant = all(
        t.apply(h.bracket(a, h.unit(j))) == h.bracket(a, t.column(j))
        for a in fixed.basis
        for j in range(n)
    )
    return ReynoldsData(
        operator=t,
        image=image,
        kernel=kernel(t),
        idempotent=t @ t == t,
        image_is_invariants=image == fixed,
        equivariant=equivariant,
    )


# ---------------------------------------------------------------------------
# Cyclic groups
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Hilbert90Result:
    image: Subspace   # Im(id - γ)
    kernel: Subspace  # Ker t

    @property
    def holds(self) -> bool:
        return self.image == self.kernel


def _cyclic_generator(action: GroupAction, gamma: ElementRef) -> Matrix:
    i = action.resolve(gamma)
    if not action.is_cyclic_generator(i):
        raise PreconditionError("cyclic", f"element of order {action.element_order(i)} in a group of order {action.order}")
    return action.elements[i]


def gamma_part(action: GroupAction, gamma: ElementRef) -> Subspace:
    """h_γ = Im(id - γ)."""
    G = action.elements[action.resolve(gamma)]
    return column_space(Matrix.identity(action.field, action.algebra.dim) - G)


def hilbert90_check(action: GroupAction, gamma: ElementRef) -> Hilbert90Result:
    """Compare Im(id - γ) with Ker t for a generator γ of a cyclic G."""
    _cyclic_generator(action, gamma)
    data = reynolds(action)
    return Hilbert90Result(gamma_part(action, gamma), data.kernel)


@dataclass(frozen=True)
class GammaAbelianResult:
    abelian: bool
    witness: Optional[tuple[int, int, int, int]] = None  # (g, g', basis index, basis index)


def gamma_abelian_check(action: GroupAction, gamma: ElementRef) -> GammaAbelianResult:
    """[g ▷ z, g' ▷ z'] = 0 for all g ≠ g' in G and z, z' ∈ h_γ."""
    h = action.algebra
    basis = gamma_part(action, gamma).basis
    images = [[M.apply(z) for z in basis] for M in action.elements]
    for g, g2 in itertools.permutations(range(action.order), 2):
        for k, z in enumerate(images[g]):
            for k2, z2 in enumerate(images[g2]):
                if not is_zero_vector(h.bracket(z, z2)):
                    return GammaAbelianResult(False, (g, g2, k, k2))
    return GammaAbelianResult(True)


# ---------------------------------------------------------------------------
# Reconstruction
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class ArtinResult:
    extension: Extension
    system: ExtendingSystem
    product: LieAlgebra
    axioms: AxiomReport
    kind: SystemKind
    formulas_match: bool
    isomorphic: bool


def _averaging_matches(action: GroupAction, ext: Extension, system: ExtendingSystem, t: Matrix) -> bool:
    """Canonical system against the averaging formulas."""
    h = action.algebra
    f = h.field
    inv_order = f.inv(f.coerce(action.order))
    comp = ext.complement
    gbasis = ext.g.basis
    for x, v in enumerate(comp):
        for a, w in enumerate(gbasis):
            g_part, v_part = ext.split(h.bracket(v, w))
            if not is_zero_vector(g_part) or v_part != system.left[x][a]:
                return False
    for x, y in itertools.combinations(range(len(comp)), 2):
        avg = [0] * h.dim
        for M in action.elements:
            br = h.bracket(M.apply(comp[x]), M.apply(comp[y]))
            avg = [s + c for s, c in zip(avg, br)]
        avg = f.normalize(f.mul(inv_order, c) for c in avg)
        if avg != t.apply(h.bracket(comp[x], comp[y])):
            return False
        g_part, v_part = ext.split(avg)
        if not is_zero_vector(v_part) or g_part != system.theta[x][y]:
            return False
        _, q_part = ext.split(vec_sub(f, h.bracket(comp[x], comp[y]), avg))
        if q_part != system.qbracket[x][y]:
            return False
    return True


def artin_reconstruct(action: GroupAction) -> ArtinResult:
    """Rebuild h as a skew crossed product over h^G along Ker t."""
    data = reynolds(action)
    h = action.algebra
    ext = Extension.from_subalgebra(h, data.image, complement=data.kernel.basis)
    system = canonical_extending_system(ext)
    axioms = check_skew_axioms(system)
    product = unified_product(system, check=False)
    result = ArtinResult(
        extension=ext,
        system=system,
        product=product,
        axioms=axioms,
        kind=classify(system),
        formulas_match=_averaging_matches(action, ext, system, data.operator),
        isomorphic=phi_iso_check(ext, product),
    )
    log.info(
        "reconstruction over h^G (dim %d): %s system, axioms %s, φ iso %s",
        ext.n, result.kind.value, "pass" if axioms.passed else "fail", result.isomorphic,
    )
    return result


@dataclass(frozen=True)
class CyclicStructure:
    fixed: Subspace
    gamma_part: Subspace
    product: LieAlgebra
    theta_vanishes: bool
    ideal: bool
    isomorphic: bool


def cyclic_structure(action: GroupAction, gamma: ElementRef) -> CyclicStructure:
    """h ≅ h^G ⋉ h_γ for a cyclic, non-modular, γ-abelian action."""
    _cyclic_generator(action, gamma)
    _require_nonmodular(action)
    if not gamma_abelian_check(action, gamma).abelian:
        raise PreconditionError("gamma-abelian", "some translates of h_γ do not commute")
    h = action.algebra
    data = reynolds(action)
    fixed, hg = data.image, gamma_part(action, gamma)
    t = data.operator
    theta_vanishes = all(
        is_zero_vector(t.apply(h.bracket(x, y))) for x, y in itertools.combinations(hg.basis, 2)
    )
    ideal = is_ideal(h, hg)
    g_alg = restrict(h, fixed)
    v_alg = restrict(h, hg)
    act = {
        (x, a): hg.coordinates(h.bracket(xv, av))
        for x, xv in enumerate(hg.basis)
        for a, av in enumerate(fixed.basis)
    }
    product = semidirect_product(g_alg, v_alg, act)
    ext = Extension.from_subalgebra(h, fixed, complement=hg.basis)
    return CyclicStructure(fixed, hg, product, theta_vanishes, ideal, phi_iso_check(ext, product))


def fixed_point_galois_pairs(
    action: GroupAction,
    gamma: ElementRef,
    *,
    budget: Optional[int] = None,
) -> list[GaloisElement]:
    """Pairs (σ, r) ∈ GL(h_γ) × Hom(h_γ, h^G) preserving the semidirect structure.

    σ[x, a] = [σx, a], r[x, a] = [rx, a], r[x, y] = [rx, ry] and
    σ[x, y] - [σx, σy] = [σx, ry] + [rx, σy]; brackets taken in h.
    """
    h = action.algebra
    f = h.field
    require_finite(f, "fixed_point_galois_pairs")
    data = reynolds(action)
    fixed, hg = data.image, gamma_part(action, gamma)
    ext = Extension.from_subalgebra(h, fixed, complement=hg.basis)
    n, m = ext.n, ext.m
    check_budget(f.p ** (m * m + n * m), budget)
    zero_g, zero_v = (f.zero,) * n, (f.zero,) * m
    vs = [ext.join(zero_g, tuple(int(i == k) for i in range(m))) for k in range(m)]
    gs = list(fixed.basis)
    found = []
    for entries in itertools.product(range(f.p), repeat=m * m + n * m):
        sigma = Matrix(f, m, m, f.normalize(entries[: m * m]))
        if invert(sigma) is None:
            continue
        r = Matrix(f, n, m, f.normalize(entries[m * m:]))
        S = lambda y: ext.join(zero_g, sigma.apply(ext.split(y)[1]))  # noqa: E731
        R = lambda y: ext.join(r.apply(ext.split(y)[1]), zero_v)  # noqa: E731
        ok = all(
            S(h.bracket(x, a)) == h.bracket(S(x), a) and R(h.bracket(x, a)) == h.bracket(R(x), a)
            for x in vs
            for a in gs
        ) and all(
            R(h.bracket(x, y)) == h.bracket(R(x), R(y))
            and vec_sub(f, S(h.bracket(x, y)), h.bracket(S(x), S(y)))
            == f.normalize(u + w for u, w in zip(h.bracket(S(x), R(y)), h.bracket(R(x), S(y))))
            for x, y in itertools.combinations(vs, 2)
        )
        if ok:
            found.append(GaloisElement(sigma, r))
    found.sort(key=GaloisElement.key)
    log.info("Gal(h/h^G) from the action: %d pairs", len(found))
    return found


# ---------------------------------------------------------------------------
# Common automorphisms of gl(m)
# ---------------------------------------------------------------------------
def conjugation_matrix(field: Field, U: Matrix) -> Matrix:
    """X ↦ U X U⁻¹ on gl(m), basis e_ij row-major."""
    U_inv = invert(U)
    if U_inv is None:
        raise ValueError("conjugating matrix is singular")
    m = U.rows
    columns = []
    for i in range(m):
        for j in range(m):
            E = Matrix(field, m, m, tuple(int(k == i * m + j) for k in range(m * m)))
            columns.append((U @ E @ U_inv).entries)
    return Matrix.from_columns(field, columns, rows=m * m)


def permutation_matrix(field: Field, perm: Sequence[int]) -> Matrix:
    """P = Σ e_(i, τ(i)) for 0-based images τ(i)."""
    m = len(perm)
    if sorted(perm) != list(range(m)):
        raise ValueError(f"{list(perm)} is not a permutation of 0..{m - 1}")
    return Matrix(field, m, m, tuple(int(perm[i] == j) for i in range(m) for j in range(m)))


def permutation_conjugation(field: Field, perm: Sequence[int]) -> Matrix:
    return conjugation_matrix(field, permutation_matrix(field, perm))


def grading_action(field: Field, degrees: Sequence[int], u) -> Matrix:
    """e_i ↦ u^deg(i) e_i; an automorphism when the basis is graded by *degrees*."""
    u = field.coerce(u)
    if u == 0:
        raise ValueError("grading parameter must be a unit")
    return Matrix.diagonal(field, [field.power(u, d) for d in degrees])
