"""
liegal.galois – Galois groups of Lie algebra extensions
=======================================================

For an extension g ⊂ h = g ⊕ V, the automorphisms of h fixing g pointwise
correspond to the pairs (σ, r), σ ∈ GL(V), r ∈ Hom(V, g), that satisfy four
compatibilities with the canonical extending system:

    (1) σ(x↼a) = σ(x)↼a
    (2) r(x↼a) = [r(x), a] + (σ(x) - x)⇀a
    (3) σ{x,y} = {σx, σy} + σx↼r(y) - σy↼r(x)
    (4) r{x,y} = [rx, ry] + σx⇀ry - σy⇀rx + θ(σx, σy) - θ(x, y)

The pair acts on h by Ω(σ, r)(a + x) = a + r(x) + σ(x), and pairs multiply
as (σ, r)(σ', r') = (σσ', rσ' + r').

Two independent enumerators over F_p are provided and must agree:

* structured: (1) and (2) are linear in (σ, r); solve them, then walk the
  affine solution space and filter by (3), (4) and invertibility.
* direct: walk every choice of images of the V basis in h, keep the maps
  that fix g and preserve the bracket.

Codimension-one extensions have their own closed description through the
twisted derivation (λ, Δ): pairs (u, g0) ∈ k* × g with
λ(a) g0 = [g0, a] + (u - 1) Δ(a).
"""
from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from liegal import config
from liegal.errors import (
    BudgetExceededError,
    GaloisAdmissionError,
    InfiniteFieldError,
    PreconditionError,
    RadicalChainError,
)
from liegal.catalog import gl_over_sl
from liegal.groups import FiniteGroup, GroupAnalysis
from liegal.kernels import SystemTensors, affine_candidates, digits, direct_mask, structured_mask
from liegal.lie import LieAlgebra, is_automorphism, is_subalgebra, restrict, structural_predicates
from liegal.linalg import (
    Field,
    LinearSolution,
    Matrix,
    Raw,
    Subspace,
    Vector,
    invert,
    kernel,
    solve_linear,
    unit_vector,
    vec_combination,
    vec_sub,
)
from liegal.products import (
    Extension,
    ExtendingSystem,
    TwistedDerivation,
    canonical_extending_system,
    twisted_derivation_of,
)
from liegal.worker import map_ranges

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class GaloisElement:
    sigma: Matrix  # m x m, acts on V
    r: Matrix      # n x m, V -> g

    @classmethod
    def identity(cls, field: Field, n: int, m: int) -> GaloisElement:
        return cls(Matrix.identity(field, m), Matrix.zeros(field, n, m))

    def __mul__(self, other: GaloisElement) -> GaloisElement:
        return GaloisElement(self.sigma @ other.sigma, self.r @ other.sigma + other.r)

    def inverse(self) -> GaloisElement:
        s_inv = invert(self.sigma)
        if s_inv is None:
            raise GaloisAdmissionError("sigma invertible", ())
        return GaloisElement(s_inv, -(self.r @ s_inv))

    def key(self) -> tuple:
        return self.sigma.entries, self.r.entries


@dataclass(frozen=True)
class GaloisReport:
    """First failing basis tuple per compatibility (None when it holds)."""

    results: tuple[tuple[str, Optional[tuple[int, ...]]], ...]
    invertible: bool

    @property
    def passed(self) -> bool:
        return self.invertible and all(v is None for _, v in self.results)

    def as_dict(self) -> dict[str, bool]:
        d = {name: v is None for name, v in self.results}
        d["sigma invertible"] = self.invertible
        return d

    def first_failure(self) -> Optional[tuple[str, tuple[int, ...]]]:
        if not self.invertible:
            return "sigma invertible", ()
        for name, v in self.results:
            if v is not None:
                return name, v
        return None


def is_galois_pair(
    ext: Extension,
    sigma: Matrix,
    r: Matrix,
    system: Optional[ExtendingSystem] = None,
) -> GaloisReport:
    """Check the four compatibilities and invertibility of sigma."""
    s = system or canonical_extending_system(ext)
    f, n, m = s.field, s.n, s.m
    g = s.g
    if sigma.shape != (m, m) or r.shape != (n, m):
        raise GaloisAdmissionError("shape", (m, n))
    ev = [unit_vector(f, m, i) for i in range(m)]
    eg = [unit_vector(f, n, i) for i in range(n)]
    sig_cols, r_cols = sigma.columns(), r.columns()
    found: dict[str, Optional[tuple[int, ...]]] = {k: None for k in ("G1", "G2", "G3", "G4")}

    def note(name: str, idx: tuple[int, ...], ok: bool) -> None:
        if not ok and found[name] is None:
            found[name] = idx

    for x in range(m):
        sx = sig_cols[x]
        for a in range(n):
            xa = s.left_action(ev[x], eg[a])
            note("G1", (x, a), sigma.apply(xa) == s.left_action(sx, eg[a]))
            rhs = vec_combination(
                f, (1, 1), (g.bracket(r_cols[x], eg[a]), s.right_action(vec_sub(f, sx, ev[x]), eg[a])), n
            )
            note("G2", (x, a), r.apply(xa) == rhs)
    for x, y in itertools.combinations(range(m), 2):
        sx, sy, rx, ry = sig_cols[x], sig_cols[y], r_cols[x], r_cols[y]
        q = s.v_bracket(ev[x], ev[y])
        rhs3 = vec_combination(
            f, (1, 1, -1), (s.v_bracket(sx, sy), s.left_action(sx, ry), s.left_action(sy, rx)), m
        )
        note("G3", (x, y), sigma.apply(q) == rhs3)
        rhs4 = vec_combination(
            f,
            (1, 1, -1, 1, -1),
            (g.bracket(rx, ry), s.right_action(sx, ry), s.right_action(sy, rx), s.cocycle(sx, sy), s.cocycle(ev[x], ev[y])),
            n,
        )
        note("G4", (x, y), r.apply(q) == rhs4)
    return GaloisReport(tuple(found.items()), invert(sigma) is not None)


def omega_adapted(sigma: Matrix, r: Matrix) -> Matrix:
    """Block matrix [[I, r], [0, sigma]] on adapted coordinates."""
    f = sigma.field
    n, m = r.rows, sigma.rows
    top = Matrix.identity(f, n).hstack(r)
    bottom = Matrix.zeros(f, m, n).hstack(sigma)
    return top.vstack(bottom)


def omega(ext: Extension, sigma: Matrix, r: Matrix, *, check: bool = True) -> Matrix:
    """Ω(σ, r) as an automorphism of h in the coordinates of h."""
    if check:
        failure = is_galois_pair(ext, sigma, r).first_failure()
        if failure:
            raise GaloisAdmissionError(*failure)
    return ext.change @ omega_adapted(sigma, r) @ ext.change_inv


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class GaloisGroup:
    extension: Extension
    elements: tuple[GaloisElement, ...]
    method: str

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, element: GaloisElement) -> bool:
        return element in set(self.elements)

    def identity(self) -> GaloisElement:
        return GaloisElement.identity(self.extension.field, self.extension.n, self.extension.m)

    def automorphisms(self) -> list[Matrix]:
        return [omega(self.extension, e.sigma, e.r, check=False) for e in self.elements]

    def finite_group(self) -> FiniteGroup:
        return FiniteGroup(self.elements, lambda a, b: a * b, self.identity())

    def verify_closure(self) -> bool:
        """Closed under products, contains (Id, 0) and every inverse."""
        members = set(self.elements)
        if self.identity() not in members:
            return False
        return self.finite_group().is_closed() and all(e.inverse() in members for e in self.elements)

    def invariant_subspace(self) -> Subspace:
        """Vectors of h fixed by every Ω(σ, r); contains g."""
        h = self.extension.h
        f = h.field
        I = Matrix.identity(f, h.dim)
        rows: list[Vector] = []
        for M in self.automorphisms():
            rows.extend((M - I).to_rows())
        if not rows:
            return Subspace.full(f, h.dim)
        return kernel(Matrix.from_rows(f, rows, cols=h.dim))


def group_analysis(group) -> GroupAnalysis:
    """Order and structural flags of any object offering ``finite_group()``."""
    fg = group if isinstance(group, FiniteGroup) else group.finite_group()
    return fg.analyze()


def require_finite(field: Field, what: str) -> None:
    if not field.is_finite:
        raise InfiniteFieldError(f"{what} enumerates candidates and needs a finite field, got {field}")


def check_budget(count: int, budget: Optional[int]) -> int:
    budget = config.CANDIDATE_BUDGET if budget is None else budget
    if count > budget:
        raise BudgetExceededError(count, budget)
    return budget


def _linear_part(system: ExtendingSystem) -> tuple[Matrix, Matrix]:
    """Compatibilities (1) and (2) as A u = b in u = (vec σ, vec r), row-major."""
    f, n, m = system.field, system.n, system.m
    U = m * m + n * m
    L, R = system.left, system.right
    T = system.g.structure_tensor()
    sig = lambda y, x: y * m + x  # noqa: E731
    rr = lambda c, x: m * m + c * m + x  # noqa: E731
    rows, rhs = [], []
    for x in range(m):
        for a in range(n):
            # sum_z σ[y,z] L[x,a,z] - sum_z σ[z,x] L[z,a,y] = 0
            for y in range(m):
                row = [0] * U
                for z in range(m):
                    row[sig(y, z)] += L[x][a][z]
                    row[sig(z, x)] -= L[z][a][y]
                rows.append(row)
                rhs.append([0])
            # sum_z r[c,z] L[x,a,z] - sum_b r[b,x] [g_b,g_a]_c - sum_z σ[z,x] R[z,a,c] = -R[x,a,c]
            for c in range(n):
                row = [0] * U
                for z in range(m):
                    row[rr(c, z)] += L[x][a][z]
                    row[sig(z, x)] -= R[z][a][c]
                for b in range(n):
                    row[rr(b, x)] -= T[b][a][c]
                rows.append(row)
                rhs.append([-R[x][a][c]])
    A = Matrix.from_rows(f, rows, cols=U) if rows else Matrix.zeros(f, 0, U)
    b = Matrix.from_rows(f, rhs, cols=1) if rhs else Matrix.zeros(f, 0, 1)
    return A, b


def _split_candidate(field: Field, n: int, m: int, u: Sequence[int]) -> tuple[Matrix, Matrix]:
    return Matrix(field, m, m, field.normalize(u[: m * m])), Matrix(field, n, m, field.normalize(u[m * m:]))


def galois_group_structured(
    ext: Extension,
    *,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
    batch_size: Optional[int] = None,
) -> GaloisGroup:
    """Gal(h/g) by solving the linear compatibilities first."""
    f, n, m = ext.field, ext.n, ext.m
    require_finite(f, "galois_group_structured")
    if m == 0:
        return GaloisGroup(ext, (GaloisElement.identity(f, n, 0),), "structured")
    system = canonical_extending_system(ext)
    A, b = _linear_part(system)
    sol = solve_linear(A, b)
    assert sol is not None, "the identity pair always solves the linear compatibilities"
    d = sol.kernel.dim
    count = f.p**d
    check_budget(count, budget)
    log.info("structured: %d linear unknowns, affine dimension %d, %d candidates", A.cols, d, count)
    started = time.perf_counter()

    part = sol.particular.column(0)
    if f.p < config.NUMPY_PRIME_LIMIT:
        tensors = SystemTensors.from_system(system)
        part_arr = np.array(part, dtype=np.int64)
        ker_arr = np.array(sol.kernel.basis, dtype=np.int64).reshape(d, A.cols)

        def scan(start: int, stop: int) -> list[tuple]:
            u = affine_candidates(part_arr, ker_arr, f.p, start, stop)
            keep = u[structured_mask(tensors, u)]
            return [tuple(int(v) for v in row) for row in keep]

        survivors = map_ranges(scan, count, workers=workers, batch_size=batch_size, label="structured")
    else:
        survivors = [
            vec_combination(f, (1,) + coeffs, (part,) + sol.kernel.basis, A.cols)
            for coeffs in itertools.product(range(f.p), repeat=d)
        ]

    elements = []
    for u in survivors:
        sigma, r = _split_candidate(f, n, m, u)
        if is_galois_pair(ext, sigma, r, system).passed:
            elements.append(GaloisElement(sigma, r))
    elements.sort(key=GaloisElement.key)
    log.info(
        "structured: %d survivors, |Gal| = %d (%.2fs)", len(survivors), len(elements), time.perf_counter() - started
    )
    return GaloisGroup(ext, tuple(elements), "structured")


def galois_group_direct(
    ext: Extension,
    *,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
    batch_size: Optional[int] = None,
) -> GaloisGroup:
    """Gal(h/g) by scanning every image of the V basis in h."""
    f, n, m = ext.field, ext.n, ext.m
    require_finite(f, "galois_group_direct")
    N = n + m
    count = f.p ** (N * m)
    check_budget(count, budget)
    A = ext.adapted
    log.info("direct: %d candidate images of a %d-dim complement", count, m)
    started = time.perf_counter()

    if f.p < config.NUMPY_PRIME_LIMIT:
        structure = np.array(A.structure_tensor(), dtype=np.int64).reshape(N, N, N)

        def scan(start: int, stop: int) -> list[tuple]:
            x = digits(start, stop, f.p, N * m)
            keep = x[direct_mask(structure, n, m, f.p, x)]
            return [tuple(int(v) for v in row) for row in keep]

        survivors = map_ranges(scan, count, workers=workers, batch_size=batch_size, label="direct")
    else:
        survivors = list(itertools.product(range(f.p), repeat=N * m))

    elements = []
    for row in survivors:
        X = Matrix(f, N, m, f.normalize(row))
        r, sigma = X.submatrix(0, n, 0, m), X.submatrix(n, N, 0, m)
        if invert(sigma) is not None and is_automorphism(A, omega_adapted(sigma, r)):
            elements.append(GaloisElement(sigma, r))
    elements.sort(key=GaloisElement.key)
    log.info(
        "direct: %d survivors, |Gal| = %d (%.2fs)", len(survivors), len(elements), time.perf_counter() - started
    )
    return GaloisGroup(ext, tuple(elements), "direct")


@dataclass(frozen=True)
class OracleComparison:
    structured: GaloisGroup
    direct: GaloisGroup

    @property
    def agree(self) -> bool:
        return self.structured.elements == self.direct.elements


def compare_oracles(ext: Extension, **kwargs) -> OracleComparison:
    return OracleComparison(galois_group_structured(ext, **kwargs), galois_group_direct(ext, **kwargs))


# ---------------------------------------------------------------------------
# Codimension one
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Codim1Element:
    u: Raw
    g0: Vector

    def key(self) -> tuple:
        return self.u, self.g0


@dataclass(frozen=True)
class Codim1Group:
    twisted: TwistedDerivation
    elements: tuple[Codim1Element, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def multiply(self, a: Codim1Element, b: Codim1Element) -> Codim1Element:
        """(u, g)(u', g') = (uu', u'g + g')."""
        f = self.twisted.g.field
        return Codim1Element(f.mul(a.u, b.u), vec_combination(f, (b.u, 1), (a.g0, b.g0), len(a.g0)))

    def identity(self) -> Codim1Element:
        f = self.twisted.g.field
        return Codim1Element(f.one, (f.zero,) * self.twisted.g.dim)

    def finite_group(self) -> FiniteGroup:
        return FiniteGroup(self.elements, self.multiply, self.identity())


def codim1_fiber(td: TwistedDerivation, u) -> Optional[LinearSolution]:
    """All g0 with λ(a) g0 = [g0, a] + (u - 1) Δ(a) for every basis vector a.

    Works over any field; None when no g0 exists for this u.
    """
    g = td.g
    f, n = g.field, g.dim
    u = f.coerce(u)
    if u == 0:
        raise ValueError("u must be a unit")
    T = g.structure_tensor()
    um1 = f.sub(u, f.one)
    rows, rhs = [], []
    for a in range(n):
        for c in range(n):
            row = [(-T[b][a][c]) for b in range(n)]
            row[c] += td.lam[a]
            rows.append(row)
            rhs.append([f.mul(um1, td.delta[c, a])])
    if not rows:
        return LinearSolution(Matrix.zeros(f, 0, 1), Subspace.zero(f, 0))
    return solve_linear(Matrix.from_rows(f, rows, cols=n), Matrix.from_rows(f, rhs, cols=1))


def codim1_group(
    g: LieAlgebra,
    lam: Sequence,
    delta: Matrix,
    *,
    budget: Optional[int] = None,
) -> Codim1Group:
    """The group of pairs (u, g0) attached to the twisted derivation (λ, Δ)."""
    td = TwistedDerivation(g, tuple(lam), delta)
    f = g.field
    require_finite(f, "codim1_group")
    fibers = [(u, codim1_fiber(td, u)) for u in f.units()]
    count = sum(f.p**sol.kernel.dim for _, sol in fibers if sol is not None)
    check_budget(count, budget)
    elements = []
    for u, sol in fibers:
        if sol is None:
            continue
        part = sol.particular.column(0)
        for coeffs in itertools.product(range(f.p), repeat=sol.kernel.dim):
            g0 = vec_combination(f, (1,) + coeffs, (part,) + sol.kernel.basis, g.dim)
            elements.append(Codim1Element(u, g0))
    elements.sort(key=Codim1Element.key)
    log.info("codim-1 group: %d elements", len(elements))
    return Codim1Group(td, tuple(elements))


def codim1_to_galois(ext: Extension, group: Codim1Group) -> GaloisGroup:
    """Image of the codimension-one group under (u, g0) ↦ (σ = u, r = g0)."""
    td = twisted_derivation_of(ext)
    if td.lam != group.twisted.lam or td.delta != group.twisted.delta:
        raise PreconditionError("matching twisted derivation", "the extension does not realise (λ, Δ)")
    f, n = ext.field, ext.n
    elements = [
        GaloisElement(Matrix(f, 1, 1, (e.u,)), Matrix(f, n, 1, e.g0)) for e in group.elements
    ]
    elements.sort(key=GaloisElement.key)
    return GaloisGroup(ext, tuple(elements), "codim1")


# ---------------------------------------------------------------------------
# Radical chains
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class RadicalStep:
    index: int
    dim: int
    galois_order: int
    invariant: bool


@dataclass(frozen=True)
class RadicalReport:
    steps: tuple[RadicalStep, ...]
    galois_order: int
    analysis: GroupAnalysis

    @property
    def radical(self) -> bool:
        return all(s.invariant for s in self.steps)

    @property
    def solvable(self) -> bool:
        return self.analysis.solvable

    @property
    def consistent(self) -> bool:
        """A radical chain forces a solvable Galois group."""
        return not self.radical or self.solvable


def verify_radical_chain(
    h: LieAlgebra,
    chain: Sequence[Subspace],
    *,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> RadicalReport:
    """Check g = h0 ⊂ h1 ⊂ … ⊂ h for radicality and analyse Gal(h/g).

    Each step must be a codimension-one subalgebra of the next, and h_(i-1)
    must be invariant under Gal(h_i/g).  The full space is appended when the
    chain stops short of h.
    """
    f = h.field
    full = Subspace.full(f, h.dim)
    chain = list(chain)
    if not chain:
        raise RadicalChainError("empty chain")
    if chain[-1] != full:
        chain.append(full)
    for i, S in enumerate(chain):
        if not is_subalgebra(h, S):
            raise RadicalChainError(f"chain member {i} is not a subalgebra")
        if i and not chain[i - 1].is_subspace_of(S):
            raise RadicalChainError(f"chain member {i - 1} is not contained in member {i}")
        if i and S.dim - chain[i - 1].dim != 1:
            raise RadicalChainError(
                f"step {i - 1} -> {i} has codimension {S.dim - chain[i - 1].dim}, expected 1"
            )
    g = chain[0]
    steps = []
    for i in range(1, len(chain)):
        hi = restrict(h, chain[i])
        inner = lambda S: Subspace.span(f, hi.dim, [chain[i].coordinates(v) for v in S.basis])  # noqa: E731
        ext = Extension.from_subalgebra(hi, inner(g))
        gal = galois_group_structured(ext, budget=budget, workers=workers)
        prev = inner(chain[i - 1])
        invariant = all(prev.image(M).is_subspace_of(prev) for M in gal.automorphisms())
        steps.append(RadicalStep(i, chain[i].dim, gal.order, invariant))
        log.info("radical step %d: dim %d, |Gal(h_i/g)| = %d, invariant=%s", i, chain[i].dim, gal.order, invariant)
    top = galois_group_structured(Extension.from_subalgebra(h, g), budget=budget, workers=workers)
    return RadicalReport(tuple(steps), top.order, group_analysis(top))


# ---------------------------------------------------------------------------
# Sympathetic probe
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class SympatheticProbe:
    m: int
    field: str
    sl_sympathetic: bool
    galois_order: int
    expected_order: int

    @property
    def agree(self) -> bool:
        return self.galois_order == self.expected_order


def probe_gl_over_sl(field: Field, m: int, **kwargs) -> SympatheticProbe:
    """Compare |Gal(gl(m)/sl(m))| with |k*| = p - 1 over F_p.

    Over a field of characteristic zero the quotient is k*; over F_p this is
    only reported, since sl(m) need not be sympathetic there.
    """
    require_finite(field, "probe_gl_over_sl")
    ext = gl_over_sl(field, m)
    report = structural_predicates(ext.subalgebra)
    gal = galois_group_structured(ext, **kwargs)
    probe = SympatheticProbe(m, str(field), report.sympathetic, gal.order, field.p - 1)
    log.info("gl(%d)/sl(%d) over %s: |Gal| = %d, p-1 = %d, sl sympathetic=%s",
             m, m, field, gal.order, field.p - 1, report.sympathetic)
    return probe

