"""
liegal.products – Extensions, extending systems and unified products
====================================================================

An ``Extension`` is a Lie algebra *h* with a subalgebra *g* and a chosen
complement *V*, so that ``h = g ⊕ V`` as vector spaces.  Reading the bracket
of *h* through that decomposition gives the *canonical extending system*:

    x ⇀ a = p[x, a]            (right_action,  V × g → g)
    x ↼ a = [x, a] - p[x, a]   (left_action,   V × g → V)
    θ(x, y) = p[x, y]          (cocycle,       V × V → g)
    {x, y} = [x, y] - p[x, y]  (v_bracket,     V × V → V)

where *p* is the projection onto *g* along *V*.  Conversely an extending
system satisfying the six compatibilities below defines a Lie bracket on
``g × V`` (the unified product):

    [(a, x), (b, y)] = ([a, b] + x⇀b - y⇀a + θ(x, y),  {x, y} + x↼b - y↼a)

Special shapes get their own constructors: skew crossed products (⇀ = 0),
semidirect products (⇀ = 0 and θ = 0) and the one-dimensional extensions
``g_(λ, Δ)`` attached to a twisted derivation.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from enum import Enum
from functools import cached_property
from typing import Mapping, Optional, Sequence

from liegal.errors import (
    DimensionMismatchError,
    ExtendingAxiomError,
    FieldMismatchError,
    NotASubalgebraError,
    PreconditionError,
    TwistedDerivationError,
)
from liegal.lie import LieAlgebra, is_lie_morphism, is_subalgebra, make_lie_algebra, restrict
from liegal.linalg import (
    Field,
    Matrix,
    Subspace,
    Vector,
    invert,
    is_zero_vector,
    unit_vector,
    vec_combination,
    zero_vector,
)

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Extensions h = g ⊕ V
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Extension:
    """A Lie algebra *h*, a subalgebra *g* and a complement of *g*.

    ``change`` has the echelon basis of *g* followed by the complement as its
    columns; it maps adapted coordinates ``(g-part, V-part)`` to coordinates
    of *h*.
    """

    h: LieAlgebra
    g: Subspace
    complement: tuple[Vector, ...]
    change: Matrix
    change_inv: Matrix

    @classmethod
    def from_subalgebra(
        cls,
        h: LieAlgebra,
        g: Subspace,
        complement: Optional[Sequence[Sequence]] = None,
    ) -> Extension:
        """Split *h* along *g*.  Without *complement* the standard basis
        vectors at the non-pivot positions of *g* are used."""
        if g.field != h.field:
            raise FieldMismatchError(f"{g.field} vs {h.field}")
        if g.ambient != h.dim:
            raise DimensionMismatchError(f"subspace of ambient {g.ambient} in an algebra of dim {h.dim}")
        if not is_subalgebra(h, g):
            raise NotASubalgebraError("g is not closed under the bracket of h")
        if complement is None:
            comp = tuple(g.complement_basis())
        else:
            comp = tuple(tuple(h.field.coerce(c) for c in v) for v in complement)
        cols = list(g.basis) + list(comp)
        if len(cols) != h.dim:
            raise DimensionMismatchError(f"dim g + dim V = {len(cols)}, expected {h.dim}")
        P = Matrix.from_columns(h.field, cols, rows=h.dim)
        P_inv = invert(P)
        if P_inv is None:
            raise DimensionMismatchError("the complement meets g nontrivially")
        return cls(h, g, comp, P, P_inv)

    @property
    def field(self) -> Field:
        return self.h.field

    @property
    def n(self) -> int:
        return self.g.dim

    @property
    def m(self) -> int:
        return len(self.complement)

    def split(self, y: Sequence) -> tuple[Vector, Vector]:
        c = self.change_inv.apply(y)
        return c[:self.n], c[self.n:]

    def join(self, g_part: Sequence, v_part: Sequence) -> Vector:
        return self.change.apply(tuple(g_part) + tuple(v_part))

    @cached_property
    def retraction(self) -> Matrix:
        """The projection p of h onto g along V (p∘p = p, p|g = id, p|V = 0)."""
        f = self.field
        keep = Matrix.diagonal(f, [1] * self.n + [0] * self.m)
        return self.change @ keep @ self.change_inv

    @cached_property
    def subalgebra(self) -> LieAlgebra:
        return restrict(self.h, self.g)

    @cached_property
    def v_names(self) -> tuple[str, ...]:
        names = []
        for k, v in enumerate(self.complement):
            hit = [i for i, c in enumerate(v) if c != 0]
            if len(hit) == 1 and v[hit[0]] == self.field.one:
                names.append(self.h.names[hit[0]])
            else:
                names.append(f"v{k + 1}")
        return tuple(names)

    @cached_property
    def adapted(self) -> LieAlgebra:
        """h written in the basis (g basis, complement)."""
        N = self.h.dim
        cols = self.change.columns()
        entries = {}
        for i, j in itertools.combinations(range(N), 2):
            entries[(i, j)] = self.change_inv.apply(self.h.bracket(cols[i], cols[j]))
        return make_lie_algebra(self.field, N, entries, self.subalgebra.names + self.v_names)


# ---------------------------------------------------------------------------
# Extending systems
# ---------------------------------------------------------------------------
def _bilinear(f: Field, tensor, u: Sequence, v: Sequence, out_dim: int) -> Vector:
    acc = [0] * out_dim
    for i, ui in enumerate(u):
        if ui == 0:
            continue
        row = tensor[i]
        for j, vj in enumerate(v):
            if vj == 0:
                continue
            c = ui * vj
            for k, w in enumerate(row[j]):
                if w != 0:
                    acc[k] += c * w
    return f.normalize(acc)


def _dense(f: Field, rows: int, cols: int, out: int, entries: Optional[Mapping], *, antisymmetric: bool, label: str):
    z = zero_vector(f, out)
    table = [[z] * cols for _ in range(rows)]
    for (i, j), coeffs in (entries or {}).items():
        if not (0 <= i < rows and 0 <= j < cols):
            raise DimensionMismatchError(f"{label}[{i},{j}] out of range")
        if len(coeffs) != out:
            raise DimensionMismatchError(f"{label}[{i},{j}] has {len(coeffs)} coefficients, expected {out}")
        v = tuple(f.coerce(c) for c in coeffs)
        if antisymmetric:
            if i == j:
                if not is_zero_vector(v):
                    raise ExtendingAxiomError("L1", (i, i), v)
                continue
            if i > j:
                i, j, v = j, i, tuple(f.neg(c) for c in v)
            table[j][i] = tuple(f.neg(c) for c in v)
        table[i][j] = v
    return tuple(tuple(r) for r in table)


class SystemKind(str, Enum):
    GENERAL = "general"
    SKEW = "skew"
    CROSSED = "crossed"
    MATCHED_PAIR = "matched_pair"
    SEMIDIRECT = "semidirect"


@dataclass(frozen=True)
class ExtendingSystem:
    """Extending datum (↼, ⇀, θ, {-,-}) of a Lie algebra *g* by a space of dim *m*.

    Tensors are stored densely: ``left[x][a]`` is x↼a, ``right[x][a]`` is
    x⇀a, ``theta[x][y]`` and ``qbracket[x][y]`` hold θ and {-,-}.  The two
    pairings are antisymmetric by construction.
    """

    g: LieAlgebra
    m: int
    left: tuple
    right: tuple
    theta: tuple
    qbracket: tuple
    v_names: tuple[str, ...] = dc_field(default=())

    @classmethod
    def build(
        cls,
        g: LieAlgebra,
        m: int,
        *,
        left: Optional[Mapping] = None,
        right: Optional[Mapping] = None,
        theta: Optional[Mapping] = None,
        qbracket: Optional[Mapping] = None,
        v_names: Optional[Sequence[str]] = None,
    ) -> ExtendingSystem:
        """Assemble a system from sparse ``{(i, j): coeffs}`` entries.

        ``left`` and ``right`` are keyed by (V index, g index); ``theta`` and
        ``qbracket`` by (V index, V index), with ``(j, i)`` read as the negative.
        """
        f, n = g.field, g.dim
        names = tuple(v_names) if v_names else tuple(f"x{i + 1}" for i in range(m))
        if len(names) != m:
            raise DimensionMismatchError(f"{len(names)} names for a {m}-dim complement")
        return cls(
            g,
            m,
            _dense(f, m, n, m, left, antisymmetric=False, label="left"),
            _dense(f, m, n, n, right, antisymmetric=False, label="right"),
            _dense(f, m, m, n, theta, antisymmetric=True, label="theta"),
            _dense(f, m, m, m, qbracket, antisymmetric=True, label="qbracket"),
            names,
        )

    @property
    def field(self) -> Field:
        return self.g.field

    @property
    def n(self) -> int:
        return self.g.dim

    # ── bilinear maps on coordinate vectors ──────────────────────────────
    def left_action(self, x: Sequence, a: Sequence) -> Vector:
        return _bilinear(self.field, self.left, x, a, self.m)

    def right_action(self, x: Sequence, a: Sequence) -> Vector:
        return _bilinear(self.field, self.right, x, a, self.n)

    def cocycle(self, x: Sequence, y: Sequence) -> Vector:
        return _bilinear(self.field, self.theta, x, y, self.n)

    def v_bracket(self, x: Sequence, y: Sequence) -> Vector:
        return _bilinear(self.field, self.qbracket, x, y, self.m)

    # ── shape ────────────────────────────────────────────────────────────
    def _vanishes(self, tensor) -> bool:
        return all(is_zero_vector(v) for row in tensor for v in row)

    @property
    def right_trivial(self) -> bool:
        return self._vanishes(self.right)

    @property
    def left_trivial(self) -> bool:
        return self._vanishes(self.left)

    @property
    def theta_trivial(self) -> bool:
        return self._vanishes(self.theta)

    @property
    def kind(self) -> SystemKind:
        return classify(self)


def classify(system: ExtendingSystem) -> SystemKind:
    """Most specific shape of an extending system.

    semidirect (⇀ = 0, θ = 0) refines skew (⇀ = 0); crossed means ↼ = 0 and
    matched pair means θ = 0.
    """
    if system.right_trivial:
        return SystemKind.SEMIDIRECT if system.theta_trivial else SystemKind.SKEW
    if system.left_trivial:
        return SystemKind.CROSSED
    if system.theta_trivial:
        return SystemKind.MATCHED_PAIR
    return SystemKind.GENERAL


# ---------------------------------------------------------------------------
# Compatibility axioms
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    indices: tuple[int, ...]
    residual: Vector


@dataclass(frozen=True)
class AxiomReport:
    """First violation (in lexicographic order of basis tuples) per axiom."""

    results: tuple[tuple[str, Optional[AxiomViolation]], ...]

    @property
    def passed(self) -> bool:
        return all(v is None for _, v in self.results)

    def failures(self) -> list[AxiomViolation]:
        return [v for _, v in self.results if v is not None]

    def failed_axioms(self) -> list[str]:
        return [name for name, v in self.results if v is not None]

    def as_dict(self) -> dict[str, bool]:
        return {name: v is None for name, v in self.results}

    def raise_first(self) -> None:
        for v in self.failures():
            raise ExtendingAxiomError(v.axiom, v.indices, v.residual)


class _Checker:
    """Evaluates the axioms of one system on basis tuples."""

    def __init__(self, system: ExtendingSystem):
        self.s = system
        self.f = system.field
        self.n, self.m = system.n, system.m
        self.ev = [unit_vector(self.f, self.m, i) for i in range(self.m)]
        self.eg = [unit_vector(self.f, self.n, i) for i in range(self.n)]
        self.found: dict[str, Optional[AxiomViolation]] = {}

    def comb(self, dim: int, *terms: tuple[int, Vector]) -> Vector:
        return vec_combination(self.f, [c for c, _ in terms], [v for _, v in terms], dim)

    def record(self, axiom: str, indices: tuple[int, ...], residual: Vector) -> None:
        self.found.setdefault(axiom, None)
        if self.found[axiom] is None and not is_zero_vector(residual):
            self.found[axiom] = AxiomViolation(axiom, indices, residual)

    # ↼ is a right g-module and the pairings vanish on the diagonal
    def module(self, axiom: str) -> None:
        s, g = self.s, self.s.g
        self.found.setdefault(axiom, None)
        for x in range(self.m):
            ex = self.ev[x]
            for a, b in itertools.combinations(range(self.n), 2):
                lhs = s.left_action(ex, g.basis_bracket(a, b))
                rhs = self.comb(
                    self.m,
                    (1, s.left_action(s.left_action(ex, self.eg[a]), self.eg[b])),
                    (-1, s.left_action(s.left_action(ex, self.eg[b]), self.eg[a])),
                )
                self.record(axiom, (x, a, b), self.comb(self.m, (1, lhs), (-1, rhs)))
            self.record(axiom, (x, x), s.cocycle(ex, ex))
            self.record(axiom, (x, x), s.v_bracket(ex, ex))

    def right_leibniz(self) -> None:
        s, g = self.s, self.s.g
        self.found.setdefault("L2", None)
        for x in range(self.m):
            ex = self.ev[x]
            for a, b in itertools.combinations(range(self.n), 2):
                ea, eb = self.eg[a], self.eg[b]
                lhs = s.right_action(ex, g.basis_bracket(a, b))
                rhs = self.comb(
                    self.n,
                    (1, g.bracket(s.right_action(ex, ea), eb)),
                    (1, g.bracket(ea, s.right_action(ex, eb))),
                    (1, s.right_action(s.left_action(ex, ea), eb)),
                    (-1, s.right_action(s.left_action(ex, eb), ea)),
                )
                self.record("L2", (x, a, b), self.comb(self.n, (1, lhs), (-1, rhs)))

    def v_bracket_compat(self, axiom: str, *, with_right: bool) -> None:
        s = self.s
        self.found.setdefault(axiom, None)
        for x, y in itertools.combinations(range(self.m), 2):
            ex, ey = self.ev[x], self.ev[y]
            for a in range(self.n):
                ea = self.eg[a]
                lhs = s.left_action(s.v_bracket(ex, ey), ea)
                terms = [
                    (1, s.v_bracket(ex, s.left_action(ey, ea))),
                    (1, s.v_bracket(s.left_action(ex, ea), ey)),
                ]
                if with_right:
                    terms += [
                        (1, s.left_action(ex, s.right_action(ey, ea))),
                        (-1, s.left_action(ey, s.right_action(ex, ea))),
                    ]
                rhs = self.comb(self.m, *terms)
                self.record(axiom, (x, y, a), self.comb(self.m, (1, lhs), (-1, rhs)))

    def cocycle_compat(self, axiom: str, *, with_right: bool) -> None:
        s, g = self.s, self.s.g
        self.found.setdefault(axiom, None)
        for x, y in itertools.combinations(range(self.m), 2):
            ex, ey = self.ev[x], self.ev[y]
            th = s.cocycle(ex, ey)
            for a in range(self.n):
                ea = self.eg[a]
                twist = [
                    (1, s.cocycle(ex, s.left_action(ey, ea))),
                    (1, s.cocycle(s.left_action(ex, ea), ey)),
                ]
                if with_right:
                    lhs = s.right_action(s.v_bracket(ex, ey), ea)
                    rhs = self.comb(
                        self.n,
                        (1, s.right_action(ex, s.right_action(ey, ea))),
                        (-1, s.right_action(ey, s.right_action(ex, ea))),
                        (1, g.bracket(ea, th)),
                        *twist,
                    )
                else:
                    lhs = g.bracket(th, ea)
                    rhs = self.comb(self.n, *twist)
                self.record(axiom, (x, y, a), self.comb(self.n, (1, lhs), (-1, rhs)))

    def cyclic(self, axiom: str, *, target_v: bool, with_action: bool) -> None:
        s = self.s
        self.found.setdefault(axiom, None)
        dim = self.m if target_v else self.n
        pair = s.v_bracket if target_v else s.cocycle
        act = s.left_action if target_v else s.right_action
        for x, y, z in itertools.combinations(range(self.m), 3):
            terms = []
            for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
                eu, ev, ew = self.ev[u], self.ev[v], self.ev[w]
                terms.append((1, pair(eu, s.v_bracket(ev, ew))))
                if with_action:
                    terms.append((1, act(eu, s.cocycle(ev, ew))))
            self.record(axiom, (x, y, z), self.comb(dim, *terms))

    def report(self, order: Sequence[str]) -> AxiomReport:
        return AxiomReport(tuple((name, self.found.get(name)) for name in order))


def check_extending_axioms(system: ExtendingSystem) -> AxiomReport:
    """Evaluate the six compatibilities L1–L6 that make the unified product a Lie algebra.

    L1  ↼ is a right module; θ(x,x) = 0 and {x,x} = 0
    L2  x⇀[a,b] = [x⇀a,b] + [a,x⇀b] + (x↼a)⇀b - (x↼b)⇀a
    L3  {x,y}↼a = {x,y↼a} + {x↼a,y} + x↼(y⇀a) - y↼(x⇀a)
    L4  {x,y}⇀a = x⇀(y⇀a) - y⇀(x⇀a) + [a,θ(x,y)] + θ(x,y↼a) + θ(x↼a,y)
    L5  Σ_cyc θ(x,{y,z}) + Σ_cyc x⇀θ(y,z) = 0
    L6  Σ_cyc {x,{y,z}} + Σ_cyc x↼θ(y,z) = 0
    """
    c = _Checker(system)
    c.module("L1")
    c.right_leibniz()
    c.v_bracket_compat("L3", with_right=True)
    c.cocycle_compat("L4", with_right=True)
    c.cyclic("L5", target_v=False, with_action=True)
    c.cyclic("L6", target_v=True, with_action=True)
    report = c.report(("L1", "L2", "L3", "L4", "L5", "L6"))
    log.debug("extending axioms: %s", report.as_dict())
    return report


def check_skew_axioms(system: ExtendingSystem) -> AxiomReport:
    """The reduced compatibilities T1–T5 of a system with trivial ⇀.

    T1  as L1
    T2  {x,y}↼a = {x,y↼a} + {x↼a,y}
    T3  [θ(x,y),a] = θ(x,y↼a) + θ(x↼a,y)
    T4  Σ_cyc θ(x,{y,z}) = 0
    T5  Σ_cyc {x,{y,z}} + Σ_cyc x↼θ(y,z) = 0
    """
    if not system.right_trivial:
        raise PreconditionError("skew system", "the right action ⇀ must vanish")
    c = _Checker(system)
    c.module("T1")
    c.v_bracket_compat("T2", with_right=False)
    c.cocycle_compat("T3", with_right=False)
    c.cyclic("T4", target_v=False, with_action=False)
    c.cyclic("T5", target_v=True, with_action=True)
    return c.report(("T1", "T2", "T3", "T4", "T5"))


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------
def unified_product(
    system: ExtendingSystem,
    names: Optional[Sequence[str]] = None,
    *,
    check: bool = True,
) -> LieAlgebra:
    """The Lie algebra g ♮ V on g × V (g coordinates first).

    Raises ExtendingAxiomError naming the first failing axiom when *check* is
    on; the resulting table is validated by Jacobi either way.
    """
    if check:
        check_extending_axioms(system).raise_first()
    g, n, m = system.g, system.n, system.m
    N = n + m
    entries: dict[tuple[int, int], Vector] = {}
    for (i, j), v in g.brackets():
        entries[(i, j)] = v + zero_vector(system.field, m)
    for a in range(n):
        for x in range(m):
            # [(a,0),(0,x)] = (-x⇀a, -x↼a)
            gv = system.right[x][a]
            vv = system.left[x][a]
            entries[(a, n + x)] = tuple(system.field.neg(c) for c in gv + vv)
    for x, y in itertools.combinations(range(m), 2):
        entries[(n + x, n + y)] = system.theta[x][y] + system.qbracket[x][y]
    names = tuple(names) if names else g.names + system.v_names
    return make_lie_algebra(system.field, N, entries, names)


def semidirect_product(
    g: LieAlgebra,
    V: LieAlgebra | int,
    action: Optional[Mapping] = None,
    names: Optional[Sequence[str]] = None,
) -> LieAlgebra:
    """g ⋉ V for a right action ↼ of g on V by derivations of V.

    *V* is a Lie algebra or just a dimension (abelian).  *action* maps
    ``(x, a)`` to the coefficients of ``x ↼ a``.
    """
    if isinstance(V, int):
        V = make_lie_algebra(g.field, V, {})
    if V.field != g.field:
        raise FieldMismatchError(f"{g.field} vs {V.field}")
    system = ExtendingSystem.build(g, V.dim, left=action, qbracket=dict(V.brackets()), v_names=V.names)
    check_skew_axioms(system).raise_first()
    return unified_product(system, names, check=False)


def skew_crossed_product(
    g: LieAlgebra,
    m: int,
    *,
    left: Optional[Mapping] = None,
    theta: Optional[Mapping] = None,
    qbracket: Optional[Mapping] = None,
    v_names: Optional[Sequence[str]] = None,
    names: Optional[Sequence[str]] = None,
) -> LieAlgebra:
    """Unified product of a system with trivial ⇀, checked with T1–T5."""
    system = ExtendingSystem.build(g, m, left=left, theta=theta, qbracket=qbracket, v_names=v_names)
    check_skew_axioms(system).raise_first()
    return unified_product(system, names, check=False)


def canonical_extending_system(ext: Extension) -> ExtendingSystem:
    """Read ↼, ⇀, θ and {-,-} off the bracket of h in adapted coordinates."""
    A, n, m = ext.adapted, ext.n, ext.m
    left = tuple(tuple(A.basis_bracket(n + x, a)[n:] for a in range(n)) for x in range(m))
    right = tuple(tuple(A.basis_bracket(n + x, a)[:n] for a in range(n)) for x in range(m))
    theta = tuple(tuple(A.basis_bracket(n + x, n + y)[:n] for y in range(m)) for x in range(m))
    qbr = tuple(tuple(A.basis_bracket(n + x, n + y)[n:] for y in range(m)) for x in range(m))
    return ExtendingSystem(ext.subalgebra, m, left, right, theta, qbr, ext.v_names)


def phi_matrix(ext: Extension) -> Matrix:
    """φ(a, x) = a + x, from product coordinates to coordinates of h."""
    return ext.change


def phi_iso_check(ext: Extension, product: LieAlgebra) -> bool:
    """φ is bijective and carries the product bracket to the bracket of h."""
    P = phi_matrix(ext)
    if product.dim != ext.h.dim:
        return False
    return invert(P) is not None and is_lie_morphism(product, ext.h, P)


# ---------------------------------------------------------------------------
# Twisted derivations and codimension-one extensions
# ---------------------------------------------------------------------------
def _twisted_violation(g: LieAlgebra, lam: Vector, delta: Matrix) -> Optional[tuple[str, tuple[int, int]]]:
    f = g.field
    for i, j in itertools.combinations(range(g.dim), 2):
        gij = g.basis_bracket(i, j)
        if f.dot(lam, gij) != 0:
            return "lambda vanishes on brackets", (i, j)
        lhs = delta.apply(gij)
        rhs = vec_combination(
            f,
            (1, 1, lam[i], f.neg(lam[j])),
            (
                g.bracket(delta.column(i), g.unit(j)),
                g.bracket(g.unit(i), delta.column(j)),
                delta.column(j),
                delta.column(i),
            ),
            g.dim,
        )
        if lhs != rhs:
            return "twisted Leibniz rule", (i, j)
    return None


def twisted_derivation_check(g: LieAlgebra, lam: Sequence, delta: Matrix) -> bool:
    """λ([a,b]) = 0 and Δ[a,b] = [Δa,b] + [a,Δb] + λ(a)Δb - λ(b)Δa."""
    lam = tuple(g.field.coerce(c) for c in lam)
    if len(lam) != g.dim or delta.shape != (g.dim, g.dim):
        raise DimensionMismatchError("λ must be a functional and Δ an endomorphism of g")
    return _twisted_violation(g, lam, delta) is None


@dataclass(frozen=True)
class TwistedDerivation:
    g: LieAlgebra
    lam: Vector
    delta: Matrix

    def __post_init__(self):
        lam = tuple(self.g.field.coerce(c) for c in self.lam)
        object.__setattr__(self, "lam", lam)
        if len(lam) != self.g.dim or self.delta.shape != (self.g.dim, self.g.dim):
            raise DimensionMismatchError("λ must be a functional and Δ an endomorphism of g")
        bad = _twisted_violation(self.g, lam, self.delta)
        if bad:
            rule, (i, j) = bad
            raise TwistedDerivationError(f"{rule} fails on ({self.g.names[i]}, {self.g.names[j]})")

    def system(self, *, negate: bool = False, name: str = "x") -> ExtendingSystem:
        """The extending system x↼a = λ(a)x, x⇀a = Δ(a) of g by kx."""
        f, n = self.g.field, self.g.dim
        sign = -1 if negate else 1
        left = {(0, a): (sign * self.lam[a],) for a in range(n)}
        right = {(0, a): tuple(sign * c for c in self.delta.column(a)) for a in range(n)}
        return ExtendingSystem.build(self.g, 1, left=left, right=right, v_names=(name,))


class ExtensionConvention(str, Enum):
    UNIFIED = "unified"      # [(x,a),(y,b)] = ([x,y] + aΔy - bΔx, aλy - bλx)
    DISPLAYED = "displayed"  # [(x,a),(y,b)] = ([x,y] + bΔx - aΔy, bλx - aλy)


def single_extension(
    g: LieAlgebra,
    lam: Sequence,
    delta: Matrix,
    name: str = "x",
    convention: ExtensionConvention = ExtensionConvention.UNIFIED,
) -> LieAlgebra:
    """The codimension-one extension g_(λ,Δ) on g × k, new vector last.

    The unified convention is the unified product of the system
    x↼a = λ(a)x, x⇀a = Δ(a); its canonical system reads back (λ, Δ).  The
    displayed convention flips both signs and is only a Lie algebra when
    (-λ, Δ) is twisted as well; Jacobi rejects it otherwise.
    """
    td = TwistedDerivation(g, tuple(lam), delta)
    negate = convention is ExtensionConvention.DISPLAYED
    return unified_product(td.system(negate=negate, name=name), check=not negate)


def twisted_derivation_of(ext: Extension) -> TwistedDerivation:
    """(λ, Δ) of a codimension-one extension, read from its canonical system."""
    if ext.m != 1:
        raise PreconditionError("codimension one", f"complement has dimension {ext.m}")
    system = canonical_extending_system(ext)
    g = system.g
    lam = tuple(system.left[0][a][0] for a in range(g.dim))
    delta = Matrix.from_columns(g.field, [system.right[0][a] for a in range(g.dim)], rows=g.dim)
    return TwistedDerivation(g, lam, delta)
