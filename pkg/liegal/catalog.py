"""
liegal.catalog – Named Lie algebras, derivations and extensions
===============================================================

Every entry is built over a caller-chosen field.  Bases are ordered so that
the usual chains are initial segments:

* ``heisenberg:n``  h^(2n+1) on (w, x1, y1, …, xn, yn), [x_i, y_i] = w
* ``l:n``           l(2n+1) on (G, E1, F1, …, En, Fn), [E_i, G] = E_i, [G, F_i] = F_i
* ``t:n`` / ``b:n`` one-dimensional extensions of h^(2n+1), new vector last

so ``basis:0,1,2`` is h^3 inside h^5 and l(3) inside l(5).

``catalog("sl", 2)`` uses e1 = E12, e2 = E21, e3 = H, giving
[e1,e2] = e3, [e1,e3] = -2e1, [e2,e3] = 2e2.
"""
from __future__ import annotations

import logging
from typing import Callable

from liegal.errors import PreconditionError
from liegal.lie import (
    LieAlgebra,
    derivations,
    derived_subalgebra,
    make_lie_algebra,
    matrix_lie_algebra,
    unflatten,
)
from liegal.linalg import Field, Matrix, Subspace, unit_vector
from liegal.products import Extension, TwistedDerivation, single_extension

log = logging.getLogger(__name__)


def _elementary(field: Field, m: int, i: int, j: int) -> Matrix:
    entries = [0] * (m * m)
    entries[i * m + j] = 1
    return Matrix(field, m, m, field.normalize(entries))


def _require_at_least(value: int, least: int, what: str = "n") -> None:
    if value < least:
        raise ValueError(f"{what} ≥ {least} required, got {what} = {value}")


# ---------------------------------------------------------------------------
# Small named algebras
# ---------------------------------------------------------------------------
def abelian(field: Field, n: int) -> LieAlgebra:
    _require_at_least(n, 1)
    return make_lie_algebra(field, n, {}, [f"a{i + 1}" for i in range(n)])


def aff(field: Field) -> LieAlgebra:
    """aff(2): [e1, e2] = e2."""
    return make_lie_algebra(field, 2, {(0, 1): (0, 1)})


def gl(field: Field, m: int) -> LieAlgebra:
    """gl(m) on e11, e12, …, emm (row-major)."""
    _require_at_least(m, 1, "m")
    mats = [_elementary(field, m, i, j) for i in range(m) for j in range(m)]
    names = [f"e{i + 1}{j + 1}" for i in range(m) for j in range(m)]
    return matrix_lie_algebra(field, mats, names)


def sl(field: Field, m: int) -> LieAlgebra:
    """sl(m) on E_ij (i != j, row-major) followed by H_i = E_ii - E_(i+1)(i+1)."""
    _require_at_least(m, 2, "m")
    if m == 2:
        return make_lie_algebra(field, 3, {(0, 1): (0, 0, 1), (0, 2): (-2, 0, 0), (1, 2): (0, 2, 0)})
    mats, names = [], []
    for i in range(m):
        for j in range(m):
            if i != j:
                mats.append(_elementary(field, m, i, j))
                names.append(f"E{i + 1}{j + 1}")
    for i in range(m - 1):
        mats.append(_elementary(field, m, i, i) - _elementary(field, m, i + 1, i + 1))
        names.append(f"H{i + 1}")
    return matrix_lie_algebra(field, mats, names)


def heisenberg(field: Field, n: int) -> LieAlgebra:
    """h^(2n+1) on (w, x1, y1, …): [x_i, y_i] = w."""
    _require_at_least(n, 1)
    dim = 2 * n + 1
    names = ["w"] + [s for i in range(n) for s in (f"x{i + 1}", f"y{i + 1}")]
    entries = {(1 + 2 * i, 2 + 2 * i): unit_vector(field, dim, 0) for i in range(n)}
    return make_lie_algebra(field, dim, entries, names)


def metabelian_l(field: Field, n: int) -> LieAlgebra:
    """l(2n+1) on (G, E1, F1, …): [E_i, G] = E_i, [G, F_i] = F_i."""
    _require_at_least(n, 1)
    dim = 2 * n + 1
    names = ["G"] + [s for i in range(n) for s in (f"E{i + 1}", f"F{i + 1}")]
    entries = {}
    for i in range(n):
        e, f = 1 + 2 * i, 2 + 2 * i
        entries[(e, 0)] = unit_vector(field, dim, e)
        entries[(0, f)] = unit_vector(field, dim, f)
    return make_lie_algebra(field, dim, entries, names)


def fivedim_perfect(field: Field) -> LieAlgebra:
    """A perfect 5-dim algebra sl(2) ⋉ k^2 whose outer derivation has a trivial Galois group."""
    def e(i: int):
        return unit_vector(field, 5, i - 1)

    entries = {
        (0, 1): e(3),
        (0, 2): tuple(-2 * c for c in e(1)),
        (0, 4): e(4),
        (2, 3): e(4),
        (1, 2): tuple(2 * c for c in e(2)),
        (1, 3): e(5),
        (2, 4): tuple(-c for c in e(5)),
    }
    return make_lie_algebra(field, 5, entries)


# ---------------------------------------------------------------------------
# Twisted derivations of the catalog
# ---------------------------------------------------------------------------
def heisenberg_twisted_derivation(field: Field, n: int) -> TwistedDerivation:
    """λ(x_i) = λ(y_i) = 1, λ(w) = 0; Δ(x_i) = Δ(y_i) = w, Δ(w) = 0."""
    h = heisenberg(field, n)
    lam = [0] + [1] * (2 * n)
    w = unit_vector(field, h.dim, 0)
    cols = [(field.zero,) * h.dim] + [w] * (2 * n)
    return TwistedDerivation(h, tuple(lam), Matrix.from_columns(field, cols, rows=h.dim))


def heisenberg_outer_derivation(field: Field, n: int) -> TwistedDerivation:
    """λ = 0, Δ(x_i) = y_i and zero elsewhere."""
    h = heisenberg(field, n)
    cols = [(field.zero,) * h.dim for _ in range(h.dim)]
    for i in range(n):
        cols[1 + 2 * i] = unit_vector(field, h.dim, 2 + 2 * i)
    return TwistedDerivation(h, (0,) * h.dim, Matrix.from_columns(field, cols, rows=h.dim))


def fivedim_outer_derivation(field: Field) -> TwistedDerivation:
    """Δ e1 = e1 - e4, Δ e2 = -e2, Δ e3 = e5, Δ e4 = -e4, Δ e5 = -2 e5."""
    g = fivedim_perfect(field)
    rows = [
        [1, 0, 0, 0, 0],
        [0, -1, 0, 0, 0],
        [0, 0, 0, 0, 0],
        [-1, 0, 0, -1, 0],
        [0, 0, 1, 0, -2],
    ]
    return TwistedDerivation(g, (0,) * 5, Matrix.from_rows(field, rows))


# ---------------------------------------------------------------------------
# One-dimensional extensions
# ---------------------------------------------------------------------------
def t_algebra(field: Field, n: int) -> LieAlgebra:
    """𝔱^(2n+2) = h^(2n+1)_(λ,Δ) for the twisted derivation above, new vector u."""
    td = heisenberg_twisted_derivation(field, n)
    return single_extension(td.g, td.lam, td.delta, name="u")


def t_displayed(field: Field, n: int) -> LieAlgebra:
    """The bracket list [x_i, y_i] = w, [u, x_i] = [u, y_i] = w + u."""
    h = heisenberg(field, n)
    dim = h.dim + 1
    u = dim - 1
    w_plus_u = tuple(field.one if k in (0, u) else field.zero for k in range(dim))
    entries = {(1 + 2 * i, 2 + 2 * i): unit_vector(field, dim, 0) for i in range(n)}
    for k in range(1, h.dim):
        entries[(u, k)] = w_plus_u
    return make_lie_algebra(field, dim, entries, h.names + ("u",))


def b_algebra(field: Field, n: int) -> LieAlgebra:
    """𝔟^(2n+2) = h^(2n+1)_(Δ) with Δ(x_i) = y_i; [z, x_i] = y_i."""
    td = heisenberg_outer_derivation(field, n)
    return single_extension(td.g, td.lam, td.delta, name="z")


def fivedim_extension(field: Field) -> LieAlgebra:
    td = fivedim_outer_derivation(field)
    return single_extension(td.g, td.lam, td.delta, name="d")


# ---------------------------------------------------------------------------
# Holomorph and gl ⋉ k^n
# ---------------------------------------------------------------------------
def holomorph(base: LieAlgebra) -> LieAlgebra:
    """g × Der(g) with [(a,φ),(b,ψ)] = ([a,b] + φ(b) - ψ(a), [φ,ψ])."""
    f, n = base.field, base.dim
    der = derivations(base)
    d = der.dim
    mats = [unflatten(f, n, v) for v in der.basis]
    entries = {}
    for (i, j), v in base.brackets():
        entries[(i, j)] = v + (f.zero,) * d
    for i in range(n):
        for k in range(d):
            entries[(i, n + k)] = tuple(f.neg(c) for c in mats[k].column(i)) + (f.zero,) * d
    for k in range(d):
        for l in range(k + 1, d):
            comm = (mats[k] @ mats[l]) - (mats[l] @ mats[k])
            coords = der.coordinates(comm.entries)
            entries[(n + k, n + l)] = (f.zero,) * n + coords
    names = base.names + tuple(f"D{k + 1}" for k in range(d))
    return make_lie_algebra(f, n + d, entries, names)


def gl_semidirect(field: Field, n: int) -> LieAlgebra:
    """gl(n) ⋉ k^n as the matrices [[A, v], [0, 0]] in gl(n+1)."""
    _require_at_least(n, 1)
    size = n + 1
    mats = [_elementary(field, size, i, j) for i in range(n) for j in range(n)]
    mats += [_elementary(field, size, i, n) for i in range(n)]
    names = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)] + [f"v{i + 1}" for i in range(n)]
    return matrix_lie_algebra(field, mats, names)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------
CATALOG: dict[str, Callable[..., LieAlgebra]] = {
    "abelian": abelian,
    "aff": aff,
    "gl": gl,
    "sl": sl,
    "heisenberg": heisenberg,
    "l": metabelian_l,
    "t": t_algebra,
    "t_displayed": t_displayed,
    "b": b_algebra,
    "fivedim_perfect": fivedim_perfect,
    "fivedim_extension": fivedim_extension,
    "gl_semidirect": gl_semidirect,
}


def catalog(name: str, *params, field: Field) -> LieAlgebra:
    """Build a named algebra.  ``holomorph`` takes another catalog entry:
    ``catalog("holomorph", "sl", 2, field=F)``."""
    if name == "holomorph":
        if not params:
            raise ValueError("holomorph needs a base algebra, e.g. holomorph:sl,2")
        return holomorph(catalog(str(params[0]), *params[1:], field=field))
    try:
        builder = CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown catalog entry {name!r}; known: {', '.join(sorted(CATALOG) + ['holomorph'])}")
    return builder(field, *(int(p) for p in params))


def parse_catalog_spec(text: str) -> tuple[str, list[str]]:
    """``name[:p1,p2,…]`` → (name, params)."""
    name, _, rest = text.strip().partition(":")
    params = [p.strip() for p in rest.split(",") if p.strip()] if rest else []
    return name, params


def catalog_from_spec(text: str, field: Field) -> LieAlgebra:
    name, params = parse_catalog_spec(text)
    return catalog(name, *params, field=field)


def basis_subspace(field: Field, dim: int, indices: list[int]) -> Subspace:
    return Subspace.span(field, dim, [unit_vector(field, dim, i) for i in indices])


def catalog_extensions(field: Field) -> list[tuple[str, Extension]]:
    """Every extension of the catalog, labelled, for whole-catalog checks."""
    out: list[tuple[str, Extension]] = []

    def add(label: str, h: LieAlgebra, idx: list[int]) -> None:
        out.append((label, Extension.from_subalgebra(h, basis_subspace(field, h.dim, idx))))

    add("sl2/ke3", sl(field, 2), [2])
    add("aff/ke1", aff(field), [0])
    add("h5/h3", heisenberg(field, 2), [0, 1, 2])
    add("l5/l3", metabelian_l(field, 2), [0, 1, 2])
    add("t4/h3", t_algebra(field, 1), [0, 1, 2])
    add("t4_displayed/h3", t_displayed(field, 1), [0, 1, 2])
    add("b4/h3", b_algebra(field, 1), [0, 1, 2])
    add("fivedim", fivedim_extension(field), [0, 1, 2, 3, 4])
    if field.characteristic != 2:
        add("gl2/sl2", _gl_sl_model(field, 2), [0, 1, 2])
    add("holomorph(sl2)/sl2", holomorph(sl(field, 2)), [0, 1, 2])
    gs = gl_semidirect(field, 2)
    out.append(("gl2xk2/derived", Extension.from_subalgebra(gs, derived_subalgebra(gs))))
    return out


def _gl_sl_model(field: Field, m: int) -> LieAlgebra:
    """gl(m) on the sl(m) basis followed by the identity."""
    _require_at_least(m, 2, "m")
    if field.characteristic and m % field.characteristic == 0:
        raise PreconditionError("characteristic does not divide m", f"I lies in sl({m}) over {field}")
    mats = [_elementary(field, m, i, j) for i in range(m) for j in range(m) if i != j]
    mats += [_elementary(field, m, i, i) - _elementary(field, m, i + 1, i + 1) for i in range(m - 1)]
    mats.append(Matrix.identity(field, m))
    return matrix_lie_algebra(field, mats, sl(field, m).names + ("I",))


def gl_over_sl(field: Field, m: int) -> Extension:
    """gl(m) ⊃ sl(m) with the identity as complement."""
    h = _gl_sl_model(field, m)
    return Extension.from_subalgebra(h, basis_subspace(field, h.dim, list(range(h.dim - 1))))
