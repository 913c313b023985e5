"""
liegal.algebra_file – Plain-text algebra and extending-system files
===================================================================

Algebra file::

    # aff(2) over F5
    field F5
    dim 2
    names e1 e2
    [1,2] = 0,1

Header lines ``field``, ``dim`` and the optional ``names``; one line per
nonzero bracket of basis vectors, 1-based indices ([j,i] is read as
-[i,j]), the coefficients of the result separated by commas.  ``#`` starts a comment.

System file (an extending datum of g by V)::

    field Q
    gdim 3
    vdim 1
    names e1 e2 e3
    vnames x
    g [1,2] = 0,0,1
    left [1,3] = -1
    right [1,2] = 0,0,1
    theta [1,2] = …
    qbracket [1,2] = …

``left``/``right`` are keyed by [V index, g index]; ``theta``/``qbracket`` by
a pair of V indices.  Every parse error carries its line number.
"""
from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Optional, Union

from liegal.errors import AlgebraFileError, BracketTableError, LieGalError
from liegal.lie import LieAlgebra, make_lie_algebra
from liegal.linalg import Field
from liegal.products import ExtendingSystem

log = logging.getLogger(__name__)

_ENTRY_RE = re.compile(r"^\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*=\s*(.+)$")
_TABLES = ("g", "left", "right", "theta", "qbracket")


# ---------------------------------------------------------------------------
# Shared line handling
# ---------------------------------------------------------------------------
def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_int(value: str, what: str, lineno: int) -> int:
    try:
        n = int(value)
    except ValueError:
        raise AlgebraFileError(f"{what} must be an integer, got {value!r}", lineno) from None
    if n < 0:
        raise AlgebraFileError(f"{what} must be non-negative", lineno)
    return n


def _parse_entry(field: Field, body: str, lineno: int) -> tuple[int, int, tuple]:
    m = _ENTRY_RE.match(body)
    if not m:
        raise AlgebraFileError(f"expected '[i,j] = c1,...,cn', got {body!r}", lineno)
    i, j = int(m.group(1)), int(m.group(2))
    if i == 0 or j == 0:
        raise AlgebraFileError("indices are 1-based", lineno)
    try:
        coeffs = tuple(field.parse_scalar(c) for c in m.group(3).split(","))
    except ValueError as exc:
        raise AlgebraFileError(str(exc), lineno) from None
    return i - 1, j - 1, coeffs


def _parse_field(value: str, lineno: int) -> Field:
    try:
        return Field.parse(value)
    except (ValueError, LieGalError) as exc:
        raise AlgebraFileError(str(exc), lineno) from None


# ---------------------------------------------------------------------------
# Algebras
# ---------------------------------------------------------------------------
def parse_algebra(text: str, *, field: Optional[Field] = None) -> LieAlgebra:
    """Parse an algebra file.

    *field* overrides the ``field`` header (useful to reduce a Q file mod p).
    Jacobi violations propagate as JacobiViolation with the basis triple.
    """
    header_field: Optional[Field] = None
    dim: Optional[int] = None
    names: Optional[list[str]] = None
    entries: dict[tuple[int, int], tuple] = {}
    where: dict[tuple[int, int], int] = {}
    pending: list[tuple[int, str]] = []

    for lineno, line in _lines(text):
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "field":
            header_field = _parse_field(rest, lineno)
        elif key == "dim":
            dim = _parse_int(rest, "dim", lineno)
        elif key == "names":
            names = rest.split()
        elif line.startswith("["):
            pending.append((lineno, line))
        else:
            raise AlgebraFileError(f"unknown line {line!r}", lineno)

    f = field or header_field
    if f is None:
        raise AlgebraFileError("missing 'field' header")
    if dim is None:
        raise AlgebraFileError("missing 'dim' header")
    if names is not None and len(names) != dim:
        raise AlgebraFileError(f"{len(names)} names for dimension {dim}")

    for lineno, line in pending:
        i, j, coeffs = _parse_entry(f, line, lineno)
        if i == j:
            raise AlgebraFileError(f"diagonal entry [{i + 1},{j + 1}]", lineno)
        if i >= dim or j >= dim:
            raise AlgebraFileError(f"index out of range for dimension {dim}", lineno)
        if len(coeffs) != dim:
            raise AlgebraFileError(f"{len(coeffs)} coefficients, expected {dim}", lineno)
        pair = (min(i, j), max(i, j))
        if pair in where:
            raise AlgebraFileError(
                f"duplicate entry for [{pair[0] + 1},{pair[1] + 1}] (first given on line {where[pair]})", lineno
            )
        where[pair] = lineno
        if i > j:
            log.debug("line %d: [%d,%d] read as -[%d,%d]", lineno, i + 1, j + 1, j + 1, i + 1)
        entries[pair] = coeffs if i < j else tuple(f.neg(c) for c in coeffs)

    try:
        L = make_lie_algebra(f, dim, entries, names)
    except BracketTableError as exc:
        raise AlgebraFileError(str(exc)) from None
    log.debug("parsed %r with %d bracket lines", L, len(entries))
    return L


def serialize_algebra(L: LieAlgebra, comment: Optional[str] = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines += [f"field {L.field}", f"dim {L.dim}", "names " + " ".join(L.names)]
    for (i, j), v in sorted(L.brackets()):
        lines.append(f"[{i + 1},{j + 1}] = " + ",".join(L.field.format(c) for c in v))
    return "\n".join(lines) + "\n"


def load_algebra(path: Union[str, Path], *, field: Optional[Field] = None) -> LieAlgebra:
    return parse_algebra(Path(path).read_text(encoding="utf-8"), field=field)


# ---------------------------------------------------------------------------
# Extending systems
# ---------------------------------------------------------------------------
def parse_system(text: str, *, field: Optional[Field] = None) -> ExtendingSystem:
    """Parse a system file into an ExtendingSystem (axioms are not checked here)."""
    header_field: Optional[Field] = None
    gdim = vdim = None
    names = vnames = None
    tables: dict[str, list[tuple[int, str]]] = {t: [] for t in _TABLES}

    for lineno, line in _lines(text):
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "field":
            header_field = _parse_field(rest, lineno)
        elif key == "gdim":
            gdim = _parse_int(rest, "gdim", lineno)
        elif key == "vdim":
            vdim = _parse_int(rest, "vdim", lineno)
        elif key == "names":
            names = rest.split()
        elif key == "vnames":
            vnames = rest.split()
        elif key in tables:
            tables[key].append((lineno, rest))
        else:
            raise AlgebraFileError(f"unknown line {line!r}", lineno)

    f = field or header_field
    if f is None:
        raise AlgebraFileError("missing 'field' header")
    if gdim is None or vdim is None:
        raise AlgebraFileError("missing 'gdim' or 'vdim' header")

    # (rows, cols, coefficient length) per table, 0-based bounds
    shapes = {
        "g": (gdim, gdim, gdim),
        "left": (vdim, gdim, vdim),
        "right": (vdim, gdim, gdim),
        "theta": (vdim, vdim, gdim),
        "qbracket": (vdim, vdim, vdim),
    }
    parsed: dict[str, dict[tuple[int, int], tuple]] = {}
    for name, items in tables.items():
        rows, cols, width = shapes[name]
        antisymmetric = name in ("g", "theta", "qbracket")
        seen: dict[tuple[int, int], int] = {}
        out = {}
        for lineno, body in items:
            i, j, coeffs = _parse_entry(f, body, lineno)
            if i >= rows or j >= cols:
                raise AlgebraFileError(f"{name} index out of range", lineno)
            if len(coeffs) != width:
                raise AlgebraFileError(f"{name} entry has {len(coeffs)} coefficients, expected {width}", lineno)
            if antisymmetric and i == j:
                raise AlgebraFileError(f"diagonal {name} entry", lineno)
            pair = (min(i, j), max(i, j)) if antisymmetric else (i, j)
            if pair in seen:
                raise AlgebraFileError(f"duplicate {name} entry (first given on line {seen[pair]})", lineno)
            seen[pair] = lineno
            out[(i, j)] = coeffs
        parsed[name] = out

    try:
        g = make_lie_algebra(f, gdim, parsed["g"], names)
    except BracketTableError as exc:
        raise AlgebraFileError(f"g: {exc}") from None
    return ExtendingSystem.build(
        g,
        vdim,
        left=parsed["left"],
        right=parsed["right"],
        theta=parsed["theta"],
        qbracket=parsed["qbracket"],
        v_names=vnames,
    )


def serialize_system(system: ExtendingSystem) -> str:
    f, n, m = system.field, system.n, system.m
    fmt = lambda v: ",".join(f.format(c) for c in v)  # noqa: E731
    lines = [
        f"field {f}",
        f"gdim {n}",
        f"vdim {m}",
        "names " + " ".join(system.g.names),
        "vnames " + " ".join(system.v_names),
    ]
    for (i, j), v in sorted(system.g.brackets()):
        lines.append(f"g [{i + 1},{j + 1}] = {fmt(v)}")
    for label, table, cols in (("left", system.left, n), ("right", system.right, n)):
        for x in range(m):
            for a in range(cols):
                if any(c != 0 for c in table[x][a]):
                    lines.append(f"{label} [{x + 1},{a + 1}] = {fmt(table[x][a])}")
    for label, table in (("theta", system.theta), ("qbracket", system.qbracket)):
        for x in range(m):
            for y in range(x + 1, m):
                if any(c != 0 for c in table[x][y]):
                    lines.append(f"{label} [{x + 1},{y + 1}] = {fmt(table[x][y])}")
    return "\n".join(lines) + "\n"


def load_system(path: Union[str, Path], *, field: Optional[Field] = None) -> ExtendingSystem:
    return parse_system(Path(path).read_text(encoding="utf-8"), field=field)
