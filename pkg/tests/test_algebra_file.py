import logging

import pytest

from liegal.algebra_file import (
    load_algebra,
    load_system,
    parse_algebra,
    parse_system,
    serialize_algebra,
    serialize_system,
)
from liegal.catalog import aff, basis_subspace, fivedim_perfect, heisenberg, holomorph, sl
from liegal.errors import AlgebraFileError, JacobiViolation
from liegal.linalg import Field
from liegal.products import Extension, SystemKind, canonical_extending_system, check_extending_axioms, unified_product

Q = Field.rationals()
F3 = Field.prime(3)
F5 = Field.prime(5)

AFF = """\
# aff(2) over F5
field F5
dim 2
names e1 e2
[1,2] = 0,1
"""

SL2 = """\
field Q
dim 3
[1,2] = 0,0,1
[1,3] = -2,0,0
[3,2] = 0,-2,0   # entered reversed
"""

SL2_OVER_H = """\
field F5
gdim 1
vdim 2
names h
vnames e f
left [1,1] = -2,0
left [2,1] = 0,2
theta [1,2] = 1
"""


def test_parse_aff():
    assert parse_algebra(AFF) == aff(F5)


def test_parse_sl2_with_reversed_entry():
    L = parse_algebra(SL2)
    assert L.same_structure(sl(Q, 2))
    assert parse_algebra(SL2, field=F3).same_structure(sl(F3, 2))


def test_reversed_entry_is_logged(caplog):
    with caplog.at_level(logging.DEBUG, logger="liegal.algebra_file"):
        parse_algebra(SL2)
    assert "line 5: [3,2] read as -[2,3]" in caplog.text
    caplog.clear()
    with caplog.at_level(logging.DEBUG, logger="liegal.algebra_file"):
        parse_algebra(AFF)
    assert "read as" not in caplog.text


def test_duplicate_entry_names_both_lines():
    text = AFF + "[2,1] = 0,-1\n"
    with pytest.raises(AlgebraFileError) as exc:
        parse_algebra(text)
    assert exc.value.line == 6
    assert "first given on line 5" in str(exc.value)


@pytest.mark.parametrize(
    "text, line",
    [
        ("field F5\ndim 2\n[1,1] = 0,1\n", 3),
        ("field F5\ndim 2\n[1,3] = 0,1\n", 3),
        ("field F5\ndim 2\n[1,2] = 0,1,0\n", 3),
        ("field F5\ndim 2\n[1,2] = 0,1/2\n", 3),
        ("field F5\ndim 2\n[0,1] = 0,1\n", 3),
        ("field F5\ndim x\n", 2),
        ("field F4\n", 1),
        ("field F5\ndim 2\nbracket 1 2\n", 3),
    ],
    ids=["diagonal", "range", "length", "fraction-mod-p", "zero-index", "dim", "field", "unknown"],
)
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(AlgebraFileError) as exc:
        parse_algebra(text)
    assert exc.value.line == line


def test_missing_headers():
    with pytest.raises(AlgebraFileError):
        parse_algebra("dim 2\n[1,2] = 0,1\n")
    with pytest.raises(AlgebraFileError):
        parse_algebra("field Q\n[1,2] = 0,1\n")
    with pytest.raises(AlgebraFileError):
        parse_algebra("field Q\ndim 2\nnames a\n")


def test_jacobi_violation_propagates():
    text = "field Q\ndim 3\n[1,2] = 0,0,1\n[1,3] = 1,0,0\n[2,3] = 0,1,0\n"
    with pytest.raises(JacobiViolation) as exc:
        parse_algebra(text)
    assert exc.value.triple == (0, 1, 2)


@pytest.mark.parametrize(
    "L",
    [heisenberg(Q, 2), sl(F5, 3), fivedim_perfect(F3), holomorph(sl(Q, 2))],
    ids=["h5", "sl3-F5", "fivedim-F3", "hol-sl2"],
)
def test_serialized_algebras_parse_back(L):
    text = serialize_algebra(L, comment="round trip")
    assert text.startswith("# round trip\n")
    assert parse_algebra(text) == L


def test_load_algebra(tmp_path):
    path = tmp_path / "aff.alg"
    path.write_text(AFF, encoding="utf-8")
    assert load_algebra(path) == aff(F5)
    assert load_algebra(path, field=F3) == aff(F3)


# ── systems ──────────────────────────────────────────────────────────────────
def test_parse_system_matches_sl2():
    system = parse_system(SL2_OVER_H)
    assert system.kind is SystemKind.SKEW
    assert system.v_names == ("e", "f")
    assert check_extending_axioms(system).passed
    ext = Extension.from_subalgebra(sl(F5, 2), basis_subspace(F5, 3, [2]))
    assert unified_product(system).same_structure(ext.adapted)


def test_serialized_system_parses_back(tmp_path):
    ext = Extension.from_subalgebra(heisenberg(Q, 2), basis_subspace(Q, 5, [0, 1, 2]))
    system = canonical_extending_system(ext)
    path = tmp_path / "h5.sys"
    path.write_text(serialize_system(system), encoding="utf-8")
    assert load_system(path) == system


def test_system_errors():
    with pytest.raises(AlgebraFileError) as exc:
        parse_system(SL2_OVER_H + "left [3,1] = 1,0\n")
    assert exc.value.line == 9
    with pytest.raises(AlgebraFileError) as exc:
        parse_system(SL2_OVER_H + "theta [2,1] = 1\n")
    assert "first given on line 8" in str(exc.value)
    with pytest.raises(AlgebraFileError):
        parse_system("field Q\ngdim 1\n")
