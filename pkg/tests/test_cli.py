import json

import pytest
from pydantic import ValidationError

from liegal.algebra_file import load_algebra
from liegal.catalog import sl
from liegal.linalg import Field
from liegal.models import Command, JobSpec
from run import main

PERTURBED = """\
field Q
gdim 1
vdim 2
names h
vnames e f
left [1,1] = -1,0
left [2,1] = 0,2
theta [1,2] = 1
"""


def run_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


# ── happy paths ──────────────────────────────────────────────────────────────
def test_galois_heisenberg_over_f2(capsys):
    code, report = run_json(capsys, "galois", "--catalog", "heisenberg:2", "--sub", "basis:0,1,2", "--field", "F2")
    assert code == 0
    assert report["command"] == "galois"
    assert report["group_order"] == 24
    assert report["verdicts"] == {"oracles_agree": True, "closure": True}
    assert report["flags"]["abelian"] is False


def test_check_prints_text(capsys):
    assert main(["check", "--catalog", "fivedim_perfect", "--field", "F3"]) == 0
    out = capsys.readouterr().out
    assert "perfect: yes" in out
    assert "center_dim: 0" in out
    assert "verdict.jacobi: yes" in out


def test_catalog_writes_a_reusable_file(tmp_path, capsys):
    path = tmp_path / "sl2.alg"
    assert main(["catalog", "--catalog", "sl:2", "--field", "Q", "--out", str(path)]) == 0
    assert load_algebra(path) == sl(Field.rationals(), 2)
    code = main(["derivations", "--algebra", str(path), "--field", "F5", "--format", "json"])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["flags"]["outer_dim"] == 0


def test_codim1_of_t4(capsys):
    code, report = run_json(capsys, "codim1", "--catalog", "t:1", "--sub", "basis:0,1,2", "--field", "F5")
    assert code == 0
    assert report["group_order"] == 4
    assert report["verdicts"]["oracles_agree"] is True
    assert report["flags"]["cyclic"] is True


def test_artin_on_aff(capsys):
    assert main(["artin", "--catalog", "aff", "--field", "F5", "--gen", "1,0;0,-1"]) == 0
    out = capsys.readouterr().out
    assert "kind: semidirect" in out
    assert "verdict.phi_isomorphism: yes" in out


def test_hilbert90_and_cyclic_structure(capsys):
    code, report = run_json(capsys, "hilbert90", "--catalog", "aff", "--field", "F5", "--gen", "1,0;0,-1")
    assert code == 0 and report["verdicts"]["hilbert90"] is True
    code, report = run_json(capsys, "cyclic-structure", "--catalog", "aff", "--field", "F5", "--gen", "1,0;0,-1")
    assert code == 0 and report["verdicts"]["phi_isomorphism"] is True


def test_radical_chains(capsys):
    code, report = run_json(
        capsys, "radical", "--catalog", "l:2", "--field", "F3", "--chain", "basis:0,1,2", "basis:0,1,2,3"
    )
    assert code == 0
    assert report["group_order"] == 36
    code, report = run_json(
        capsys, "radical", "--catalog", "heisenberg:2", "--field", "F2", "--chain", "basis:0,1,2", "basis:0,1,2,3"
    )
    assert code == 1
    assert report["verdicts"] == {"radical": False, "solvable": True}


def test_failing_axioms_exit_with_one(tmp_path, capsys):
    path = tmp_path / "bad.sys"
    path.write_text(PERTURBED, encoding="utf-8")
    code, report = run_json(capsys, "product", "--system", str(path))
    assert code == 1
    assert report["flags"]["failed_axioms"] == ["L4"]
    assert "algebra" not in report["flags"]


# ── error statuses ───────────────────────────────────────────────────────────
@pytest.mark.parametrize(
    "argv, status",
    [
        (["galois", "--catalog", "aff", "--sub", "basis:0", "--field", "Q"], 5),
        (["galois", "--catalog", "heisenberg:2", "--sub", "basis:0,1,2", "--field", "F3",
          "--method", "direct", "--budget", "100"], 3),
        (["hilbert90", "--catalog", "aff", "--field", "F3", "--gen", "1,0;1,1"], 4),
        (["action", "--catalog", "sl:2", "--field", "F5", "--gen", "2,0,0;0,3,0;0,0,1", "--closure-cap", "2"], 6),
        (["cyclic-structure", "--catalog", "sl:2", "--field", "F5", "--gen", "2,0,0;0,3,0;0,0,1"], 7),
        (["galois", "--catalog", "aff", "--field", "F5"], 2),
        (["check", "--catalog", "aff", "--field", "R"], 2),
        (["check", "--catalog", "nope", "--field", "F5"], 2),
        (["galois", "--catalog", "sl:2", "--sub", "basis:0,1", "--field", "F5"], 2),
        (["action", "--catalog", "aff", "--field", "F5", "--gen", "2,0;0,1"], 2),
    ],
    ids=["over-Q", "budget", "modular", "closure-cap", "precondition", "no-sub", "bad-field",
         "unknown-entry", "not-subalgebra", "not-automorphism"],
)
def test_exit_statuses(argv, status, capsys):
    assert main(argv) == status
    assert capsys.readouterr().out == ""


def test_unknown_command_is_an_argparse_error():
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_job_validation():
    with pytest.raises(ValidationError):
        JobSpec(command=Command.GALOIS, catalog="aff")
    with pytest.raises(ValidationError):
        JobSpec(command=Command.HILBERT90, catalog="aff", generators=["1,0;0,1"], gamma=1)
    with pytest.raises(ValidationError):
        JobSpec(command=Command.CHECK, catalog="aff", algebra="aff.alg")
    job = JobSpec(command=Command.CHECK, catalog="aff", field="F_7")
    assert job.budget >= 1 and job.workers >= 1
