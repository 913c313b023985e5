"""
liegal.jobs – Subcommand execution
==================================

``run(job)`` loads the inputs named by a validated ``JobSpec``, dispatches on
its command and returns a ``Report``.  Verdicts in the report decide the exit
status; infeasible computations propagate as ``LieGalError`` subclasses.
"""
from __future__ import annotations

import logging
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Optional

from liegal import config
from liegal.actions import (
    GroupAction,
    artin_reconstruct,
    close_group,
    cyclic_structure,
    gamma_abelian_check,
    hilbert90_check,
    invariants,
    reynolds,
)
from liegal.algebra_file import load_algebra, load_system, serialize_algebra, serialize_system
from liegal.catalog import basis_subspace, catalog_from_spec
from liegal.errors import ModularCaseError
from liegal.galois import (
    codim1_group,
    codim1_to_galois,
    compare_oracles,
    galois_group_direct,
    galois_group_structured,
    group_analysis,
    verify_radical_chain,
)
from liegal.lie import (
    LieAlgebra,
    center,
    centralizer,
    derivations,
    derived_series,
    derived_subalgebra,
    is_ideal,
    is_subalgebra,
    lower_central_series,
    structural_predicates,
)
from liegal.linalg import Field, Matrix, Subspace
from liegal.models import Command, GaloisMethod, JobSpec, ProductKind, Report
from liegal.products import (
    Extension,
    canonical_extending_system,
    check_extending_axioms,
    check_skew_axioms,
    classify,
    phi_iso_check,
    twisted_derivation_of,
    unified_product,
)

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------
def parse_rows(field: Field, text: str) -> list[tuple]:
    """'1,0,0;0,1,0' → list of coordinate rows."""
    rows = [r for r in text.split(";") if r.strip()]
    return [field.normalize(field.parse_scalar(c) for c in r.split(",")) for r in rows]


def parse_subspace(field: Field, dim: int, text: str) -> Subspace:
    """``basis:0,1,2`` (0-based indices) or ``rows:…`` spanning vectors."""
    kind, _, body = text.partition(":")
    if kind == "basis":
        indices = [int(i) for i in body.split(",") if i.strip()]
        if any(not 0 <= i < dim for i in indices):
            raise ValueError(f"basis index out of range in {text!r} (dimension {dim})")
        return basis_subspace(field, dim, indices)
    if kind == "rows":
        return Subspace.span(field, dim, parse_rows(field, body))
    raise ValueError(f"subspace must be 'basis:…' or 'rows:…', got {text!r}")


def parse_matrix(field: Field, dim: int, text: str) -> Matrix:
    rows = parse_rows(field, text)
    M = Matrix.from_rows(field, rows)
    if M.shape != (dim, dim):
        raise ValueError(f"generator {text!r} is {M.rows}x{M.cols}, expected {dim}x{dim}")
    return M


def job_field(job: JobSpec) -> Optional[Field]:
    return Field.parse(job.field) if job.field else None


def load_input(job: JobSpec) -> LieAlgebra:
    if job.catalog:
        return catalog_from_spec(job.catalog, job_field(job) or Field.parse(config.DEFAULT_FIELD))
    return load_algebra(Path(job.algebra), field=job_field(job))


def load_extension(job: JobSpec, h: LieAlgebra) -> Extension:
    g = parse_subspace(h.field, h.dim, job.sub)
    comp = parse_rows(h.field, job.complement) if job.complement else None
    return Extension.from_subalgebra(h, g, comp)


def load_action(job: JobSpec, h: LieAlgebra) -> GroupAction:
    gens = [parse_matrix(h.field, h.dim, g) for g in job.generators]
    return close_group(h, gens, cap=job.closure_cap)


def _inputs(job: JobSpec) -> dict:
    keys = ("algebra", "catalog", "system", "sub", "complement", "chain", "generators")
    d = {k: getattr(job, k) for k in keys if getattr(job, k)}
    if job.command in (Command.HILBERT90, Command.CYCLIC_STRUCTURE):
        d["gamma"] = job.gamma
    return d


class _Steps:
    """Step banners and per-step timings."""

    def __init__(self, total: int):
        self.total = total
        self.count = 0
        self.timings: dict[str, float] = {}

    @contextmanager
    def step(self, name: str, message: str):
        self.count += 1
        mark = "╔══" if self.count == 1 else "╠══"
        log.info("%s Step %d/%d : %s …", mark, self.count, self.total, message)
        started = time.perf_counter()
        yield
        self.timings[name] = time.perf_counter() - started


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------
def _check(job: JobSpec, report: Report, steps: _Steps) -> None:
    with steps.step("load", "Loading algebra"):
        h = load_input(job)
    with steps.step("predicates", "Structural predicates"):
        s = structural_predicates(h)
    report.field = str(h.field)
    report.verdicts["jacobi"] = True
    report.flags.update(s.as_dict())
    report.flags.update(dim=h.dim, center_dim=s.center_dim, derivation_dim=s.derivation_dim)
    if job.sub:
        S = parse_subspace(h.field, h.dim, job.sub)
        report.verdicts["subalgebra"] = is_subalgebra(h, S)
        report.flags["ideal"] = is_ideal(h, S)


def _subspaces(job: JobSpec, report: Report, steps: _Steps) -> None:
    with steps.step("load", "Loading algebra"):
        h = load_input(job)
    with steps.step("subspaces", "Derived algebra, center, series"):
        report.field = str(h.field)
        report.flags["derived_dim"] = derived_subalgebra(h).dim
        report.flags["center"] = [h.format_vector(v) for v in center(h).basis]
        report.flags["derived_series"] = [S.dim for S in derived_series(h)]
        report.flags["lower_central_series"] = [S.dim for S in lower_central_series(h)]
        if job.sub:
            S = parse_subspace(h.field, h.dim, job.sub)
            report.flags["centralizer"] = [h.format_vector(v) for v in centralizer(h, S).basis]


def _derivations(job: JobSpec, report: Report, steps: _Steps) -> None:
    with steps.step("load", "Loading algebra"):
        h = load_input(job)
    with steps.step("derivations", "Solving for derivations"):
        s = structural_predicates(h)
        der = derivations(h)
    report.field = str(h.field)
    report.flags.update(
        derivation_dim=der.dim,
        inner_dim=s.inner_derivation_dim,
        outer_dim=der.dim - s.inner_derivation_dim,
        complete=s.complete,
    )


def _product(job: JobSpec, report: Report, steps: _Steps) -> None:
    with steps.step("load", "Loading extending system"):
        system = load_system(Path(job.system), field=job_field(job))
    report.field = str(system.field)
    with steps.step("axioms", f"Checking the {job.product_kind.value} axioms"):
        if job.product_kind is ProductKind.UNIFIED:
            axioms = check_extending_axioms(system)
        else:
            axioms = check_skew_axioms(system)
            if job.product_kind is ProductKind.SEMIDIRECT:
                report.verdicts["cocycle_trivial"] = system.theta_trivial
    report.verdicts["axioms"] = axioms.passed
    report.flags["failed_axioms"] = axioms.failed_axioms()
    report.flags["kind"] = classify(system).value
    if axioms.passed:
        with steps.step("product", "Building the product"):
            report.flags["algebra"] = serialize_algebra(unified_product(system, check=False))


def _canonical(job: JobSpec, report: Report, steps: _Steps) -> None:
    with steps.step("load", "Loading extension"):
        h = load_input(job)
        ext = load_extension(job, h)
    report.field = str(h.field)
    with steps.step("canonical", "Reading off the canonical system"):
        system = canonical_extending_system(ext)
        report.verdicts["axioms"] = check_extending_axioms(system).passed
        report.verdicts["phi_isomorphism"] = phi_iso_check(ext, unified_product(system, check=False))
    report.flags["kind"] = classify(system).value
    report.flags["system"] = serialize_system(system)


def _galois(job: JobSpec, report: Report, steps: _Steps) -> None:
    with steps.step("load", "Loading extension"):
        h = load_input(job)
        ext = load_extension(job, h)
    report.field = str(h.field)
    kw = dict(budget=job.budget, workers=job.workers)
    with steps.step("enumerate", f"Enumerating Gal(h/g) ({job.method.value})"):
        if job.method is GaloisMethod.BOTH:
            cmp = compare_oracles(ext, **kw)
            group = cmp.structured
            report.verdicts["oracles_agree"] = cmp.agree
        elif job.method is GaloisMethod.STRUCTURED:
            group = galois_group_structured(ext, **kw)
        else:
            group = galois_group_direct(ext, **kw)
    with steps.step("analysis", "Analysing the group"):
        analysis = group_analysis(group)
        report.verdicts["closure"] = group.verify_closure()
    report.group_order = group.order
    report.flags.update(analysis.as_dict())
    report.flags["derived_orders"] = list(analysis.derived_orders)
    report.flags["invariant_dim"] = group.invariant_subspace().dim


def _action(job: JobSpec, report: Report, steps: _Steps) -> None:
    with steps.step("load", "Closing the generators"):
        h = load_input(job)
        action = load_action(job, h)
    report.field = str(h.field)
    report.group_order = action.order
    report.flags["invariants"] = [h.format_vector(v) for v in invariants(action).basis]
    report.flags["cyclic"] = action.is_cyclic()
    with steps.step("reynolds", "Reynolds operator"):
        try:
            data = reynolds(action)
        except ModularCaseError:
            report.flags["reynolds"] = "modular"
            return
    report.verdicts.update(data.as_dict())


def _hilbert90(job: JobSpec, report: Report, steps: _Steps) -> None:
    with steps.step("load", "Closing the generators"):
        h = load_input(job)
        action = load_action(job, h)
    report.field = str(h.field)
    report.group_order = action.order
    gamma = action.generators[job.gamma]
    with steps.step("hilbert90", "Comparing Im(id - γ) with Ker t"):
        result = hilbert90_check(action, gamma)
        report.verdicts["hilbert90"] = result.holds
        report.flags["gamma_part_dim"] = result.image.dim
        report.flags["gamma_abelian"] = gamma_abelian_check(action, gamma).abelian


def _artin(job: JobSpec, report: Report, steps: _Steps) -> None:
    with steps.step("load", "Closing the generators"):
        h = load_input(job)
        action = load_action(job, h)
    report.field = str(h.field)
    report.group_order = action.order
    with steps.step("artin", "Reconstructing over the invariants"):
        result = artin_reconstruct(action)
    report.verdicts.update(
        skew_axioms=result.axioms.passed,
        averaging_formulas=result.formulas_match,
        phi_isomorphism=result.isomorphic,
    )
    report.flags["kind"] = result.kind.value
    report.flags["invariant_dim"] = result.extension.n
    report.flags["system"] = serialize_system(result.system)


def _cyclic_structure(job: JobSpec, report: Report, steps: _Steps) -> None:
    with steps.step("load", "Closing the generators"):
        h = load_input(job)
        action = load_action(job, h)
    report.field = str(h.field)
    report.group_order = action.order
    with steps.step("structure", "Semidirect decomposition"):
        result = cyclic_structure(action, action.generators[job.gamma])
    report.verdicts.update(
        cocycle_vanishes=result.theta_vanishes,
        gamma_part_ideal=result.ideal,
        phi_isomorphism=result.isomorphic,
    )
    report.flags["algebra"] = serialize_algebra(result.product)


def _codim1(job: JobSpec, report: Report, steps: _Steps) -> None:
    with steps.step("load", "Loading extension"):
        h = load_input(job)
        ext = load_extension(job, h)
    report.field = str(h.field)
    with steps.step("codim1", "Solving the codimension-one equations"):
        td = twisted_derivation_of(ext)
        group = codim1_group(td.g, td.lam, td.delta, budget=job.budget)
        image = codim1_to_galois(ext, group)
    with steps.step("direct", "Direct enumeration"):
        direct = galois_group_direct(ext, budget=job.budget, workers=job.workers)
    analysis = group_analysis(group)
    report.group_order = group.order
    report.verdicts["oracles_agree"] = image.elements == direct.elements
    report.verdicts["metabelian"] = analysis.metabelian
    report.flags.update(analysis.as_dict())
    report.flags["lambda"] = [td.g.field.format(c) for c in td.lam]


def _radical(job: JobSpec, report: Report, steps: _Steps) -> None:
    with steps.step("load", "Loading chain"):
        h = load_input(job)
        chain = [parse_subspace(h.field, h.dim, c) for c in job.chain]
    report.field = str(h.field)
    with steps.step("radical", "Verifying the chain"):
        result = verify_radical_chain(h, chain, budget=job.budget, workers=job.workers)
    report.group_order = result.galois_order
    report.verdicts["radical"] = result.radical
    report.verdicts["solvable"] = result.solvable
    report.flags["step_orders"] = [s.galois_order for s in result.steps]


def _catalog(job: JobSpec, report: Report, steps: _Steps) -> None:
    with steps.step("build", f"Building {job.catalog}"):
        h = load_input(job)
    report.field = str(h.field)
    report.flags["algebra"] = serialize_algebra(h, comment=job.catalog)


_DISPATCH: dict[Command, tuple[int, Callable]] = {
    Command.CHECK: (2, _check),
    Command.SUBSPACES: (2, _subspaces),
    Command.DERIVATIONS: (2, _derivations),
    Command.PRODUCT: (3, _product),
    Command.CANONICAL: (2, _canonical),
    Command.GALOIS: (3, _galois),
    Command.ACTION: (2, _action),
    Command.HILBERT90: (2, _hilbert90),
    Command.ARTIN: (2, _artin),
    Command.CYCLIC_STRUCTURE: (2, _cyclic_structure),
    Command.CODIM1: (3, _codim1),
    Command.RADICAL: (2, _radical),
    Command.CATALOG: (1, _catalog),
}


def run(job: JobSpec) -> Report:
    total, handler = _DISPATCH[job.command]
    report = Report(
        command=job.command,
        field=job.field or "",
        inputs=_inputs(job),
        budgets={"candidates": job.budget, "closure": job.closure_cap, "workers": job.workers},
    )
    steps = _Steps(total)
    handler(job, report, steps)
    report.timings = steps.timings
    verdict = "all verdicts hold" if report.ok else "some verdicts fail"
    log.info("╚══ Done!  %s", verdict)
    return report
