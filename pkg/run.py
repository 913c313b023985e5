#!/usr/bin/env python3
"""
liegal – Galois groups of Lie algebra extensions over Q and F_p
===============================================================

Usage examples
--------------
    # Structural predicates of a catalog algebra
    python run.py check --catalog fivedim_perfect --field F3

    # Gal(h5/h3) over F2 with both enumerators
    python run.py galois --catalog heisenberg:2 --sub basis:0,1,2 --field F2

    # Codimension-one group of t4 over h3, machine-readable
    python run.py codim1 --catalog t:1 --sub basis:0,1,2 --field F5 --format json

    # A C2 action on aff(2) and its reconstruction over the invariants
    python run.py artin --catalog aff --field F5 --gen "1,0;0,-1"

    # Emit a catalog algebra as a file
    python run.py catalog --catalog sl:2 --field Q --out sl2.alg

Exit status: 0 when every verdict holds, 1 when one fails, 2 for invalid
input, 3 budget exceeded, 4 modular case, 5 enumeration over Q, 6 group too
large, 7 unmet precondition.

Run ``python run.py <command> --help`` for the options of each command.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from pydantic import ValidationError

from liegal import config
from liegal.errors import EXIT_INVALID_INPUT, EXIT_OK, EXIT_VERDICT_FALSE, LieGalError, exit_code_for
from liegal.jobs import run
from liegal.models import Command, GaloisMethod, JobSpec, OutputFormat, ProductKind

log = logging.getLogger("liegal")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)

    # ── input ─────────────────────────────────────────────────────────
    p.add_argument("--algebra", default=None, help="Path to an algebra file.")
    p.add_argument("--catalog", default=None, help="Catalog entry, e.g. heisenberg:2 or holomorph:sl,2.")
    p.add_argument("--system", default=None, help="Path to an extending-system file (product).")
    p.add_argument("--field", default=None, help="Q or F<p>; overrides the file header.")

    # ── subalgebras / actions ─────────────────────────────────────────
    p.add_argument("--sub", default=None, help="Subalgebra: basis:0,1,2  or  rows:1,0,0;0,1,0.")
    p.add_argument("--complement", default=None, help="Complement rows: 0,0,1;…")
    p.add_argument("--chain", nargs="+", default=[], help="Radical chain members, smallest first.")
    p.add_argument(
        "--gen", dest="generators", action="append", default=[],
        help="Automorphism as matrix rows 'a,b;c,d' (repeatable).",
    )
    p.add_argument("--gamma", type=int, default=0, help="Index of the cyclic generator  (default: 0).")

    # ── variants ──────────────────────────────────────────────────────
    p.add_argument(
        "--kind", dest="product_kind", default="unified",
        choices=[k.value for k in ProductKind],
        help="Product to build from a system file  (default: unified).",
    )
    p.add_argument(
        "--method", default="both",
        choices=[m.value for m in GaloisMethod],
        help="Galois enumerator  (default: both, cross-checked).",
    )

    # ── budgets ───────────────────────────────────────────────────────
    p.add_argument(
        "--budget", type=int, default=config.CANDIDATE_BUDGET,
        help=f"Candidate budget  (default: {config.CANDIDATE_BUDGET}).",
    )
    p.add_argument(
        "--closure-cap", type=int, default=config.CLOSURE_CAP,
        help=f"Largest group closure  (default: {config.CLOSURE_CAP}).",
    )
    p.add_argument(
        "--workers", type=int, default=config.WORKERS,
        help=f"Enumeration threads  (default: {config.WORKERS}).",
    )

    # ── output ────────────────────────────────────────────────────────
    p.add_argument(
        "--format", dest="output_format", default="text",
        choices=[f.value for f in OutputFormat],
        help="Report format  (default: text).",
    )
    p.add_argument("-o", "--out", default=None, help="Write the report to this file.")

    # ── misc ──────────────────────────────────────────────────────────
    p.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging.")
    return p


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="liegal",
        description="Exact computations with Lie algebra extensions and their Galois groups.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    parent = _common()
    helps = {
        Command.CHECK: "Jacobi validity and structural predicates.",
        Command.SUBSPACES: "Derived algebra, center, centralizer, series.",
        Command.DERIVATIONS: "Derivation algebra and outer part.",
        Command.PRODUCT: "Build a unified / skew / semidirect product from a system file.",
        Command.CANONICAL: "Canonical extending system of an extension.",
        Command.GALOIS: "Enumerate Gal(h/g) over F_p.",
        Command.ACTION: "Close generators, invariants and Reynolds operator.",
        Command.HILBERT90: "Compare Im(id - γ) with Ker t.",
        Command.ARTIN: "Reconstruct h over its invariants.",
        Command.CYCLIC_STRUCTURE: "Semidirect decomposition for a cyclic γ-abelian action.",
        Command.CODIM1: "Galois group of a codimension-one extension.",
        Command.RADICAL: "Verify a radical chain.",
        Command.CATALOG: "Emit a named algebra.",
    }
    for cmd in Command:
        sub.add_parser(cmd.value, parents=[parent], help=helps[cmd], description=helps[cmd])
    return p


def _job(args: argparse.Namespace) -> JobSpec:
    fields = {k: v for k, v in vars(args).items() if k not in ("verbose",)}
    return JobSpec(**fields)


# =====================================================================
# Entry point
# =====================================================================
def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    # ── logging ──────────────────────────────────────────────────────
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else getattr(logging, config.LOG_LEVEL, logging.INFO),
        format="%(asctime)s  %(levelname)-8s  %(name)s  %(message)s",
        datefmt="%H:%M:%S",
    )

    try:
        job = _job(args)
    except ValidationError as exc:
        for err in exc.errors():
            log.error("invalid job: %s", err["msg"])
        return EXIT_INVALID_INPUT

    try:
        report = run(job)
    except LieGalError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return exit_code_for(exc)
    except (ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INVALID_INPUT

    if job.output_format is OutputFormat.JSON:
        text = report.to_json() + "\n"
    elif job.command is Command.CATALOG:
        text = report.flags["algebra"]
    else:
        text = report.to_text()
    if job.out:
        Path(job.out).write_text(text, encoding="utf-8")
        log.info("  Report → %s", job.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.ok else EXIT_VERDICT_FALSE


if __name__ == "__main__":
    sys.exit(main())
