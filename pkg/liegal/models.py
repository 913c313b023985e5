"""
liegal.models – Pydantic models for jobs and reports
====================================================
"""
from __future__ import annotations

from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, Field, model_validator

from liegal import config


# ── Enums ────────────────────────────────────────────────────────────────────
class Command(str, Enum):
    CHECK = "check"
    SUBSPACES = "subspaces"
    DERIVATIONS = "derivations"
    PRODUCT = "product"
    CANONICAL = "canonical"
    GALOIS = "galois"
    ACTION = "action"
    HILBERT90 = "hilbert90"
    ARTIN = "artin"
    CYCLIC_STRUCTURE = "cyclic-structure"
    CODIM1 = "codim1"
    RADICAL = "radical"
    CATALOG = "catalog"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class GaloisMethod(str, Enum):
    BOTH = "both"
    STRUCTURED = "structured"
    DIRECT = "direct"


class ProductKind(str, Enum):
    UNIFIED = "unified"
    SKEW = "skew"
    SEMIDIRECT = "semidirect"


_NEEDS_ALGEBRA = {
    Command.CHECK, Command.SUBSPACES, Command.DERIVATIONS, Command.CANONICAL, Command.GALOIS,
    Command.ACTION, Command.HILBERT90, Command.ARTIN, Command.CYCLIC_STRUCTURE, Command.CODIM1,
    Command.RADICAL,
}
_NEEDS_SUB = {Command.CANONICAL, Command.GALOIS, Command.CODIM1}
_NEEDS_GENERATORS = {Command.ACTION, Command.HILBERT90, Command.ARTIN, Command.CYCLIC_STRUCTURE}


# ── Request models ───────────────────────────────────────────────────────────
class JobSpec(BaseModel):
    """One batch job; validated before anything is computed."""
    command: Command

    # Inputs
    algebra: Optional[str] = Field(None, description="Path to an algebra file.")
    catalog: Optional[str] = Field(None, description="Catalog entry such as 'heisenberg:2'.")
    system: Optional[str] = Field(None, description="Path to an extending-system file (product).")
    field: Optional[str] = Field(None, pattern=r"^(Q|QQ|F_?\d+)$")

    # Subalgebras and actions
    sub: Optional[str] = Field(None, description="'basis:0,1,2' or 'rows:1,0,0;0,1,0'.")
    complement: Optional[str] = Field(None, description="Complement rows, same syntax as sub.")
    chain: list[str] = Field(default_factory=list, description="Radical chain, smallest first.")
    generators: list[str] = Field(default_factory=list, description="Matrices as 'a,b;c,d' rows.")
    gamma: int = Field(0, ge=0, description="Index of the cyclic generator among the generators.")

    # Variants
    product_kind: ProductKind = ProductKind.UNIFIED
    method: GaloisMethod = GaloisMethod.BOTH

    # Budgets
    budget: int = Field(default_factory=lambda: config.CANDIDATE_BUDGET, ge=1)
    closure_cap: int = Field(default_factory=lambda: config.CLOSURE_CAP, ge=1)
    workers: int = Field(default_factory=lambda: config.WORKERS, ge=1, le=256)

    # Output
    output_format: OutputFormat = OutputFormat.TEXT
    out: Optional[str] = None

    @model_validator(mode="after")
    def _check_inputs(self) -> JobSpec:
        cmd = self.command
        if cmd in _NEEDS_ALGEBRA and not (self.algebra or self.catalog):
            raise ValueError(f"{cmd.value} needs --algebra or --catalog")
        if self.algebra and self.catalog:
            raise ValueError("give either --algebra or --catalog, not both")
        if cmd is Command.CATALOG and not self.catalog:
            raise ValueError("catalog needs --catalog NAME")
        if cmd is Command.PRODUCT and not self.system:
            raise ValueError("product needs --system FILE")
        if cmd in _NEEDS_SUB and not self.sub:
            raise ValueError(f"{cmd.value} needs --sub")
        if cmd in _NEEDS_GENERATORS and not self.generators:
            raise ValueError(f"{cmd.value} needs at least one --gen")
        if cmd is Command.RADICAL and not self.chain:
            raise ValueError("radical needs --chain")
        if self.generators and self.gamma >= len(self.generators):
            raise ValueError(f"--gamma {self.gamma} but only {len(self.generators)} generators")
        return self


# ── Response models ──────────────────────────────────────────────────────────
class Report(BaseModel):
    command: Command
    field: str
    inputs: dict[str, Any] = Field(default_factory=dict)
    verdicts: dict[str, bool] = Field(default_factory=dict)
    group_order: Optional[int] = None
    flags: dict[str, Any] = Field(default_factory=dict)
    timings: dict[str, float] = Field(default_factory=dict)
    budgets: dict[str, int] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    def to_text(self) -> str:
        lines = [f"command: {self.command.value}", f"field: {self.field}"]
        for k, v in self.inputs.items():
            lines.append(f"input.{k}: {_fmt(v)}")
        if self.group_order is not None:
            lines.append(f"group_order: {self.group_order}")
        for k, v in self.verdicts.items():
            lines.append(f"verdict.{k}: {_fmt(v)}")
        blocks = []
        for k, v in self.flags.items():
            if isinstance(v, str) and "\n" in v:
                blocks.append((k, v))
            else:
                lines.append(f"{k}: {_fmt(v)}")
        for k, v in self.budgets.items():
            lines.append(f"budget.{k}: {v}")
        for k, v in self.timings.items():
            lines.append(f"time.{k}: {v:.3f}s")
        for k, v in blocks:
            lines.append(f"{k}:")
            lines.extend("  " + row for row in v.rstrip("\n").splitlines())
        return "\n".join(lines) + "\n"


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return ", ".join(_fmt(v) for v in value) if value else "-"
    return str(value)
