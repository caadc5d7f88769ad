""" This file contains the result types of configuration validation."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .run_config import RunConfig


@dataclass(frozen=True)
class Violation:
    field: str
    module: str
    message: str

    def to_dict(self) -> Dict[str, str]:
        return {"field": self.field, "module": self.module, "message": self.message}

    def __repr__(self) -> str:
        return f"< giantbic.Violation | field: {self.field} | module: {self.module} | message: {self.message} >"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validating a configuration for one subcommand. config is None when violations exist."""

    subcommand: str
    violations: Tuple[Violation, ...] = ()
    warnings: Tuple[str, ...] = ()
    config: Optional[RunConfig] = field(default=None, compare=False)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fields(self) -> List[str]:
        return [violation.field for violation in self.violations]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subcommand": self.subcommand,
            "ok": self.ok,
            "violations": [violation.to_dict() for violation in self.violations],
            "warnings": list(self.warnings),
        }

    def __repr__(self) -> str:
        return (
            f"< giantbic.ValidationReport | subcommand: {self.subcommand} | ok: {self.ok} "
            f"| violations: {len(self.violations)} | warnings: {len(self.warnings)} >"
        )
