from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

from .board import Assignment


class Status(str, enum.Enum):
    SOLVABLE = "SOLVABLE"
    UNSOLVABLE = "UNSOLVABLE"
    OVERFLOW = "OVERFLOW"


@dataclass
class SolveResult:
    status: Status
    witness: Assignment | None = None
    count: int | None = None
    stats: dict[str, Any] = field(default_factory=dict)

    @property
    def solvable(self) -> bool:
        return self.status is Status.SOLVABLE

    def to_json(self) -> dict[str, Any]:
        return {
            "status": self.status.value,
            "witness": self.witness.to_rows() if self.witness is not None else None,
            "count": self.count,
            "stats": self.stats,
        }


class BudgetExceeded(RuntimeError):
    """A node, configuration or time budget ran out before an exact answer."""
