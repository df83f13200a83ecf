from enum import Enum
from typing import List, Optional

from pydantic import BaseModel


class ProblemKind(str, Enum):
    MIS = "mis"
    MVC = "mvc"
    CVC = "cvc"
    MDS = "mds"
    CDS = "cds"

    @property
    def maximizes(self) -> bool:
        return self is ProblemKind.MIS


class SolveMode(str, Enum):
    PAPER = "paper"
    EXACT = "exact"


class SolveOutcome(BaseModel):
    """Optimum (value, exact count, optional witness) or infeasible.

    ``witness`` holds one label mask per layer; ``states_peak`` is the largest
    per-layer state table the run kept alive.
    """

    status: str
    value: Optional[int] = None
    count: Optional[int] = None
    witness: Optional[List[int]] = None
    states_peak: int = 0
    elapsed_seconds: float = 0.0

    @classmethod
    def optimum(cls, value: int, count: int, witness: Optional[List[int]] = None, **stats) -> "SolveOutcome":
        return cls(status="optimum", value=value, count=count, witness=witness, **stats)

    @classmethod
    def infeasible(cls, **stats) -> "SolveOutcome":
        return cls(status="infeasible", **stats)

    @property
    def is_optimum(self) -> bool:
        return self.status == "optimum"

    def same_answer(self, other: "SolveOutcome") -> bool:
        """Value and count agree (witness and statistics ignored)"""
        return (self.status, self.value, self.count) == (other.status, other.value, other.count)
