# src/models/eval_outcome.py
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple


class Verdict(Enum):
    IN = "IN"
    OUT = "OUT"
    UNKNOWN = "UNKNOWN"


class UnknownReason(Enum):
    FUEL_EXHAUSTED = "fuel-exhausted"
    UNDETERMINED_CYCLE = "undetermined-cycle"


Witness = Dict[Tuple[int, ...], int]


@dataclass
class EvalOutcome:
    """A membership verdict plus the labeling of node addresses that justifies it.

    ``complete`` is set when the witness labels every node of the (finite)
    unfolding, i.e. it is a genuine evaluation map and not just a strategy.
    """

    verdict: Verdict
    reason: Optional[UnknownReason] = None
    witness: Witness = field(default_factory=dict)
    complete: bool = False

    def __post_init__(self):
        if self.verdict is Verdict.UNKNOWN and self.reason is None:
            raise ValueError("an unknown verdict needs a reason")
        if self.verdict is Verdict.IN and self.witness.get(()) != 1:
            raise ValueError("an IN verdict must label the root 1")
        if self.verdict is Verdict.OUT and self.witness.get(()) != 0:
            raise ValueError("an OUT verdict must label the root 0")

    @property
    def determined(self) -> bool:
        return self.verdict is not Verdict.UNKNOWN

    def summary(self) -> str:
        if self.verdict is Verdict.UNKNOWN:
            return f"UNKNOWN {self.reason.value}"
        return self.verdict.value
