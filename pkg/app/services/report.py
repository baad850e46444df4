"""
Verification report shared by every check. pass <=> no failures.
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional


def jsonable(value: Any) -> Any:
    """Exact values become strings ("p/q"), infinities "-inf"; containers recurse."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return "-inf" if value == float("-inf") else repr(value)
    if isinstance(value, int):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


@dataclass
class Report:
    check: str
    type: str
    rank: int
    mode: str = "sampled"
    sample_size: int = 0
    seed: Optional[int] = None
    failures: List[Dict[str, Any]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, element: Any, index: Any, lhs: Any, rhs: Any, **extra) -> None:
        entry = {"element": jsonable(element), "index": jsonable(index), "lhs": jsonable(lhs), "rhs": jsonable(rhs)}
        entry.update({k: jsonable(v) for k, v in extra.items()})
        self.failures.append(entry)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "type": self.type,
            "rank": self.rank,
            "mode": self.mode,
            "sample_size": self.sample_size,
            "seed": self.seed,
            "pass": self.passed,
            "failures": self.failures,
            "notes": self.notes,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def summary(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.failures)} failures)"
        return f"{self.check:<14} {self.type:<7} n={self.rank:<2} {self.mode:<9} samples={self.sample_size:<6} {status}"
