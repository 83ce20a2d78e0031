"""Machine-readable verdicts for inequality checks.

Every report reads ``lhs (relation) rhs`` with ``relation`` one of ``>=`` or
``>``; upper bounds are stated with the bound on the left. ``holds`` is
three-valued: True/False when certified, None when undecided at the
precision cap.

JSON schema (keys sorted on output)::

    {"name": str, "input": str, "relation": ">=" | ">",
     "lhs": {"lo": str, "hi": str, "exact": str | null},
     "rhs": {...}, "slack": {...},
     "holds": true | false | null, "precision_bits": int,
     "details": {...}}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .interval import Interval, as_interval


def jsonable(value: Any) -> Any:
    if isinstance(value, Interval):
        return value.to_json()
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_json") and callable(value.to_json):
        return value.to_json()
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


@dataclass
class InequalityReport:
    name: str
    input: str
    lhs: Interval
    rhs: Interval
    holds: Optional[bool]
    precision_bits: int
    relation: str = ">="
    details: dict = field(default_factory=dict)

    @classmethod
    def compare(cls, name, input, lhs, rhs, precision_bits, strict=False, **details) -> "InequalityReport":
        lhs = as_interval(lhs, precision_bits)
        rhs = as_interval(rhs, precision_bits)
        holds = lhs.gt(rhs) if strict else lhs.ge(rhs)
        return cls(name, input, lhs, rhs, holds, precision_bits, ">" if strict else ">=", dict(details))

    @property
    def slack(self) -> Interval:
        return self.lhs - self.rhs

    @property
    def equality(self) -> Optional[bool]:
        """True when lhs == rhs is certified exactly, False when lhs > rhs is certified."""
        s = self.slack
        if s.exact is not None:
            return s.exact == 0
        return False if self.lhs.gt(self.rhs) is True else None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "input": self.input,
            "relation": self.relation,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "slack": self.slack.to_json(),
            "holds": self.holds,
            "equality": self.equality,
            "precision_bits": self.precision_bits,
            "details": jsonable(self.details),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)
