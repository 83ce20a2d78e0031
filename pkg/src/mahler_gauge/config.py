from __future__ import annotations

import os
from dataclasses import dataclass

ENV_VAR = "MAHLER_GAUGE_PRECISION"


@dataclass(frozen=True)
class Precision:
    """Working precision in bits and the cap used by automatic escalation."""

    bits: int = 128
    cap: int = 4096

    def __post_init__(self):
        if self.bits < 53:
            raise ValueError("precision below 53 bits is not supported")
        if self.cap < self.bits:
            raise ValueError("precision cap below starting precision")

    def ladder(self):
        """Precisions tried in order: bits, 2*bits, ... up to cap."""
        p = self.bits
        while p <= self.cap:
            yield p
            p *= 2

    @classmethod
    def from_env(cls, default: int = 128, cap: int = 4096) -> "Precision":
        raw = os.environ.get(ENV_VAR)
        bits = int(raw) if raw else default
        return cls(bits=bits, cap=max(cap, bits))


def default_precision() -> Precision:
    return Precision.from_env()
