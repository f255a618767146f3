"""Verification reports and the seeded random source shared by all checkers."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from typing import Any, Optional

SEED_ENV = "CLONELAB_SEED"
DEFAULT_SEED = 0


def make_rng(seed: int) -> random.Random:
    """All sampling goes through :class:`random.Random` (Mersenne Twister),
    seeded with the 64-bit value ``seed``."""
    return random.Random(seed & 0xFFFFFFFFFFFFFFFF)


def default_seed() -> int:
    value = os.environ.get(SEED_ENV)
    return int(value) if value else DEFAULT_SEED


@dataclass
class Report:
    suite: str
    status: str = "pass"
    checked: int = 0
    seed: Optional[int] = None
    counterexample: Optional[dict] = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def fail(self, **counterexample) -> "Report":
        """Record the first failure; later failures are ignored."""
        if self.status == "pass":
            self.status = "fail"
            self.counterexample = counterexample
        return self

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "status": self.status,
            "trials": self.checked,
            "seed": self.seed,
            "counterexample": self.counterexample,
        }
        if self.details:
            out["details"] = self.details
        return out
