"""Enumeration budgets guarding the exhaustive sweeps.

All heavy operations (subset sweeps, cycle enumeration, raw colouring
counts) are budgeted so pathological inputs fail fast instead of hanging.
The ``MPMAT_BUDGET`` environment variable, when set to a positive integer,
overrides every budget at once.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

ENV_VAR = "MPMAT_BUDGET"


@dataclass(frozen=True)
class Budgets:
    max_cycles: int = 10**6
    max_subsets: int = 1 << 24
    max_assignments: int = 10**7
    max_spanning_trees: int = 10**5

    @classmethod
    def from_env(cls) -> "Budgets":
        raw = os.environ.get(ENV_VAR)
        if raw is None:
            return cls()
        value = int(raw)
        if value <= 0:
            raise ValueError(f"{ENV_VAR} must be a positive integer, got {raw!r}")
        return cls(
            max_cycles=value,
            max_subsets=value,
            max_assignments=value,
            max_spanning_trees=value,
        )


def current_budgets() -> Budgets:
    """Budgets in effect right now (re-reads the environment)."""
    return Budgets.from_env()
