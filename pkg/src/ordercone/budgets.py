"""Resource budgets.

Every potentially expensive search carries an explicit budget and fails
loudly when it runs out; silent truncation is forbidden everywhere.
Defaults can be overridden per call, or globally through the
``ORDERCONE_BUDGET`` environment variable, which holds a JSON object of
field overrides, e.g. ``{"handle_steps": 2000000, "braid_ball": {"3": 6}}``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace

from .errors import UsageError

_ENV_VAR = "ORDERCONE_BUDGET"

#: Default Cayley-ball radius limits for braid groups, keyed by strand count.
_DEFAULT_BRAID_BALL = {2: 8, 3: 4, 4: 3}


@dataclass(frozen=True)
class Budget:
    """Limits for the search-shaped operations.

    handle_steps      max handle rewrites per reduction
    bfs_frontier      max nodes explored by semigroup breadth-first search
    braid_ball        per-strand-count cap on braid Cayley-ball radius
    braid_ball_default  cap for strand counts absent from ``braid_ball``
    census_braid_radius / census_other_radius  census radius caps
    lattice_check_radius  ball radius used by lattice cross-checks
    """

    handle_steps: int = 1_000_000
    bfs_frontier: int = 1_000_000
    braid_ball: dict[int, int] = field(default_factory=lambda: dict(_DEFAULT_BRAID_BALL))
    braid_ball_default: int = 2
    census_braid_radius: int = 3
    census_other_radius: int = 6
    lattice_check_radius: int = 12

    def __post_init__(self) -> None:
        for name in ("handle_steps", "bfs_frontier", "braid_ball_default",
                     "census_braid_radius", "census_other_radius",
                     "lattice_check_radius"):
            if getattr(self, name) <= 0:
                raise UsageError(f"budget field {name!r} must be positive")
        if any(v <= 0 for v in self.braid_ball.values()):
            raise UsageError("braid ball limits must be positive")

    def braid_ball_limit(self, n: int) -> int:
        return self.braid_ball.get(n, self.braid_ball_default)

    def with_overrides(self, overrides: dict) -> "Budget":
        """Return a copy with the given field overrides applied."""
        fields = dict(overrides)
        if "braid_ball" in fields:
            merged = dict(self.braid_ball)
            merged.update({int(k): int(v) for k, v in fields["braid_ball"].items()})
            fields["braid_ball"] = merged
        try:
            return replace(self, **fields)
        except TypeError as exc:
            raise UsageError(f"unknown budget field in {sorted(fields)}") from exc


def current_budget(overrides: "Budget | dict | None" = None) -> Budget:
    """Resolve the effective budget: defaults, then env var, then overrides."""
    if isinstance(overrides, Budget):
        return overrides
    budget = Budget()
    raw = os.environ.get(_ENV_VAR)
    if raw:
        try:
            env_fields = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{_ENV_VAR} is not valid JSON: {exc}") from exc
        if not isinstance(env_fields, dict):
            raise UsageError(f"{_ENV_VAR} must hold a JSON object")
        budget = budget.with_overrides(env_fields)
    if overrides:
        budget = budget.with_overrides(dict(overrides))
    return budget
