"""Size budgets. All of them can be overridden per call; the global element
budget also reads ``LATDIM_MAX_ELEMENTS`` from the environment."""

from __future__ import annotations

import os

CO_POSET_BOUND = 12
TENSOR_BUDGET = 20000
ENUM_MAX_N = 10

_element_override: int | None = None


def element_budget() -> int:
    if _element_override is not None:
        return _element_override
    return int(os.environ.get("LATDIM_MAX_ELEMENTS", "4096"))


def set_element_budget(n: int | None) -> None:
    """Process-wide override (used by the CLI flag); None restores the default."""
    global _element_override
    _element_override = n
