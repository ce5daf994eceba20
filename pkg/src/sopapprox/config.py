"""Tunables shared across the search pipeline."""

from __future__ import annotations

import os
from dataclasses import dataclass

ESPRESSO_ENV = "SOPAPPROX_ESPRESSO"


@dataclass(frozen=True)
class EngineConfig:
    count_outputs: bool = True       # literal count includes asserted outputs
    sct_top_pct: float = 0.25        # first member of a combined pair must rank here
    sct_partner_pct: float = 0.80    # second member must rank here
    exhaustive_leaf_limit: int = 8   # leaf subsets searched exhaustively up to this size
    dc_eic: bool = False             # pass accumulated EICs as don't-cares to the minimizer
    use_external: bool = True        # allow the external minimizer when configured
    espresso_cmd: str | None = None  # external minimizer command line
    external_timeout: float = 120.0

    def resolved_espresso(self) -> str | None:
        if not self.use_external:
            return None
        return self.espresso_cmd or os.environ.get(ESPRESSO_ENV) or None


DEFAULT_CONFIG = EngineConfig()
