from .engine import (INTERNAL_GATE, ClaimParams, ClaimVerdict, equivalence_search, run_claim,
                     run_claims, warmup_1d)
from .registry import CLAIMS, Claim, claim_registry, get_claim, resolve_anchor
from .sweep import DEFAULT_BETAS, ScalingSweep, fit_power_law, sweep_beta

__all__ = [
    "INTERNAL_GATE", "ClaimParams", "ClaimVerdict", "equivalence_search", "run_claim", "run_claims",
    "warmup_1d", "CLAIMS", "Claim", "claim_registry", "get_claim", "resolve_anchor",
    "DEFAULT_BETAS", "ScalingSweep", "fit_power_law", "sweep_beta",
]
