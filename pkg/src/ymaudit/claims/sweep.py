"""beta sweeps with log-log power-law fits."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .engine import ClaimParams, _clean, complex_norm, energy_real, strength_scale

DEFAULT_BETAS = (0.5, 1.0, 2.0, 4.0)
EXPECTED = {"norm": -3.0, "energy": -1.0, "ratio": 2.0}
ZERO_REL = 1e-10


@dataclass
class ScalingSweep:
    quantity: str
    beta_values: list
    values: list
    fitted_exponent: float | None
    r2: float | None
    expected_exponent: float
    status: str
    note: str = ""
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return _clean({
            "quantity": self.quantity, "beta_values": self.beta_values, "values": self.values,
            "fitted_exponent": self.fitted_exponent, "r2": self.r2,
            "expected_exponent": self.expected_exponent, "status": self.status, "note": self.note,
            "extra": self.extra,
        })

    @classmethod
    def from_dict(cls, obj: dict) -> "ScalingSweep":
        return cls(**obj)


def fit_power_law(betas, values) -> tuple[float, float]:
    """Least-squares slope of log|v| on log beta, with r^2."""
    lx = np.log(np.asarray(betas, dtype=float))
    ly = np.log(np.abs(np.asarray(values, dtype=float)))
    A = np.vstack([lx, np.ones_like(lx)]).T
    (slope, icpt), *_ = np.linalg.lstsq(A, ly, rcond=None)
    pred = A @ np.array([slope, icpt])
    ss_res = float(np.sum((ly - pred) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return float(slope), r2


def sweep_values(quantity: str, params: ClaimParams, betas) -> tuple[list, list]:
    """(values, reference scales) per beta; zero-energy detection uses the scales."""
    vals, refs = [], []
    for b in betas:
        p = params.with_(beta=float(b))
        norm = complex_norm(p)
        if quantity == "norm":
            vals.append(norm)
            refs.append(abs(norm))
            continue
        energy, terms = energy_real(p)
        scale = strength_scale(terms)
        if quantity == "energy":
            vals.append(energy)
            refs.append(scale)
        else:
            vals.append(energy / norm)
            refs.append(scale / abs(norm))
    return [float(np.real(v)) for v in vals], refs


def sweep_beta(quantity: str, params: ClaimParams | None = None, betas=DEFAULT_BETAS) -> ScalingSweep:
    if quantity not in EXPECTED:
        raise ValueError(f"unknown sweep quantity {quantity!r}; expected one of {sorted(EXPECTED)}")
    betas = [float(b) for b in betas]
    if len(set(betas)) < 2:
        raise ValueError("a scaling sweep needs at least two distinct beta values")
    if any(not b > 0 for b in betas):
        raise ValueError("beta values must be positive")
    params = params or ClaimParams()
    vals, refs = sweep_values(quantity, params, betas)
    expected = EXPECTED[quantity]
    if all(abs(v) <= ZERO_REL * r for v, r in zip(vals, refs)):
        return ScalingSweep(quantity, betas, vals, None, None, expected, "N/A",
                            "exponent undefined at zero energy")
    slope, r2 = fit_power_law(betas, vals)
    ok = abs(slope - expected) <= 1e-2 and r2 >= 0.9999
    return ScalingSweep(quantity, betas, vals, slope, r2, expected,
                        "CONFIRMED" if ok else "DISCREPANT",
                        "" if math.isfinite(slope) else "fit failed")
