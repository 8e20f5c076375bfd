"""Metrics, index placement, the linear forms r_j and integration changes of variables.

Points are stored with lower indices, x_mu, because every ansatz in the
toolkit is written in those coordinates.  Arrays of shape (..., 4) are
accepted wherever a point is expected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)
SQRT6 = np.sqrt(6.0)


@dataclass(frozen=True)
class Metric:
    name: str
    diag: tuple[float, float, float, float]

    def __post_init__(self):
        if self.diag not in ((1.0, -1.0, -1.0, -1.0), (-1.0, -1.0, -1.0, -1.0)):
            raise ValueError(f"unsupported metric signature {self.diag}")

    @property
    def g(self) -> np.ndarray:
        return np.array(self.diag)

    def matrix(self) -> np.ndarray:
        return np.diag(self.diag)


MINKOWSKI = Metric("minkowski", (1.0, -1.0, -1.0, -1.0))
EUCLIDEAN_NEGATIVE = Metric("euclidean-negative", (-1.0, -1.0, -1.0, -1.0))
METRICS = {m.name: m for m in (MINKOWSKI, EUCLIDEAN_NEGATIVE)}


def get_metric(name: str | Metric) -> Metric:
    if isinstance(name, Metric):
        return name
    try:
        return METRICS[name]
    except KeyError:
        raise ValueError(f"unknown metric {name!r}; expected one of {sorted(METRICS)}") from None


def raise_lower(v, metric: Metric) -> np.ndarray:
    """v'_mu = g_mu_mu v^mu (the metric is diagonal and its own inverse)."""
    return np.asarray(v) * metric.g


@dataclass(frozen=True)
class Point:
    """A spacetime point held as lower-index coordinates x_mu."""
    x: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float).reshape(4))

    @classmethod
    def from_upper(cls, xu, metric: Metric) -> "Point":
        return cls(raise_lower(xu, metric))

    def upper(self, metric: Metric) -> np.ndarray:
        return raise_lower(self.x, metric)


def as_points(p) -> np.ndarray:
    if isinstance(p, Point):
        return p.x
    return np.asarray(p)


@dataclass(frozen=True)
class LinearFormSet:
    """Coefficients alpha[mu, j] of r_j = sum_mu alpha_{mu j} x_mu."""
    alpha: np.ndarray
    el_valid: bool = False

    def __post_init__(self):
        a = np.array(self.alpha, dtype=complex)
        if a.ndim != 2 or a.shape[0] != 4:
            raise ValueError(f"alpha must have shape (4, J), got {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "alpha", a)
        if self.el_valid and self.column_condition_defect() > 1e-12:
            raise ValueError("forms flagged EL-valid violate alpha_3j^2 = sum_l alpha_lj^2")

    @property
    def n_forms(self) -> int:
        return self.alpha.shape[1]

    def column_condition_defect(self) -> float:
        a = self.alpha
        return float(np.abs(a[3] ** 2 - np.sum(a[:3] ** 2, axis=0)).max())

    def spatial_real_part(self) -> np.ndarray:
        """(3, J) real coefficients of the spatial coordinates; rejects complex ones."""
        sp = self.alpha[1:]
        if np.abs(sp.imag).max() > 0:
            raise ValueError("spatial form coefficients are complex; rho_j is not a linear form in x")
        return sp.real


class FormValues(NamedTuple):
    r: np.ndarray
    rho: np.ndarray
    sigma: np.ndarray


def eval_forms(forms: LinearFormSet, p) -> FormValues:
    """r_j at one point or a batch; complex coordinates are allowed."""
    x = as_points(p)
    r = x @ forms.alpha
    return FormValues(r, r.real, r.imag)


@dataclass(frozen=True)
class AffineChange:
    """y = M (x_1, x_2, x_3)."""
    M: np.ndarray
    name: str = ""
    absdet: float = field(init=False)

    def __post_init__(self):
        m = np.array(self.M, dtype=float)
        if m.shape != (3, 3):
            raise ValueError(f"affine change must be 3x3, got {m.shape}")
        det = abs(np.linalg.det(m))
        if not np.isfinite(det) or det < 1e-12 * max(1.0, np.abs(m).max()) ** 3:
            raise ValueError("affine change is singular")
        m.setflags(write=False)
        object.__setattr__(self, "M", m)
        object.__setattr__(self, "absdet", float(det))

    @property
    def inverse(self) -> np.ndarray:
        return np.linalg.inv(self.M)

    def to_x(self, y) -> np.ndarray:
        return np.asarray(y) @ self.inverse.T


def y_transform(change: AffineChange, p) -> tuple[np.ndarray, float]:
    """Map spatial coordinates to y and return the factor in d^3x = d^3y / |det M|."""
    x = as_points(p)
    spatial = x[..., 1:] if x.shape[-1] == 4 else x
    return spatial @ change.M.T, 1.0 / change.absdet


# y-variables that diagonalise sum_j rho_j^2 for the single-term preset
PAPER_SINGLE_CHANGE = AffineChange(np.array([
    [SQRT3, -2.0 / SQRT3, -1.0 / SQRT6],
    [0.0, np.sqrt(2.0 / 3.0), -1.0 / SQRT3],
    [0.0, 0.0, 2.0],
]), name="paper-single")

# y-variables quoted for the two-term preset
PAPER_PAIR_CHANGE = AffineChange(np.array([
    [SQRT6, 0.0, -1.0 / SQRT3],
    [0.0, 2.0, 0.0],
    [0.0, 0.0, np.sqrt(14.0 / 3.0)],
]), name="paper-pair")

AFFINE_PRESETS = {c.name: c for c in (PAPER_SINGLE_CHANGE, PAPER_PAIR_CHANGE)}


def dependence_determinant(forms: LinearFormSet, d=None) -> complex:
    """det of alpha restricted to the non-gauged rows l = 0, 1, 2.

    ``d`` is accepted for symmetry with the validity conditions; when given,
    the determinant is only meaningful if sum_l d_l alpha_lj = 0 for all j.
    """
    if forms.n_forms != 3:
        raise ValueError("dependence determinant needs exactly three forms")
    return complex(np.linalg.det(forms.alpha[:3, :].T))
