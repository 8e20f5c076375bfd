"""Finite-difference field strength, Euler-Lagrange residuals and energy densities.

Index conventions
-----------------
The field components A_mu^a are stored with a lower spacetime index and the
point coordinates are the lower x_mu.  K_mu denotes the plain partial
derivative with respect to the stored coordinate x_mu.  Two readings of K_mu
are offered, plus a diagnostic:

``"literal"`` (default)
    K_mu is the lower derivative d_mu, so d^mu = g^mumu K_mu.  This is the
    reading under which the closed-form curvature of the product ansatz,
    F_mn = s E sum_j (d_n alpha_mj - d_m alpha_nj) h'(r_j), comes out.
``"strict"``
    K_mu is d^mu (derivative with respect to a lower coordinate), so
    d_mu = g_mumu K_mu.
``"metric-free"``
    Diagnostic only: both d_mu and d^mu are taken to be K_mu.  This is how the
    algebra behind the reduced equations is carried out when the metric signs
    are dropped, and isolates purely algebraic parameter conditions.

Every quantity below is computed for a batch of points of shape (N, 4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .ansatz import AnsatzSpec, FieldSample, SumAnsatz
from .geometry import Metric, as_points, get_metric
from .lie_algebra import StructureConstants, paired_contraction

CONVENTIONS = ("literal", "strict", "metric-free")
ANTISYM_FLAG = 1e-6
DEFAULT_STEPS = (1e-2, 5e-3, 2.5e-3)

_STENCILS = {
    2: ((1.0, -1.0), (0.5, -0.5)),
    4: ((2.0, 1.0, -1.0, -2.0), (-1.0 / 12, 8.0 / 12, -8.0 / 12, 1.0 / 12)),
}


@dataclass(frozen=True)
class DifferentiationScheme:
    order: int = 4
    step: float = 1e-3
    step_policy: str = "absolute"

    def __post_init__(self):
        if self.order not in _STENCILS:
            raise ValueError(f"central-difference order must be 2 or 4, got {self.order}")
        if not self.step > 0:
            raise ValueError(f"step must be positive, got {self.step}")
        if self.step_policy not in ("absolute", "relative"):
            raise ValueError(f"unknown step policy {self.step_policy!r}")

    def steps_at(self, x: np.ndarray) -> np.ndarray:
        """Per-point step, shape x.shape[:-1]."""
        if self.step_policy == "absolute":
            return np.full(x.shape[:-1], self.step)
        return self.step * np.maximum(1.0, np.linalg.norm(x, axis=-1))

    def with_step(self, step: float) -> "DifferentiationScheme":
        return DifferentiationScheme(self.order, step, self.step_policy)


def weights(metric: Metric, convention: str) -> tuple[np.ndarray, np.ndarray]:
    """(lower, upper) multipliers turning K_mu into d_mu and d^mu."""
    g = metric.g
    one = np.ones(4)
    if convention == "literal":
        return one, g
    if convention == "strict":
        return g, one
    if convention == "metric-free":
        return one, one
    raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


def partial(fn: Callable, x: np.ndarray, mu: int, scheme: DifferentiationScheme) -> np.ndarray:
    """Central difference of fn along stored coordinate mu."""
    offsets, coeffs = _STENCILS[scheme.order]
    h = scheme.steps_at(x)
    out = None
    for off, c in zip(offsets, coeffs):
        xs = np.array(x, dtype=float, copy=True)
        xs[..., mu] += off * h
        term = c * fn(xs)
        out = term if out is None else out + term
    return out / h.reshape(h.shape + (1,) * (out.ndim - h.ndim))


def gradient(fn: Callable, x: np.ndarray, scheme: DifferentiationScheme) -> np.ndarray:
    """K_mu fn for all mu, stacked on a new last axis."""
    return np.stack([partial(fn, x, mu, scheme) for mu in range(4)], axis=-1)


# --- field strength --------------------------------------------------------

@dataclass(frozen=True)
class FieldStrengthSample:
    """F_{mu nu}^a with lower indices, shape (N, dim, 4, 4)."""
    F: np.ndarray
    metric: str
    convention: str
    A: np.ndarray
    antisym_deviation: float = 0.0
    flagged: bool = False
    commutator_norm: float = 0.0
    charge: np.ndarray | None = None
    G: np.ndarray | None = None
    profile: np.ndarray | None = None


def _factored(sample: FieldSample) -> bool:
    return sample.charge is not None and sample.profile is not None


def _abelian(fn_profile: Callable, x, scheme, w) -> np.ndarray:
    """d_mu P_nu - d_nu P_mu for P of shape (N, ..., 4)."""
    D = gradient(fn_profile, x, scheme)          # [..., nu, mu] = K_mu P_nu
    dP = np.swapaxes(D, -1, -2) * w[:, None]     # [..., mu, nu] = d_mu P_nu
    return dP - np.swapaxes(dP, -1, -2)


def _commutator_all(A: np.ndarray, f: StructureConstants) -> np.ndarray:
    """f_abc A_mu^b A_nu^c for all (mu, nu), shape (N, dim, 4, 4)."""
    u = np.swapaxes(A, -1, -2)[..., :, None, :]   # (N, 4mu, 1, dim)
    v = np.swapaxes(A, -1, -2)[..., None, :, :]   # (N, 1, 4nu, dim)
    uu, vv = np.broadcast_arrays(u, v)
    k = paired_contraction(f, uu, vv)             # (N, 4, 4, dim)
    return np.moveaxis(k, -1, -3)


def _raw_field_strength(field_obj, x, g, f, scheme, w):
    """Returns (F, A-sample, G or None, commutator)."""
    smp = field_obj.evaluate(x)
    if _factored(smp):
        G = _abelian(lambda y: field_obj.evaluate(y).profile, x, scheme, w)
        k = paired_contraction(f, np.asarray(smp.charge), np.asarray(smp.charge))
        comm = k[:, None, None] * (smp.profile[..., :, None] * smp.profile[..., None, :])[..., None, :, :]
        F = np.asarray(smp.charge)[:, None, None] * G[..., None, :, :] - g * comm
        return F, smp, G, comm
    D = gradient(lambda y: field_obj.evaluate(y).A, x, scheme)   # [N, a, nu, mu]
    dA = np.swapaxes(D, -1, -2) * w[:, None]
    comm = _commutator_all(smp.A, f)
    F = dA - np.swapaxes(dA, -1, -2) - g * comm
    return F, smp, None, comm


def field_strength(field_obj, points, g: float, f: StructureConstants,
                   scheme: DifferentiationScheme | None = None,
                   metric: Metric | str = "minkowski", convention="literal") -> FieldStrengthSample:
    scheme = scheme or DifferentiationScheme()
    metric = get_metric(metric)
    w, _ = weights(metric, convention)
    x = np.atleast_2d(np.asarray(as_points(points), dtype=float))
    F, smp, G, comm = _raw_field_strength(field_obj, x, g, f, scheme, w)
    Ft = np.swapaxes(F, -1, -2)
    scale = max(float(np.abs(F).max(initial=0.0)), np.finfo(float).tiny)
    dev = float(np.abs(F + Ft).max(initial=0.0)) / scale
    F = 0.5 * (F - Ft)
    return FieldStrengthSample(
        F=F, metric=metric.name, convention=convention, A=smp.A,
        antisym_deviation=dev, flagged=dev > ANTISYM_FLAG,
        commutator_norm=float(abs(g) * np.abs(comm).max(initial=0.0)),
        charge=smp.charge, G=G, profile=smp.profile,
    )


def closed_form_field_strength(spec, points, metric: Metric | str = "minkowski",
                               convention="literal") -> np.ndarray:
    """Analytic F for a product ansatz or a sum of them, shape (N, dim, 4, 4)."""
    if isinstance(spec, SumAnsatz):
        return sum(closed_form_field_strength(t, points, metric, convention) for t in spec.terms)
    if not isinstance(spec, AnsatzSpec):
        raise TypeError("closed form needs an AnsatzSpec or SumAnsatz")
    w, _ = weights(get_metric(metric), convention)
    x = np.atleast_2d(np.asarray(as_points(points)))
    a = spec.forms.alpha * w[:, None]        # d_mu r_j
    r = x @ spec.forms.alpha
    E = np.exp(np.sum(spec.profile.h(r), axis=-1))
    hp = spec.profile.dh(r)                  # (N, J)
    grad_r = hp @ a.T                        # (N, 4): sum_j a_mu j h'_j
    d = spec.d
    G = d[None, None, :] * grad_r[:, :, None] - d[None, :, None] * grad_r[:, None, :]
    return spec.s[None, :, None, None] * (E[:, None, None] * G)[:, None, :, :]


# --- Euler-Lagrange residuals ----------------------------------------------

@dataclass(frozen=True)
class ResidualReport:
    full: np.ndarray          # (N, dim, 4): d^mu F_mu nu^a - g f A^mu_b F_mu nu^c
    line1: np.ndarray         # (N, dim, 3)
    line2: np.ndarray         # (N, dim, 3)
    line3: np.ndarray         # (N, dim)
    commutator_norm: float
    field_scale: np.ndarray   # (N,) max |F| per point
    convention: str = "literal"
    metric: str = "minkowski"

    def reduced(self) -> np.ndarray:
        """All reduced residuals flattened per point, shape (N, 7*dim)."""
        n = self.line1.shape[0]
        return np.concatenate([self.line1.reshape(n, -1), self.line2.reshape(n, -1),
                               self.line3.reshape(n, -1)], axis=1)

    def max_abs(self) -> dict:
        def m(v):
            return float(np.abs(v).max(initial=0.0))
        return {"full": m(self.full), "line1": m(self.line1), "line2": m(self.line2),
                "line3": m(self.line3), "commutator_norm": self.commutator_norm}


def el_residual(field_obj, points, g: float, f: StructureConstants,
                metric: Metric | str = "minkowski",
                scheme: DifferentiationScheme | None = None,
                convention="literal") -> ResidualReport:
    scheme = scheme or DifferentiationScheme()
    metric = get_metric(metric)
    w, u = weights(metric, convention)
    gm = metric.g
    x = np.atleast_2d(np.asarray(as_points(points), dtype=float))
    dim = field_obj.dim
    N = x.shape[0]

    F, smp, G, comm = _raw_field_strength(field_obj, x, g, f, scheme, w)
    F = 0.5 * (F - np.swapaxes(F, -1, -2))

    def F_at(y):
        Fy = _raw_field_strength(field_obj, y, g, f, scheme, w)[0]
        return 0.5 * (Fy - np.swapaxes(Fy, -1, -2))

    DF = gradient(F_at, x, scheme)                                  # [N,a,mu,nu,lam]
    divF = np.einsum("m,pamvm->pav", u, DF)                         # d^mu F_mu nu

    if _factored(smp) and G is not None:
        # f_abc A^mu_b F_mu nu^c with F = s (x) G cancels on the charge vector
        k = paired_contraction(f, np.asarray(smp.charge), np.asarray(smp.charge))
        contr = np.einsum("m,nm,nmv->nv", gm, smp.profile, G)
        cov = k[None, :, None] * contr[:, None, :]
    else:
        A_up = smp.A * gm                                           # A^mu_b
        u_ = np.broadcast_to(np.moveaxis(A_up, -1, -2)[..., :, None, :], (N, 4, 4, dim))
        v_ = np.moveaxis(F, 1, -1)                                  # [N, mu, nu, c]
        cov = np.einsum("nmva->nav", paired_contraction(f, u_, v_))
    full = divF - g * cov

    def A_fn(y):
        return field_obj.evaluate(y).A

    D1 = gradient(A_fn, x, scheme)                                  # [N,a,nu,mu] = K_mu A_nu
    DD = gradient(lambda y: gradient(A_fn, y, scheme), x, scheme)   # [N,a,nu,mu,lam]
    idx = np.arange(3)
    line1 = u[3] * D1[:, :, idx, 3] - F[:, :, idx, 3]
    line2 = (u[3] ** 2) * DD[:, :, idx, 3, 3] - np.einsum("l,nalkl->nak", u[:3], DF[:, :, :3, :3, :3])
    line3 = u[3] * np.einsum("l,nall->na", u[:3], DD[:, :, :3, :3, 3])
    scale = np.abs(F).reshape(N, -1).max(axis=1)
    return ResidualReport(full, line1, line2, line3,
                          float(abs(g) * np.abs(comm).max(initial=0.0)),
                          scale, convention, metric.name)


@dataclass(frozen=True)
class ConvergenceStudy:
    steps: tuple
    order: int
    max_residual: tuple          # max_p |R_p(h)| / scale_p for each step
    observed_order: float
    extrapolated_max: float      # max_p |R_p^extrap| / scale_p
    extrapolated: np.ndarray = field(repr=False, default=None)

    def as_dict(self) -> dict:
        return {
            "steps": list(self.steps), "order": self.order,
            "max_relative_residual": list(self.max_residual),
            "observed_order": self.observed_order,
            "extrapolated_max_relative": self.extrapolated_max,
        }


def convergence_study(residual_fn: Callable[[DifferentiationScheme], tuple[np.ndarray, np.ndarray]],
                      order: int = 4, steps: Sequence[float] = DEFAULT_STEPS) -> ConvergenceStudy:
    """Step-halving study of a residual.

    ``residual_fn(scheme)`` returns (residual array of shape (N, ...), scale of
    shape (N,)).  The observed order comes from successive differences, the
    extrapolation is a Richardson step at the nominal order.
    """
    if len(steps) != 3:
        raise ValueError("the convergence study uses exactly three step sizes")
    res, scales = [], None
    for h in steps:
        r, s = residual_fn(DifferentiationScheme(order, float(h)))
        res.append(np.asarray(r).reshape(r.shape[0], -1))
        scales = np.asarray(s)
    tiny = np.finfo(float).tiny
    sc = np.maximum(scales, tiny)[:, None]
    rel = [float((np.abs(r) / sc).max(initial=0.0)) for r in res]
    d1 = float(np.abs(res[0] - res[1]).max(initial=0.0))
    d2 = float(np.abs(res[1] - res[2]).max(initial=0.0))
    ratio = steps[0] / steps[1]
    if d1 == 0.0 and d2 == 0.0:
        observed = math.inf
    elif d2 == 0.0:
        observed = math.inf
    else:
        observed = math.log(d1 / d2) / math.log(ratio)
    extrap = res[2] + (res[2] - res[1]) / (ratio ** order - 1.0)
    return ConvergenceStudy(tuple(float(h) for h in steps), order, tuple(rel), observed,
                            float((np.abs(extrap) / sc).max(initial=0.0)), extrap)


def reduced_residual_study(field_obj, points, g, f, metric="minkowski", order=4,
                           convention="literal", steps=DEFAULT_STEPS) -> ConvergenceStudy:
    def fn(scheme):
        rep = el_residual(field_obj, points, g, f, metric, scheme, convention)
        return rep.reduced(), rep.field_scale
    return convergence_study(fn, order, steps)


def full_residual_study(field_obj, points, g, f, metric="minkowski", order=4,
                        convention="literal", steps=DEFAULT_STEPS) -> ConvergenceStudy:
    def fn(scheme):
        rep = el_residual(field_obj, points, g, f, metric, scheme, convention)
        return rep.full, rep.field_scale
    return convergence_study(fn, order, steps)


# --- densities -------------------------------------------------------------

@dataclass(frozen=True)
class DensitySample:
    L: np.ndarray
    H: np.ndarray | None = None
    kinetic: np.ndarray | None = None

    @property
    def L_real(self):
        return np.real(self.L)

    @property
    def H_real(self):
        return None if self.H is None else np.real(self.H)


def _lagrangian(F: np.ndarray, metric: Metric) -> np.ndarray:
    gg = np.outer(metric.g, metric.g)
    return -0.25 * np.einsum("mv,pamv,pamv->p", gg, F, F)


def lagrangian_density(F: FieldStrengthSample, metric: Metric | str) -> DensitySample:
    """L = -1/4 F^{mu nu}_a F_{mu nu}^a, bilinear (no conjugation)."""
    metric = get_metric(metric)
    if F.metric != metric.name:
        raise ValueError(f"field strength was built for metric {F.metric!r}, not {metric.name!r}")
    return DensitySample(L=_lagrangian(F.F, metric))


def hamiltonian_density(field_obj, points, g: float, f: StructureConstants,
                        metric: Metric | str = "minkowski",
                        scheme: DifferentiationScheme | None = None,
                        convention="literal") -> DensitySample:
    """H = 1/2 F_{mu 0}^a d^0 A^mu_a - L."""
    scheme = scheme or DifferentiationScheme()
    metric = get_metric(metric)
    _, u = weights(metric, convention)
    x = np.atleast_2d(np.asarray(as_points(points), dtype=float))
    Fs = field_strength(field_obj, x, g, f, scheme, metric, convention)
    L = _lagrangian(Fs.F, metric)
    dA0 = u[0] * partial(lambda y: field_obj.evaluate(y).A, x, 0, scheme)   # d^0 A_mu
    dA0_up = dA0 * metric.g                                                  # d^0 A^mu
    kin = 0.5 * np.einsum("nam,nam->n", Fs.F[:, :, :, 0], dA0_up)
    return DensitySample(L=L, H=kin - L, kinetic=kin)
