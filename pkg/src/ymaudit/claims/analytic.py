"""Symbolic integrands at x_0 = 0 for the exact-moment oracle.

Every product term with real spatial form coefficients is, at x_0 = 0,
a polynomial in (x_1, x_2, x_3) times exp(-x^T Q x) with
Q = beta^2 sum_j a_j a_j^T.  Densities built from two terms carry the
Gaussian Q_t + Q_t', so the oracle integrates them directly in x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..ansatz import AnsatzSpec, SumAnsatz
from ..field_calculus import weights
from ..geometry import Metric, get_metric
from ..quadrature import Polynomial, integrate_poly_gaussian_3d


@dataclass(frozen=True)
class SymbolicTerm:
    s: np.ndarray
    Q: np.ndarray              # 3x3 real, exponent is -x^T Q x
    P: tuple                   # P[mu]: the profile vector without its Gaussian
    G: tuple                   # G[mu][nu]: d_mu P_nu - d_nu P_mu
    dP0: tuple                 # K_0 P[mu]


def symbolic_term(spec: AnsatzSpec, metric: Metric | str, convention: str = "literal",
                  rotation: bool = False, real: bool = False) -> SymbolicTerm:
    metric = get_metric(metric)
    w, _ = weights(metric, convention)
    sp = spec.forms.spatial_real_part()                     # (3, J)
    beta2 = spec.beta ** 2
    Q = beta2 * sp @ sp.T
    r = [Polynomial.linear(sp[:, j]) for j in range(sp.shape[1])]
    hp = [-2.0 * beta2 * rj for rj in r]
    alpha = np.array(spec.forms.alpha)
    if rotation:
        alpha[0] = 1j * alpha[0]
    grad = [w[m] * sum((alpha[m, j] * hp[j] for j in range(len(r))), Polynomial({}))
            for m in range(4)]
    d = spec.d
    P = [Polynomial.constant(d[m]) for m in range(4)]
    G = [[d[n] * grad[m] - d[m] * grad[n] for n in range(4)] for m in range(4)]
    dP0 = [(d[m] / w[0]) * grad[0] for m in range(4)]      # K_0, not d_0
    if real:
        P = [p.real() for p in P]
        G = [[g.real() for g in row] for row in G]
        dP0 = [p.real() for p in dP0]
    return SymbolicTerm(np.asarray(spec.s), Q, tuple(P), tuple(tuple(r_) for r_ in G), tuple(dP0))


def symbolic_terms(field, metric, convention="literal", rotation=False, real=False) -> list:
    terms = field.terms if isinstance(field, SumAnsatz) else (field,)
    return [symbolic_term(t, metric, convention, rotation, real) for t in terms]


def _pairwise(terms, density) -> list:
    """[(polynomial, Q)] for sum_{t, t'} (s_t . s_t') density(t, t')."""
    out = []
    for t in terms:
        for u in terms:
            ss = float(np.dot(t.s, u.s))
            if ss == 0.0:
                continue
            out.append((ss * density(t, u), t.Q + u.Q))
    return out


def lagrangian_pieces(terms, metric) -> list:
    g = get_metric(metric).g
    return _pairwise(terms, lambda t, u: -0.25 * sum(
        (g[m] * g[n]) * (t.G[m][n] * u.G[m][n]) for m in range(4) for n in range(4)))


def kinetic_pieces(terms, metric, convention="literal") -> list:
    """1/2 F_{mu 0} d^0 A^mu, with d^0 = u_0 K_0 and A^mu = g^mumu A_mu."""
    metric = get_metric(metric)
    _, u = weights(metric, convention)
    g = metric.g
    return _pairwise(terms, lambda t, v: 0.5 * u[0] * sum(
        g[m] * (t.G[m][0] * v.dP0[m]) for m in range(4)))


def norm_pieces(terms, conjugate: bool = False) -> list:
    """sum_{a, mu} A A (bilinear) or A^* A when ``conjugate``."""
    def dens(t, u):
        return sum(((t.P[m].conj() if conjugate else t.P[m]) * u.P[m]) for m in range(4))
    return _pairwise(terms, dens)


def integrate_pieces(pieces) -> complex | float:
    vals = [integrate_poly_gaussian_3d(p, Q) for p, Q in pieces]
    re = math.fsum(float(np.real(v)) for v in vals)
    im = math.fsum(float(np.imag(v)) for v in vals)
    return complex(re, im) if im != 0.0 else re


def negate(pieces) -> list:
    return [(-p, Q) for p, Q in pieces]


def evaluate_pieces(pieces, x3: np.ndarray) -> np.ndarray:
    """Pointwise value of sum of P(x) exp(-x^T Q x); x3 has shape (N, 3)."""
    out = 0
    for p, Q in pieces:
        out = out + p.eval(x3) * np.exp(-np.einsum("ni,ij,nj->n", x3, Q, x3))
    return out
