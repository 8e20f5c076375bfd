"""Exact Gaussian moments and a tensor-product Gauss-Hermite cross-check.

The oracle integrates P(y) exp(-y^T Q y) over R^3 in closed form.  The
quadrature evaluates black-box integrands on Hermite nodes in the y
coordinates of an :class:`~ymaudit.geometry.AffineChange`.  Neither path uses
the other.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial.hermite import hermgauss

from .geometry import AffineChange

MAX_MOMENT = 12
MAX_DEGREE = 6
JACOBI_TOL = 1e-14
N_MAX = 64


def _fsum(values) -> complex | float:
    v = np.asarray(values).ravel()
    if np.iscomplexobj(v):
        re, im = math.fsum(v.real), math.fsum(v.imag)
        return complex(re, im) if im != 0.0 else re
    return math.fsum(v)


def double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def gaussian_moment_1d(a: float, k: int) -> float:
    """int x^k exp(-a x^2 / 2) dx over the real line."""
    if not a > 0:
        raise ValueError(f"moment parameter must be positive, got {a}")
    if k < 0 or k > MAX_MOMENT or int(k) != k:
        raise ValueError(f"moment order must be an integer in 0..{MAX_MOMENT}, got {k}")
    if k % 2:
        return 0.0
    return math.sqrt(2 * math.pi) * double_factorial(k - 1) * a ** (-(k + 1) / 2)


# --- polynomials -----------------------------------------------------------

class Polynomial:
    """Sparse multivariate polynomial, {exponent tuple: coefficient}."""

    def __init__(self, terms=None, nvars: int = 3):
        self.nvars = nvars
        self.terms: dict[tuple, complex] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != nvars or min(e, default=0) < 0:
                raise ValueError(f"bad exponent {e} for {nvars} variables")
            if c != 0:
                self.terms[e] = self.terms.get(e, 0) + c

    @classmethod
    def constant(cls, c, nvars: int = 3) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int = 3) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1.0}, nvars)

    @classmethod
    def linear(cls, coeffs) -> "Polynomial":
        coeffs = list(coeffs)
        n = len(coeffs)
        return sum((c * cls.variable(i, n) for i, c in enumerate(coeffs) if c != 0), cls({}, n))

    @classmethod
    def quadratic_form(cls, Q) -> "Polynomial":
        """y^T Q y."""
        Q = np.asarray(Q)
        n = Q.shape[0]
        out = cls({}, n)
        for i in range(n):
            for j in range(n):
                if Q[i, j] != 0:
                    out = out + Q[i, j] * cls.variable(i, n) * cls.variable(j, n)
        return out

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable counts")
            return other
        return Polynomial.constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial({e: c for e, c in out.items() if c != 0}, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[tuple, complex] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial({e: c for e, c in out.items() if c != 0}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial.constant(1.0, self.nvars)
        for _ in range(int(k)):
            out = out * self
        return out

    def __call__(self, y):
        return self.eval(y)

    def eval(self, y):
        y = np.asarray(y)
        out = np.zeros(y.shape[:-1], dtype=complex if self.is_complex else float)
        for e, c in sorted(self.terms.items()):
            term = np.full(y.shape[:-1], c)
            for i, p in enumerate(e):
                if p:
                    term = term * y[..., i] ** p
            out = out + term
        return out

    @property
    def is_complex(self) -> bool:
        return any(isinstance(c, complex) or np.iscomplexobj(c) for c in self.terms.values())

    def substitute(self, T) -> "Polynomial":
        """P(T z) as a polynomial in z."""
        T = np.asarray(T)
        lin = [Polynomial.linear(T[i]) for i in range(T.shape[0])]
        out = Polynomial({}, T.shape[1])
        for e, c in self.terms.items():
            term = Polynomial.constant(c, T.shape[1])
            for i, p in enumerate(e):
                if p:
                    term = term * lin[i] ** p
            out = out + term
        return out

    def real(self) -> "Polynomial":
        return Polynomial({e: float(np.real(c)) for e, c in self.terms.items()}, self.nvars)

    def conj(self) -> "Polynomial":
        return Polynomial({e: np.conj(c) for e, c in self.terms.items()}, self.nvars)

    def coefficient(self, e) -> complex:
        return self.terms.get(tuple(e), 0)

    def __repr__(self):
        return f"Polynomial({self.terms!r})"


# --- oracle ----------------------------------------------------------------

def jacobi_eigh(Q, tol: float = JACOBI_TOL, max_sweeps: int = 100):
    """Cyclic Jacobi diagonalisation of a small real symmetric matrix.

    Returns (eigenvalues, V) with Q = V diag(eigenvalues) V^T.
    """
    A = np.array(Q, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n) or np.abs(A - A.T).max(initial=0.0) > 1e-12 * max(1.0, np.abs(A).max()):
        raise ValueError("quadratic form must be a real symmetric square matrix")
    A = 0.5 * (A + A.T)
    V = np.eye(n)
    scale = max(np.abs(A).max(), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        off = math.sqrt(sum(A[i, j] ** 2 for i in range(n) for j in range(n) if i != j))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if A[p, q] == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2 * A[p, q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                J = np.eye(n)
                J[p, p] = J[q, q] = c
                J[p, q], J[q, p] = s, -s
                A = J.T @ A @ J
                V = V @ J
    return np.diag(A).copy(), V


def integrate_poly_gaussian_3d(P: Polynomial, Q) -> float | complex:
    """int P(y) exp(-y^T Q y) d^3y, exact up to rounding."""
    Q = np.asarray(Q, dtype=float)
    if Q.shape != (3, 3) or P.nvars != 3:
        raise ValueError("the oracle integrates over three variables")
    if P.degree > MAX_DEGREE:
        raise ValueError(f"polynomial degree {P.degree} exceeds the cap {MAX_DEGREE}")
    lam, V = jacobi_eigh(Q)
    if np.any(lam <= 0):
        raise ValueError(f"quadratic form is not positive definite (eigenvalues {lam})")
    Pz = P.substitute(V)
    parts = []
    for e, c in sorted(Pz.terms.items()):
        if any(k % 2 for k in e):
            continue
        parts.append(c * math.prod(gaussian_moment_1d(2 * l, k) for l, k in zip(lam, e)))
    return _fsum(parts) if parts else 0.0


def gaussian_normalisation(Q) -> float:
    return integrate_poly_gaussian_3d(Polynomial.constant(1.0), Q)


# --- quadrature ------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureGrid:
    """Tensor-product Hermite nodes in y, mapped back to x by the change."""
    n: int
    change: AffineChange
    scale: tuple = (1.0, 1.0, 1.0)
    y: np.ndarray = field(init=False, repr=False)
    x: np.ndarray = field(init=False, repr=False)
    w: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("rule order must be positive")
        sc = np.broadcast_to(np.asarray(self.scale, dtype=float), (3,))
        if np.any(sc <= 0):
            raise ValueError("quadrature scale must be positive")
        object.__setattr__(self, "scale", tuple(float(v) for v in sc))
        t, wt = hermgauss(self.n)
        wt = wt * np.exp(t * t)
        axes = [t * s for s in sc]
        wax = [wt * s for s in sc]
        y = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 3)
        w = np.einsum("i,j,k->ijk", *wax).reshape(-1) / self.change.absdet
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "x", self.change.to_x(y))
        object.__setattr__(self, "w", w)

    def points(self, x0: float = 0.0) -> np.ndarray:
        return np.concatenate([np.full((self.x.shape[0], 1), x0), self.x], axis=1)


@dataclass(frozen=True)
class QuadratureResult:
    value: float | complex
    order: int
    converged: bool
    history: tuple = ()
    flagged: bool = False


def quadrature_integrate(fn: Callable, change: AffineChange, n: int = 8, scale=1.0,
                         rtol: float = 1e-10, atol: float | None = None,
                         x0: float = 0.0, n_max: int = N_MAX) -> QuadratureResult:
    """int fn(x) d^3x at fixed x_0, doubling the rule order until stable.

    ``fn`` receives points of shape (M, 4).  ``atol`` defaults to 1e-13 times
    the integral of |fn|, so integrands that vanish by symmetry still converge.
    """
    history = []
    prev = None
    order = n
    while True:
        grid = QuadratureGrid(order, change, scale)
        vals = np.asarray(fn(grid.points(x0)))
        contrib = vals * grid.w
        value = _fsum(contrib)
        mag = math.fsum(np.abs(contrib))
        history.append((order, value))
        if prev is not None:
            floor = 1e-13 * mag if atol is None else atol
            if abs(value - prev) <= max(rtol * abs(value), floor):
                return QuadratureResult(value, order, True, tuple(history))
        if order >= n_max:
            return QuadratureResult(value, order, False, tuple(history), flagged=True)
        prev = value
        order = min(2 * order, n_max)


def hermite_1d(fn: Callable, n: int = 32, scale: float = 1.0) -> float | complex:
    """int fn(x) dx on the real line by Gauss-Hermite nodes scaled by ``scale``."""
    t, wt = hermgauss(n)
    x = t * scale
    return _fsum(np.asarray(fn(x)) * wt * np.exp(t * t) * scale)


def random_polynomial(rng: np.random.Generator, max_degree: int = MAX_DEGREE,
                      n_terms: int = 6) -> Polynomial:
    exps = [e for e in itertools.product(range(max_degree + 1), repeat=3) if sum(e) <= max_degree]
    pick = rng.choice(len(exps), size=n_terms, replace=False)
    return Polynomial({exps[i]: float(rng.normal()) for i in pick})
