"""Product-form gauge fields A_mu^a = s_a d_mu exp(sum_j h(r_j)) and their sums.

A field is anything with ``dim`` and ``evaluate(points) -> FieldSample``;
``AnsatzSpec``, ``SumAnsatz`` and the wrappers below all qualify.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geometry import LinearFormSet, as_points

SQRT2 = np.sqrt(2.0)
COND_TOL = 1e-12
EXP_LIMIT = 700.0


class FieldOverflowError(ValueError):
    pass


@dataclass(frozen=True)
class ProfileH:
    """h(r) = -beta^2 r^2, the only shipped profile."""
    beta: float
    kind: str = "gaussian"

    def __post_init__(self):
        if self.kind != "gaussian":
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")

    def h(self, r):
        return -self.beta ** 2 * r * r

    def dh(self, r):
        return -2.0 * self.beta ** 2 * r

    def d2h(self, r):
        return np.full_like(np.asarray(r), -2.0 * self.beta ** 2)


@dataclass(frozen=True)
class FieldSample:
    """A_mu^a at one point (dim, 4) or a batch (N, dim, 4).

    ``charge`` and ``profile`` are set when the sample is known to factor as
    A = charge (x) profile, which lets the commutator cancel exactly.
    """
    A: np.ndarray
    charge: np.ndarray | None = None
    profile: np.ndarray | None = None


@dataclass(frozen=True)
class AnsatzSpec:
    s: np.ndarray
    d: np.ndarray
    forms: LinearFormSet
    beta: float
    coupling: float = 1.0
    profile: ProfileH | None = None
    el_valid: bool = False

    def __post_init__(self):
        s = np.array(self.s, dtype=float).reshape(-1)
        d = np.array(self.d, dtype=complex).reshape(-1)
        if d.shape != (4,):
            raise ValueError(f"d must have 4 components, got {d.shape}")
        for arr in (s, d):
            arr.setflags(write=False)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "d", d)
        if not isinstance(self.forms, LinearFormSet):
            object.__setattr__(self, "forms", LinearFormSet(self.forms))
        if self.profile is None:
            object.__setattr__(self, "profile", ProfileH(float(self.beta)))
        elif self.profile.beta != self.beta:
            raise ValueError("profile width differs from the ansatz beta")
        if self.el_valid:
            bad = [c.name for c in validate_conditions(self).conditions if not c.passed]
            if bad:
                raise ValueError(f"ansatz flagged EL-valid fails {bad}")

    @property
    def dim(self) -> int:
        return self.s.shape[0]

    @property
    def c(self) -> np.ndarray:
        return self.d.real

    @property
    def e(self) -> np.ndarray:
        return self.d.imag

    def with_(self, **kw) -> "AnsatzSpec":
        base = dict(s=self.s, d=self.d, forms=self.forms, beta=self.beta,
                    coupling=self.coupling, el_valid=False)
        base.update(kw)
        if "beta" in kw and "profile" not in kw:
            base["profile"] = None
        return AnsatzSpec(**base)

    def evaluate(self, points) -> FieldSample:
        return eval_field(self, points)


@dataclass(frozen=True)
class SumAnsatz:
    terms: tuple

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise ValueError("a sum ansatz needs at least one term")
        b0, g0, n0 = terms[0].beta, terms[0].coupling, terms[0].dim
        for t in terms[1:]:
            if t.beta != b0:
                raise ValueError("all terms of a sum ansatz must share beta")
            if t.coupling != g0:
                raise ValueError("all terms of a sum ansatz must share the coupling")
            if t.dim != n0:
                raise ValueError("all terms of a sum ansatz must share the adjoint dimension")
        object.__setattr__(self, "terms", terms)

    @property
    def dim(self) -> int:
        return self.terms[0].dim

    @property
    def beta(self) -> float:
        return self.terms[0].beta

    @property
    def coupling(self) -> float:
        return self.terms[0].coupling

    def shared_charge(self):
        s0 = self.terms[0].s
        if all(np.array_equal(t.s, s0) for t in self.terms):
            return s0
        return None

    def evaluate(self, points) -> FieldSample:
        return eval_field(self, points)


def _profile(spec: AnsatzSpec, points) -> np.ndarray:
    """d_mu exp(sum_j h(r_j)) with shape (..., 4)."""
    x = as_points(points)
    r = x @ spec.forms.alpha
    expo = np.sum(spec.profile.h(r), axis=-1)
    worst = np.max(expo.real) if np.size(expo) else 0.0
    if worst > EXP_LIMIT:
        raise FieldOverflowError(
            f"exponent real part {worst:.4g} exceeds {EXP_LIMIT}; point is outside the representable range")
    return np.exp(expo)[..., None] * spec.d


def eval_field(spec, points) -> FieldSample:
    if isinstance(spec, SumAnsatz):
        profiles = [_profile(t, points) for t in spec.terms]
        A = sum(np.asarray(t.s)[:, None] * pr[..., None, :] for t, pr in zip(spec.terms, profiles))
        s = spec.shared_charge()
        if s is not None:
            return FieldSample(A, s, sum(profiles))
        return FieldSample(A)
    pr = _profile(spec, points)
    return FieldSample(spec.s[:, None] * pr[..., None, :], spec.s, pr)


def real_part_field(spec, points) -> np.ndarray:
    return eval_field(spec, points).A.real


@dataclass(frozen=True)
class RealPartField:
    """Re A as a field in its own right (the charge vector is real)."""
    base: object

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def coupling(self) -> float:
        return self.base.coupling

    def evaluate(self, points) -> FieldSample:
        smp = self.base.evaluate(points)
        prof = None if smp.profile is None else smp.profile.real
        return FieldSample(smp.A.real, smp.charge, prof)


@dataclass(frozen=True)
class RotatedField:
    """Evaluates the base field at (i t, x_1, x_2, x_3) for real t."""
    base: object

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def coupling(self) -> float:
        return self.base.coupling

    def evaluate(self, points) -> FieldSample:
        x = np.array(as_points(points), dtype=complex)
        x[..., 0] = 1j * x[..., 0]
        return self.base.evaluate(x)


@dataclass(frozen=True)
class ZeroField:
    dim: int = 3
    coupling: float = 1.0

    def evaluate(self, points) -> FieldSample:
        x = as_points(points)
        shape = x.shape[:-1]
        return FieldSample(np.zeros(shape + (self.dim, 4), complex), np.zeros(self.dim),
                           np.zeros(shape + (4,), complex))


# --- validation ------------------------------------------------------------

@dataclass(frozen=True)
class ConditionResult:
    name: str
    residual: float
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    conditions: tuple
    degenerate: bool
    null_alternative: ConditionResult
    ratio_alternative: ConditionResult
    pair_products: ConditionResult

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.conditions if not c.passed]

    @property
    def alternative_holds(self) -> bool:
        return self.null_alternative.passed or self.ratio_alternative.passed

    def as_dict(self) -> dict:
        def one(c):
            return {"residual": c.residual, "passed": c.passed, "detail": c.detail}
        return {
            "conditions": {c.name: one(c) for c in self.conditions},
            "all_passed": self.all_passed,
            "degenerate": self.degenerate,
            "alternatives": {
                "null_direction": one(self.null_alternative),
                "constant_ratio": one(self.ratio_alternative),
                "holds": self.alternative_holds,
            },
            "pair_products": one(self.pair_products),
        }


def _check(name, value, scale, detail="", tol=COND_TOL) -> ConditionResult:
    value = float(value)
    ok = bool(np.isfinite(value) and value <= tol * max(1.0, float(scale)))
    return ConditionResult(name, value, ok, detail)


def pair_condition_residuals(alpha) -> np.ndarray:
    """alpha_3j alpha_3k - sum_l alpha_lj alpha_lk for every j < k."""
    a = np.asarray(alpha)
    J = a.shape[1]
    out = [a[3, j] * a[3, k] - np.sum(a[:3, j] * a[:3, k]) for j in range(J) for k in range(j + 1, J)]
    return np.array(out, dtype=complex)


def ratio_minors(alpha) -> np.ndarray:
    """alpha_1j alpha_2k - alpha_1k alpha_2j; all vanish iff alpha_1j / alpha_2j is constant."""
    a = np.asarray(alpha)
    J = a.shape[1]
    out = [a[1, j] * a[2, k] - a[1, k] * a[2, j] for j in range(J) for k in range(j + 1, J)]
    return np.array(out, dtype=complex)


def validate_conditions(spec: AnsatzSpec) -> ValidationReport:
    """Residual of every validity condition; never raises on bad parameters."""
    d = np.asarray(spec.d, dtype=complex)
    a = np.asarray(spec.forms.alpha, dtype=complex)
    dl = d[:3]
    degenerate = bool(np.all(d == 0))
    with np.errstate(all="ignore"):
        dd = abs(np.sum(dl ** 2))
        lin = np.abs(dl @ a[:3]) if a.size else np.zeros(0)
        col = np.abs(a[3] ** 2 - np.sum(a[:3] ** 2, axis=0)) if a.size else np.zeros(0)
        scale_d = float(np.sum(np.abs(dl) ** 2))
        scale_lin = float(np.max(np.abs(dl)[:, None] * np.abs(a[:3]), initial=0.0)) * 3
        scale_col = float(np.max(np.abs(a) ** 2, initial=0.0)) * 3
        pair = np.abs(pair_condition_residuals(a))
        minors = np.abs(ratio_minors(a))

    def worst(v):
        return float(np.max(v, initial=0.0))

    def worst_j(v):
        return "" if v.size == 0 else f"worst j={int(np.argmax(v)) + 1}"

    conds = (
        _check("gauge", abs(d[3]), 1.0, "d_3 = 0"),
        _check("null_direction", dd, scale_d, "sum_l d_l^2 = 0"),
        _check("orthogonality", worst(lin), scale_lin, "sum_l d_l alpha_lj = 0; " + worst_j(lin)),
        _check("column", worst(col), scale_col, "alpha_3j^2 = sum_l alpha_lj^2; " + worst_j(col)),
    )
    return ValidationReport(
        conditions=conds,
        degenerate=degenerate,
        null_alternative=_check("null_direction", dd, scale_d, "sum_l d_l^2 = 0"),
        ratio_alternative=_check("constant_ratio", worst(minors), scale_col, "alpha_1j / alpha_2j constant"),
        pair_products=_check("pair_products", worst(pair), scale_col,
                             "alpha_3j alpha_3k = sum_l alpha_lj alpha_lk for j < k"),
    )


# --- presets ---------------------------------------------------------------

def _single_alpha():
    return np.array([
        [0, 0, 1j / SQRT2],
        [1, 1, -1],
        [-1, -1, 0],
        [SQRT2, -SQRT2, 1 / SQRT2],
    ], dtype=complex)


def _pair_second_alpha():
    return np.array([
        [0, 0, 1j / SQRT2],
        [1, 1, -1],
        [1, 1, 0],
        [SQRT2, -SQRT2, 1 / SQRT2],
    ], dtype=complex)


PAPER_SINGLE_D = np.array([SQRT2 * (1 - 1j), 1 + 1j, 1 + 1j, 0])
PAPER_PAIR_D2 = np.array([SQRT2 * (1 - 1j), 1 + 1j, -(1 + 1j), 0])
PRESET_NAMES = ("paper-single", "paper-pair")


def unit_charge(dim: int = 3, a: int = 0) -> np.ndarray:
    s = np.zeros(dim)
    s[a] = 1.0
    return s


def paper_presets(name: str, beta: float = 1.0, s=None, coupling: float = 1.0, s2=None):
    """Named parameter tables; ``s2`` overrides the charge of the second pair term."""
    s = unit_charge() if s is None else np.asarray(s, dtype=float)
    if name == "paper-single":
        return AnsatzSpec(s, PAPER_SINGLE_D, LinearFormSet(_single_alpha(), el_valid=True),
                          beta, coupling, el_valid=True)
    if name == "paper-pair":
        t1 = AnsatzSpec(s, PAPER_SINGLE_D, LinearFormSet(_single_alpha(), el_valid=True),
                        beta, coupling, el_valid=True)
        t2 = AnsatzSpec(s if s2 is None else s2, PAPER_PAIR_D2,
                        LinearFormSet(_pair_second_alpha(), el_valid=True),
                        beta, coupling, el_valid=True)
        return SumAnsatz((t1, t2))
    raise ValueError(f"unknown preset {name!r}; expected one of {PRESET_NAMES}")


def random_admissible_spec(rng: np.random.Generator, dim: int = 3, beta: float = 1.0,
                           n_forms: int = 3, branch: Sequence[int] | None = None,
                           stratum: str = "generic") -> AnsatzSpec:
    """Draw d and alpha satisfying every validity condition except possibly null_direction.

    alpha_0j, alpha_1j are free, alpha_2j solves the orthogonality condition
    and alpha_3j takes the square-root branch given by ``branch`` (+1 / -1
    per form, random when omitted).  ``stratum`` selects ``"generic"``,
    ``"isotropic"`` (sum_l d_l^2 = 0) or ``"proportional"``
    (alpha_1j / alpha_2j the same for every j).
    """
    def cnormal(*shape):
        return rng.normal(size=shape) + 1j * rng.normal(size=shape)

    if stratum not in ("generic", "isotropic", "proportional"):
        raise ValueError(f"unknown stratum {stratum!r}")
    d = np.zeros(4, complex)
    while abs(d[2]) < 0.1:
        d[:3] = cnormal(3)
        if stratum == "isotropic":
            d[2] = 1j * np.sqrt(d[0] ** 2 + d[1] ** 2) * rng.choice([-1, 1])
    a = np.zeros((4, n_forms), complex)
    a[0] = cnormal(n_forms)
    if stratum == "proportional":
        c = cnormal(1)[0]
        a[2] = -d[0] * a[0] / (d[2] + d[1] * c)
        a[1] = c * a[2]
    else:
        a[1] = cnormal(n_forms)
        a[2] = -(d[0] * a[0] + d[1] * a[1]) / d[2]
    if branch is None:
        branch = rng.choice([-1, 1], size=n_forms)
    a[3] = np.asarray(branch) * np.sqrt(np.sum(a[:3] ** 2, axis=0))
    s = rng.normal(size=dim)
    return AnsatzSpec(s, d, LinearFormSet(a), beta)


# --- serialisation ---------------------------------------------------------

def _pairs(z) -> list:
    z = np.asarray(z, dtype=complex)
    if z.ndim == 1:
        return [[float(v.real), float(v.imag)] for v in z]
    return [_pairs(row) for row in z]


def _complex(obj, name) -> np.ndarray:
    arr = np.asarray(obj, dtype=float)
    if arr.shape[-1] != 2:
        raise ValueError(f"{name} entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def spec_to_dict(spec: AnsatzSpec) -> dict:
    return {
        "s": [float(v) for v in spec.s],
        "d": _pairs(spec.d),
        "alpha": _pairs(spec.forms.alpha),
        "beta": float(spec.beta),
        "coupling": float(spec.coupling),
        "profile": spec.profile.kind,
    }


def spec_from_dict(obj: dict) -> AnsatzSpec:
    missing = [k for k in ("s", "d", "alpha", "beta") if k not in obj]
    if missing:
        raise KeyError(f"ansatz config is missing {missing}")
    beta = float(obj["beta"])
    profile = ProfileH(beta, obj.get("profile", "gaussian"))
    return AnsatzSpec(
        s=np.asarray(obj["s"], dtype=float),
        d=_complex(obj["d"], "d"),
        forms=LinearFormSet(_complex(obj["alpha"], "alpha")),
        beta=beta,
        coupling=float(obj.get("coupling", 1.0)),
        profile=profile,
    )
