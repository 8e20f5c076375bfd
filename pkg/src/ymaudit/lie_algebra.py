"""SU(N) generators, structure constants and the commutator term of F.

Generators are normalised as Tr(t_a t_b) = delta_ab / 2 with [t_b, t_c] = i f_abc t_a.
Structure constants are extracted from the matrices, not tabulated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

ORTHO_TOL = 1e-12
CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class GeneratorSet:
    n: int
    matrices: np.ndarray  # (dim, n, n) complex

    @property
    def dim(self) -> int:
        return self.matrices.shape[0]

    def gram(self) -> np.ndarray:
        """Tr(t_a t_b) for all pairs."""
        return np.einsum("aij,bji->ab", self.matrices, self.matrices)

    def check(self, tol: float = ORTHO_TOL) -> dict[str, float]:
        """Largest violation of each generator invariant."""
        t = self.matrices
        herm = np.abs(t - np.conj(np.transpose(t, (0, 2, 1)))).max()
        trace = np.abs(np.einsum("aii->a", t)).max()
        ortho = np.abs(self.gram() - 0.5 * np.eye(self.dim)).max()
        return {"hermitian": float(herm), "traceless": float(trace), "orthonormal": float(ortho)}

    def is_valid(self, tol: float = ORTHO_TOL) -> bool:
        return all(v <= tol for v in self.check().values())


@dataclass(frozen=True)
class StructureConstants:
    f: np.ndarray  # (dim, dim, dim) real

    @property
    def dim(self) -> int:
        return self.f.shape[0]

    def antisymmetry_defect(self) -> float:
        f = self.f
        return float(max(np.abs(f + np.swapaxes(f, 0, 1)).max(),
                         np.abs(f + np.swapaxes(f, 1, 2)).max()))

    def reconstruction_defect(self, generators: GeneratorSet) -> float:
        """max | [t_b, t_c] - i f_abc t_a | over all b, c and matrix entries."""
        t = generators.matrices
        comm = np.einsum("bij,cjk->bcik", t, t) - np.einsum("cij,bjk->bcik", t, t)
        rebuilt = 1j * np.einsum("abc,aij->bcij", self.f, t)
        return float(np.abs(comm - rebuilt).max())


def _pauli() -> np.ndarray:
    return np.array([
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ], dtype=complex)


def _gell_mann() -> np.ndarray:
    lam = np.zeros((8, 3, 3), dtype=complex)
    lam[0][0, 1] = lam[0][1, 0] = 1
    lam[1][0, 1], lam[1][1, 0] = -1j, 1j
    lam[2][0, 0], lam[2][1, 1] = 1, -1
    lam[3][0, 2] = lam[3][2, 0] = 1
    lam[4][0, 2], lam[4][2, 0] = -1j, 1j
    lam[5][1, 2] = lam[5][2, 1] = 1
    lam[6][1, 2], lam[6][2, 1] = -1j, 1j
    lam[7] = np.diag([1, 1, -2]) / np.sqrt(3)
    return lam


@lru_cache(maxsize=None)
def su_generators(n: int = 2) -> GeneratorSet:
    """Halved Pauli (n=2) or halved Gell-Mann (n=3) matrices."""
    if n == 2:
        mats = 0.5 * _pauli()
    elif n == 3:
        mats = 0.5 * _gell_mann()
    else:
        raise ValueError(f"unsupported group rank n={n}; only SU(2) and SU(3) are provided")
    mats.setflags(write=False)
    return GeneratorSet(n=n, matrices=mats)


def structure_constants(generators: GeneratorSet) -> StructureConstants:
    """f_abc = -2i Tr([t_a, t_b] t_c), clamped and exactly antisymmetrised."""
    if not generators.is_valid():
        raise ValueError(f"generator set is not trace-orthonormal: {generators.check()}")
    t = generators.matrices
    ab = np.einsum("aij,bjk->abik", t, t)
    comm = ab - np.swapaxes(ab, 0, 1)
    raw = -2j * np.einsum("abij,cji->abc", comm, t)
    if np.abs(raw.imag).max() > 1e-10:
        raise ValueError("extracted structure constants are not real")
    g = raw.real
    g = np.where(np.abs(g) < CLAMP_TOL, 0.0, g)
    # fill every permutation from the a < b < c entry so antisymmetry is exact
    f = np.zeros_like(g)
    dim = generators.dim
    for a in range(dim):
        for b in range(a + 1, dim):
            for c in range(b + 1, dim):
                v = g[a, b, c]
                f[a, b, c] = f[b, c, a] = f[c, a, b] = v
                f[b, a, c] = f[a, c, b] = f[c, b, a] = -v
    f.setflags(write=False)
    return StructureConstants(f=f)


@lru_cache(maxsize=None)
def su_structure_constants(n: int = 2) -> StructureConstants:
    return structure_constants(su_generators(n))


def commutator_term(samples, f: StructureConstants, mu: int, nu: int,
                    method: str = "paired") -> np.ndarray:
    """Return f_abc A^mu_b A^nu_c for every adjoint index a.

    ``samples`` is a (dim, 4) array of field components, or anything exposing
    ``A`` (and optionally the product factors ``charge`` / ``profile``) such as
    :class:`ymaudit.ansatz.FieldSample`.  For a factored sample the
    contraction is taken on the charge vector first, so the result cancels
    exactly instead of to rounding.

    ``method`` is ``"paired"`` (sum over c > b of the antisymmetrised product)
    or ``"double"`` (plain double sum over b, c).
    """
    if not (0 <= mu < 4 and 0 <= nu < 4):
        raise IndexError(f"spacetime indices must lie in 0..3, got ({mu}, {nu})")
    charge = getattr(samples, "charge", None)
    profile = getattr(samples, "profile", None)
    A = np.asarray(getattr(samples, "A", samples))
    if A.shape[-2] != f.dim:
        raise IndexError(f"samples carry {A.shape[-2]} adjoint components, structure constants {f.dim}")

    if charge is not None and profile is not None:
        k = paired_contraction(f, np.asarray(charge), np.asarray(charge))
        return k * (profile[..., mu] * profile[..., nu])[..., None]

    a_mu = A[..., :, mu]
    a_nu = A[..., :, nu]
    if method == "double":
        return np.einsum("abc,...b,...c->...a", f.f, a_mu, a_nu)
    if method != "paired":
        raise ValueError(f"unknown method {method!r}")
    return paired_contraction(f, a_mu, a_nu)


def paired_contraction(f: StructureConstants, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """sum_{c>b} f_abc (u_b v_c - u_c v_b), broadcasting over leading axes."""
    b, c = np.triu_indices(f.dim, k=1)
    minors = u[..., b] * v[..., c] - u[..., c] * v[..., b]
    return np.einsum("ap,...p->...a", f.f[:, b, c], minors)
