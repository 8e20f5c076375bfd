"""Static table of audited assertions.

Each claim carries a quote anchor: (offset, length, digest) into the
whitespace-normalised source text.  :func:`resolve_anchor` recovers the
quoted span when that text is supplied, so the table itself holds no prose.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

CATEGORIES = ("identity", "integral", "scaling", "residual")
COMPARISONS = ("relative", "absolute", "zero", "sign", "exponent", "count")


@dataclass(frozen=True)
class Claim:
    id: str
    title: str
    category: str
    comparison: str
    tolerance: float
    anchor: tuple            # (offset, length, sha256 prefix)
    stated: str              # closed form of the stated value, evaluated at run time

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise ValueError(f"bad category {self.category!r}")
        if self.comparison not in COMPARISONS:
            raise ValueError(f"bad comparison {self.comparison!r}")


_CLAIMS = (
    Claim("C1", "commutator term cancels for product fields", "identity", "zero", 0.0,
          (7855, 51, "1ccd8ed5ad73a9b3"), "0"),
    Claim("C2", "parameter tables satisfy the validity conditions", "identity", "absolute", 1e-12,
          (23536, 44, "899954978b18c7dd"), "0"),
    Claim("C3", "single-term field solves the reduced field equations", "residual", "absolute", 1e-8,
          (23542, 38, "377913ffec5a9a2a"), "0"),
    Claim("C4", "norm integral of the real part at x_0 = 0", "integral", "relative", 1e-6,
          (46289, 68, "b84860769969bf6d"), "sum_a s_a^2 sum_k c_k^2 (pi/2)^(3/2) / beta^3"),
    Claim("C5", "real-part Lagrangian vanishes pointwise (Minkowski, x_0 = 0)", "identity", "absolute", 1e-10,
          (31863, 15, "9b20588dab8e3c0c"), "0"),
    Claim("C6", "real-part energy constant B", "integral", "relative", 1e-6,
          (36265, 27, "f6bf5ae7e92fa44e"), "pi^(3/2) / 16 * sum_a s_a^2 * B / beta, B = 13/3 + 2/3 + 4 (0 for Minkowski)"),
    Claim("C7", "kinetic integral vanishes so int H_R = -int L_R", "integral", "absolute", 1e-10,
          (45041, 46, "364ff51a6c273b5f"), "0"),
    Claim("C8", "energy-to-norm ratio scales as beta^2 C with C >= 0", "scaling", "sign", 0.0,
          (48580, 24, "8f41a6a30ea1af5c"), "C >= 0, exponent 2"),
    Claim("C9", "two-term field: cross-term polynomial and positive energy", "integral", "sign", 0.0,
          (56592, 22, "6f09338d6f61e41b"),
          "-4 beta^4 sum_a s_a^2 exp(-2 beta^2 |y|^2) (-13/3 y1^2 + 8 y2^2 - 170/21 y3^2 + 8/21 sqrt(14) y1 y3); P0 > 0"),
    Claim("C10", "commutator survives for non-parallel charge vectors", "residual", "sign", 0.0,
          (70047, 25, "fd628608d128e83a"), "commutator contribution > 0"),
    Claim("C11", "one-dimensional expectation ratio", "integral", "relative", 1e-12,
          (59298, 22, "28d0b30f471639cf"), "1 / (sqrt(2) a)"),
    Claim("C12", "forms restricted to the non-gauged rows are linearly dependent", "identity", "absolute", 1e-12,
          (22510, 40, "40af754fbb1aa833"), "0"),
    Claim("C13", "time dependence of the complex field", "identity", "relative", 1e-6,
          (47347, 30, "d4b0874e8590eb58"),
          "Re A = s E (c cos(beta^2 x_0 / sqrt 2) + e sin(beta^2 x_0 / sqrt 2)); A = s d E exp(-i sqrt(2) x_0)"),
    Claim("C14", "pair-product condition holds iff null direction or constant ratio", "identity", "count", 0.0,
          (21138, 24, "5c86a5dfae7251ef"), "0 counterexamples"),
)

CLAIMS = {c.id: c for c in _CLAIMS}


def claim_registry() -> list[Claim]:
    return list(_CLAIMS)


def get_claim(claim_id: str) -> Claim:
    try:
        return CLAIMS[claim_id]
    except KeyError:
        raise KeyError(f"unknown claim id {claim_id!r}; known: {', '.join(CLAIMS)}") from None


def normalise_text(text: str) -> str:
    return " ".join(text.split())


def resolve_anchor(anchor: tuple, text: str, normalised: bool = False) -> str | None:
    """Return the anchored span of ``text`` or None if the digest does not match."""
    offset, length, digest = anchor
    body = text if normalised else normalise_text(text)
    span = body[offset:offset + length]
    if hashlib.sha256(span.encode()).hexdigest()[:len(digest)] == digest:
        return span
    return None
