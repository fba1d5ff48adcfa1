"""Right-hand side of the (Gr) characteristic-ideal problem from a rank sequence."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arith import check_odd_prime
from .errors import DecreasingRank, FineSelmerError, NonIntegralExponent
from .lambda_core import DistinguishedPoly, cyclotomic_phi, iota_normalize
from .lambda_core.polynomial import poly_mul, poly_pow


@dataclass(frozen=True)
class RankSequence:
    """r_n = rank E(L_n) for n = 0..N, with [L_n : Q] = p^n."""

    p: int
    ranks: tuple[int, ...]

    def __post_init__(self):
        check_odd_prime(self.p)
        rs = tuple(int(r) for r in self.ranks)
        if not rs:
            raise FineSelmerError("empty rank sequence")
        if any(r < 0 for r in rs):
            raise FineSelmerError("ranks must be non-negative")
        for n in range(1, len(rs)):
            if rs[n] < rs[n - 1]:
                raise DecreasingRank(f"rank drops from {rs[n - 1]} to {rs[n]} at n={n}")
            step = self.p ** (n - 1) * (self.p - 1)
            if (rs[n] - rs[n - 1]) % step:
                raise NonIntegralExponent(
                    f"rank jump {rs[n] - rs[n - 1]} at n={n} is not divisible by {step}")
        object.__setattr__(self, "ranks", rs)

    @classmethod
    def from_exponents(cls, p: int, exponents: Sequence[int]) -> RankSequence:
        ranks = [exponents[0]]
        for n in range(1, len(exponents)):
            ranks.append(ranks[-1] + exponents[n] * p ** (n - 1) * (p - 1))
        return cls(p, tuple(ranks))


@dataclass(frozen=True)
class GrRightSide:
    """prod over e_n >= 1 of Phi_n^(e_n - 1), as (n, exponent) pairs."""

    p: int
    factors: tuple[tuple[int, int], ...]

    def degree(self) -> int:
        return sum(k * cyclotomic_phi(n, self.p).degree for n, k in self.factors)

    def expand(self) -> list[int]:
        out = [1]
        for n, k in self.factors:
            out = poly_mul(out, poly_pow(cyclotomic_phi(n, self.p).coeffs, k))
        return out

    def __str__(self):
        live = [f"Phi_{n}^{k}" for n, k in self.factors if k]
        return " * ".join(live) if live else "1"


def exponent_sequence(ranks: RankSequence) -> list[int]:
    """e_0 = r_0 and e_n = (r_n - r_{n-1}) / (p^(n-1) (p-1))."""
    p, rs = ranks.p, ranks.ranks
    return [rs[0]] + [(rs[n] - rs[n - 1]) // (p ** (n - 1) * (p - 1)) for n in range(1, len(rs))]


def gr_rhs(ranks: RankSequence) -> GrRightSide:
    # e_n = 1 factors are kept with exponent 0 so a single jump stays visible
    es = exponent_sequence(ranks)
    return GrRightSide(ranks.p, tuple((n, e - 1) for n, e in enumerate(es) if e >= 1))


def verify_iota_invariance(rhs: GrRightSide, precision: int | None = None) -> bool:
    """Check, by computation, that every Phi_n in the product is iota-fixed."""
    for n, _ in rhs.factors:
        phi = cyclotomic_phi(n, rhs.p)
        if iota_normalize(phi, precision) != phi:
            return False
    return True
