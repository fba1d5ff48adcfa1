"""Exact integer polynomials, distinguished polynomials, omega_n and Phi_n.

Coefficient lists are always ascending in the power of X.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from ..arith import check_odd_prime
from ..errors import FineSelmerError, PrimeMismatch


def trim(f: Sequence[int]) -> list[int]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_add(f: Sequence[int], g: Sequence[int]) -> list[int]:
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def poly_mul(f: Sequence[int], g: Sequence[int]) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out)


def poly_pow(f: Sequence[int], k: int) -> list[int]:
    out = [1]
    for _ in range(k):
        out = poly_mul(out, f)
    return out


def poly_divmod(f: Sequence[int], g: Sequence[int]) -> tuple[list[int], list[int]]:
    """Divide by a monic integer polynomial."""
    g = trim(g)
    if not g or g[-1] != 1:
        raise ValueError("divisor must be monic")
    r = trim(f)
    d = len(g) - 1
    if len(r) <= d:
        return [], r
    q = [0] * (len(r) - d)
    for k in range(len(r) - 1, d - 1, -1):
        c = r[k]
        if c:
            q[k - d] = c
            for j in range(d + 1):
                r[k - d + j] -= c * g[j]
    return trim(q), trim(r[:d])


def mul_trunc(f: Sequence[int], g: Sequence[int], n: int, modulus: int) -> list[int]:
    """Product of two polynomials with entries in [0, modulus), mod (modulus, X^n).

    Uses Kronecker substitution so that long products run at big-int speed.
    """
    f = list(f[:n])
    g = list(g[:n])
    if not f or not g:
        return [0] * n
    m = min(len(f), len(g))
    bits = 2 * (modulus - 1).bit_length() + m.bit_length() + 1
    width = (bits + 7) // 8
    pack_f = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in f), "little")
    pack_g = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in g), "little")
    prod = pack_f * pack_g
    length = min(n, len(f) + len(g) - 1)
    raw = prod.to_bytes(width * (len(f) + len(g)), "little")
    out = [int.from_bytes(raw[i * width:(i + 1) * width], "little") % modulus for i in range(length)]
    out.extend([0] * (n - length))
    return out


@dataclass(frozen=True, eq=False)
class DistinguishedPoly:
    """Monic polynomial over Z_p whose lower coefficients are divisible by p.

    ``precision=None`` means the coefficients are exact integers; otherwise
    they are residues modulo ``p**precision`` and equality is tested modulo
    the smaller precision of the two operands.
    """

    p: int
    coeffs: tuple[int, ...]
    precision: int | None = None

    def __post_init__(self):
        check_odd_prime(self.p)
        cs = [int(c) for c in self.coeffs]
        if self.precision is not None:
            if self.precision < 1:
                raise FineSelmerError("precision must be positive")
            mod = self.p**self.precision
            cs = [c % mod for c in cs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs or cs[-1] != 1:
            raise FineSelmerError(f"polynomial {cs} is not monic")
        if any(c % self.p for c in cs[:-1]):
            raise FineSelmerError(f"polynomial {cs} is not distinguished at p={self.p}")
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls, p: int) -> DistinguishedPoly:
        return cls(p, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return self.precision is None

    def __eq__(self, other):
        if not isinstance(other, DistinguishedPoly):
            return NotImplemented
        if self.p != other.p or self.degree != other.degree:
            return False
        precs = [a for a in (self.precision, other.precision) if a is not None]
        if not precs:
            return self.coeffs == other.coeffs
        mod = self.p ** min(precs)
        return all((a - b) % mod == 0 for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.p, self.degree))

    def reduce(self, precision: int) -> DistinguishedPoly:
        if self.precision is not None:
            precision = min(precision, self.precision)
        return DistinguishedPoly(self.p, self.coeffs, precision)

    def power(self, k: int) -> list[int]:
        """``self**k`` as an integer coefficient list."""
        return poly_pow(self.coeffs, k)

    def __mul__(self, other: DistinguishedPoly) -> DistinguishedPoly:
        if other.p != self.p:
            raise PrimeMismatch(f"{self.p} != {other.p}")
        precs = [a for a in (self.precision, other.precision) if a is not None]
        return DistinguishedPoly(self.p, tuple(poly_mul(self.coeffs, other.coeffs)), min(precs) if precs else None)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        tail = "" if self.precision is None else f" mod {self.p}^{self.precision}"
        return f"DistinguishedPoly(p={self.p}, {list(self.coeffs)}{tail})"

    def __str__(self):
        return format_poly(self.coeffs)


def format_poly(coeffs: Sequence[int]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
        if mono and c == 1:
            terms.append(mono)
        elif mono:
            terms.append(f"{c}*{mono}")
        else:
            terms.append(str(c))
    return " + ".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def _omega_coeffs(n: int, p: int) -> tuple[int, ...]:
    N = p**n
    return (0,) + tuple(comb(N, j) for j in range(1, N + 1))


def omega(n: int, p: int) -> DistinguishedPoly:
    """(1+X)^(p^n) - 1."""
    if n < 0:
        raise FineSelmerError("n must be non-negative")
    return DistinguishedPoly(p, _omega_coeffs(n, p))


@lru_cache(maxsize=None)
def _phi_coeffs(n: int, p: int) -> tuple[int, ...]:
    if n == 0:
        return (0, 1)
    q, r = poly_divmod(_omega_coeffs(n, p), _omega_coeffs(n - 1, p))
    if r:
        raise AssertionError(f"omega_{n} not divisible by omega_{n - 1}")
    return tuple(q)


def cyclotomic_phi(n: int, p: int) -> DistinguishedPoly:
    """The p^n-th cyclotomic polynomial evaluated at 1+X; Phi_0 = X."""
    if n < 0:
        raise FineSelmerError("n must be non-negative")
    return DistinguishedPoly(p, _phi_coeffs(n, p))
