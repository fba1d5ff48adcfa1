"""Weierstrass division and preparation in Z_p[[X]].

Precision bookkeeping.  If a series ``g`` is only known modulo ``X^b`` and
``P`` is distinguished of degree ``d``, then ``X^b`` reduces modulo ``P`` to a
polynomial divisible by ``p^(b // d)``.  Hence the distinguished part and the
Weierstrass remainder are determined modulo ``p^c`` for ``c <= b // d``, and in
``(Z/p^c)[[X]]`` the quotient / unit is determined modulo ``X^(b - c*d)``.
Both routines pick ``c = min(available p-precision, (b - 1) // d)`` so that at
least one X-coefficient of the quotient / unit survives.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import InsufficientXPrecision, PrecisionError, PrimeMismatch, ZeroWithinPrecision
from .polynomial import DistinguishedPoly, mul_trunc
from .series import LambdaSeries, series_inverse


@dataclass(frozen=True)
class WeierstrassFactorization:
    mu: int
    distinguished_part: DistinguishedPoly
    unit_part: LambdaSeries
    result_p_precision: int
    result_x_precision: int

    @property
    def lambda_(self) -> int:
        return self.distinguished_part.degree

    def reconstruct(self) -> LambdaSeries:
        """p^mu * P * u, valid modulo (p^(mu + result_p_precision), X^result_x_precision)."""
        p = self.unit_part.p
        a = self.mu + self.result_p_precision
        b = self.result_x_precision
        mod = p**a
        P = list(self.distinguished_part.coeffs)
        u = list(self.unit_part.coeffs[:b])
        prod = mul_trunc([c % mod for c in P], u, b, mod)
        return LambdaSeries(p, tuple(p**self.mu * c for c in prod), a, b)


@dataclass(frozen=True)
class WeierstrassDivision:
    quotient: LambdaSeries
    remainder: tuple[int, ...]
    precision: int


def _shift_down(f: list[int], d: int, n: int) -> list[int]:
    """tau_d: drop the terms below X^d and divide by X^d, keeping n terms."""
    out = f[d:d + n]
    return out + [0] * (n - len(out))


def weierstrass_divide(f: LambdaSeries, P: DistinguishedPoly) -> WeierstrassDivision:
    """Write f = q*P + r with deg r < deg P."""
    if f.p != P.p:
        raise PrimeMismatch(f"{f.p} != {P.p}")
    p, d = f.p, P.degree
    a = f.a if P.precision is None else min(f.a, P.precision)
    if d == 0:
        return WeierstrassDivision(f.truncate(a=a), (), a)
    c = min(a, (f.b - 1) // d)
    if c < 1:
        raise InsufficientXPrecision(
            f"X-precision {f.b} cannot determine a quotient coefficient for degree {d}")
    bq = f.b - c * d
    n = max(d, bq)
    L = n + c * d
    mod = p**c
    fl = [x % mod for x in f.coeffs] + [0] * (L + d)
    low = [x % mod for x in P.coeffs[:d]]
    top = _shift_down(fl, d, L)
    q = top
    # q = tau(f) - tau(q * low): the correction gains one power of p per pass
    for _ in range(c):
        qs = mul_trunc(q, low, L + d, mod)
        corr = _shift_down(qs, d, L)
        q = [(x - y) % mod for x, y in zip(top, corr)]
    qP = mul_trunc(q[:d], [x % mod for x in P.coeffs], d, mod)
    r = tuple((fl[i] - qP[i]) % mod for i in range(d))
    return WeierstrassDivision(LambdaSeries(p, tuple(q[:bq]), c, bq), r, c)


def weierstrass_prepare(f: LambdaSeries) -> WeierstrassFactorization:
    """Factor f = p^mu * P * u with P distinguished and u a unit."""
    p, a, b = f.p, f.a, f.b
    if f.is_zero():
        raise ZeroWithinPrecision(f"series vanishes modulo (p^{a}, X^{b})")
    vals = f.valuations()
    mu = min(vals)
    ap = a - mu
    pm = p**mu
    g = [x // pm for x in f.coeffs]
    d = next((i for i, x in enumerate(g) if x % p), None)
    if d is None or d >= b:
        raise InsufficientXPrecision("no unit coefficient before the truncation bound")
    if d == 0:
        u = LambdaSeries(p, tuple(g), ap, b)
        return WeierstrassFactorization(mu, DistinguishedPoly(p, (1,), ap), u, ap, b)
    c = min(ap, (b - 1) // d)
    bu = b - c * d
    L = max(d + 1, bu) + c * d
    mod = p**c
    gl = [x % mod for x in g] + [0] * (L + d)
    low = gl[:d]
    unit_tail = _shift_down(gl, d, L)
    tail_inv = series_inverse(unit_tail, L, mod)
    # q with tau(g*q) = 1 solves g*q = P; iterate q = C^{-1}(1 - tau(B q))
    q = tail_inv
    for _ in range(c):
        corr = _shift_down(mul_trunc(q, low, L + d, mod), d, L)
        one_minus = [(-x) % mod for x in corr]
        one_minus[0] = (one_minus[0] + 1) % mod
        q = mul_trunc(tail_inv, one_minus, L, mod)
    gq = mul_trunc(gl, q[: d + 1], d + 1, mod)
    if gq[d] % mod != 1 % mod:
        raise PrecisionError("preparation iteration did not converge")
    P = DistinguishedPoly(p, tuple(gq[:d]) + (1,), c)
    u = LambdaSeries(p, tuple(series_inverse(q[:bu], bu, mod)), c, bu)
    return WeierstrassFactorization(mu, P, u, c, bu)
