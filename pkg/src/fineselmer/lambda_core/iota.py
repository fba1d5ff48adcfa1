"""The involution gamma -> gamma^{-1} of Lambda, i.e. X -> (1+X)^{-1} - 1."""
from __future__ import annotations

from ..errors import PrecisionError
from .polynomial import DistinguishedPoly, mul_trunc
from .series import LambdaSeries
from .weierstrass import weierstrass_prepare

DEFAULT_IOTA_PRECISION = 20


def iota_apply(F: DistinguishedPoly, a: int, b: int) -> LambdaSeries:
    """F((1+X)^{-1} - 1) as a series modulo (p^a, X^b)."""
    p = F.p
    if F.precision is not None:
        a = min(a, F.precision)
    if a < 1 or b < 1:
        raise PrecisionError(f"need positive precision, got (a={a}, b={b})")
    mod = p**a
    y = [0] + [((-1) ** k) % mod for k in range(1, b)]
    acc = [0] * b
    for c in reversed(F.coeffs):
        acc = mul_trunc(acc, y, b, mod)
        acc[0] = (acc[0] + c) % mod
    return LambdaSeries(p, tuple(acc), a, b)


def iota_normalize(F: DistinguishedPoly, precision: int | None = None) -> DistinguishedPoly:
    """Distinguished generator of the ideal (iota(F)), modulo p^precision.

    Coefficients come back as residues in ``[0, p^precision)``.
    """
    a = precision if precision is not None else DEFAULT_IOTA_PRECISION
    if F.precision is not None:
        a = min(a, F.precision)
    d = F.degree
    if d == 0:
        return DistinguishedPoly(F.p, (1,), a)
    # X-precision d*a + 1 lets preparation resolve P to the full p-precision
    series = iota_apply(F, a, d * a + 1)
    fac = weierstrass_prepare(series)
    if fac.mu != 0 or fac.distinguished_part.degree != d:
        raise PrecisionError(f"iota({F}) did not prepare to degree {d}")
    if fac.result_p_precision < a:
        raise PrecisionError("insufficient precision to resolve all coefficients")
    return fac.distinguished_part
