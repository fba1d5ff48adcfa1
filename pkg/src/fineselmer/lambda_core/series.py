"""Truncated power series in Z_p[[X]] with explicit (p, X) precision."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..arith import check_odd_prime, valuation
from ..errors import PrecisionError, PrimeMismatch
from .padic import PadicInt
from .polynomial import mul_trunc


@dataclass(frozen=True)
class LambdaSeries:
    """Element of Z_p[[X]] known modulo (p^a, X^b).

    ``coeffs`` holds exactly ``b`` residues in ``[0, p^a)``.
    """

    p: int
    coeffs: tuple[int, ...]
    a: int
    b: int

    def __post_init__(self):
        check_odd_prime(self.p)
        if self.a < 1 or self.b < 1:
            raise PrecisionError(f"precision must be positive, got (a={self.a}, b={self.b})")
        cs = list(self.coeffs)
        if len(cs) > self.b:
            cs = cs[: self.b]
        mod = self.p**self.a
        cs = [int(c) % mod for c in cs] + [0] * (self.b - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_poly(cls, p: int, coeffs: Sequence[int], a: int, b: int) -> LambdaSeries:
        return cls(p, tuple(coeffs), a, b)

    @property
    def modulus(self) -> int:
        return self.p**self.a

    @property
    def padic_coefficients(self) -> tuple[PadicInt, ...]:
        return tuple(PadicInt(self.p, c, self.a) for c in self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuations(self) -> list[int]:
        return [valuation(c, self.p, cap=self.a) for c in self.coeffs]

    def truncate(self, a: int | None = None, b: int | None = None) -> LambdaSeries:
        a = self.a if a is None else min(a, self.a)
        b = self.b if b is None else min(b, self.b)
        return LambdaSeries(self.p, self.coeffs[:b], a, b)

    def _check(self, other: LambdaSeries) -> None:
        if other.p != self.p:
            raise PrimeMismatch(f"{self.p} != {other.p}")

    def __add__(self, other):
        if isinstance(other, (int, PadicInt)):
            other = constant(self.p, other, self.a, self.b)
        if not isinstance(other, LambdaSeries):
            return NotImplemented
        self._check(other)
        b = min(self.b, other.b)
        return LambdaSeries(self.p, tuple(x + y for x, y in zip(self.coeffs[:b], other.coeffs[:b])), min(self.a, other.a), b)

    __radd__ = __add__

    def __neg__(self):
        return LambdaSeries(self.p, tuple(-c for c in self.coeffs), self.a, self.b)

    def __sub__(self, other):
        if isinstance(other, (int, PadicInt)):
            other = constant(self.p, other, self.a, self.b)
        if not isinstance(other, LambdaSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise PrimeMismatch(f"{self.p} != {other.p}")
            return LambdaSeries(self.p, tuple(c * other.value for c in self.coeffs), min(self.a, other.prec), self.b)
        if isinstance(other, int):
            return LambdaSeries(self.p, tuple(c * other for c in self.coeffs), self.a, self.b)
        if not isinstance(other, LambdaSeries):
            return NotImplemented
        self._check(other)
        a, b = min(self.a, other.a), min(self.b, other.b)
        mod = self.p**a
        f = [c % mod for c in self.coeffs]
        g = [c % mod for c in other.coeffs]
        return LambdaSeries(self.p, tuple(mul_trunc(f, g, b, mod)), a, b)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.coeffs[0] % self.p != 0

    def inverse(self) -> LambdaSeries:
        """Multiplicative inverse of a unit series, by Newton iteration."""
        if not self.is_unit():
            raise ZeroDivisionError("series with non-unit constant term is not invertible")
        return LambdaSeries(self.p, tuple(series_inverse(self.coeffs, self.b, self.modulus)), self.a, self.b)

    def congruent(self, other: LambdaSeries, a: int, b: int) -> bool:
        """True if the two series agree modulo (p^a, X^b)."""
        if a > min(self.a, other.a) or b > min(self.b, other.b):
            raise PrecisionError("comparison exceeds the known precision")
        mod = self.p**a
        return all((x - y) % mod == 0 for x, y in zip(self.coeffs[:b], other.coeffs[:b]))

    def __repr__(self):
        terms = [f"{c}*X^{i}" for i, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O({self.p}^{self.a}, X^{self.b})"


def constant(p: int, c, a: int, b: int) -> LambdaSeries:
    if isinstance(c, PadicInt):
        a = min(a, c.prec)
        c = c.value
    return LambdaSeries(p, (c,), a, b)


def series_inverse(f: Sequence[int], n: int, modulus: int) -> list[int]:
    """Inverse of a unit power series modulo (modulus, X^n)."""
    inv = [pow(f[0], -1, modulus)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        # h <- h (2 - f h)
        fh = mul_trunc(f[:k], inv, k, modulus)
        corr = [(-c) % modulus for c in fh]
        corr[0] = (corr[0] + 2) % modulus
        inv = mul_trunc(inv, corr, k, modulus)
    return inv[:n] + [0] * (n - len(inv))


def geometric_inverse_one_plus_x(p: int, a: int, b: int) -> LambdaSeries:
    """(1+X)^{-1} = 1 - X + X^2 - ..."""
    return LambdaSeries(p, tuple((-1) ** i for i in range(b)), a, b)
