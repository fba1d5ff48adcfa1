"""p-adic integers known modulo a power of p."""
from __future__ import annotations

from dataclasses import dataclass

from ..arith import check_odd_prime, valuation
from ..errors import PrecisionError, PrimeMismatch


@dataclass(frozen=True)
class PadicInt:
    """An element of Z_p known modulo ``p**prec``.

    Arithmetic keeps the smaller of the two operand precisions; exact
    division additionally loses the valuation of the divisor.
    """

    p: int
    value: int
    prec: int

    def __post_init__(self):
        check_odd_prime(self.p)
        if self.prec < 1:
            raise PrecisionError(f"precision must be positive, got {self.prec}")
        object.__setattr__(self, "value", self.value % self.p**self.prec)

    @property
    def modulus(self) -> int:
        return self.p**self.prec

    def _coerce(self, other) -> PadicInt:
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise PrimeMismatch(f"{self.p} != {other.p}")
            return other
        if isinstance(other, int):
            return PadicInt(self.p, other, self.prec)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PadicInt(self.p, self.value + other.value, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return PadicInt(self.p, -self.value, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PadicInt(self.p, self.value * other.value, min(self.prec, other.prec))

    __rmul__ = __mul__

    def valuation(self) -> int:
        """Valuation, capped at ``prec`` for an element that is zero to precision."""
        return valuation(self.value, self.p, cap=self.prec)

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def inverse(self) -> PadicInt:
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        return PadicInt(self.p, pow(self.value, -1, self.modulus), self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        v = other.valuation()
        if v >= other.prec:
            raise PrecisionError("divisor is zero to its precision")
        if self.valuation() < v:
            raise PrecisionError("quotient is not integral")
        prec = min(self.prec, other.prec) - v
        if prec < 1:
            raise PrecisionError("division leaves no precision")
        pv = self.p**v
        num = self.value // pv
        den = other.value // pv
        mod = self.p**prec
        return PadicInt(self.p, num * pow(den, -1, mod), prec)

    def __repr__(self):
        return f"{self.value} + O({self.p}^{self.prec})"
