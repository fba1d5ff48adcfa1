"""Sufficient local conditions for the vanishing of cyclotomic-tower invariants
of twisted newform representations at primes dividing a square-free level.

For each prime l | N with m_l the order of l mod p:

* l must not be 1 mod p;
* if l | M (nebentypus conductor): m_l divides neither 1-k+i nor 1-i;
* if l | N/M: gcd(m_l, phi(M)) = 1 and m_l divides neither k nor k-2.

Divisibility follows the usual convention that every m divides 0.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable

from .arith import factorize, is_prime
from .errors import FineSelmerError, InadmissibleQuery, NotCoprime, NotSquareFree

ELL_EQ_1_MOD_P = "ELL_EQ_1_MOD_P"
ORDER_DIVIDES_1_MINUS_K_PLUS_I = "ORDER_DIVIDES_1_MINUS_K_PLUS_I"
ORDER_DIVIDES_1_MINUS_I = "ORDER_DIVIDES_1_MINUS_I"
GCD_WITH_PHI_M = "GCD_WITH_PHI_M"
ORDER_DIVIDES_K = "ORDER_DIVIDES_K"
ORDER_DIVIDES_K_MINUS_2 = "ORDER_DIVIDES_K_MINUS_2"


@dataclass(frozen=True)
class NewformRecord:
    label: str
    N: int
    k: int
    M: int
    extra: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.N < 1 or self.M < 1:
            raise FineSelmerError("level and conductor must be positive")
        if self.k < 2:
            raise FineSelmerError(f"weight must be >= 2, got {self.k}")
        if self.N % self.M:
            raise FineSelmerError(f"conductor {self.M} does not divide level {self.N}")
        if any(e > 1 for e in factorize(self.N).values()):
            raise NotSquareFree(f"level {self.N} is not square-free")

    def level_primes(self) -> list[int]:
        return sorted(factorize(self.N))

    @classmethod
    def from_dict(cls, data: dict) -> NewformRecord:
        try:
            known = {"label", "N", "k", "M"}
            return cls(str(data["label"]), int(data["N"]), int(data["k"]), int(data["M"]),
                       {key: v for key, v in data.items() if key not in known})
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, FineSelmerError):
                raise
            raise FineSelmerError(f"malformed newform record: {exc}") from exc


def load_records(path) -> list[NewformRecord]:
    """Read one record or an array of records from a JSON file."""
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list) or not data:
        raise FineSelmerError("newform file must hold a record or a non-empty array")
    return [NewformRecord.from_dict(d) for d in data]


@dataclass(frozen=True)
class TwistQuery:
    p: int
    i: int


@dataclass(frozen=True)
class PrimeCheck:
    ell: int
    m: int
    branch: str  # "M" or "N/M"
    reasons: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.reasons


@dataclass(frozen=True)
class HypothesisReport:
    label: str
    p: int
    i: int
    verdict: str  # "pass", "fail" or "inadmissible"
    per_prime: tuple[PrimeCheck, ...] = ()
    note: str = ""

    def line(self) -> str:
        """``label p i verdict reasons...``"""
        reasons = [f"{c.ell}:{r}" for c in self.per_prime for r in c.reasons]
        if self.note:
            reasons.append(self.note)
        return " ".join([self.label, str(self.p), str(self.i), self.verdict, *reasons])


def multiplicative_order(ell: int, p: int) -> int:
    """Order of ell in (Z/p)^x."""
    if gcd(ell, p) != 1:
        raise NotCoprime(f"{ell} and {p} are not coprime")
    order = p - 1
    x = ell % p
    for q in factorize(p - 1):
        while order % q == 0 and pow(x, order // q, p) == 1:
            order //= q
    return order


def euler_phi(M: int) -> int:
    if M < 1:
        raise FineSelmerError("phi needs a positive argument")
    out = M
    for q in factorize(M):
        out = out // q * (q - 1)
    return out


def _divides(m: int, x: int) -> bool:
    return x % m == 0


def check_prime(ell: int, record: NewformRecord, query: TwistQuery) -> PrimeCheck:
    """Evaluate the three conditions at one l | N; collect every failing reason."""
    p, i, k, M = query.p, query.i, record.k, record.M
    m = multiplicative_order(ell, p)
    reasons = []
    if ell % p == 1:
        reasons.append(ELL_EQ_1_MOD_P)
    if M % ell == 0:
        branch = "M"
        if _divides(m, 1 - k + i):
            reasons.append(ORDER_DIVIDES_1_MINUS_K_PLUS_I)
        if _divides(m, 1 - i):
            reasons.append(ORDER_DIVIDES_1_MINUS_I)
    else:
        branch = "N/M"
        if gcd(m, euler_phi(M)) != 1:
            reasons.append(GCD_WITH_PHI_M)
        if _divides(m, k):
            reasons.append(ORDER_DIVIDES_K)
        if _divides(m, k - 2):
            reasons.append(ORDER_DIVIDES_K_MINUS_2)
    return PrimeCheck(ell, m, branch, tuple(reasons))


def check_admissible(record: NewformRecord, query: TwistQuery) -> None:
    p, i = query.p, query.i
    if p == 2 or not is_prime(p):
        raise InadmissibleQuery(f"p={p} is not an odd prime")
    if record.N % p == 0:
        raise InadmissibleQuery(f"p={p} divides the level {record.N}")
    if not 0 <= i <= record.k:
        raise InadmissibleQuery(f"twist i={i} outside 0..{record.k}")


def check_hcyc(record: NewformRecord, query: TwistQuery) -> HypothesisReport:
    check_admissible(record, query)
    checks = tuple(check_prime(ell, record, query) for ell in record.level_primes())
    verdict = "pass" if all(c.passed for c in checks) else "fail"
    return HypothesisReport(record.label, query.p, query.i, verdict, checks)


def odd_primes_upto(n: int) -> list[int]:
    if n < 3:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for q in range(2, int(n**0.5) + 1):
        if sieve[q]:
            sieve[q * q::q] = bytearray(len(sieve[q * q::q]))
    return [q for q in range(3, n + 1) if sieve[q]]


def scan(record: NewformRecord, p_max: int, i_values: Iterable[int] | None = None) -> list[HypothesisReport]:
    """Check every odd prime p <= p_max and every twist in ``i_values`` (default 0..k).

    Primes dividing N are reported once each as inadmissible, with i = -1.
    """
    if p_max < 3:
        raise FineSelmerError("p_max must be at least 3")
    i_list = list(range(record.k + 1)) if i_values is None else sorted(set(i_values))
    for i in i_list:
        if not 0 <= i <= record.k:
            raise InadmissibleQuery(f"twist i={i} outside 0..{record.k}")
    out = []
    for p in odd_primes_upto(p_max):
        if record.N % p == 0:
            out.append(HypothesisReport(record.label, p, -1, "inadmissible", note="p|N"))
            continue
        out.extend(check_hcyc(record, TwistQuery(p, i)) for i in i_list)
    return out
