"""Finitely generated Lambda-modules in structure-theorem form.

A module is stored as its elementary decomposition

    Lambda^a  +  sum_i Lambda/p^alpha_i  +  sum_j Lambda/F_j^beta_j

over O = Z_p tensored up to an unramified O with residue field of size
q = p^f.  Sizes are reported as exponents of q, coranks as Z_p-coranks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable

import numpy as np

from .errors import FineSelmerError, NotStabilized, NotTorsion, PrecisionError, PrimeMismatch
from .lambda_core import DistinguishedPoly, format_poly, iota_normalize, omega
from .lambda_core.polynomial import poly_divmod, poly_mul
from .linalg import elementary_valuations


@dataclass(frozen=True)
class TorsionPart:
    poly: DistinguishedPoly
    beta: int
    irreducible_asserted: bool = True

    def __post_init__(self):
        if self.beta < 1:
            raise FineSelmerError(f"beta must be positive, got {self.beta}")
        if self.poly.degree < 1:
            raise FineSelmerError("torsion polynomial must have degree >= 1")

    def sort_key(self):
        return (self.poly.coeffs, -self.beta)


@dataclass(frozen=True)
class ElementaryModule:
    p: int
    f: int = 1
    free_rank: int = 0
    mu_exponents: tuple[int, ...] = ()
    torsion_parts: tuple[TorsionPart, ...] = ()

    def __post_init__(self):
        if self.f < 1 or self.free_rank < 0:
            raise FineSelmerError("residue exponent must be >= 1 and free rank >= 0")
        if any(a < 1 for a in self.mu_exponents):
            raise FineSelmerError("mu exponents must be positive")
        for part in self.torsion_parts:
            if part.poly.p != self.p:
                raise PrimeMismatch(f"{part.poly.p} != {self.p}")
        object.__setattr__(self, "mu_exponents", tuple(sorted(self.mu_exponents, reverse=True)))
        object.__setattr__(self, "torsion_parts", tuple(sorted(self.torsion_parts, key=TorsionPart.sort_key)))

    @classmethod
    def zero(cls, p: int, f: int = 1) -> ElementaryModule:
        return cls(p, f)

    @classmethod
    def cyclic_pi(cls, p: int, alpha: int, f: int = 1) -> ElementaryModule:
        """Lambda / p^alpha."""
        return cls(p, f, mu_exponents=(alpha,))

    @classmethod
    def cyclic_poly(cls, F: DistinguishedPoly, beta: int = 1, f: int = 1) -> ElementaryModule:
        """Lambda / F^beta."""
        return cls(F.p, f, torsion_parts=(TorsionPart(F, beta),))

    @property
    def is_torsion(self) -> bool:
        return self.free_rank == 0

    def is_zero(self) -> bool:
        return not (self.free_rank or self.mu_exponents or self.torsion_parts)

    def __add__(self, other: ElementaryModule) -> ElementaryModule:
        """Direct sum."""
        if not isinstance(other, ElementaryModule):
            return NotImplemented
        if (other.p, other.f) != (self.p, self.f):
            raise PrimeMismatch("direct sum needs the same (p, f)")
        return ElementaryModule(
            self.p, self.f, self.free_rank + other.free_rank,
            self.mu_exponents + other.mu_exponents,
            self.torsion_parts + other.torsion_parts,
        )

    def summands(self) -> list[tuple[str, object]]:
        """Cyclic torsion summands as ('pi', alpha) or ('poly', TorsionPart)."""
        return [("pi", a) for a in self.mu_exponents] + [("poly", t) for t in self.torsion_parts]

    def describe(self) -> str:
        pieces = []
        if self.free_rank:
            pieces.append("Lambda" + (f"^{self.free_rank}" if self.free_rank > 1 else ""))
        pieces += [f"Lambda/{self.p}^{a}" for a in self.mu_exponents]
        for t in self.torsion_parts:
            poly = f"({format_poly(t.poly.coeffs)})"
            pieces.append(f"Lambda/{poly}" + (f"^{t.beta}" if t.beta > 1 else ""))
        return " + ".join(pieces) if pieces else "0"

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "free_rank": self.free_rank,
            "mu_exponents": list(self.mu_exponents),
            "torsion": [{"poly": list(t.poly.coeffs), "beta": t.beta} for t in self.torsion_parts],
        }

    @classmethod
    def from_dict(cls, data: dict) -> ElementaryModule:
        try:
            p = int(data["p"])
            parts = tuple(
                TorsionPart(DistinguishedPoly(p, tuple(int(c) for c in t["poly"])), int(t["beta"]))
                for t in data.get("torsion", [])
            )
            return cls(
                p,
                int(data.get("f", 1)),
                int(data.get("free_rank", 0)),
                tuple(int(a) for a in data.get("mu_exponents", [])),
                parts,
            )
        except (KeyError, TypeError) as exc:
            raise FineSelmerError(f"malformed module spec: {exc}") from exc

    @classmethod
    def load(cls, path) -> ElementaryModule:
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class CharIdeal:
    """p^mu_total * prod F^exponent, kept factored."""

    mu_total: int
    distinguished_factors: tuple[tuple[DistinguishedPoly, int], ...] = field(default=())

    def lambda_(self) -> int:
        return sum(F.degree * k for F, k in self.distinguished_factors)

    def __str__(self):
        parts = [f"p^{self.mu_total}"] if self.mu_total else []
        parts += [f"({format_poly(F.coeffs)})^{k}" for F, k in self.distinguished_factors]
        return " * ".join(parts) if parts else "1"


def mu_invariant(M: ElementaryModule) -> int:
    return sum(M.mu_exponents)


def lambda_invariant(M: ElementaryModule) -> int:
    return sum(t.beta * t.poly.degree for t in M.torsion_parts)


def f_part(M: ElementaryModule, F: DistinguishedPoly) -> ElementaryModule:
    """M(F^infinity): the summands Lambda/F^beta with exactly this F."""
    return ElementaryModule(M.p, M.f, torsion_parts=tuple(t for t in M.torsion_parts if t.poly == F))


def pi_part(M: ElementaryModule) -> ElementaryModule:
    """M(p^infinity)."""
    return ElementaryModule(M.p, M.f, mu_exponents=M.mu_exponents)


def char_ideal(M: ElementaryModule) -> CharIdeal:
    if not M.is_torsion:
        raise NotTorsion(f"free rank {M.free_rank} > 0")
    agg: list[list] = []
    for t in M.torsion_parts:
        for entry in agg:
            if entry[0] == t.poly:
                entry[1] += t.beta
                break
        else:
            agg.append([t.poly, t.beta])
    return CharIdeal(mu_invariant(M), tuple((F, k) for F, k in agg))


def iota_twist(M: ElementaryModule, precision: int | None = None) -> ElementaryModule:
    parts = tuple(
        TorsionPart(iota_normalize(t.poly, precision), t.beta, t.irreducible_asserted)
        for t in M.torsion_parts
    )
    return ElementaryModule(M.p, M.f, M.free_rank, M.mu_exponents, parts)


def _require_torsion(M: ElementaryModule) -> None:
    if not M.is_torsion:
        raise NotTorsion(f"free rank {M.free_rank} > 0")


def _summand_poly(kind: str, item, p: int, e: int) -> list[int]:
    """Integer generator of a cyclic summand: p^alpha or F^beta."""
    if kind == "pi":
        return [p**item]
    F = item.poly
    if F.precision is not None and F.precision < e:
        raise PrecisionError(f"{F!r} is known only modulo p^{F.precision}, need p^{e}")
    return F.power(item.beta)


def multiplication_matrix(G: list[int], modulus_poly: list[int], mod: int) -> list[list[int]]:
    """Matrix of h -> G*h on (Z/mod)[X]/(modulus_poly), monomial basis."""
    n = len(modulus_poly) - 1
    _, col = poly_divmod(G, modulus_poly)
    col = [c % mod for c in col] + [0] * (n - len(col))
    cols = []
    top = modulus_poly[:-1]
    for _ in range(n):
        cols.append(col)
        # multiply by X and reduce by the monic modulus
        lead = col[-1]
        col = [0] + col[:-1]
        col = [(c - lead * t) % mod for c, t in zip(col, top)]
    return [list(r) for r in zip(*cols)]


def summand_coinvariant_exponent(kind: str, item, p: int, e: int, n: int, method: str = "omega") -> int:
    """log_p |Lambda/(G, p^e, omega_n)| for one cyclic summand Lambda/G.

    ``method="omega"`` reduces the multiplication-by-G matrix on
    (Z/p^e)[X]/omega_n (size p^n).  ``method="companion"`` reduces
    omega_n(gamma) = gamma^(p^n) - 1 acting on (Z/p^e)[X]/G (size deg G), or
    p^alpha on a single copy of Z/p^e repeated p^n times for Lambda/p^alpha.
    """
    mod = p**e
    if method == "omega":
        G = _summand_poly(kind, item, p, e)
        w = list(omega(n, p).coeffs)
        return sum(elementary_valuations(multiplication_matrix(G, w, mod), p, e))
    if method != "companion":
        raise ValueError(f"unknown method {method!r}")
    if kind == "pi":
        return p**n * sum(elementary_valuations([[p**item % mod]], p, e))
    G = _summand_poly(kind, item, p, e)
    gamma = _companion_gamma(G, mod)
    for _ in range(n):
        gamma = _matpow(gamma, p, mod)
    act = (gamma - np.identity(gamma.shape[0], dtype=object)) % mod
    return sum(elementary_valuations(act.astype(np.int64), p, e))


def coinvariant_size_exponent(M: ElementaryModule, e: int, n: int, method: str = "omega") -> int:
    """log_q |(M/p^e)_{Gamma_n}|, exactly, via elementary divisors.

    Each summand Lambda/G contributes |Lambda/(G, p^e, omega_n)|, read off by
    default from the multiplication-by-G matrix on (Z/p^e)[X]/omega_n.
    """
    _require_torsion(M)
    if e < 1 or n < 0:
        raise FineSelmerError("need e >= 1 and n >= 0")
    return sum(summand_coinvariant_exponent(kind, item, M.p, e, n, method) for kind, item in M.summands())


def twisted_dual_invariant_corank(M: ElementaryModule, F: DistinguishedPoly, m: int) -> int:
    """Z_p-corank of ((M^dual)_{F^m})^Gamma, by the closed form sum min(beta, m) deg F."""
    _require_torsion(M)
    if m < 1:
        raise FineSelmerError("m must be positive")
    return sum(min(t.beta, m) * F.degree * M.f for t in M.torsion_parts if t.poly == F)


def _companion_gamma(G: list[int], mod: int) -> np.ndarray:
    """Matrix of multiplication by 1+X on (Z/mod)[X]/G."""
    d = len(G) - 1
    mat = np.zeros((d, d), dtype=object)
    for j in range(d):
        col = [0] * (d + 1)
        col[j] += 1
        col[j + 1] += 1
        if j + 1 == d:
            col = [(c - G[i]) for i, c in enumerate(col)]
        for i in range(d):
            mat[i, j] = col[i] % mod
    return mat


def _matpow(mat: np.ndarray, k: int, mod: int) -> np.ndarray:
    out = np.identity(mat.shape[0], dtype=object)
    base = mat
    while k:
        if k & 1:
            out = out.dot(base) % mod
        base = base.dot(base) % mod
        k >>= 1
    return out


def _inverse_mod(mat: np.ndarray, mod: int) -> np.ndarray:
    """Inverse of a matrix that is unipotent modulo p: Neumann series of I - mat."""
    n = mat.shape[0]
    ident = np.identity(n, dtype=object)
    nil = (ident - mat) % mod
    inv = ident.copy()
    term = ident.copy()
    # (I - N)^{-1} = sum N^k; N is nilpotent mod p, so N^k -> 0 mod p^e
    for _ in range(n * (mod.bit_length() + 1)):
        term = term.dot(nil) % mod
        if not term.any():
            break
        inv = (inv + term) % mod
    else:
        raise AssertionError("Neumann series did not terminate")
    return inv


def _invariant_exponent(part: TorsionPart, F: DistinguishedPoly, m: int, p: int, e: int) -> int:
    """log_p |((Lambda/(G, p^e))^dual (x) Lambda/F^m)^Gamma|, G = part.poly^beta.

    The dual carries the contragredient action (C^{-1})^T; Gamma-invariants
    are the kernel of (gamma (x) gamma - 1) on the tensor product.
    """
    mod = p**e
    G = _summand_poly("poly", part, p, e)
    W = F.power(m)
    dual = _inverse_mod(_companion_gamma(G, mod), mod).T
    act = np.kron(dual, _companion_gamma(W, mod)) % mod
    act = (act - np.identity(act.shape[0], dtype=object)) % mod
    return sum(elementary_valuations(act.astype(np.int64), p, e))


def brute_force_corank(M: ElementaryModule, F: DistinguishedPoly, m: int, e_max: int = 12) -> int:
    """Independent finite-level computation of twisted_dual_invariant_corank.

    s_e = log_q |((M^dual)_{F^m})^Gamma[p^e]| is computed for e = 1..e_max by
    linear algebra over Z/p^e; the Z_p-corank is the stabilized increment
    s_e - s_{e-1}, scaled by f.  For Lambda/p^alpha the group M/p^e is not
    finite, and the invariants are computed as Hom_Lambda(Lambda/p^alpha,
    (Lambda/F^m)/p^e), the p^alpha-torsion of (Z/p^e)[X]/F^m.
    """
    _require_torsion(M)
    if e_max < 2:
        raise FineSelmerError("e_max must be at least 2")
    p = M.p
    W = F.power(m)
    rank_w = len(W) - 1
    sizes = [0]
    for e in range(1, e_max + 1):
        s = 0
        for kind, item in M.summands():
            if kind == "pi":
                mod = p**e
                scalar = [[(p**item) % mod if i == j else 0 for j in range(rank_w)] for i in range(rank_w)]
                s += sum(elementary_valuations(scalar, p, e))
            else:
                s += _invariant_exponent(item, F, m, p, e)
        sizes.append(s)
    inc = [b - a for a, b in zip(sizes, sizes[1:])]
    if inc[-1] != inc[-2]:
        raise NotStabilized(f"increments {inc} have not stabilized by e_max={e_max}")
    return inc[-1] * M.f


def direct_sum(modules: Iterable[ElementaryModule]) -> ElementaryModule:
    return reduce(lambda x, y: x + y, modules)
