"""Pseudo-isomorphism criteria for torsion Lambda-modules, the size ledger
around the localization maps, and growth targets for their images.

All sizes are handled as integer exponents of q.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FineSelmerError, InconsistentLedger, PrimeMismatch, WindowTooSmall
from .lambda_core import DistinguishedPoly
from .modules import (
    ElementaryModule,
    coinvariant_size_exponent,
    f_part,
    pi_part,
    summand_coinvariant_exponent,
    twisted_dual_invariant_corank,
)

#: hard cap on automatic window widening in criterion 2
MAX_LEVEL = 24


@dataclass(frozen=True)
class CriterionReport:
    criterion_id: int
    parameters: dict
    side_a: bool
    side_b: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.side_a == self.side_b


def _check_pair(U: ElementaryModule, V: ElementaryModule) -> None:
    if (U.p, U.f) != (V.p, V.f):
        raise PrimeMismatch("U and V must share (p, f)")
    for M in (U, V):
        if not M.is_torsion:
            raise FineSelmerError("criteria need torsion modules")


def criterion1_check(U: ElementaryModule, V: ElementaryModule, F: DistinguishedPoly,
                     m_max: int, corank=twisted_dual_invariant_corank) -> CriterionReport:
    """F-primary criterion: U(F^oo) = V(F^oo) versus equality of twisted coranks.

    ``corank`` may be swapped for :func:`brute_force_corank` (partially applied)
    to drive the computed side from the oracle instead of the closed form.
    """
    _check_pair(U, V)
    if F.p != U.p:
        raise PrimeMismatch(f"{F.p} != {U.p}")
    if m_max < 1:
        raise FineSelmerError("m_max must be positive")
    side_a = f_part(U, F) == f_part(V, F)
    cu = [corank(U, F, m) for m in range(1, m_max + 1)]
    cv = [corank(V, F, m) for m in range(1, m_max + 1)]
    return CriterionReport(
        1,
        {"F": list(F.coeffs), "m_max": m_max},
        side_a,
        cu == cv,
        {"m": list(range(1, m_max + 1)), "U": cu, "V": cv},
    )


def _saturated(M: ElementaryModule, e: int, n: int) -> bool:
    """True once every Lambda/F^beta summand has reached its limit size p^(e*beta*deg F)."""
    return all(
        summand_coinvariant_exponent("poly", t, M.p, e, n, "companion") == e * t.beta * t.poly.degree
        for t in M.torsion_parts
    )


def criterion2_check(U: ElementaryModule, V: ElementaryModule, e_max: int, n_max: int) -> CriterionReport:
    """p-primary criterion: U(p^oo) = V(p^oo) versus boundedness in n of
    d(e, n) = log_q|(U/p^e)_{Gamma_n}| - log_q|(V/p^e)_{Gamma_n}|.

    The table is computed for n = 0..n_max.  Boundedness is decided at the
    first level n0 >= n_max - 1 at which every Lambda/F^beta summand of U and
    V has reached its limiting size; from there on d(e, n) = c + c2 * p^n, so
    d(e, n0) == d(e, n0 + 1) iff c2 = 0.  The window is widened as needed and
    the extra columns are kept in the witnesses.
    """
    _check_pair(U, V)
    if n_max < 2:
        raise WindowTooSmall(f"n_max={n_max} < 2")
    if e_max < 1:
        raise FineSelmerError("e_max must be positive")
    table: dict[int, list[int]] = {}
    stable_from: dict[int, int] = {}
    bounded = True
    for e in range(1, e_max + 1):
        row = [coinvariant_size_exponent(U, e, n) - coinvariant_size_exponent(V, e, n) for n in range(n_max + 1)]
        n0 = n_max - 1
        while not (_saturated(U, e, n0) and _saturated(V, e, n0)):
            n0 += 1
            if n0 > MAX_LEVEL:
                raise FineSelmerError(f"sizes did not saturate by n={MAX_LEVEL}")
        while len(row) < n0 + 2:
            n = len(row)
            row.append(coinvariant_size_exponent(U, e, n, "companion") - coinvariant_size_exponent(V, e, n, "companion"))
        table[e] = row
        stable_from[e] = n0
        if row[n0] != row[n0 + 1]:
            bounded = False
    return CriterionReport(
        2,
        {"e_max": e_max, "n_max": n_max},
        pi_part(U) == pi_part(V),
        bounded,
        {"d": table, "stable_from": stable_from},
    )


@dataclass(frozen=True)
class SizeLedger:
    """log_q sizes of K_1, K_1^dagger, G_1, G_2, H^0 and chi_glob.

    Construction enforces |K_1^dagger| / |K_1| = |G_1| chi_glob / (|H^0| |G_2|).
    """

    k1: int
    k1_dagger: int
    g1: int
    g2: int
    h0: int
    chi: int

    def __post_init__(self):
        if self.k1_dagger - self.k1 != ledger_rhs(self.g1, self.g2, self.h0, self.chi):
            raise InconsistentLedger(
                f"K1^dagger - K1 = {self.k1_dagger - self.k1} but right side gives "
                f"{ledger_rhs(self.g1, self.g2, self.h0, self.chi)}")

    @classmethod
    def completed(cls, k1: int, g1: int, g2: int, h0: int, chi: int) -> SizeLedger:
        """Fill in K_1^dagger from the other five exponents."""
        return cls(k1, k1 + ledger_rhs(g1, g2, h0, chi), g1, g2, h0, chi)


def ledger_rhs(g1: int, g2: int, h0: int, chi: int) -> int:
    return g1 + chi - h0 - g2


def ledger_ratio(ledger: SizeLedger) -> int:
    """log_q (|K_1^dagger| / |K_1|), from the right-hand side of the identity."""
    return ledger_rhs(ledger.g1, ledger.g2, ledger.h0, ledger.chi)


def chi_glob_rational(e: int, F: DistinguishedPoly, m: int) -> int:
    """log_q chi_glob(Q, A(i)_{F^m}[p^e]) = -e deg(F^m): Q is totally real."""
    return -e * m * F.degree


def chi_glob_layer(e: int, n: int, p: int) -> int:
    """log_q chi_glob(L_n, A(i)[p^e]) = -e p^n: L_n is totally real of degree p^n."""
    return -e * p**n


def theta_growth_target(kind: str, e: int, *, F: DistinguishedPoly | None = None, m: int | None = None,
                        n: int | None = None, p: int | None = None) -> int:
    """Exponent of q that |Image(theta)| must track.

    ``kind="F-twist"``: e * deg(F^m).  ``kind="level"``: e * p^n.
    """
    if e < 1:
        raise FineSelmerError("e must be positive")
    if kind == "F-twist":
        if F is None or m is None or m < 1:
            raise FineSelmerError("F-twist target needs F and m >= 1")
        return e * m * F.degree
    if kind == "level":
        if n is None or p is None or n < 0:
            raise FineSelmerError("level target needs n >= 0 and p")
        return e * p**n
    raise FineSelmerError(f"unknown kind {kind!r}")
