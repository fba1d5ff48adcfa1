import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P3_POOL, random_torsion_module
from fineselmer.errors import FineSelmerError, NotStabilized, NotTorsion
from fineselmer.lambda_core import DistinguishedPoly, cyclotomic_phi, omega
from fineselmer.lambda_core.polynomial import poly_divmod, poly_mul
from fineselmer.modules import (
    ElementaryModule,
    TorsionPart,
    brute_force_corank,
    char_ideal,
    coinvariant_size_exponent,
    direct_sum,
    f_part,
    iota_twist,
    lambda_invariant,
    mu_invariant,
    pi_part,
    summand_coinvariant_exponent,
    twisted_dual_invariant_corank,
)

X = DistinguishedPoly(3, (0, 1))
PHI1 = cyclotomic_phi(1, 3)
cyc_pi = ElementaryModule.cyclic_pi
cyc = ElementaryModule.cyclic_poly


def enumerated_quotient_exponent(G, p, e, n):
    """log_p |(Z/p^e)[X]/(omega_n, G)| by listing the ideal G*R."""
    mod = p**e
    w = list(omega(n, p).coeffs)
    N = len(w) - 1
    ideal = set()
    for h in itertools.product(range(mod), repeat=N):
        _, r = poly_divmod(poly_mul(G, list(h)), w)
        ideal.add(tuple(c % mod for c in r + [0] * (N - len(r))))
    size = mod**N // len(ideal)
    k = 0
    while size > 1:
        size //= p
        k += 1
    return k


class TestInvariants:
    def test_mu(self):
        assert mu_invariant(ElementaryModule.zero(3)) == 0
        assert mu_invariant(cyc_pi(3, 1) + cyc_pi(3, 2)) == 3
        assert mu_invariant(cyc(PHI1)) == 0

    def test_lambda(self):
        assert lambda_invariant(cyc(X, 2)) == 2
        assert lambda_invariant(cyc(PHI1)) == 2
        assert lambda_invariant(cyc_pi(3, 1) + cyc(X)) == 1

    def test_f_part(self):
        assert f_part(cyc(X, 2) + cyc_pi(3, 1), X) == cyc(X, 2)
        assert f_part(cyc(PHI1), X) == ElementaryModule.zero(3)
        assert f_part(cyc(X) + cyc(X, 3), X) == cyc(X, 3) + cyc(X, 1)

    def test_pi_part(self):
        assert pi_part(cyc_pi(3, 2) + cyc(X)) == cyc_pi(3, 2)
        assert pi_part(cyc(PHI1)) == ElementaryModule.zero(3)
        assert pi_part(cyc_pi(3, 1) + cyc_pi(3, 1)).mu_exponents == (1, 1)

    def test_char_ideal(self):
        ci = char_ideal(cyc_pi(3, 1) + cyc(X, 2))
        assert ci.mu_total == 1 and ci.distinguished_factors == ((X, 2),)
        assert char_ideal(cyc(X) + cyc(X)).distinguished_factors == ((X, 2),)
        with pytest.raises(NotTorsion):
            char_ideal(ElementaryModule(3, free_rank=1) + cyc(X))

    def test_iota_twist(self):
        assert iota_twist(cyc(X)) == cyc(X)
        assert iota_twist(cyc(PHI1, 2)) == cyc(PHI1, 2)
        assert iota_twist(cyc_pi(3, 1)) == cyc_pi(3, 1)

    def test_canonical_order(self):
        M = ElementaryModule(3, mu_exponents=(1, 3, 2), torsion_parts=(TorsionPart(X, 1), TorsionPart(X, 3)))
        assert M.mu_exponents == (3, 2, 1)
        assert [t.beta for t in M.torsion_parts] == [3, 1]


class TestSpecFormat:
    def test_round_trip(self, tmp_path):
        M = cyc_pi(3, 2) + cyc(PHI1, 2) + cyc(X)
        path = tmp_path / "m.json"
        path.write_text(json.dumps(M.to_dict()))
        assert ElementaryModule.load(path) == M

    def test_malformed(self):
        with pytest.raises(FineSelmerError):
            ElementaryModule.from_dict({"torsion": []})
        with pytest.raises(FineSelmerError):
            ElementaryModule.from_dict({"p": 3, "torsion": [{"poly": [1, 1], "beta": 1}]})


class TestCoinvariants:
    def test_examples(self):
        assert coinvariant_size_exponent(cyc_pi(3, 1), 2, 1) == 3
        assert coinvariant_size_exponent(cyc(DistinguishedPoly(3, (3, 1))), 1, 0) == 1
        assert coinvariant_size_exponent(ElementaryModule.zero(3), 2, 2) == 0

    @pytest.mark.parametrize("alpha,e,n", [(a, e, n) for a in (1, 2, 3) for e in (1, 2, 3) for n in (0, 1, 2)])
    def test_pi_formula(self, alpha, e, n):
        assert coinvariant_size_exponent(cyc_pi(3, alpha), e, n) == min(alpha, e) * 3**n

    @pytest.mark.parametrize("G", [[0, 1], [3, 1], [0, 0, 1], [3, 3, 1], [9], [3, 0, 1]])
    @pytest.mark.parametrize("e,n", [(1, 0), (1, 1), (2, 1), (1, 2)])
    def test_matches_enumeration(self, G, e, n):
        if len(G) == 1:
            kind, item = "pi", 2
        else:
            kind, item = "poly", TorsionPart(DistinguishedPoly(3, tuple(G)), 1)
        assert summand_coinvariant_exponent(kind, item, 3, e, n) == enumerated_quotient_exponent(G, 3, e, n)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 3), st.integers(0, 2))
    def test_routes_agree(self, seed, e, n):
        M = random_torsion_module(random.Random(seed))
        assert coinvariant_size_exponent(M, e, n) == coinvariant_size_exponent(M, e, n, "companion")

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32))
    def test_monotone_in_e_and_n(self, seed):
        M = random_torsion_module(random.Random(seed))
        grid = [[coinvariant_size_exponent(M, e, n) for n in range(3)] for e in range(1, 4)]
        for e in range(3):
            for n in range(3):
                if e + 1 < 3:
                    assert grid[e][n] <= grid[e + 1][n]
                if n + 1 < 3:
                    assert grid[e][n] <= grid[e][n + 1]

    def test_requires_torsion(self):
        with pytest.raises(NotTorsion):
            coinvariant_size_exponent(ElementaryModule(3, free_rank=1), 1, 1)


class TestCoranks:
    def test_closed_form_examples(self):
        assert twisted_dual_invariant_corank(cyc_pi(3, 3), X, 2) == 0
        assert twisted_dual_invariant_corank(cyc(X, 2), X, 1) == 1
        assert twisted_dual_invariant_corank(cyc(PHI1), X, 3) == 0

    def test_residue_degree_scales(self):
        M = ElementaryModule.cyclic_poly(X, 2, f=3)
        assert twisted_dual_invariant_corank(M, X, 2) == 6

    def test_oracle_examples(self):
        assert brute_force_corank(cyc(X, 2), X, 2, e_max=3) == 2
        assert brute_force_corank(cyc_pi(3, 1), X, 1, e_max=3) == 0
        assert brute_force_corank(cyc(X) + cyc(X), X, 1, e_max=3) == 2
        assert brute_force_corank(cyc(X, 2), X, 1) == 1
        assert brute_force_corank(cyc(PHI1), X, 3) == 0

    def test_oracle_short_window_is_detected(self):
        # the increments 2, 1, 0 have not settled after three steps
        with pytest.raises(NotStabilized):
            brute_force_corank(cyc(PHI1), X, 3, e_max=3)

    def test_oracle_default_window_avoids_false_plateau(self):
        # at e_max=4 the increments plateau early and report 5 here
        M = cyc(DistinguishedPoly(3, (3, 0, 1)), 3)
        assert brute_force_corank(M, PHI1, 3, e_max=4) == 5
        assert brute_force_corank(M, PHI1, 3) == 0 == twisted_dual_invariant_corank(M, PHI1, 3)

    def test_oracle_rejects_tiny_window(self):
        with pytest.raises(FineSelmerError):
            brute_force_corank(cyc(X), X, 1, e_max=1)

    def test_oracle_sees_non_fixed_polynomial(self):
        # X + 3 is not iota-fixed: Lambda/F is detected by F, Lambda/F^iota is not
        F = DistinguishedPoly(3, (3, 1))
        assert brute_force_corank(cyc(F, 2), F, 2) == 2
        assert brute_force_corank(cyc(iota_twist(cyc(F)).torsion_parts[0].poly.reduce(12)), F, 1) == 0


module_seeds = st.integers(0, 2**32)


@given(module_seeds, module_seeds)
def test_mu_lambda_additive(s1, s2):
    U, V = random_torsion_module(random.Random(s1)), random_torsion_module(random.Random(s2))
    assert mu_invariant(U + V) == mu_invariant(U) + mu_invariant(V)
    assert lambda_invariant(U + V) == lambda_invariant(U) + lambda_invariant(V)


@given(module_seeds, module_seeds)
def test_char_ideal_multiplicative(s1, s2):
    U, V = random_torsion_module(random.Random(s1)), random_torsion_module(random.Random(s2))

    def exps(M):
        ci = char_ideal(M)
        return ci.mu_total, {F.coeffs: k for F, k in ci.distinguished_factors}

    (mu, fu), (mv, fv), (ms, fs) = exps(U), exps(V), exps(U + V)
    assert ms == mu + mv
    assert fs == {k: fu.get(k, 0) + fv.get(k, 0) for k in set(fu) | set(fv)}


@given(module_seeds, st.sampled_from(P3_POOL), st.sampled_from(P3_POOL))
def test_parts_idempotent_and_contained(seed, F, G):
    M = random_torsion_module(random.Random(seed))
    assert f_part(f_part(M, F), F) == f_part(M, F)
    assert pi_part(pi_part(M)) == pi_part(M)
    pieces = [pi_part(M), f_part(M, F)] + ([f_part(M, G)] if G != F else [])
    S = direct_sum(pieces)
    remaining = list(M.torsion_parts)
    for t in S.torsion_parts:
        remaining.remove(t)
    assert sorted(S.mu_exponents) == sorted(M.mu_exponents)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(1, 6), st.integers(1, 3), module_seeds)
def test_iota_twist_involutive(p, d, beta, seed):
    rng = random.Random(seed)
    F = DistinguishedPoly(p, tuple(p * rng.randrange(p**5) for _ in range(d)) + (1,))
    M = ElementaryModule(p, mu_exponents=(rng.randint(1, 3),), torsion_parts=(TorsionPart(F, beta),))
    assert iota_twist(iota_twist(M, 8), 8) == M
