import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fineselmer.errors import InsufficientXPrecision, ZeroWithinPrecision
from fineselmer.lambda_core import (
    DistinguishedPoly,
    LambdaSeries,
    cyclotomic_phi,
    omega,
    weierstrass_divide,
    weierstrass_prepare,
)
from fineselmer.lambda_core.polynomial import mul_trunc


def newton_root(f, df, r, mod, steps=12):
    for _ in range(steps):
        r = (r - f(r) * pow(df(r), -1, mod)) % mod
    return r


def test_prepare_monomial_times_p():
    w = weierstrass_prepare(LambdaSeries(3, (0, 3), 4, 8))
    assert w.mu == 1
    assert w.distinguished_part == DistinguishedPoly(3, (0, 1))
    assert w.unit_part[0] == 1 and not any(w.unit_part.coeffs[1:])


def test_prepare_already_distinguished():
    w = weierstrass_prepare(LambdaSeries(3, (3, 1), 4, 8))
    assert w.mu == 0
    assert w.distinguished_part == DistinguishedPoly(3, (3, 1))
    assert w.unit_part.coeffs[0] == 1 and not any(w.unit_part.coeffs[1:])


def test_prepare_quadratic_against_newton_root():
    # 3 + X + X^2 = (X - r)(X - s) with r = 0 mod 3 the root that is not a unit
    mod = 3**4
    r = newton_root(lambda t: t * t + t + 3, lambda t: 2 * t + 1, 0, mod)
    w = weierstrass_prepare(LambdaSeries(3, (3, 1, 1), 4, 8))
    assert w.mu == 0 and w.distinguished_part.degree == 1
    assert w.distinguished_part.coeffs[0] % 9 == 3
    mod_c = 3**w.result_p_precision
    assert (w.distinguished_part.coeffs[0] + r) % mod_c == 0
    assert w.distinguished_part.coeffs == (66, 1)
    # the unit is X - s = X + 1 + r
    assert w.unit_part.coeffs[:2] == ((1 + r) % mod_c, 1)
    assert not any(w.unit_part.coeffs[2:])


def test_prepare_zero_raises():
    with pytest.raises(ZeroWithinPrecision):
        weierstrass_prepare(LambdaSeries(3, (9, 27), 2, 4))


def test_divide_monomial():
    dv = weierstrass_divide(LambdaSeries(3, (0, 0, 1), 4, 8), DistinguishedPoly(3, (0, 1)))
    assert dv.quotient.coeffs[:2] == (0, 1) and not any(dv.quotient.coeffs[2:])
    assert dv.remainder == (0,)


def test_divide_omega_by_phi():
    w1 = omega(1, 3)
    dv = weierstrass_divide(LambdaSeries(3, w1.coeffs, 5, 12), cyclotomic_phi(1, 3))
    assert dv.quotient.coeffs[:2] == (0, 1) and not any(dv.quotient.coeffs[2:])
    assert dv.remainder == (0, 0)


def test_divide_constant_by_linear():
    # 3 already has degree < 1, so the division is trivial
    dv = weierstrass_divide(LambdaSeries(3, (3,), 4, 8), DistinguishedPoly(3, (3, 1)))
    assert not any(dv.quotient.coeffs)
    assert dv.remainder == (3 % 3**dv.precision,)


def test_divide_needs_x_precision():
    with pytest.raises(InsufficientXPrecision):
        weierstrass_divide(LambdaSeries(3, (1, 1), 4, 2), cyclotomic_phi(1, 3))


def series_strategy():
    return st.builds(
        lambda p, a, b, seed: _random_series(random.Random(seed), p, a, b),
        st.sampled_from([3, 5]), st.integers(1, 8), st.integers(1, 16), st.integers(0, 2**32),
    )


def _random_series(rng, p, a, b):
    mod = p**a
    coeffs = [rng.randrange(mod) if rng.random() < 0.7 else rng.randrange(mod // p + 1) * p for _ in range(b)]
    if not any(c % mod for c in coeffs):
        coeffs[rng.randrange(b)] = 1
    return LambdaSeries(p, tuple(coeffs), a, b)


@settings(max_examples=200, deadline=None)
@given(series_strategy())
def test_prepare_round_trip(f):
    w = weierstrass_prepare(f)
    P, u = w.distinguished_part, w.unit_part
    assert w.mu == min(f.valuations())
    g = [c // f.p**w.mu for c in f.coeffs]
    assert P.degree == next(i for i, c in enumerate(g) if c % f.p)
    assert w.result_p_precision >= 1 and w.result_x_precision >= 1
    assert P.coeffs[-1] == 1 and all(c % f.p == 0 for c in P.coeffs[:-1])
    assert u.is_unit()
    assert w.reconstruct().congruent(f, w.mu + w.result_p_precision, w.result_x_precision)


@settings(max_examples=100, deadline=None)
@given(series_strategy(), st.sampled_from(["X", "X+p", "Phi1", "X^2+p"]))
def test_divide_reconstructs_and_is_deterministic(f, which):
    p = f.p
    P = {
        "X": DistinguishedPoly(p, (0, 1)),
        "X+p": DistinguishedPoly(p, (p, 1)),
        "Phi1": cyclotomic_phi(1, p),
        "X^2+p": DistinguishedPoly(p, (p, 0, 1)),
    }[which]
    try:
        dv = weierstrass_divide(f, P)
    except InsufficientXPrecision:
        assert (f.b - 1) // P.degree < 1
        return
    c, bq = dv.precision, dv.quotient.b
    mod = p**c
    qP = mul_trunc(list(dv.quotient.coeffs), [x % mod for x in P.coeffs], bq, mod)
    back = [(x + (dv.remainder[i] if i < len(dv.remainder) else 0)) % mod for i, x in enumerate(qP)]
    assert back == [x % mod for x in f.coeffs[:bq]]
    assert weierstrass_divide(f, P) == dv
