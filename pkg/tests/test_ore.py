import random

import pytest

from carlitz_lab.algebra import RatFn, UPoly
from carlitz_lab.drinfeld import carlitz, exp_series, log_series
from carlitz_lab.ffield import field_make
from carlitz_lab.ore import OrePoly, TauSeries, ore_apply, ore_mul, series_invert


def rand_ore(rng, F, max_deg, max_coeff_deg=3):
    coeffs = []
    for _ in range(rng.randint(0, max_deg) + 1):
        coeffs.append(RatFn.from_poly(UPoly(F, {e: rng.randrange(F.q) for e in range(max_coeff_deg)})))
    return OrePoly(coeffs, RatFn.zero(F))


def test_commutation_rule():
    # tau * c = c^q * tau
    for q, d in [(2, 1), (3, 1), (2, 2)]:
        F = field_make(q, d)
        one = RatFn.one(F)
        theta = RatFn.from_poly(UPoly.theta(F))
        tau = OrePoly.tau(one)
        prod = tau * OrePoly.from_scalar(theta)
        assert prod.coeff(0).is_zero()
        assert (prod.coeff(1) - theta.frob_twist(1)).is_zero()


def test_square_of_carlitz_generator():
    for q, d in [(2, 1), (3, 1), (2, 2)]:
        F = field_make(q, d)
        one = RatFn.one(F)
        theta = RatFn.from_poly(UPoly.theta(F))
        f = OrePoly([theta, one], RatFn.zero(F))
        sq = f * f
        assert (sq.coeff(0) - theta * theta).is_zero()
        assert (sq.coeff(1) - (theta + theta.frob_twist(1))).is_zero()
        assert sq.coeff(2).is_one()


def test_identity_and_zero():
    F = field_make(3, 1)
    rng = random.Random(2)
    a = rand_ore(rng, F, 4)
    one = OrePoly.one_of(RatFn.one(F))
    assert (a * one) == a
    assert (one * a) == a
    assert (a * OrePoly.zero_of(RatFn.zero(F))).is_zero()


def test_associativity_distributivity_randomized():
    rng = random.Random(13)
    F = field_make(2, 1)
    for _ in range(25):
        a, b, c = (rand_ore(rng, F, 3, 2) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_apply_is_composition():
    rng = random.Random(19)
    F = field_make(3, 1)
    for _ in range(25):
        a, b = rand_ore(rng, F, 3, 2), rand_ore(rng, F, 3, 2)
        x = RatFn.from_poly(UPoly(F, {e: rng.randrange(3) for e in range(3)}))
        lhs = ore_apply(ore_mul(a, b), x)
        rhs = ore_apply(a, ore_apply(b, x))
        assert (lhs - rhs).is_zero()


def test_apply_examples():
    F3 = field_make(3, 1)
    theta = RatFn.from_poly(UPoly.theta(F3))
    one = RatFn.one(F3)
    f = OrePoly([theta, one], RatFn.zero(F3))  # theta + tau
    X = RatFn.from_poly(UPoly.theta(F3))  # apply to T as a stand-in variable
    out = ore_apply(f, X)
    assert (out - (theta * X + X.frob_twist(1))).is_zero()
    assert ore_apply(f, RatFn.zero(F3)).is_zero()


def test_apply_additive():
    rng = random.Random(23)
    F = field_make(2, 2)
    a = rand_ore(rng, F, 3, 2)
    for _ in range(20):
        x = RatFn.from_poly(UPoly(F, {e: rng.randrange(4) for e in range(3)}))
        y = RatFn.from_poly(UPoly(F, {e: rng.randrange(4) for e in range(3)}))
        assert (ore_apply(a, x + y) - ore_apply(a, x) - ore_apply(a, y)).is_zero()


def test_series_invert_trivial_and_involution():
    F = field_make(3, 1)
    one = RatFn.one(F)
    zero = RatFn.zero(F)
    f = TauSeries([one, zero, zero, zero], 4, zero)
    g = series_invert(f)
    assert g.coeffs[0].is_one() and all(c.is_zero() for c in g.coeffs[1:])
    rng = random.Random(29)
    h = TauSeries([one] + [RatFn.from_poly(UPoly(F, {e: rng.randrange(3) for e in range(2)})) for _ in range(4)], 5, zero)
    assert series_invert(series_invert(h)) == h


def test_series_invert_requires_unit_constant():
    F = field_make(2, 1)
    zero = RatFn.zero(F)
    theta = RatFn.from_poly(UPoly.theta(F))
    with pytest.raises(ValueError):
        series_invert(TauSeries([theta, zero], 2, zero))


def test_series_invert_matches_log():
    """invert(exp_Carlitz, 5) equals log_coeffs output: cross-module oracle."""
    for q in (2, 3):
        F = field_make(q, 1)
        dm = carlitz(F)
        es = exp_series(dm, 5)
        ls = log_series(dm, 5)
        inv = series_invert(es)
        assert all((a - b).is_zero() for a, b in zip(inv.coeffs, ls.coeffs))
        two_sided = ls * es
        assert two_sided.coeffs[0].is_one()
        assert all(c.is_zero() for c in two_sided.coeffs[1:])
