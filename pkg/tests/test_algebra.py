import math
import random

import pytest

from carlitz_lab.algebra import LaurentApprox, MPoly, RatFn, UPoly, laurent_of_ratfn
from carlitz_lab.ffield import field_make
from carlitz_lab.textfmt import parse_ratfn, parse_upoly, render_upoly


def rand_upoly(rng, F, max_deg):
    return UPoly(F, {e: rng.randrange(F.q) for e in range(rng.randint(0, max_deg) + 1)})


def test_ratfn_normalize_examples():
    F2 = field_make(2, 1)
    t = UPoly.theta(F2)
    # (T^2+T)/T over F_2 -> T+1
    x = RatFn(t * t + t, t)
    assert x.num == t + UPoly.one(F2) and x.den.is_one()
    # (0, T) -> 0
    assert RatFn(UPoly.zero(F2), t).is_zero()
    # (2T, 2) over F_3 -> T
    F3 = field_make(3, 1)
    y = RatFn(UPoly.theta(F3).scale(2), UPoly.const(F3, 2))
    assert y.num == UPoly.theta(F3) and y.den.is_one()


def test_ratfn_zero_denominator():
    F2 = field_make(2, 1)
    with pytest.raises(ZeroDivisionError):
        RatFn(UPoly.one(F2), UPoly.zero(F2))


def test_upoly_degree_multiplicative():
    rng = random.Random(11)
    F = field_make(3, 1)
    for _ in range(60):
        f, g = rand_upoly(rng, F, 6), rand_upoly(rng, F, 6)
        if f.is_zero() or g.is_zero():
            continue
        assert (f * g).deg == f.deg + g.deg


def test_ratfn_matches_upoly_on_polynomials():
    rng = random.Random(5)
    F = field_make(2, 1)
    for _ in range(40):
        f, g = rand_upoly(rng, F, 5), rand_upoly(rng, F, 5)
        lhs = RatFn.from_poly(f) * RatFn.from_poly(g) + RatFn.from_poly(f + g)
        rhs = RatFn.from_poly(f * g + f + g)
        assert (lhs - rhs).is_zero()


def test_divmod_and_gcd():
    rng = random.Random(17)
    F = field_make(3, 1)
    for _ in range(50):
        f = rand_upoly(rng, F, 8)
        g = rand_upoly(rng, F, 4)
        if g.is_zero():
            continue
        q, r = divmod(f, g)
        assert f == q * g + r
        assert r.is_zero() or r.deg < g.deg
        h = f.gcd(g)
        if not h.is_zero():
            assert (f % h).is_zero() and (g % h).is_zero()
            assert h.is_monic()


def test_laurent_of_ratfn_examples():
    F2 = field_make(2, 1)
    t = UPoly.theta(F2)
    x = laurent_of_ratfn(RatFn(UPoly.one(F2), t + UPoly.one(F2)), 4)
    assert x.val == 1 and x.coeffs == [1, 1, 1] and x.prec == 4
    y = laurent_of_ratfn(RatFn.from_poly(t), 4)
    assert y.val == -1 and y.coeffs == [1]
    F3 = field_make(3, 1)
    z = laurent_of_ratfn(RatFn(UPoly.one(F3), UPoly.theta(F3)), 4)
    assert z.val == 1 and z.coeffs == [1]


def test_laurent_valuation_field():
    rng = random.Random(23)
    F = field_make(3, 1)
    for _ in range(40):
        num, den = rand_upoly(rng, F, 6), rand_upoly(rng, F, 6)
        if num.is_zero() or den.is_zero():
            continue
        x = RatFn(num, den)
        if x.is_zero():
            continue
        la = laurent_of_ratfn(x, x.v_inf() + 8)
        assert la.val == x.v_inf()


def test_laurent_mul_consistency():
    """laurent(x*y) == laurent(x)*laurent(y) on the common certified window."""
    rng = random.Random(29)
    F = field_make(2, 1)
    for _ in range(40):
        fx = RatFn(rand_upoly(rng, F, 4), rand_upoly(rng, F, 4) + UPoly.monomial(F, 5))
        fy = RatFn(rand_upoly(rng, F, 4), rand_upoly(rng, F, 4) + UPoly.monomial(F, 5))
        if fx.is_zero() or fy.is_zero():
            continue
        N = 9
        prod_direct = laurent_of_ratfn(fx * fy, N)
        prod_approx = laurent_of_ratfn(fx, N) * laurent_of_ratfn(fy, N)
        prec = prod_approx.prec
        diff = prod_direct.truncate(prec) - prod_approx
        assert diff.is_indistinguishable_from_zero()


def test_laurent_precision_rule():
    F = field_make(2, 1)
    a = LaurentApprox(F, 0, [1, 1, 1, 1], 4)
    b = LaurentApprox(F, 2, [1], 6)
    assert (a + b).prec == 4
    assert (a * b).prec == min(4 + 2, 6 + 0)


def test_laurent_inverse():
    F = field_make(3, 1)
    t = UPoly.theta(F)
    x = laurent_of_ratfn(RatFn(t + UPoly.one(F), t * t + UPoly.const(F, 2)), 9)
    xi = x.inv()
    prod = x * xi
    assert prod.val == 0 and prod.coeffs[0] == 1 and all(c == 0 for c in prod.coeffs[1:])


def test_vinf_multiplicative():
    rng = random.Random(31)
    F = field_make(3, 1)
    for _ in range(40):
        x = RatFn(rand_upoly(rng, F, 5), rand_upoly(rng, F, 5) + UPoly.monomial(F, 6))
        y = RatFn(rand_upoly(rng, F, 5), rand_upoly(rng, F, 5) + UPoly.monomial(F, 6))
        if x.is_zero() or y.is_zero():
            continue
        assert (x * y).v_inf() == x.v_inf() + y.v_inf()
    assert RatFn.zero(F).v_inf() == math.inf


def test_frobenius_twist_examples():
    F2 = field_make(2, 1)
    t = UPoly.theta(F2)
    assert (t + UPoly.one(F2)).frob_twist(1) == t.frob_twist(1) + UPoly.one(F2)
    assert (t + UPoly.one(F2)).frob_twist(1) == UPoly(F2, {2: 1, 0: 1})
    F3 = field_make(3, 1)
    x = RatFn(UPoly.one(F3), UPoly.theta(F3)).frob_twist(1)
    assert x == RatFn(UPoly.one(F3), UPoly.monomial(F3, 3))


def test_frobenius_twist_additive_multiplicative():
    rng = random.Random(37)
    F = field_make(3, 1)
    for _ in range(30):
        x = RatFn(rand_upoly(rng, F, 4), rand_upoly(rng, F, 3) + UPoly.monomial(F, 4))
        y = RatFn(rand_upoly(rng, F, 4), rand_upoly(rng, F, 3) + UPoly.monomial(F, 4))
        assert ((x + y).frob_twist(1) - (x.frob_twist(1) + y.frob_twist(1))).is_zero()
        assert ((x * y).frob_twist(1) - x.frob_twist(1) * y.frob_twist(1)).is_zero()


def test_upoly_text_roundtrip():
    F3 = field_make(3, 1)
    f = parse_upoly(F3, "T^2+2*T+1")
    assert render_upoly(f) == "T^2+2*T+1"
    assert parse_upoly(F3, "0").is_zero()
    g = parse_ratfn(F3, "(T+1)/(T^2+1)")
    assert render_upoly(g.num) == "T+1" and render_upoly(g.den) == "T^2+1"
    F4 = field_make(2, 2)
    h = UPoly(F4, {1: F4.generator(), 0: 1})
    s = render_upoly(h)
    assert parse_upoly(F4, s) == h


def test_mpoly_arithmetic_and_twist():
    F3 = field_make(3, 1)
    one = RatFn.one(F3)
    X = MPoly.variable(1, 0, one)
    theta = MPoly.constant(1, RatFn.from_poly(UPoly.theta(F3)))
    f = X * X + theta
    g = f.frob_twist(1)
    # (X^2 + T)^3 = X^6 + T^3 over F_3
    assert set(g.c) == {(6,), (0,)}
    assert g.c[(0,)] == RatFn.from_poly(UPoly.monomial(F3, 3))
    # multiplication is commutative and distributes
    h = (X + theta) * f
    h2 = f * (X + theta)
    assert h == h2
