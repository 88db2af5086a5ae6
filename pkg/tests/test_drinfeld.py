import random

import pytest

from carlitz_lab.algebra import RatFn, UPoly, monic_irreducibles, monic_polys
from carlitz_lab.drinfeld import (
    carlitz,
    carlitz_D,
    exp_coeffs,
    exp_series,
    lfactor_bound_ok,
    lfactor_bruteforce,
    lfactor_ratio_valuation,
    log_coeffs,
    log_series,
    phi_ideal,
    phi_of,
    rank_r_module,
    residue_space_of_prime,
    torsion_poly,
)
from carlitz_lab.ffield import field_make
from carlitz_lab.ore import OrePoly, TauSeries, series_invert


@pytest.mark.parametrize("q,d", [(2, 1), (3, 1), (2, 2)])
def test_carlitz_constructor(q, d):
    F = field_make(q, d)
    dm = carlitz(F)
    assert dm.r == 1
    assert dm.phi_theta.coeff(0) == RatFn.from_poly(UPoly.theta(F))
    assert dm.phi_theta.coeff(1).is_one()
    # phi_1 = 1 (unital homomorphism)
    assert phi_of(dm, UPoly.one(F)) == OrePoly.one_of(RatFn.one(F))


def test_phi_of_theta_squared():
    F = field_make(3, 1)
    dm = carlitz(F)
    t = UPoly.theta(F)
    p = phi_of(dm, t * t)
    assert p.coeff(0) == RatFn.from_poly(t * t)
    assert p.coeff(1) == RatFn.from_poly(t + t.frob_twist(1))
    assert p.coeff(2).is_one()
    assert p.tau_deg == dm.r * 2


def test_phi_of_additive_on_fq_combinations():
    F = field_make(2, 1)
    dm = carlitz(F)
    t = UPoly.theta(F)
    a = t * t + t
    lhs = phi_of(dm, a)
    rhs = phi_of(dm, t * t) + phi_of(dm, t)
    assert lhs == rhs


def test_phi_multiplicative_randomized():
    rng = random.Random(41)
    for q in (2, 3):
        F = field_make(q, 1)
        for dm in (carlitz(F), rank_r_module(F, [UPoly.one(F), UPoly.one(F)])):
            for _ in range(8):
                a = UPoly(F, {e: rng.randrange(q) for e in range(3)})
                b = UPoly(F, {e: rng.randrange(q) for e in range(3)})
                assert phi_of(dm, a * b) == phi_of(dm, a) * phi_of(dm, b)
                assert phi_of(dm, a) * phi_of(dm, b) == phi_of(dm, b) * phi_of(dm, a)
                assert phi_of(dm, a + b) == phi_of(dm, a) + phi_of(dm, b)


@pytest.mark.parametrize("q,d", [(2, 1), (3, 1), (2, 2)])
def test_carlitz_exp_closed_form(q, d):
    F = field_make(q, d)
    dm = carlitz(F)
    E = exp_coeffs(dm, 8)
    for i in range(9):
        assert (E[i] - RatFn(UPoly.one(F), carlitz_D(F, i))).is_zero()


def test_rank2_first_exp_coefficient():
    # phi_T = T + g tau + Delta tau^2: e_1 = g/(T^q - T)
    F = field_make(3, 1)
    t = UPoly.theta(F)
    g = t + UPoly.one(F)
    dm = rank_r_module(F, [g, UPoly.one(F)])
    E = exp_coeffs(dm, 2)
    expected = RatFn(g, t.frob_twist(1) - t)
    assert (E[1] - expected).is_zero()


def test_log_first_coefficients():
    for q in (2, 3):
        F = field_make(q, 1)
        dm = carlitz(F)
        L = log_coeffs(dm, 2)
        t = UPoly.theta(F)
        assert L[0].is_one()
        assert (L[1] - RatFn(UPoly.one(F), t - t.frob_twist(1))).is_zero()
    # q=2: l_2 = 1/((T-T^2)(T-T^4)), checked against inversion oracle
    F2 = field_make(2, 1)
    dm2 = carlitz(F2)
    L2 = log_coeffs(dm2, 2)
    t2 = UPoly.theta(F2)
    assert (L2[2] - RatFn(UPoly.one(F2), (t2 - t2.frob_twist(1)) * (t2 - t2.frob_twist(2)))).is_zero()
    inv = series_invert(exp_series(dm2, 3))
    assert (inv.coeffs[2] - L2[2]).is_zero()


@pytest.mark.parametrize("q", [2, 3, 4])
def test_exp_log_mutually_inverse(q):
    """(exp . log)_k = 0 for 1 <= k <= 8, checked without gcd reduction."""
    from carlitz_lab.algebra import ratfn_terms_sum_is_zero

    F = field_make(2, 2) if q == 4 else field_make(q, 1)
    dm = carlitz(F)
    N = 8
    E = exp_coeffs(dm, N)
    L = log_coeffs(dm, N)
    assert (E[0] * L[0]).is_one()
    for k in range(1, N + 1):
        terms = [E[i] * L[k - i].frob_twist(i) for i in range(k + 1)]
        assert ratfn_terms_sum_is_zero(terms), (q, k)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_functional_equation(q):
    """exp * a = phi_a * exp exactly to tau^8, for a in {T, T^2+1}."""
    from carlitz_lab.algebra import ratfn_terms_sum_is_zero

    F = field_make(2, 2) if q == 4 else field_make(q, 1)
    dm = carlitz(F)
    N = 8
    E = exp_coeffs(dm, N)
    t = UPoly.theta(F)
    for a in (t, t * t + UPoly.one(F)):
        phi_a = phi_of(dm, a)
        for n in range(N + 1):
            # (exp*a)_n - (phi_a*exp)_n as raw fraction pairs to avoid
            # reduced-form gcds at degree ~q^8
            terms = [(E[n].num * a.frob_twist(n), E[n].den)]
            for l in range(0, min(n, phi_a.tau_deg) + 1):
                cl = phi_a.coeff(l)
                if not cl.is_zero():
                    el = E[n - l].frob_twist(l)
                    terms.append(((-el.num) * cl.as_poly(), el.den))
            assert ratfn_terms_sum_is_zero(terms), (q, repr(a), n)


def test_functional_equation_rank2():
    F = field_make(2, 1)
    t = UPoly.theta(F)
    dm = rank_r_module(F, [t, UPoly.one(F)])
    N = 7
    es = exp_series(dm, N)
    lhs = es * OrePoly.from_scalar(RatFn.from_poly(t))
    rhs = TauSeries.from_ore(dm.phi_theta, N) * es
    assert all((x - y).is_zero() for x, y in zip(lhs.coeffs, rhs.coeffs))


def test_phi_ideal():
    F = field_make(3, 1)
    dm = carlitz(F)
    t = UPoly.theta(F)
    op, psi = phi_ideal(dm, t)
    assert psi == t and op == phi_of(dm, t)
    op1, psi1 = phi_ideal(dm, UPoly.one(F))
    assert psi1.is_one() and op1 == OrePoly.one_of(RatFn.one(F))
    op2, psi2 = phi_ideal(dm, t * t)
    assert psi2 == t * t
    assert op2.coeff(1) == RatFn.from_poly(t + t.frob_twist(1))
    with pytest.raises(ValueError):
        phi_ideal(dm, t.scale(2))


def test_phi_ideal_multiplicative():
    F = field_make(2, 1)
    dm = carlitz(F)
    t = UPoly.theta(F)
    a, b = t, t + UPoly.one(F)
    _, pa = phi_ideal(dm, a)
    _, pb = phi_ideal(dm, b)
    _, pab = phi_ideal(dm, a * b)
    assert pab == pa * pb


def test_torsion_poly_examples():
    F3 = field_make(3, 1)
    dm3 = carlitz(F3)
    t3 = UPoly.theta(F3)
    G = torsion_poly(dm3, t3)
    assert set(G.c) == {(2,), (0,)}
    assert G.c[(2,)].is_one() and G.c[(0,)] == RatFn.from_poly(t3)

    F2 = field_make(2, 1)
    dm2 = carlitz(F2)
    t2 = UPoly.theta(F2)
    G2 = torsion_poly(dm2, t2)
    assert set(G2.c) == {(1,), (0,)} and G2.c[(0,)] == RatFn.from_poly(t2)

    # deg-2 prime: X^3 + P*X + P with P = T^2+T+1 (Eisenstein forces the
    # middle coefficient to be P itself)
    P = UPoly(F2, {2: 1, 1: 1, 0: 1})
    G3 = torsion_poly(dm2, P)
    assert set(G3.c) == {(3,), (1,), (0,)}
    assert G3.c[(1,)] == RatFn.from_poly(P)
    assert G3.c[(0,)] == RatFn.from_poly(P)

    with pytest.raises(ValueError):
        torsion_poly(dm2, t2 * t2)  # reducible
    with pytest.raises(ValueError):
        torsion_poly(dm2, t2.scale(1) + t2 * t2)  # non-monic handled: T^2+T reducible


def test_torsion_eisenstein_and_derivative_identity():
    """G Eisenstein at P; X*G'(X) + G(X) = psi(P)."""
    for q in (2, 3):
        F = field_make(q, 1)
        dm = carlitz(F)
        for d in (1, 2):
            for P in monic_irreducibles(F, d):
                G = torsion_poly(dm, P)
                exps = sorted(e for (e,) in G.c)
                top = max(exps)
                assert top == q ** P.deg - 1
                assert G.c[(top,)].is_one()
                assert G.c[(0,)] == RatFn.from_poly(P)  # constant term psi(P)
                for (e,), c in G.c.items():
                    if e != top:
                        assert (c.as_poly() % P).is_zero()
                # X G'(X) + G(X) = psi(P): compute termwise
                acc = {}
                for (e,), c in G.c.items():
                    # contribution of X*G': e*c X^e ; of G: c X^e
                    scale = F.scalar_from_int(e + 1)
                    if scale:
                        acc[e] = acc.get(e, RatFn.zero(F)) + c.scale(scale)
                acc = {e: c for e, c in acc.items() if not c.is_zero()}
                assert set(acc) == {0} and acc[0] == RatFn.from_poly(P)


def test_lfactor_prime_field_examples():
    # Carlitz, A/(T): mult charpoly T, phi charpoly T-1
    for q in (2, 3):
        F = field_make(q, 1)
        dm = carlitz(F)
        t = UPoly.theta(F)
        rs = residue_space_of_prime(dm, t)
        n, f = lfactor_bruteforce(dm, rs)
        assert n == t and f == t - UPoly.one(F)


def test_lfactor_carlitz_all_small_primes():
    """Carlitz local factors: (P, P-1) for every monic irreducible P, deg<=3."""
    for q in (2, 3):
        F = field_make(q, 1)
        dm = carlitz(F)
        one = UPoly.one(F)
        for d in (1, 2, 3):
            for P in monic_irreducibles(F, d):
                n, f = lfactor_bruteforce(dm, residue_space_of_prime(dm, P))
                assert n == P and f == P - one


def test_lfactor_rank2_theta_over_f2():
    F = field_make(2, 1)
    t = UPoly.theta(F)
    dm = rank_r_module(F, [UPoly.one(F), UPoly.one(F)])  # T + tau + tau^2
    rs = residue_space_of_prime(dm, t)
    n, f = lfactor_bruteforce(dm, rs)
    # action x -> Tx + x^2 + x^4 is 0 on F_2 = A/(T): charpoly T
    assert n == t and f == t


def test_lfactor_rank2_bound():
    """v_inf(N/F - 1) >= 1 and >= deg(N)/r for rank-2 samples, deg P <= 3."""
    for q in (2, 3):
        F = field_make(q, 1)
        t = UPoly.theta(F)
        for coeffs in ([UPoly.one(F), UPoly.one(F)], [t, UPoly.one(F)]):
            dm = rank_r_module(F, coeffs)
            for d in (1, 2, 3):
                for P in monic_irreducibles(F, d):
                    n, f = lfactor_bruteforce(dm, residue_space_of_prime(dm, P))
                    v = lfactor_ratio_valuation(n, f)
                    assert v >= 1
                    assert lfactor_bound_ok(n, f, dm.r)
