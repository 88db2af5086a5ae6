import pytest

from carlitz_lab.ffield import FieldError, field_make


def test_prime_fields():
    assert field_make(2, 1).q == 2
    assert field_make(3, 1).q == 3


def test_f4_defining_polynomial():
    # only irreducible quadratic over F_2
    assert field_make(2, 2).modulus == (1, 1, 1)


def test_deterministic_choice():
    assert field_make(3, 2).modulus == (1, 0, 1)  # x^2 + 1, first in counting order
    assert field_make(2, 3).modulus == (1, 1, 0, 1)  # x^3 + x + 1


def test_construction_reproducible():
    a = field_make(5, 2)
    b = field_make(5, 2)
    assert a is b and a.modulus == b.modulus


def test_rejects_bad_input():
    with pytest.raises(FieldError):
        field_make(4, 1)
    with pytest.raises(FieldError):
        field_make(6, 2)
    with pytest.raises(FieldError):
        field_make(2, 25)  # 2^25 over the size bound


@pytest.mark.parametrize("p,d", [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3), (3, 4), (7, 1)])
def test_xq_equals_x_exhaustive(p, d):
    F = field_make(p, d)
    assert F.q <= 81 or d == 1
    for a in F.elements():
        assert F.pow(a, F.q) == a


@pytest.mark.parametrize("p,d", [(2, 2), (3, 2), (2, 3), (5, 1)])
def test_field_axioms_sampled(p, d):
    import random

    F = field_make(p, d)
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = (rng.randrange(F.q) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def test_frobenius_is_field_automorphism():
    import random

    F = field_make(2, 2)
    rng = random.Random(3)
    for _ in range(50):
        a, b = rng.randrange(4), rng.randrange(4)
        assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))
        assert F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b))
    # frob of prime-field elements is identity
    assert F.frob(0) == 0 and F.frob(1) == 1


def test_generator_order():
    for p, d in [(2, 2), (3, 2), (2, 3)]:
        F = field_make(p, d)
        g = F.generator()
        seen = set()
        acc = 1
        for _ in range(F.q - 1):
            seen.add(acc)
            acc = F.mul(acc, g)
        assert len(seen) == F.q - 1
