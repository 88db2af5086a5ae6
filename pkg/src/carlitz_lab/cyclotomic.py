"""Cyclotomic function fields E = K(lam_{P_1}, ..., lam_{P_n}) as explicit
A-orders with Galois action, Frobenius/averaged symbols and prime splitting.

O_E is the free A-module on monomials lam^e with 0 <= e_j < q^(deg P_j) - 1;
reduction uses the torsion polynomial G_j, whose top coefficient is 1 and
whose constant term is P_j.  The Galois group is prod_j (A/P_j)^* acting by
lam_j -> phi_a(lam_j); the extension is always tame (each inertia order
q^(deg P_j) - 1 is prime to p), so averaged symbols are defined for every
prime and the wild set is empty by construction.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .algebra import RatFn, UPoly
from .drinfeld import DrinfeldModule, ResidueSpace, phi_of, torsion_poly
from .ffield import Field, field_make

CYC_DEGREE_BOUND = 128


class CycError(ValueError):
    pass


class CycField:
    """A cyclotomic order over the Carlitz module; primes may be empty (E=K)."""

    def __init__(self, dm: DrinfeldModule, primes, degree_bound=CYC_DEGREE_BOUND):
        if dm.r != 1 or not dm.is_carlitz:
            raise CycError("cyclotomic layers are generated by Carlitz torsion")
        field = dm.field
        primes = list(primes)
        seen = set()
        for P in primes:
            if not P.is_monic() or not P.is_irreducible():
                raise CycError(f"{P!r} is not monic irreducible")
            if P in seen:
                raise CycError(f"duplicate prime {P!r}")
            seen.add(P)
        self.dm = dm
        self.field = field
        self.primes = primes
        q = field.q
        self.tor_exp = [q ** P.deg - 1 for P in primes]  # E_j
        degree = 1
        for e in self.tor_exp:
            degree *= e
        if degree > degree_bound:
            raise CycError(f"extension degree {degree} exceeds bound {degree_bound}")
        self.degree = degree
        # torsion polynomial coefficient tables: G_j has X-exponents q^k - 1
        self.torsion = []
        for P in primes:
            G = torsion_poly(dm, P)
            self.torsion.append({e[0]: c.as_poly() for e, c in G.c.items()})
        # lam_j^(E_j) = -sum_{k < deg P} phi_{P,k} lam_j^(q^k - 1)
        self.reduction = []
        for j, P in enumerate(primes):
            rule = {}
            for e, c in self.torsion[j].items():
                if e != self.tor_exp[j]:
                    rule[e] = -c
            self.reduction.append(rule)
        self.basis = list(product(*[range(e) for e in self.tor_exp]))
        self._unit_residues = [self._units_mod(P) for P in primes]
        self._act_cache = {}
        self._sym_cache = {}

    def _units_mod(self, P):
        out = []
        F = self.field
        q = F.q
        for i in range(q ** P.deg):
            c = {}
            rest = i
            for e in range(P.deg):
                digit = rest % q
                rest //= q
                if digit:
                    c[e] = digit
            u = UPoly(F, c)
            if not u.is_zero() and u.gcd(P).deg == 0:
                out.append(u)
        return out

    def group(self):
        """All Galois elements, in the fixed enumeration order."""
        if not self.primes:
            return [GaloisElem(self, ())]
        return [GaloisElem(self, residues) for residues in product(*self._unit_residues)]

    def group_order(self):
        order = 1
        for e in self.tor_exp:
            order *= e
        return order

    def zero(self):
        return CycElem(self, {})

    def one(self):
        return CycElem(self, {(0,) * len(self.primes): RatFn.one(self.field)})

    def lam(self, j=0):
        if not self.primes:
            raise CycError("E = K has no torsion generator")
        e = [0] * len(self.primes)
        e[j] = 1
        # reduction handles the degenerate E_j = 1 layer (lam lands in K)
        return CycElem(self, {tuple(e): RatFn.one(self.field)})

    def embed(self, x) -> "CycElem":
        """K (RatFn) or A (UPoly) into E."""
        if isinstance(x, UPoly):
            x = RatFn.from_poly(x)
        return CycElem(self, {(0,) * len(self.primes): x})

    def __repr__(self):
        if not self.primes:
            return "K"
        gens = ",".join(f"lam({P!r})" for P in self.primes)
        return f"K({gens})"


class CycElem:
    """Element of E with coordinates over the lam-monomial basis."""

    __slots__ = ("cf", "coords")

    def __init__(self, cf: CycField, coords, reduce=True):
        self.cf = cf
        if reduce:
            coords = _reduce_coords(cf, coords)
        self.coords = {k: v for k, v in coords.items() if not v.is_zero()}

    @property
    def field(self):
        return self.cf.field

    def is_zero(self):
        return not self.coords

    def is_one(self):
        k0 = (0,) * len(self.cf.primes)
        return set(self.coords) == {k0} and self.coords[k0].is_one()

    def is_integral(self):
        """All basis coordinates in A (Lemma on the monomial A-basis)."""
        return all(v.is_integral() for v in self.coords.values())

    def as_ratfn(self):
        """The K-coordinate when the element lies in K."""
        k0 = (0,) * len(self.cf.primes)
        if any(k != k0 for k in self.coords):
            raise CycError("element does not lie in K")
        return self.coords.get(k0, RatFn.zero(self.field))

    def __eq__(self, other):
        return isinstance(other, CycElem) and self.cf is other.cf and self.coords == other.coords

    def __add__(self, other):
        if isinstance(other, (RatFn, UPoly)):
            other = self.cf.embed(other)
        out = dict(self.coords)
        for k, v in other.coords.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return CycElem(self.cf, out, reduce=False)

    def __neg__(self):
        return CycElem(self.cf, {k: -v for k, v in self.coords.items()}, reduce=False)

    def __sub__(self, other):
        if isinstance(other, (RatFn, UPoly)):
            other = self.cf.embed(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (RatFn, UPoly)):
            if isinstance(other, UPoly):
                other = RatFn.from_poly(other)
            return CycElem(self.cf, {k: v * other for k, v in self.coords.items()}, reduce=False)
        if not isinstance(other, CycElem):
            return NotImplemented
        out = {}
        for k1, v1 in self.coords.items():
            for k2, v2 in other.coords.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                prod = v1 * v2
                if k in out:
                    out[k] = out[k] + prod
                else:
                    out[k] = prod
        return CycElem(self.cf, out)

    __rmul__ = __mul__

    def scale(self, a):
        """Scalar from the coefficient field F_q."""
        return CycElem(self.cf, {k: v.scale(a) for k, v in self.coords.items()}, reduce=False)

    def __pow__(self, e):
        out = self.cf.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def frob_twist(self, i=1):
        """q^i-th power: coordinate twist plus monomial exponent scaling."""
        if i == 0:
            return self
        m = self.cf.field.q ** i
        out = {}
        for k, v in self.coords.items():
            kk = tuple(e * m for e in k)
            tv = v.frob_twist(i)
            out[kk] = out[kk] + tv if kk in out else tv
        return CycElem(self.cf, out)

    def __repr__(self):
        if not self.coords:
            return "0"
        parts = []
        for k in sorted(self.coords):
            mono = "*".join(f"L{j+1}^{e}" if e > 1 else f"L{j+1}" for j, e in enumerate(k) if e)
            c = repr(self.coords[k])
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)


def _reduce_coords(cf: CycField, coords):
    """Rewrite lam_j^e for e >= E_j via the torsion relation, repeatedly."""
    work = dict(coords)
    done = {}
    while work:
        k, v = work.popitem()
        if v.is_zero():
            continue
        over = None
        for j, e in enumerate(k):
            if cf.tor_exp[j] > 0 and e >= cf.tor_exp[j]:
                over = j
                break
        if over is None:
            if k in done:
                s = done[k] + v
                if s.is_zero():
                    del done[k]
                else:
                    done[k] = s
            else:
                done[k] = v
            continue
        j = over
        e = k[j]
        rest = e - cf.tor_exp[j]
        for xe, coeff in cf.reduction[j].items():
            kk = list(k)
            kk[j] = rest + xe
            kk = tuple(kk)
            term = v * RatFn.from_poly(coeff)
            if kk in work:
                s = work[kk] + term
                if s.is_zero():
                    del work[kk]
                else:
                    work[kk] = s
            else:
                work[kk] = term
    return done


class GaloisElem:
    """Tuple (a_1 mod P_1, ..., a_n mod P_n) of units, acting on E."""

    __slots__ = ("cf", "residues")

    def __init__(self, cf: CycField, residues):
        self.cf = cf
        self.residues = tuple(residues)

    def key(self):
        return tuple(tuple(sorted(r.c.items())) for r in self.residues)

    def __eq__(self, other):
        return isinstance(other, GaloisElem) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_identity(self):
        return all(r.is_one() for r in self.residues)

    def __mul__(self, other):
        return GaloisElem(
            self.cf,
            [(a * b) % P for a, b, P in zip(self.residues, other.residues, self.cf.primes)],
        )

    def __pow__(self, e):
        out = GaloisElem(self.cf, [UPoly.one(self.cf.field) for _ in self.cf.primes])
        base = self
        e = e % self.order_bound()
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def order_bound(self):
        return self.cf.group_order()

    def order(self):
        acc = self
        n = 1
        while not acc.is_identity():
            acc = acc * self
            n += 1
            if n > self.order_bound():  # pragma: no cover
                raise CycError("order exceeded group bound")
        return n

    def __repr__(self):
        return "(" + ",".join(repr(r) for r in self.residues) + ")"


def galois_act(sigma: GaloisElem, x: CycElem) -> CycElem:
    """Ring automorphism fixing K: lam_j -> phi_(a_j)(lam_j), reduced."""
    cf = x.cf
    if sigma.cf is not cf:
        raise CycError("Galois element belongs to a different field")
    out = cf.zero()
    for k, v in x.coords.items():
        term = cf.embed(v)
        for j, e in enumerate(k):
            if e:
                term = term * _lam_power_image(cf, j, sigma.residues[j], e)
        out = out + term
    return out


def _lam_power_image(cf: CycField, j, residue: UPoly, e: int) -> CycElem:
    key = (j, tuple(sorted(residue.c.items())), e)
    hit = cf._act_cache.get(key)
    if hit is not None:
        return hit
    img1_key = (j, tuple(sorted(residue.c.items())), 1)
    img = cf._act_cache.get(img1_key)
    if img is None:
        phi_a = phi_of(cf.dm, residue)
        q = cf.field.q
        coords = {}
        for i, c in enumerate(phi_a.coeffs):
            if c.is_zero():
                continue
            kk = [0] * len(cf.primes)
            kk[j] = q ** i
            kk = tuple(kk)
            coords[kk] = coords.get(kk, RatFn.zero(cf.field)) + c
        img = CycElem(cf, coords)
        cf._act_cache[img1_key] = img
    out = img ** e
    cf._act_cache[key] = out
    return out


class GroupRingElem:
    """Element of F_p[G]: finite support map GaloisElem -> F_p coefficient."""

    __slots__ = ("cf", "terms")

    def __init__(self, cf: CycField, terms=None):
        self.cf = cf
        self.terms = {}
        if terms:
            p = cf.field.p
            for g, c in terms.items():
                c = c % p
                if c:
                    self.terms[g] = c

    @classmethod
    def of(cls, g: GaloisElem, coeff=1):
        return cls(g.cf, {g: coeff})

    @classmethod
    def one(cls, cf: CycField):
        return cls(cf, {GaloisElem(cf, [UPoly.one(cf.field) for _ in cf.primes]): 1})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, GroupRingElem) and self.terms == other.terms

    def __add__(self, other):
        p = self.cf.field.p
        out = dict(self.terms)
        for g, c in other.terms.items():
            s = (out.get(g, 0) + c) % p
            if s:
                out[g] = s
            else:
                out.pop(g, None)
        return GroupRingElem(self.cf, out)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElem(self.cf, {g: c * other for g, c in self.terms.items()})
        p = self.cf.field.p
        out = {}
        for g1, c1 in self.terms.items():
            for g2, c2 in other.terms.items():
                g = g1 * g2
                out[g] = (out.get(g, 0) + c1 * c2) % p
        return GroupRingElem(self.cf, out)

    def __pow__(self, e):
        out = GroupRingElem.one(self.cf)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def apply(self, x: CycElem) -> CycElem:
        """sum c_g * g(x), with F_p coefficients acting as F_q scalars."""
        out = x.cf.zero()
        for g, c in self.terms.items():
            out = out + galois_act(g, x).scale(c % x.cf.field.p)
        return out

    def augmentation(self):
        p = self.cf.field.p
        return sum(self.terms.values()) % p

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{g!r}" for g, c in sorted(self.terms.items(), key=lambda kv: repr(kv[0])))


def cyc_make(dm: DrinfeldModule, primes, degree_bound=CYC_DEGREE_BOUND) -> CycField:
    return CycField(dm, primes, degree_bound)


def frobenius_symbol(cf: CycField, Q: UPoly) -> GroupRingElem:
    """sigma_{Q,O_E}: a plain Artin element for unramified Q, the averaged
    inertia-coset element for Q among the P_j (always tame in scope)."""
    key = tuple(sorted(Q.c.items()))
    hit = cf._sym_cache.get(key)
    if hit is not None:
        return hit
    if not Q.is_monic() or not Q.is_irreducible():
        raise CycError(f"{Q!r} is not monic irreducible")
    ram = None
    for j, P in enumerate(cf.primes):
        if P == Q:
            ram = j
            break
    if ram is None:
        g = GaloisElem(cf, [Q % P for P in cf.primes])
        out = GroupRingElem.of(g)
    else:
        p = cf.field.p
        inertia_order = cf.tor_exp[ram] % p
        inv = pow(inertia_order, p - 2, p)
        terms = {}
        others = [Q % P if j != ram else None for j, P in enumerate(cf.primes)]
        for u in cf._unit_residues[ram]:
            residues = [u if j == ram else others[j] for j in range(len(cf.primes))]
            terms[GaloisElem(cf, residues)] = inv
        out = GroupRingElem(cf, terms)
    cf._sym_cache[key] = out
    return out


def symbol_of_monic(cf: CycField, a: UPoly) -> GroupRingElem:
    """sigma_{aA,O_E} for monic a: multiplicative over the factorization,
    which only needs the valuations at the ramified primes P_j."""
    if not cf.primes:
        return GroupRingElem.one(cf)
    vals = []
    rest = a
    for P in cf.primes:
        v = 0
        while True:
            q, r = divmod(rest, P)
            if r.is_zero():
                rest = q
                v += 1
            else:
                break
        vals.append(v)
    g_un = GaloisElem(cf, [rest % P for P in cf.primes])
    out = GroupRingElem.of(g_un)
    for j, v in enumerate(vals):
        if v:
            out = out * (frobenius_symbol(cf, cf.primes[j]) ** v)
    return out


def prime_splitting(cf: CycField, Q: UPoly):
    """(e, f, g) with e*f*g = [E:K]; f is the order of the unramified part."""
    if not Q.is_monic() or not Q.is_irreducible():
        raise CycError(f"{Q!r} is not monic irreducible")
    e = 1
    for j, P in enumerate(cf.primes):
        if P == Q:
            e *= cf.tor_exp[j]
    unram = GaloisElem(
        cf,
        [UPoly.one(cf.field) if P == Q else Q % P for P in cf.primes],
    )
    f = unram.order()
    order = cf.group_order()
    assert order % (e * f) == 0
    return e, f, order // (e * f)


def norm_generator(cf: CycField, Q: UPoly) -> UPoly:
    """Monic generator of N_{E/K}(P) for P over Q: Q^f."""
    _, f, _ = prime_splitting(cf, Q)
    return Q ** f


# -- residue fields above a prime, for brute-force L-factors --


def residue_spaces_of_prime(cf: CycField, Q: UPoly, check=True):
    """[(ResidueSpace, multiplicity g)] for the primes of O_E over Q.

    All primes over Q share one residue field and identical theta/phi
    actions (the extension is abelian), so one representative space with
    its multiplicity describes them all.  Prime base fields only.
    """
    from .drinfeld import residue_space_of_prime

    F = cf.field
    if not cf.primes:
        return [(residue_space_of_prime(cf.dm, Q, check=check), 1)]
    if F.d != 1:
        raise CycError("cyclotomic residue spaces are built over prime base fields")
    e, f, g = prime_splitting(cf, Q)
    m = f * Q.deg
    big = field_make(F.p, m) if m > 1 else F
    theta_bar = _root_in_field(big, Q, F)
    lam_bars = []
    for j, P in enumerate(cf.primes):
        if P == Q:
            lam_bars.append(0)
            continue
        lam_bars.append(_torsion_root(big, cf, j, theta_bar))
    dim = m
    # basis x^0..x^(m-1) of the residue field over F_q
    mult = np.zeros((dim, dim), dtype=np.int64)
    act = np.zeros((dim, dim), dtype=np.int64)
    for col in range(dim):
        b = _power_elt(big, col)
        mb = big.mul(theta_bar, b)
        for row, digit in enumerate(_field_coords(big, mb, F)):
            mult[row, col] = digit
        # Carlitz action x -> theta*x + x^q (rank 1 in scope here)
        ab = big.add(big.mul(theta_bar, b), big.pow(b, F.q))
        for row, digit in enumerate(_field_coords(big, ab, F)):
            act[row, col] = digit
    rs = ResidueSpace(F, dim, mult, act, label=f"O_E/(prime over {Q!r})", multiplicity=g)
    if check:
        _residue_dimension_check(big, theta_bar, lam_bars, cf, Q, f)
    return [(rs, g)]


def _root_in_field(big: Field, poly: UPoly, base: Field):
    """Least root of poly (coefficients in the prime field) inside big."""
    for x in range(big.q):
        if _eval_in_field(big, poly, x) == 0:
            return x
    raise CycError(f"no root of {poly!r} in F_{big.q}")


def _eval_in_field(big: Field, poly: UPoly, x):
    acc = 0
    for e in range(poly.deg, -1, -1):
        acc = big.mul(acc, x)
        c = poly.c.get(e, 0)
        if c:
            acc = big.add(acc, c % big.p)
    return acc


def _torsion_root(big: Field, cf: CycField, j, theta_bar):
    """Least nonzero root of G_j(X) with theta |-> theta_bar coefficients."""
    coeffs = {e: _eval_in_field(big, c, theta_bar) for e, c in cf.torsion[j].items()}
    for x in range(1, big.q):
        val = 0
        for e, c in coeffs.items():
            if c:
                val = big.add(val, big.mul(c, big.pow(x, e)))
        if val == 0:
            return x
    raise CycError("no torsion root found in the residue field")


def _power_elt(big: Field, e):
    # the class of x^e in big; dimension 1 uses basis {1}
    if big.d == 1:
        return 1
    x = big.p  # digits (0,1,0,...)
    return big.pow(x, e) if e else 1


def _field_coords(big: Field, elt, base: Field):
    if big.d == 1:
        return [elt]
    return big._digits(elt)


def _subfield_degree(big: Field, x) -> int:
    """[F_q(x) : F_q] inside big with q = big.p (prime base in scope)."""
    q = big.p
    d = 1
    acc = big.pow(x, q)
    while acc != x:
        acc = big.pow(acc, q)
        d += 1
    return d


def _residue_dimension_check(big, theta_bar, lam_bars, cf, Q, f):
    """theta_bar must be a root of Q and the generators must produce the
    whole residue field: lcm of subfield degrees equals f*deg(Q)."""
    import math

    if _eval_in_field(big, Q, theta_bar) != 0:
        raise CycError("residue construction lost the root of Q")
    degree = _subfield_degree(big, theta_bar)
    for l in lam_bars:
        if l:
            degree = degree * _subfield_degree(big, l) // math.gcd(degree, _subfield_degree(big, l))
    if degree != f * Q.deg:
        raise CycError("residue field is not generated as expected")
