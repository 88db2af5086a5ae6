"""Finite fields F_q, q = p^d, with a deterministic defining polynomial.

Elements are plain ints in range(q).  For prime fields the int is the
residue itself; for extension fields it encodes the coordinate vector
(c_0, ..., c_{d-1}) over F_p in base p (c_0 least significant), where the
class of x in F_p[x]/(modulus) is the generator of the representation.

The defining polynomial is the first monic irreducible of degree d in
counting order (non-leading coefficients read as the base-p integer
sum c_i p^i), so construction is reproducible without external tables.
"""

from __future__ import annotations

from functools import lru_cache

FIELD_SIZE_BOUND = 1 << 20


class FieldError(ValueError):
    pass


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _fp_polymul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _fp_polymod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and len(a) > 1:
        c = a[-1]
        if c:
            off = len(a) - 1 - dm
            for j in range(dm + 1):
                a[off + j] = (a[off + j] - c * m[j]) % p
        a.pop()
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _fp_powmod_x(e, m, p):
    """x^e mod m over F_p."""
    result = [1]
    base = [0, 1] if len(m) > 2 else _fp_polymod([0, 1], m, p)
    while e:
        if e & 1:
            result = _fp_polymod(_fp_polymul(result, base, p), m, p)
        base = _fp_polymod(_fp_polymul(base, base, p), m, p)
        e >>= 1
    return result


def _fp_polyrem(a, b, p):
    """Remainder of a mod b, low-first lists, b nonzero."""
    db = len(b) - 1
    if db == 0:
        return [0]
    r = list(a)
    inv = pow(b[-1], p - 2, p)
    while len(r) - 1 >= db:
        c = r[-1] * inv % p
        off = len(r) - 1 - db
        if c:
            for j in range(db):
                r[off + j] = (r[off + j] - c * b[j]) % p
        r.pop()
        while len(r) > 1 and r[-1] == 0:
            r.pop()
        if r == [0]:
            break
    return r


def _fp_polygcd(a, b, p):
    a, b = list(a), list(b)
    while b != [0]:
        a, b = b, _fp_polyrem(a, b, p)
    return a


def _sub_x(poly, p):
    """poly - x, trimmed, low-first list."""
    out = list(poly)
    while len(out) < 2:
        out.append(0)
    out[1] = (out[1] - 1) % p
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _is_irreducible(coeffs, p):
    """Rabin test for a monic polynomial over F_p given as low-first list."""
    d = len(coeffs) - 1
    if d == 1:
        return True
    if _sub_x(_fp_powmod_x(p ** d, coeffs, p), p) != [0]:
        return False
    for ell in _prime_divisors(d):
        diff = _sub_x(_fp_powmod_x(p ** (d // ell), coeffs, p), p)
        if diff == [0]:
            return False
        if len(_fp_polygcd(coeffs, diff, p)) > 1:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class Field:
    """F_q with q = p^d.  Instances are immutable and cached by (p, d)."""

    def __init__(self, p: int, d: int, modulus: tuple):
        self.p = p
        self.d = d
        self.q = p ** d
        self.modulus = modulus  # low-first coefficient tuple, length d+1, monic
        self._build_tables()

    def add_table(self):
        """q x q addition table as numpy int64, for table-driven kernels."""
        if self._addtab is None:
            import numpy as np

            if self.q > 256:
                raise FieldError("addition table only built for q <= 256")
            tab = np.zeros((self.q, self.q), dtype=np.int64)
            for a in range(self.q):
                for b in range(self.q):
                    tab[a, b] = self.add(a, b)
            self._addtab = tab
        return self._addtab

    def log_exp_tables(self):
        """(log, exp) tables as numpy int64 arrays; log[0] is unused."""
        if self._logtab is None:
            import numpy as np

            if self.d == 1:
                exp = [0] * (self.q - 1)
                log = [0] * self.q
                acc = 1
                for k in range(self.q - 1):
                    exp[k] = acc
                    log[acc] = k
                    acc = acc * self._gen % self.p
                self._logtab = np.asarray(log, dtype=np.int64)
                self._exptab = np.asarray(exp, dtype=np.int64)
            else:
                self._logtab = np.asarray(self._log, dtype=np.int64)
                self._exptab = np.asarray(self._exp, dtype=np.int64)
        return self._logtab, self._exptab

    def _build_tables(self):
        q, p, d = self.q, self.p, self.d
        self._addtab = None
        self._logtab = None
        self._exptab = None
        if d == 1:
            self._log = None
            self._exp = None
            self._gen = self._find_prime_generator()
            return
        # exp/log tables over a multiplicative generator
        mod = list(self.modulus)
        for cand in range(p, q):
            elt = cand
            seen_order = self._element_order(cand, mod)
            if seen_order == q - 1:
                gen = cand
                break
        else:  # pragma: no cover - a generator always exists
            raise FieldError("no multiplicative generator found")
        exp = [0] * (q - 1)
        log = [0] * q
        acc = 1
        for k in range(q - 1):
            exp[k] = acc
            log[acc] = k
            acc = self._raw_mul(acc, gen, mod)
        self._exp = exp
        self._log = log
        self._gen = gen

    def _element_order(self, a, mod):
        order = 1
        acc = a
        while acc != 1:
            acc = self._raw_mul(acc, a, mod)
            order += 1
            if order > self.q:
                raise FieldError("order computation ran away")
        return order

    def _find_prime_generator(self):
        p = self.p
        if p == 2:
            return 1
        for g in range(2, p):
            seen = set()
            acc = 1
            for _ in range(p - 1):
                acc = acc * g % p
                seen.add(acc)
            if len(seen) == p - 1:
                return g
        raise FieldError("no generator mod p")  # pragma: no cover

    def _digits(self, a):
        p = self.p
        out = []
        for _ in range(self.d):
            out.append(a % p)
            a //= p
        return out

    def _undigits(self, digits):
        out = 0
        for c in reversed(digits):
            out = out * self.p + c
        return out

    def _raw_mul(self, a, b, mod):
        da, db = self._digits(a), self._digits(b)
        prod = _fp_polymul(da, db, self.p)
        prod = _fp_polymod(prod, mod, self.p)
        prod += [0] * (self.d - len(prod))
        return self._undigits(prod)

    # -- element arithmetic (ints in range(q)) --

    def add(self, a, b):
        if self.d == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.d):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a):
        if self.d == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.d):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.d == 1:
            return a * b % self.p
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        if self.d == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        if self.d == 1:
            return pow(a, e % (self.p - 1), self.p) if self.p > 2 else a
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def frob(self, a, i=1):
        """a^(p^i).  For i a multiple of d this is the identity."""
        return self.pow(a, pow(self.p, i, self.q - 1) if self.q > 2 else 1)

    def generator(self):
        """A fixed multiplicative generator, used for coefficient rendering."""
        return self._gen

    def elements(self):
        return range(self.q)

    def scalar_from_int(self, n: int):
        """Image of the integer n under Z -> F_q (lands in the prime field)."""
        return n % self.p

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.d) == (other.p, other.d)

    def __hash__(self):
        return hash((self.p, self.d))

    def __repr__(self):
        return f"F_{self.q}" if self.d == 1 else f"F_{self.q}=F_{self.p}[x]/{self.modulus}"


@lru_cache(maxsize=None)
def field_make(p: int, d: int) -> Field:
    """Construct F_(p^d) with the deterministic defining polynomial.

    Raises FieldError for non-prime p, d < 1, or p^d beyond the size bound.
    """
    if d < 1:
        raise FieldError(f"extension degree must be >= 1, got {d}")
    if not _is_probable_prime(p):
        raise FieldError(f"{p} is not prime")
    if p ** d > FIELD_SIZE_BOUND:
        raise FieldError(f"field size {p}^{d} exceeds bound {FIELD_SIZE_BOUND}")
    if d == 1:
        return Field(p, 1, (0, 1))
    for low in range(p ** d):
        # low encodes the non-leading coefficients, c_0 least significant,
        # so candidates are tried in increasing counting order
        digits = []
        rest = low
        for _ in range(d):
            digits.append(rest % p)
            rest //= p
        coeffs = digits + [1]
        if _is_irreducible(coeffs, p):
            return Field(p, d, tuple(coeffs))
    raise FieldError("no irreducible polynomial found")  # pragma: no cover
