"""Exact arithmetic over A = F_q[T], K = F_q(T) and F_q((1/T)).

UPoly is sparse (dict exponent -> nonzero field element); the heavy engine
code in other modules works on dense numpy vectors via `to_dense`/`from_dense`
when the coefficient field is prime.  RatFn is always reduced with a monic
denominator.  LaurentApprox tracks a window [val, prec) of known 1/T
coefficients and propagates guarantees pessimistically.
"""

from __future__ import annotations

import math

import numpy as np

from . import _dense
from .ffield import Field, field_make


class UPoly:
    """Univariate polynomial over a finite field, variable written T."""

    __slots__ = ("field", "c")

    def __init__(self, field: Field, coeffs=None):
        self.field = field
        if coeffs is None:
            self.c = {}
        elif isinstance(coeffs, dict):
            self.c = {e: v for e, v in coeffs.items() if v}
        else:  # iterable of low-first coefficients
            self.c = {e: v % field.p if field.d == 1 else v for e, v in enumerate(coeffs) if v}
            if field.d == 1:
                self.c = {e: v for e, v in self.c.items() if v}

    # -- constructors --

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def one(cls, field):
        return cls(field, {0: 1})

    @classmethod
    def const(cls, field, a):
        return cls(field, {0: a} if a else {})

    @classmethod
    def theta(cls, field):
        return cls(field, {1: 1})

    @classmethod
    def monomial(cls, field, e, a=1):
        return cls(field, {e: a} if a else {})

    @classmethod
    def from_dense(cls, field, arr):
        return cls(field, {int(e): int(v) for e, v in enumerate(arr) if v})

    def to_dense(self):
        if self.field.d != 1:
            raise ValueError("dense bridge is for prime fields only")
        if not self.c:
            return _dense.ZERO.copy()
        out = np.zeros(self.deg + 1, dtype=np.int64)
        for e, v in self.c.items():
            out[e] = v
        return out

    # -- structure --

    @property
    def deg(self):
        return max(self.c) if self.c else -1

    @property
    def lead(self):
        return self.c[max(self.c)] if self.c else 0

    def is_zero(self):
        return not self.c

    def is_one(self):
        return self.c == {0: 1}

    def is_monic(self):
        return bool(self.c) and self.lead == 1

    def constant_term(self):
        return self.c.get(0, 0)

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.field == other.field and self.c == other.c

    def __hash__(self):
        return hash((self.field.q, tuple(sorted(self.c.items()))))

    def __bool__(self):
        return bool(self.c)

    # -- arithmetic --

    def __add__(self, other):
        F = self.field
        out = dict(self.c)
        for e, v in other.c.items():
            s = F.add(out.get(e, 0), v)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return UPoly(F, out)

    def __neg__(self):
        F = self.field
        return UPoly(F, {e: F.neg(v) for e, v in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if isinstance(other, int):
            other = UPoly.const(F, F.scalar_from_int(other))
        if not isinstance(other, UPoly):
            return NotImplemented
        if not self.c or not other.c:
            return UPoly.zero(F)
        if len(self.c) * len(other.c) > 4096:
            if F.d == 1:
                return UPoly.from_dense(F, _dense.pmul(self.to_dense(), other.to_dense(), F.p))
            return _slotted_mul(self, other)
        out = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                s = F.add(out.get(e, 0), F.mul(v1, v2))
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return UPoly(F, out)

    __rmul__ = __mul__

    def scale(self, a):
        F = self.field
        if not a:
            return UPoly.zero(F)
        return UPoly(F, {e: F.mul(v, a) for e, v in self.c.items()})

    def __divmod__(self, other):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.deg < other.deg:
            return UPoly.zero(F), self
        if F.d == 1 and self.deg > 64:
            q, r = _dense.pdivmod(self.to_dense(), other.to_dense(), F.p)
            return UPoly.from_dense(F, q), UPoly.from_dense(F, r)
        inv_lead = F.inv(other.lead)
        rem = dict(self.c)
        quo = {}
        dother = other.deg
        while rem:
            drem = max(rem)
            if drem < dother:
                break
            c = F.mul(rem[drem], inv_lead)
            quo[drem - dother] = c
            for e, v in other.c.items():
                ee = drem - dother + e
                s = F.sub(rem.get(ee, 0), F.mul(c, v))
                if s:
                    rem[ee] = s
                else:
                    rem.pop(ee, None)
        return UPoly(F, quo), UPoly(F, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divexact(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact division")
        return q

    def monic(self):
        if not self.c:
            return self
        return self.scale(self.field.inv(self.lead))

    def gcd(self, other):
        F = self.field
        if F.d == 1 and max(self.deg, other.deg) > 128:
            return UPoly.from_dense(F, _dense.pgcd(self.to_dense(), other.to_dense(), F.p))
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = UPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def frob_twist(self, i=1):
        """self^(q^i): coefficients are F_q-fixed so only exponents scale."""
        if i == 0:
            return self
        m = self.field.q ** i
        return UPoly(self.field, {e * m: v for e, v in self.c.items()})

    def derivative(self):
        F = self.field
        out = {}
        for e, v in self.c.items():
            if e:
                s = F.mul(v, F.scalar_from_int(e))
                if s:
                    out[e - 1] = s
        return UPoly(F, out)

    def __call__(self, x):
        """Evaluate at x: a field element (int) or any ring element with
        **, scale and +."""
        if isinstance(x, int):
            F = self.field
            acc = 0
            prev = None
            for e in sorted(self.c, reverse=True):
                if prev is not None:
                    acc = F.mul(acc, F.pow(x, prev - e))
                acc = F.add(acc, self.c[e])
                prev = e
            if prev is not None and prev > 0:
                acc = F.mul(acc, F.pow(x, prev))
            return acc
        out = None
        for e, v in self.c.items():
            term = (x ** e).scale(v)
            out = term if out is None else out + term
        return out  # None signals the zero polynomial; callers supply zero

    def powmod(self, e, modulus):
        out = UPoly.one(self.field)
        base = self % modulus
        while e:
            if e & 1:
                out = (out * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return out

    def is_irreducible(self):
        """Rabin criterion; self must be non-constant."""
        d = self.deg
        if d <= 0:
            return False
        q = self.field.q
        x = UPoly.theta(self.field)
        f = self.monic()
        if x.powmod(q ** d, f) != (x % f):
            return False
        dd = d
        primes = set()
        k = 2
        while k * k <= dd:
            if dd % k == 0:
                primes.add(k)
                while dd % k == 0:
                    dd //= k
            k += 1
        if dd > 1:
            primes.add(dd)
        for ell in primes:
            g = (x.powmod(q ** (d // ell), f) - (x % f)).gcd(f)
            if g.deg > 0:
                return False
        return True

    def __repr__(self):
        from .textfmt import render_upoly

        return render_upoly(self)


def _slotted_mul(a: UPoly, b: UPoly) -> UPoly:
    """Dense product for big extension-field polynomials.

    Coefficients split into d digit slots over F_p; slot pairs convolve via
    the exact FFT kernel and x-powers >= d reduce through the field modulus.
    """
    F = a.field
    p, d = F.p, F.d
    na, nb = a.deg + 1, b.deg + 1

    def slots(f, n):
        out = [np.zeros(n, dtype=np.int64) for _ in range(d)]
        for e, v in f.c.items():
            for m in range(d):
                out[m][e] = v % p
                v //= p
        return out

    sa, sb = slots(a, na), slots(b, nb)
    acc = [np.zeros(na + nb - 1, dtype=np.int64) for _ in range(2 * d - 1)]
    for m1 in range(d):
        if not sa[m1].any():
            continue
        for m2 in range(d):
            if not sb[m2].any():
                continue
            prod = _dense.fftmul(sa[m1], sb[m2], p) if na + nb > 512 else np.convolve(sa[m1], sb[m2]) % p
            acc[m1 + m2][: len(prod)] = (acc[m1 + m2][: len(prod)] + prod) % p
    # digits of x^m in the field for m = d .. 2d-2 (reduction table)
    x_elt = F._undigits([0, 1] + [0] * (d - 2)) if d > 1 else 1
    cur = F._undigits([0] * (d - 1) + [1])  # x^(d-1)
    reductions = []
    for m in range(d, 2 * d - 1):
        cur = F._raw_mul(cur, x_elt, list(F.modulus))
        reductions.append(F._digits(cur))
    out = [acc[m].copy() for m in range(d)]
    for m in range(d, 2 * d - 1):
        digits = reductions[m - d]
        if not acc[m].any():
            continue
        for j in range(d):
            if digits[j]:
                out[j] = (out[j] + digits[j] * acc[m]) % p
    coeffs = {}
    n = na + nb - 1
    for e in range(n):
        v = 0
        mult = 1
        for j in range(d):
            v += int(out[j][e]) * mult
            mult *= p
        if v:
            coeffs[e] = v
    return UPoly(F, coeffs)


def ratfn_terms_sum_is_zero(terms) -> bool:
    """Exact zero test for a sum of fractions without any gcd reduction.

    Each term is a RatFn or a raw (num, den) UPoly pair; pairs let callers
    skip the reduced-form invariant when numerator and denominator would
    share huge factors.  Fast path: when every denominator divides the
    largest one (the usual shape for exp/log identities, where everything
    divides D_k), clear to that one with sparse-divisor divisions.
    Otherwise fall back to prefix/suffix cofactor products.
    """
    pairs = []
    for t in terms:
        num, den = (t.num, t.den) if isinstance(t, RatFn) else t
        if not num.is_zero():
            pairs.append((num, den))
    if not pairs:
        return True
    if len(pairs) == 1:
        return False
    F = pairs[0][0].field
    if F.q <= 256:
        result = _sum_zero_common_den(F, pairs)
        if result is not None:
            return result
    # fallback: prefix/suffix cofactors
    n = len(pairs)
    prefix = [UPoly.one(F)]
    for i in range(n):
        prefix.append(prefix[i] * pairs[i][1])
    suffix = [None] * (n + 1)
    suffix[n] = UPoly.one(F)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] * pairs[i][1]
    acc = UPoly.zero(F)
    for i, (num, _) in enumerate(pairs):
        acc = acc + num * prefix[i] * suffix[i + 1]
    return acc.is_zero()


def _sum_zero_common_den(F, pairs):
    """Max-denominator clearing; None when some denominator fails to divide."""
    from ._dense import TableOps, is_zero as np_is_zero

    ops = TableOps(F)
    imax = max(range(len(pairs)), key=lambda i: pairs[i][1].deg)
    dmax = pairs[imax][1]
    dmax_dense = _to_index_array(dmax)
    acc = np.zeros(1, dtype=np.int64)
    for num, den in pairs:
        if den is dmax or den == dmax:
            cof = None
        else:
            exps = sorted(den.c)
            coeffs = [den.c[e] for e in exps]
            cof, rem = ops.divmod_sparse(dmax_dense, exps, coeffs)
            if not np_is_zero(rem):
                return None
        nexps = sorted(num.c)
        ncoeffs = [num.c[e] for e in nexps]
        if cof is None:
            contrib = _to_index_array(num)
        else:
            contrib = ops.sparse_mul_dense(nexps, ncoeffs, cof)
        acc = ops.add(acc, contrib)
    return bool(np_is_zero(acc))


def _to_index_array(f: UPoly) -> np.ndarray:
    out = np.zeros(f.deg + 1 if f.c else 1, dtype=np.int64)
    for e, v in f.c.items():
        out[e] = v
    return out


def monic_polys(field: Field, d: int):
    """Iterate monic degree-d polynomials in the fixed enumeration order."""
    q = field.q
    for i in range(q ** d):
        c = {d: 1}
        rest = i
        for j in range(d):
            digit = rest % q
            rest //= q
            if digit:
                c[j] = digit
        yield UPoly(field, c)


def monic_irreducibles(field: Field, d: int):
    for f in monic_polys(field, d):
        if f.is_irreducible():
            yield f


class RatFn:
    """Element of K = F_q(T): reduced fraction with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: UPoly, den: UPoly = None, reduce=True):
        if den is None:
            den = UPoly.one(num.field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            if num.is_zero():
                den = UPoly.one(num.field)
            else:
                g = num.gcd(den)
                if g.deg > 0:
                    num = num.divexact(g)
                    den = den.divexact(g)
                lead = den.lead
                if lead != 1:
                    inv = num.field.inv(lead)
                    num = num.scale(inv)
                    den = den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, f: UPoly):
        return cls(f, UPoly.one(f.field), reduce=False)

    @classmethod
    def zero(cls, field):
        return cls(UPoly.zero(field), UPoly.one(field), reduce=False)

    @classmethod
    def one(cls, field):
        return cls(UPoly.one(field), UPoly.one(field), reduce=False)

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_integral(self):
        """True when the reduced denominator is 1, i.e. the value lies in A."""
        return self.den.is_one()

    def as_poly(self):
        if not self.is_integral():
            raise ArithmeticError("not a polynomial")
        return self.num

    def v_inf(self):
        """Valuation at 1/T: deg den - deg num; +inf for 0."""
        if self.is_zero():
            return math.inf
        return self.den.deg - self.num.deg

    def __eq__(self, other):
        if isinstance(other, UPoly):
            other = RatFn.from_poly(other)
        return isinstance(other, RatFn) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, UPoly):
            other = RatFn.from_poly(other)
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatFn(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UPoly):
            other = RatFn.from_poly(other)
        if not isinstance(other, RatFn):
            return NotImplemented
        # cross-reduce before multiplying to keep intermediates small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1 = self.num.divexact(g1) if g1.deg > 0 else self.num
        d2 = other.den.divexact(g1) if g1.deg > 0 else other.den
        n2 = other.num.divexact(g2) if g2.deg > 0 else other.num
        d1 = self.den.divexact(g2) if g2.deg > 0 else self.den
        return RatFn(n1 * n2, d1 * d2)

    def __truediv__(self, other):
        if isinstance(other, UPoly):
            other = RatFn.from_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * RatFn(other.den, other.num)

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFn(self.den, self.num)

    def scale(self, a):
        return RatFn(self.num.scale(a), self.den, reduce=False)

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        return RatFn(self.num ** e, self.den ** e, reduce=False)

    def frob_twist(self, i=1):
        return RatFn(self.num.frob_twist(i), self.den.frob_twist(i), reduce=False)

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


class LaurentApprox:
    """Truncated element of F_q((u)), u = 1/T: coefficients for u^val..u^(prec-1).

    `coeffs[k]` is the coefficient of u^(val+k).  The leading stored
    coefficient is nonzero unless the value is indistinguishable from zero
    at this precision, in which case val == prec and coeffs is empty.
    """

    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, field, val, coeffs, prec):
        # normalize: strip leading and trailing zeros, clamp to window
        coeffs = list(coeffs)
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            val += 1
        if val >= prec:
            val, coeffs = prec, []
        else:
            coeffs = coeffs[: prec - val]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            val = prec
        self.field = field
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def zero(cls, field, prec):
        return cls(field, prec, [], prec)

    @classmethod
    def one(cls, field, prec):
        return cls(field, 0, [1], prec)

    def is_indistinguishable_from_zero(self):
        return not self.coeffs

    def v_inf_lower_bound(self):
        """Exact valuation if a nonzero coefficient is known, else prec."""
        return self.val if self.coeffs else self.prec

    def coefficient(self, e):
        if e < self.val or e >= self.prec:
            raise ValueError(f"coefficient u^{e} outside certified window")
        k = e - self.val
        return self.coeffs[k] if k < len(self.coeffs) else 0

    def __eq__(self, other):
        return (
            isinstance(other, LaurentApprox)
            and self.field == other.field
            and self.val == other.val
            and self.coeffs == other.coeffs
            and self.prec == other.prec
        )

    def __add__(self, other):
        F = self.field
        prec = min(self.prec, other.prec)
        val = min(self.val, other.val, prec)
        out = [0] * (prec - val)
        for src in (self, other):
            for k, c in enumerate(src.coeffs):
                e = src.val + k
                if e < prec:
                    out[e - val] = F.add(out[e - val], c)
        return LaurentApprox(F, val, out, prec)

    def __neg__(self):
        F = self.field
        return LaurentApprox(F, self.val, [F.neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        # product known where every contributing pair is known
        prec = min(self.prec + other.val, other.prec + self.val)
        val = self.val + other.val
        if not self.coeffs or not other.coeffs:
            return LaurentApprox.zero(F, prec)
        out = [0] * max(prec - val, 0)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                e = self.val + i + other.val + j
                if b and e < prec:
                    out[e - val] = F.add(out[e - val], F.mul(a, b))
        return LaurentApprox(F, val, out, prec)

    def scale(self, a):
        F = self.field
        if not a:
            return LaurentApprox.zero(F, self.prec)
        return LaurentApprox(F, self.val, [F.mul(c, a) for c in self.coeffs], self.prec)

    def inv(self):
        """Inverse of a unit (nonzero leading coefficient required)."""
        F = self.field
        if not self.coeffs:
            raise ZeroDivisionError("inverse of an approximate zero")
        n = self.prec - self.val
        inv0 = F.inv(self.coeffs[0])
        out = [0] * n
        out[0] = inv0
        a = self.coeffs + [0] * (n - len(self.coeffs))
        for k in range(1, n):
            s = 0
            for j in range(1, k + 1):
                s = F.add(s, F.mul(a[j], out[k - j]))
            out[k] = F.neg(F.mul(s, inv0))
        # inv has valuation -val; precision window mirrors
        return LaurentApprox(F, -self.val, out, -self.val + n)

    def frob_power(self, i=1):
        """self^(q^i): exponents scale, coefficients are F_q-fixed."""
        if i == 0:
            return self
        m = self.field.q ** i
        out = [0] * ((len(self.coeffs) - 1) * m + 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            if c:
                out[k * m] = c
        # window: all pairs below prec*m known
        return LaurentApprox(self.field, self.val * m, out, self.prec * m)

    def truncate(self, prec):
        return LaurentApprox(self.field, self.val, self.coeffs, min(prec, self.prec))

    def __repr__(self):
        if not self.coeffs:
            return f"O(u^{self.prec})"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                e = self.val + k
                terms.append(f"{c}*u^{e}" if e else f"{c}")
        return " + ".join(terms) + f" + O(u^{self.prec})"


def laurent_of_ratfn(x: RatFn, N: int) -> LaurentApprox:
    """Expansion of x in u = 1/T, correct through u^(N-1)."""
    F = x.field
    if x.is_zero():
        return LaurentApprox.zero(F, N)
    num, den = x.num, x.den
    val = den.deg - num.deg
    # reversed polynomials: num(T) = T^dn * nrev(u), nrev(0) != 0 may fail if
    # T | num; handle by factoring monomials
    def reversed_coeffs(f):
        d = f.deg
        return [f.c.get(d - k, 0) for k in range(d + 1)]

    nrev = reversed_coeffs(num)
    drev = reversed_coeffs(den)
    # series division nrev/drev to length N - val
    n_terms = N - val
    if n_terms <= 0:
        return LaurentApprox.zero(F, N)
    inv0 = F.inv(drev[0])
    out = [0] * n_terms
    for k in range(n_terms):
        s = nrev[k] if k < len(nrev) else 0
        for j in range(1, min(k, len(drev) - 1) + 1):
            s = F.sub(s, F.mul(drev[j], out[k - j]))
        out[k] = F.mul(s, inv0)
    return LaurentApprox(F, val, out, N)


def frobenius_twist(x, i=1):
    """x^(q^i) for RatFn, UPoly, MPoly, LaurentApprox, or anything exposing
    frob_twist; the single entry point used by the Ore layer."""
    if i == 0:
        return x
    if isinstance(x, LaurentApprox):
        return x.frob_power(i)
    return x.frob_twist(i)


class MPoly:
    """Multivariate polynomial with a fixed variable arity.

    Coefficients are RatFn (or any ring elements with +, *, is_zero,
    frob_twist, scale).  Keys are exponent tuples of length `arity`.
    """

    __slots__ = ("arity", "coeff_zero", "c")

    def __init__(self, arity, coeff_zero, coeffs=None):
        self.arity = arity
        self.coeff_zero = coeff_zero  # a zero coefficient, fixes the ring
        self.c = {}
        if coeffs:
            for k, v in coeffs.items():
                if not v.is_zero():
                    self.c[tuple(k)] = v

    @classmethod
    def zero(cls, arity, coeff_zero):
        return cls(arity, coeff_zero)

    @classmethod
    def constant(cls, arity, value, coeff_zero=None):
        if coeff_zero is None:
            coeff_zero = value - value
        out = cls(arity, coeff_zero)
        if not value.is_zero():
            out.c[(0,) * arity] = value
        return out

    @classmethod
    def variable(cls, arity, j, one_value):
        e = [0] * arity
        e[j] = 1
        out = cls(arity, one_value - one_value)
        out.c[tuple(e)] = one_value
        return out

    def is_zero(self):
        return not self.c

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.arity == other.arity and self.c == other.c

    def __add__(self, other):
        out = dict(self.c)
        for k, v in other.c.items():
            if k in out:
                s = out[k] + v
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        r = MPoly(self.arity, self.coeff_zero)
        r.c = out
        return r

    def __neg__(self):
        r = MPoly(self.arity, self.coeff_zero)
        r.c = {k: self.coeff_zero - v for k, v in self.c.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            # scalar (coefficient ring element)
            r = MPoly(self.arity, self.coeff_zero)
            if hasattr(other, "is_zero") and other.is_zero():
                return r
            r.c = {k: v * other for k, v in self.c.items()}
            r.c = {k: v for k, v in r.c.items() if not v.is_zero()}
            return r
        out = {}
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                prod = v1 * v2
                if k in out:
                    s = out[k] + prod
                    if s.is_zero():
                        del out[k]
                    else:
                        out[k] = s
                elif not prod.is_zero():
                    out[k] = prod
        r = MPoly(self.arity, self.coeff_zero)
        r.c = out
        return r

    def pow_int(self, e, one_coeff):
        out = MPoly(self.arity, self.coeff_zero)
        out.c[(0,) * self.arity] = one_coeff
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def frob_twist(self, i=1):
        """q^i-th power: exponent keys scale, coefficients twist."""
        if i == 0:
            return self
        qpow = None
        r = MPoly(self.arity, self.coeff_zero)
        for k, v in self.c.items():
            tv = v.frob_twist(i)
            if qpow is None:
                qpow = self._qpow(v, i)
            r.c[tuple(e * qpow for e in k)] = tv
        return r

    @staticmethod
    def _qpow(coeff, i):
        f = getattr(coeff, "field", None)
        if f is None:
            raise TypeError("coefficient exposes no field")
        return f.q ** i

    def map_coeffs(self, fn):
        r = MPoly(self.arity, self.coeff_zero)
        for k, v in self.c.items():
            w = fn(v)
            if not w.is_zero():
                r.c[k] = w
        return r

    def total_degrees(self):
        return [max((k[j] for k in self.c), default=0) for j in range(self.arity)]

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for k in sorted(self.c):
            mono = "*".join(f"X{j+1}^{e}" for j, e in enumerate(k) if e)
            parts.append(f"({self.c[k]!r})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)
