"""Twisted polynomials R{tau} with tau*c = c^q*tau, plus truncated tau-series.

The coefficient ring is generic: anything with +, -, *, is_zero and a
frob_twist(i) method (RatFn, UPoly, MPoly, CycElem all qualify).  A zero
element of the ring is carried alongside the coefficients so empty sums
stay well-typed.
"""

from __future__ import annotations

from .algebra import frobenius_twist


class OrePoly:
    """Finite twisted polynomial sum c_i tau^i, coefficients low-first."""

    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs, zero):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = coeffs
        self.zero = zero

    @classmethod
    def from_scalar(cls, c):
        return cls([c], c - c)

    @classmethod
    def zero_of(cls, zero):
        return cls([], zero)

    @classmethod
    def one_of(cls, one):
        return cls([one], one - one)

    @classmethod
    def tau(cls, one, i=1):
        return cls([one - one] * i + [one], one - one)

    @property
    def tau_deg(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.zero

    def constant_term(self):
        return self.coeff(0)

    def top(self):
        if not self.coeffs:
            raise ValueError("zero twisted polynomial has no top coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, OrePoly) and self.coeffs == other.coeffs

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return OrePoly([self.coeff(i) + other.coeff(i) for i in range(n)], self.zero)

    def __neg__(self):
        return OrePoly([self.zero - c for c in self.coeffs], self.zero)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Ore product: (a_i tau^i)(b_j tau^j) -> a_i b_j^(q^i) tau^(i+j)."""
        if not isinstance(other, OrePoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return OrePoly([], self.zero)
        out = [self.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * frobenius_twist(b, i)
        return OrePoly(out, self.zero)

    def scale_left(self, c):
        """c * self (scalar on the left, no twisting)."""
        return OrePoly([c * a for a in self.coeffs], self.zero)

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative Ore power")
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        if result is None:
            raise ValueError("use an explicit one for tau^0")
        return result

    def apply(self, x):
        """Evaluate as additive polynomial: sum c_i * x^(q^i)."""
        out = None
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            term = c * frobenius_twist(x, i)
            out = term if out is None else out + term
        if out is None:
            return x - x
        return out

    def map_coeffs(self, fn, zero=None):
        return OrePoly([fn(c) for c in self.coeffs], fn(self.zero) if zero is None else zero)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if i == 0:
                parts.append(f"{c!r}")
            else:
                t = "t" if i == 1 else f"t^{i}"
                parts.append(f"({c!r})*{t}")
        return " + ".join(parts)


def ore_mul(a: OrePoly, b: OrePoly) -> OrePoly:
    return a * b


def ore_apply(a: OrePoly, x):
    return a.apply(x)


class TauSeries:
    """Truncated tau-power series: coefficients c_0..c_(N-1), order N."""

    __slots__ = ("coeffs", "order", "zero")

    def __init__(self, coeffs, order, zero):
        coeffs = list(coeffs)[:order]
        while len(coeffs) < order:
            coeffs.append(zero)
        self.coeffs = coeffs
        self.order = order
        self.zero = zero

    @classmethod
    def from_ore(cls, f: OrePoly, order):
        return cls(list(f.coeffs), order, f.zero)

    def coeff(self, i):
        return self.coeffs[i] if i < self.order else self.zero

    def __eq__(self, other):
        return (
            isinstance(other, TauSeries)
            and self.order == other.order
            and all((a - b).is_zero() for a, b in zip(self.coeffs, other.coeffs))
        )

    def __add__(self, other):
        n = min(self.order, other.order)
        return TauSeries([self.coeffs[i] + other.coeffs[i] for i in range(n)], n, self.zero)

    def __sub__(self, other):
        n = min(self.order, other.order)
        return TauSeries([self.coeffs[i] - other.coeffs[i] for i in range(n)], n, self.zero)

    def __mul__(self, other):
        if isinstance(other, OrePoly):
            other = TauSeries.from_ore(other, self.order)
        n = min(self.order, other.order)
        out = [self.zero] * n
        for i in range(n):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * frobenius_twist(b, i)
        return TauSeries(out, n, self.zero)

    def __rmul__(self, other):
        if isinstance(other, OrePoly):
            return TauSeries.from_ore(other, self.order) * self
        return NotImplemented

    def __repr__(self):
        return f"TauSeries({self.coeffs!r}, order={self.order})"


def series_invert(f: TauSeries, N: int = None) -> TauSeries:
    """Two-sided inverse of f with f_0 = 1, to order N (default: f's order).

    g_0 = 1 and g_k = -sum_{i=1..k} f_i * g_{k-i}^(q^i).
    """
    if N is None:
        N = f.order
    one = f.coeff(0)
    if one.is_zero() or not (one * one - one).is_zero():
        raise ValueError("series_invert requires constant term 1")
    zero = f.zero
    g = [one]
    for k in range(1, N):
        acc = zero
        for i in range(1, k + 1):
            fi = f.coeff(i)
            if fi.is_zero():
                continue
            acc = acc + fi * frobenius_twist(g[k - i], i)
        g.append(zero - acc)
    return TauSeries(g, N, zero)
