"""Dense mod-p polynomial kernels on numpy int64 arrays (low-first).

Internal engine code for prime coefficient fields only; the public sparse
types in `algebra` convert at the boundary.  All arrays are trimmed so the
last entry is nonzero, except the zero polynomial which is [0].
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except Exception:  # pragma: no cover - numba is a hard dependency in practice
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def deco(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return deco


ZERO = np.zeros(1, dtype=np.int64)


def trim(a: np.ndarray) -> np.ndarray:
    n = len(a)
    while n > 1 and a[n - 1] == 0:
        n -= 1
    return a[:n]


def is_zero(a: np.ndarray) -> bool:
    return len(a) == 1 and a[0] == 0


def deg(a: np.ndarray) -> int:
    return -1 if is_zero(a) else len(a) - 1


_FFT_THRESHOLD = 1 << 14


def pmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if is_zero(a) or is_zero(b):
        return ZERO.copy()
    if min(len(a), len(b)) > 64 and len(a) + len(b) > _FFT_THRESHOLD:
        return fftmul(a, b, p)
    return np.convolve(a, b) % p


def fftmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact product mod p via float FFT convolution.

    Coefficient magnitudes are < p^2 * min(len), far below 2^53 at desk
    scale, so rounding recovers the integer convolution exactly.
    """
    from scipy.signal import fftconvolve

    if is_zero(a) or is_zero(b):
        return ZERO.copy()
    bound = float(p - 1) ** 2 * min(len(a), len(b))
    if bound >= 2 ** 52:  # pragma: no cover - desk scale never reaches this
        return np.convolve(a, b) % p
    c = fftconvolve(a.astype(np.float64), b.astype(np.float64))
    return np.rint(c).astype(np.int64) % p


def padd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] = (out[: len(b)] + b) % p
    return trim(out)


def psub(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] = a
    out[: len(b)] = (out[: len(b)] - b) % p
    return trim(out)


@njit(cache=True)
def _divmod_kernel(num, den, p, inv_lead):
    n = num.shape[0]
    d = den.shape[0]
    q = np.zeros(n - d + 1, dtype=np.int64)
    r = num.copy()
    for k in range(n - d, -1, -1):
        c = (r[k + d - 1] * inv_lead) % p
        if c:
            q[k] = c
            for j in range(d):
                r[k + j] = (r[k + j] - c * den[j]) % p
    return q, r


def pdivmod(num: np.ndarray, den: np.ndarray, p: int):
    if is_zero(den):
        raise ZeroDivisionError("polynomial division by zero")
    if len(num) < len(den):
        return ZERO.copy(), num.copy()
    inv_lead = pow(int(den[-1]), p - 2, p)
    q, r = _divmod_kernel(num.astype(np.int64), den.astype(np.int64), p, inv_lead)
    return trim(q), trim(r[: max(len(den) - 1, 1)].copy())


def pmod(num, den, p):
    return pdivmod(num, den, p)[1]


def pdiv_exact(num, den, p):
    q, r = pdivmod(num, den, p)
    if not is_zero(r):
        raise ArithmeticError("inexact polynomial division")
    return q


def pgcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Monic gcd."""
    while not is_zero(b):
        a, b = b, pmod(a, b, p)
    if is_zero(a):
        return a
    lead = int(a[-1])
    if lead != 1:
        a = a * pow(lead, p - 2, p) % p
    return a


def ppow_spread(a: np.ndarray, qpow: int) -> np.ndarray:
    """a(T)^(q^i) for coefficients in F_q: exponents scale by qpow = q^i.

    Returns a sparse (exps, coeffs) pair since the result is lacunary.
    Valid because all coefficients lie in F_q, hence are Frobenius-fixed.
    """
    exps = np.nonzero(a)[0].astype(np.int64) * qpow
    coeffs = a[np.nonzero(a)[0]]
    return exps, coeffs


def sparse_mul_dense(exps: np.ndarray, coeffs: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(sum coeffs[k] T^exps[k]) * b, dense output."""
    if len(exps) == 0 or is_zero(b):
        return ZERO.copy()
    out = np.zeros(int(exps.max()) + len(b), dtype=np.int64)
    return _sparse_mul_dense_kernel(exps, coeffs, b, out, p)


@njit(cache=True)
def _sparse_mul_dense_kernel(exps, coeffs, b, out, p):
    for k in range(exps.shape[0]):
        e = exps[k]
        c = coeffs[k]
        for j in range(b.shape[0]):
            v = b[j]
            if v:
                out[e + j] = (out[e + j] + c * v) % p
    return out


@njit(cache=True)
def _accumulate_scaled(dst, src, scale, p):
    for j in range(src.shape[0]):
        v = src[j]
        if v:
            dst[j] = (dst[j] + scale * v) % p
    return dst


def accumulate_scaled(dst: np.ndarray, src: np.ndarray, scale: int, p: int):
    """dst += scale * src (in place; dst must be at least as long as src)."""
    if scale % p:
        _accumulate_scaled(dst, src, scale % p, p)
    return dst


@njit(cache=True)
def _accumulate_shifted(dst, src, shift, scale, p):
    for j in range(src.shape[0]):
        v = src[j]
        if v:
            dst[shift + j] = (dst[shift + j] + scale * v) % p
    return dst


def accumulate_product(dst: np.ndarray, a: np.ndarray, b: np.ndarray, p: int):
    """dst += a*b where a is short; in place."""
    for i in range(len(a)):
        c = int(a[i])
        if c:
            _accumulate_shifted(dst, b, i, c, p)
    return dst


def from_int_list(lst, p) -> np.ndarray:
    return trim(np.asarray([c % p for c in lst], dtype=np.int64)) if lst else ZERO.copy()


# -- table-driven kernels for any F_q with q <= 256 (element = index) --


@njit(cache=True)
def _tab_divmod_sparse(num, div_exps, div_coeffs, addtab, negtab, logt, expt, qm1):
    """Divide dense num by the sparse divisor (exps ascending, top last).

    Returns (quotient, remainder); all values are field element indices.
    """
    n = num.shape[0]
    dtop = div_exps[div_exps.shape[0] - 1]
    nq = n - dtop
    q = np.zeros(nq if nq > 0 else 1, dtype=np.int64)
    r = num.copy()
    top_log = logt[div_coeffs[div_coeffs.shape[0] - 1]]
    for k in range(n - dtop - 1, -1, -1):
        lead = r[k + dtop]
        if lead == 0:
            continue
        c = expt[(logt[lead] - top_log) % qm1]
        q[k] = c
        clog = logt[c]
        for t in range(div_exps.shape[0]):
            v = div_coeffs[t]
            if v:
                prod = expt[(clog + logt[v]) % qm1]
                r[k + div_exps[t]] = addtab[r[k + div_exps[t]], negtab[prod]]
    return q, r[:dtop] if dtop > 0 else np.zeros(1, dtype=np.int64)


@njit(cache=True)
def _tab_sparse_mul_dense(exps, coeffs, b, out, addtab, logt, expt, qm1):
    for k in range(exps.shape[0]):
        e = exps[k]
        clog = logt[coeffs[k]]
        for j in range(b.shape[0]):
            v = b[j]
            if v:
                out[e + j] = addtab[out[e + j], expt[(clog + logt[v]) % qm1]]
    return out


@njit(cache=True)
def _tab_add(a, b, addtab):
    for j in range(b.shape[0]):
        if b[j]:
            a[j] = addtab[a[j], b[j]]
    return a


class TableOps:
    """Field-generic dense polynomial ops over element-index arrays."""

    def __init__(self, field):
        self.field = field
        self.addtab = field.add_table()
        self.negtab = np.asarray([field.neg(a) for a in range(field.q)], dtype=np.int64)
        self.logt, self.expt = field.log_exp_tables()
        self.qm1 = field.q - 1

    def divmod_sparse(self, num: np.ndarray, div_exps, div_coeffs):
        """num / divisor with sparse divisor given as parallel arrays."""
        q, r = _tab_divmod_sparse(
            num.astype(np.int64),
            np.asarray(div_exps, dtype=np.int64),
            np.asarray(div_coeffs, dtype=np.int64),
            self.addtab,
            self.negtab,
            self.logt,
            self.expt,
            self.qm1,
        )
        return trim(q), trim(r)

    def sparse_mul_dense(self, exps, coeffs, b):
        if len(exps) == 0 or is_zero(b):
            return ZERO.copy()
        out = np.zeros(int(max(exps)) + len(b), dtype=np.int64)
        return trim(
            _tab_sparse_mul_dense(
                np.asarray(exps, dtype=np.int64),
                np.asarray(coeffs, dtype=np.int64),
                b,
                out,
                self.addtab,
                self.logt,
                self.expt,
                self.qm1,
            )
        )

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = a.copy()
        _tab_add(out, b, self.addtab)
        return trim(out)


def monic_digit_arrays(q: int, d: int):
    """All monic degree-d polynomials over F_q as a (q^d, d+1) int64 matrix.

    Row i holds the base-q digits of i as (c_0, ..., c_{d-1}, 1); this fixed
    order makes every enumeration-based reduction deterministic.
    Prime q only (digits are residues).
    """
    count = q ** d
    out = np.empty((count, d + 1), dtype=np.int64)
    out[:, d] = 1
    idx = np.arange(count)
    for j in range(d):
        out[:, j] = (idx // (q ** j)) % q
    return out
