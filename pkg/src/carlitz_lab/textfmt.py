"""Canonical text format for polynomials used by the CLI and JSON reports.

Terms are written `c*T^k`, joined by `+`, exponents descending.  Prime-field
coefficients print as integers mod p; extension-field coefficients print as
powers `g^j` of the field's fixed multiplicative generator (`1` for g^0).
Examples: `T^2+2*T+1`, `g^2*T+g`, `0`.
"""

from __future__ import annotations

import re

from .ffield import Field


def render_coeff(field: Field, a: int) -> str:
    if field.d == 1:
        return str(a)
    if a == 0:
        return "0"
    j = field._log[a]
    if j == 0:
        return "1"
    if j == 1:
        return "g"
    return f"g^{j}"


def _coeff_from_token(field: Field, tok: str) -> int:
    tok = tok.strip()
    if field.d == 1:
        return int(tok) % field.p
    if tok == "g":
        return field.generator()
    m = re.fullmatch(r"g\^(\d+)", tok)
    if m:
        return field.pow(field.generator(), int(m.group(1)))
    return int(tok) % field.p  # small integers embed via the prime field


def render_upoly(f, var: str = "T") -> str:
    if f.is_zero():
        return "0"
    field = f.field
    parts = []
    for e in sorted(f.c, reverse=True):
        c = f.c[e]
        cs = render_coeff(field, c)
        if e == 0:
            parts.append(cs)
        else:
            head = "" if cs == "1" else cs + "*"
            parts.append(f"{head}{var}" + (f"^{e}" if e > 1 else ""))
    return "+".join(parts)


def parse_upoly(field: Field, text: str, var: str = "T"):
    """Inverse of render_upoly; tolerant of whitespace and repeated terms."""
    from .algebra import UPoly

    text = text.strip().replace(" ", "")
    if text in ("", "0"):
        return UPoly.zero(field)
    coeffs = {}
    for term in text.split("+"):
        if not term:
            raise ValueError(f"empty term in polynomial string {text!r}")
        if var in term:
            head, _, tail = term.partition(var)
            e = 1
            if tail.startswith("^"):
                e = int(tail[1:])
            elif tail:
                raise ValueError(f"bad term {term!r}")
            if head.endswith("*"):
                head = head[:-1]
            c = _coeff_from_token(field, head) if head else 1
        else:
            e = 0
            c = _coeff_from_token(field, term)
        if c:
            coeffs[e] = field.add(coeffs.get(e, 0), c)
    return UPoly(field, {e: c for e, c in coeffs.items() if c})


def render_ratfn(x, var: str = "T") -> str:
    if x.den.is_one():
        return render_upoly(x.num, var)
    return f"({render_upoly(x.num, var)})/({render_upoly(x.den, var)})"


def parse_ratfn(field: Field, text: str, var: str = "T"):
    from .algebra import RatFn

    text = text.strip().replace(" ", "")
    m = re.fullmatch(r"\((?P<num>[^()]*)\)/\((?P<den>[^()]*)\)", text)
    if m:
        return RatFn(parse_upoly(field, m.group("num"), var), parse_upoly(field, m.group("den"), var))
    if "/" in text:
        num, _, den = text.partition("/")
        return RatFn(parse_upoly(field, num, var), parse_upoly(field, den, var))
    return RatFn.from_poly(parse_upoly(field, text, var))


def render_zpoly(coeffs, var: str = "T") -> str:
    """Render a z-polynomial whose coefficients are RatFn, as `c*z^d` terms
    ascending in z (z-truncations read naturally this way)."""
    parts = []
    for d, c in enumerate(coeffs):
        if hasattr(c, "is_zero") and c.is_zero():
            continue
        cs = render_ratfn(c, var) if hasattr(c, "den") else render_upoly(c, var)
        if d == 0:
            parts.append(cs)
        else:
            zs = "z" if d == 1 else f"z^{d}"
            parts.append(f"({cs})*{zs}" if ("+" in cs or "/" in cs) else (f"{zs}" if cs == "1" else f"{cs}*{zs}"))
    return "+".join(parts) if parts else "0"


def render_laurent(x) -> str:
    if not x.coeffs:
        return f"O(u^{x.prec})"
    parts = []
    for k, c in enumerate(x.coeffs):
        if c:
            e = x.val + k
            cs = render_coeff(x.field, c)
            if e == 0:
                parts.append(cs)
            else:
                head = "" if cs == "1" else cs + "*"
                parts.append(f"{head}u" + (f"^{e}" if e != 1 else ""))
    return "+".join(parts) + f"+O(u^{x.prec})"
