"""Text form of cochains: `coeff*ps[i1,i2,i3;j]` terms joined by + and -.

`ph` marks even and `ps` odd basis cochains; the kind must agree with the
parity of the index.  Coefficients are rationals like -3/4, the symbol c,
or a parenthesised rational expression in c (parsed into Q(c)).
"""

from __future__ import annotations

import re
from fractions import Fraction

import sympy

from .core import BasisCochain, Cochain, MultiIndex
from .scalars import format_scalar, is_symbolic, symbolic_field


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")


_BASIS = re.compile(r"(ph|ps)\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*;\s*(-?\d+)\s*\]")
_RATIONAL = re.compile(r"\d+(?:/\d+)?")
_SYMBOLIC_CHARS = set("0123456789c+-*/() ")


def _parse_symbolic(text: str, pos: int, full: str):
    if not set(text) <= _SYMBOLIC_CHARS:
        raise ParseError(f"bad coefficient {text!r}", full, pos)
    field, _ = symbolic_field()
    try:
        expr = sympy.sympify(text, locals={"c": sympy.Symbol("c")}, rational=True)
        return field.from_sympy(expr)
    except (sympy.SympifyError, TypeError, ValueError, ZeroDivisionError, sympy.polys.polyerrors.PolynomialError) as exc:
        raise ParseError(f"bad coefficient {text!r}", full, pos) from exc


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i].isspace():
        i += 1
    return i


def _parse_coeff(text: str, i: int):
    """Parse an optional coefficient before a basis symbol; return (value or None, new index)."""
    start = i
    if text.startswith(("ph", "ps"), i):
        return None, i
    if i < len(text) and text[i] == "(":
        depth = 0
        j = i
        while j < len(text):
            if text[j] == "(":
                depth += 1
            elif text[j] == ")":
                depth -= 1
                if depth == 0:
                    break
            j += 1
        if depth != 0:
            raise ParseError("unbalanced parenthesis", text, i)
        return _parse_symbolic(text[i : j + 1], start, text), j + 1
    m = _RATIONAL.match(text, i)
    value = None
    if m:
        try:
            value = Fraction(m.group(0))
        except ZeroDivisionError as exc:
            raise ParseError("zero denominator", text, i) from exc
        i = m.end()
        j = _skip_ws(text, i)
        if j < len(text) and text[j] == "*":
            k = _skip_ws(text, j + 1)
            if text.startswith("c", k) and not text.startswith(("ph", "ps"), k):
                field, c = symbolic_field()
                return field(value) * c, k + 1
        return value, i
    if text.startswith("c", i):
        field, c = symbolic_field()
        return c, i + 1
    raise ParseError("expected coefficient or basis cochain", text, i)


def _parse_basis(text: str, i: int) -> tuple[BasisCochain, int]:
    m = _BASIS.match(text, i)
    if not m:
        raise ParseError("expected ph[i1,i2,i3;j] or ps[i1,i2,i3;j]", text, i)
    kind = m.group(1)
    i1, i2, i3, j = (int(m.group(k)) for k in range(2, 6))
    if i1 not in (0, 1):
        raise ParseError("i1 must be 0 or 1", text, m.start(2))
    if i2 < 0 or i3 < 0:
        raise ParseError("exponents must be nonnegative", text, m.start(3))
    if j not in (1, 2, 3):
        raise ParseError("target must be 1, 2 or 3", text, m.start(5))
    if i1 + i2 + i3 < 1:
        raise ParseError("empty word degree", text, m.start(2))
    b = BasisCochain(MultiIndex(i1, i2, i3), j)
    if b.symbol != kind:
        raise ParseError(f"{kind} does not match the parity of {b}", text, m.start(1))
    return b, m.end()


def parse_cochain(text: str) -> Cochain:
    if text.strip() == "0":
        return Cochain()
    i = _skip_ws(text, 0)
    terms = []
    sign = 1
    first = True
    while True:
        i = _skip_ws(text, i)
        if i < len(text) and text[i] in "+-":
            sign = -1 if text[i] == "-" else 1
            i = _skip_ws(text, i + 1)
        elif not first:
            raise ParseError("expected + or -", text, i)
        if i >= len(text):
            raise ParseError("unexpected end of input", text, i)
        coeff, i = _parse_coeff(text, i)
        i = _skip_ws(text, i)
        if coeff is not None and i < len(text) and text[i] == "*":
            i = _skip_ws(text, i + 1)
        b, i = _parse_basis(text, i)
        value = Fraction(1) if coeff is None else coeff
        terms.append((b, value * sign))
        sign = 1
        first = False
        i = _skip_ws(text, i)
        if i >= len(text):
            break
    return Cochain(terms)


def _split_sign(c) -> tuple[str, str]:
    """Return ('-' or '+', text of |c|) for a coefficient c."""
    if isinstance(c, (int, Fraction)):
        c = Fraction(c)
        if c < 0:
            return "-", str(-c)
        return "+", str(c)
    if is_symbolic(c):
        s = format_scalar(c)
        neg = format_scalar(-c)
        if s.startswith("-") and not neg.startswith("-"):
            return "-", neg
        return "+", s
    s = str(c)
    if s.startswith("-"):
        return "-", s[1:]
    return "+", s


def _needs_parens(s: str) -> bool:
    return any(ch in s for ch in "+-") or ("c" in s and s != "c" and not re.fullmatch(r"\d+(/\d+)?\*c", s))


def format_term(b: BasisCochain, c, first: bool) -> str:
    sign, mag = _split_sign(c)
    if mag == "1":
        body = str(b)
    else:
        if _needs_parens(mag) or "/" in mag and "c" in mag:
            mag = f"({mag})"
        body = f"{mag}*{b}"
    if first:
        return ("-" if sign == "-" else "") + body
    return f" {sign} {body}"


def format_cochain(f: Cochain) -> str:
    if not f:
        return "0"
    return "".join(format_term(b, c, k == 0) for k, (b, c) in enumerate(f.items()))
