"""Canonical codifferentials, their labels, and preferred cohomology classes.

The preferred classes are the bases used when reporting cohomology and when
naming deformation parameters.  Each class carries a parameter name and a
registry key that fixes the order in which parameters are listed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .core import Cochain, basis
from .scalars import is_symbolic


def _c(*terms) -> Cochain:
    """Cochain from (coeff, i1, i2, i3, j) tuples."""
    return Cochain([(basis(i1, i2, i3, j), Fraction(k) if isinstance(k, int) else k) for k, i1, i2, i3, j in terms])


def d_star() -> Cochain:
    return _c((1, 1, 1, 0, 3))


def d_sharp() -> Cochain:
    return _c((1, 1, 1, 0, 2), (1, 1, 1, 0, 3), (1, 1, 0, 1, 3))


def d_family(c) -> Cochain:
    """ps[1,1,0;2] + c*ps[1,0,1;3]; c may be rational or an element of Q(c)."""
    return Cochain([(basis(1, 1, 0, 2), Fraction(1)), (basis(1, 0, 1, 3), c)])


def first_kind_type(x, a, b, c) -> Cochain:
    """Degree-2 first-kind cochain with d(w1w2) = x w2 + a w3 and d(w1w3) = b w2 + c w3."""
    return Cochain(
        [
            (basis(1, 1, 0, 2), x),
            (basis(1, 1, 0, 3), a),
            (basis(1, 0, 1, 2), b),
            (basis(1, 0, 1, 3), c),
        ]
    )


def second_kind_type(a, b, c) -> Cochain:
    return Cochain([(basis(0, 2, 0, 1), a), (basis(0, 1, 1, 1), b), (basis(0, 0, 2, 1), c)])


def second_rank1() -> Cochain:
    return _c((1, 0, 2, 0, 1))


def second_rank2() -> Cochain:
    return _c((1, 0, 1, 1, 1))


def deg1_first() -> Cochain:
    return _c((1, 1, 0, 0, 2))


def deg1_second() -> Cochain:
    return _c((1, 0, 1, 0, 1))


class LabelError(ValueError):
    pass


_FAMILY = re.compile(r"^family\((c|j)=(-?\d+(?:/\d+)?)\)$")


def family_j_representative(j: Fraction) -> Cochain:
    """A rational first-kind cochain whose matrix has tr^2/det = j."""
    # M = (0, -j; 1, j) has trace j and determinant j
    return first_kind_type(Fraction(0), Fraction(1), -j, j)


def canonical_from_label(label: str) -> Cochain:
    label = label.strip()
    table = {
        "star": d_star,
        "sharp": d_sharp,
        "second-rank1": second_rank1,
        "second-rank2": second_rank2,
        "deg1-first": deg1_first,
        "deg1-second": deg1_second,
        "zero": Cochain,
    }
    if label in table:
        return table[label]()
    m = _FAMILY.match(label.replace(" ", ""))
    if m:
        value = Fraction(m.group(2))
        if m.group(1) == "c":
            return d_family(value)
        if value == 0:
            raise LabelError("family(j=0) does not occur; use family(c=-1)")
        return family_j_representative(value)
    raise LabelError(f"unknown canonical label {label!r}")


@dataclass(frozen=True)
class Regime:
    """What a codifferential is, as far as the preferred bases are concerned."""

    name: str
    c: object = None
    m: int | None = None
    r: int | None = None
    s: int | None = None


def family_regime(c) -> Regime:
    if is_symbolic(c):
        return Regime("generic", c)
    c = Fraction(c)
    if c == 1:
        return Regime("one", c)
    if c == 0:
        return Regime("zero", c)
    if c < 0:
        q = c / (c - 1)
        return Regime("negative", c, r=q.numerator, s=q.denominator)
    if c.numerator == 1:
        return Regime("inverse-integer", c, m=c.denominator)
    if c.denominator == 1:
        return Regime("integer", c, m=c.numerator)
    return Regime("generic", c)


def identify(d: Cochain) -> Regime | None:
    """Recognise the canonical codifferentials that have stored class fixtures."""
    if d == d_star():
        return Regime("star")
    if d == d_sharp():
        return Regime("sharp")
    if d == second_rank2():
        return Regime("second-010")
    if d == second_rank1():
        return Regime("second-100")
    if d == deg1_first() or d == deg1_second():
        return Regime("deg1")
    keys = set(d)
    b2, b3 = basis(1, 1, 0, 2), basis(1, 0, 1, 3)
    if keys <= {b2, b3} and d.get(b2) == 1:
        return family_regime(d.get(b3, Fraction(0)))
    return None


@dataclass(frozen=True)
class PreferredClass:
    cochain: Cochain
    name: str
    order: tuple


def _pc(name: str, order: tuple, *terms) -> PreferredClass:
    return PreferredClass(_c(*terms), name, order)


def preferred_classes(regime: Regime | None, n: int) -> list[PreferredClass]:
    """Stored cohomology classes of degree n, in reporting order."""
    if regime is None:
        return []
    kind = regime.name
    out: list[PreferredClass] = []
    if kind == "star":
        if n == 1:
            out = [
                _pc("s1", (0, 1), (1, 1, 0, 0, 2)),
                _pc("t1", (1, 1), (1, 1, 0, 0, 3)),
                _pc("z", (2, 0), (1, 0, 1, 0, 3)),
                _pc("h1", (3, 1), (1, 0, 0, 1, 3), (1, 1, 0, 0, 1)),
                _pc("e1", (4, 1), (1, 0, 1, 0, 2), (1, 0, 0, 1, 3)),
            ]
        else:
            out = [
                _pc(f"s{n}", (0, n), (1, 1, 0, n - 1, 2)),
                _pc(f"t{n}", (1, n), (1, 1, 0, n - 1, 3)),
                _pc(f"e{n}", (4, n), (1, 0, n, 0, 2), (1, 0, n - 1, 1, 3)),
                _pc(f"h{n}", (3, n), (1, 0, 0, n, 3), (n, 1, 0, n - 1, 1)),
            ]
    elif kind == "sharp":
        if n == 1:
            out = [
                _pc("t1", (0, 1), (1, 1, 0, 0, 2)),
                _pc("t2", (0, 2), (1, 1, 0, 0, 3)),
                _pc("h1", (0, 3), (1, 0, 1, 0, 3)),
                _pc("h2", (0, 4), (1, 0, 1, 0, 2), (1, 0, 0, 1, 3)),
            ]
        elif n == 2:
            out = [_pc("t3", (0, 5), (1, 1, 0, 1, 2))]
    elif kind in ("generic", "integer", "inverse-integer", "one"):
        if n == 1:
            out = [
                _pc("t1", (0, 1), (1, 1, 0, 0, 2)),
                _pc("t2", (0, 2), (1, 1, 0, 0, 3)),
                _pc("h1", (0, 3), (1, 0, 1, 0, 2)),
                _pc("h2", (0, 4), (1, 0, 0, 1, 3)),
            ]
            if kind == "one":
                out += [
                    _pc("h3", (0, 5), (1, 0, 0, 1, 2)),
                    _pc("h4", (0, 6), (1, 0, 1, 0, 3)),
                ]
        elif n == 2:
            out = [_pc("t3", (0, 7), (1, 1, 0, 1, 3))]
            if kind == "one":
                out += [
                    _pc("t4", (0, 8), (1, 1, 0, 1, 2)),
                    _pc("t5", (0, 9), (1, 1, 1, 0, 3)),
                ]
        m = regime.m
        if kind == "inverse-integer":
            if n == m:
                out.append(_pc("h3", (0, 8), (1, 0, 0, m, 2)))
            if n == m + 1:
                out.append(_pc("t4", (0, 9), (1, 1, 0, m, 2)))
        if kind == "integer":
            if n == m:
                out.append(_pc("h3", (0, 8), (1, 0, m, 0, 3)))
            if n == m + 1:
                out.append(_pc("t4", (0, 9), (1, 1, m, 0, 3)))
    elif kind == "zero":
        if n == 1:
            out = [
                _pc("s", (0, 0), (1, 1, 0, 0, 2)),
                _pc("t1", (2, 1), (1, 1, 0, 0, 3)),
                _pc("e", (1, 0), (1, 0, 1, 0, 2)),
                _pc("h1", (3, 1), (1, 0, 0, 1, 3)),
            ]
        else:
            out = [
                _pc(f"t{n}", (2, n), (1, 1, 0, n - 1, 3)),
                _pc(f"h{n}", (3, n), (1, 0, 0, n, 3)),
            ]
    elif kind == "negative":
        r, s = regime.r, regime.s
        if n == 1:
            out = [
                _pc("s1", (0, 1), (1, 1, 0, 0, 2)),
                _pc("s2", (0, 2), (1, 1, 0, 0, 3)),
                _pc("e1", (1, 1), (1, 0, 1, 0, 2)),
                _pc("h0", (3, 0), (1, 0, 0, 1, 3)),
            ]
        elif n == 2:
            out = [_pc("t0", (2, 0), (1, 1, 0, 1, 3))]
        elif (n - 1) % s == 0:
            k = (n - 1) // s
            out = [_pc(f"h{k}", (3, k), (1, 0, k * r, k * (s - r) + 1, 3))]
        elif (n - 2) % s == 0:
            k = (n - 2) // s
            out = [_pc(f"t{k}", (2, k), (1, 1, k * r, k * (s - r) + 1, 3))]
    elif kind == "second-010":
        if n == 1:
            out = [
                _pc("s1", (0, 1), (1, 0, 0, 1, 1)),
                _pc("s2", (0, 2), (1, 0, 1, 0, 1)),
                _pc("h1", (1, 1), (1, 1, 0, 0, 1), (1, 0, 0, 1, 3)),
                _pc("e1", (2, 1), (1, 1, 0, 0, 1), (1, 0, 1, 0, 2)),
            ]
        else:
            out = [
                _pc(f"h{n}", (1, n), (1, 1, 0, n - 1, 1), (1, 0, 0, n, 3)),
                _pc(f"e{n}", (2, n), (1, 1, n - 1, 0, 1), (1, 0, n, 0, 2)),
            ]
    elif kind == "second-100":
        if n == 1:
            out = [
                _pc("t1", (1, 1), (1, 0, 0, 1, 1)),
                _pc("s1", (0, 1), (1, 0, 1, 0, 1)),
                _pc("h1", (2, 1), (1, 0, 0, 1, 3)),
                _pc("e1", (3, 1), (1, 0, 1, 0, 3)),
                _pc("z1", (4, 1), (2, 1, 0, 0, 1), (1, 0, 1, 0, 2)),
            ]
        else:
            out = [
                _pc(f"t{n}", (1, n), (1, 0, 0, n, 1)),
                _pc(f"h{n}", (2, n), (1, 0, 0, n, 3)),
                _pc(f"e{n}", (3, n), (1, 0, 1, n - 1, 3)),
                _pc(f"z{n}", (4, n), (2, 1, 0, n - 1, 1), (1, 0, 1, n - 1, 2)),
            ]
    return out


# ASCII parameter letters and the Greek letters they stand for
LEGEND = {"h": "theta", "e": "eta", "z": "zeta", "t": "t", "s": "s", "u": "u"}

