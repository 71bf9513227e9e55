"""Polynomials in commuting even and anticommuting, square-zero odd parameters.

A monomial is a pair (even, odd): `even` is a sorted tuple of
(parameter index, exponent) and `odd` a strictly increasing tuple of
parameter indices.  Parameter indices refer to a registry, whose order is
also the canonical order of odd factors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .core import Cochain
from .linalg import SparseEchelon
from .scalars import Parity, format_scalar

Monomial = tuple  # (even: tuple[(int, int)], odd: tuple[int])

ONE: Monomial = ((), ())


@dataclass(frozen=True)
class Parameter:
    name: str
    parity: Parity
    cls: Cochain | None = None


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m[0]) + len(m[1])


def mono_parity(m: Monomial) -> int:
    return len(m[1]) % 2


def mono_mul(a: Monomial, b: Monomial) -> tuple[int, Monomial]:
    """Product of two monomials as (sign, monomial); sign 0 when an odd factor repeats."""
    oa, ob = a[1], b[1]
    if set(oa) & set(ob):
        return 0, ONE
    inversions = 0
    for i in oa:
        for j in ob:
            if i > j:
                inversions += 1
    odd = tuple(sorted(oa + ob))
    ev = dict(a[0])
    for k, e in b[0]:
        ev[k] = ev.get(k, 0) + e
    even = tuple(sorted(ev.items()))
    return (-1 if inversions % 2 else 1), (even, odd)


def exponent_vector(m: Monomial, size: int) -> tuple[int, ...]:
    v = [0] * size
    for k, e in m[0]:
        v[k] = e
    for k in m[1]:
        v[k] = 1
    return tuple(v)


class SuperPolynomial(Mapping):
    """Immutable map monomial -> nonzero coefficient."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for m, c in items:
            acc[m] = acc.get(m, 0) + c
        self._terms = {m: (Fraction(c) if isinstance(c, int) else c) for m, c in acc.items() if c != 0}

    @classmethod
    def constant(cls, c) -> "SuperPolynomial":
        return cls({ONE: c})

    @classmethod
    def variable(cls, index: int, parity: Parity) -> "SuperPolynomial":
        if parity == Parity.ODD:
            return cls({((), (index,)): 1})
        return cls({(((index, 1),), ()): 1})

    def __getitem__(self, m):
        return self._terms[m]

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def items(self):
        return self._terms.items()

    def __eq__(self, other):
        if isinstance(other, SuperPolynomial):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset((m, str(c)) for m, c in self._terms.items()))

    def __add__(self, other):
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return SuperPolynomial(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self):
        return SuperPolynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "SuperPolynomial":
        return SuperPolynomial({m: c * s for m, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SuperPolynomial):
            return self.scale(other)
        acc: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                sign, m = mono_mul(ma, mb)
                if sign:
                    acc[m] = acc.get(m, 0) + sign * ca * cb
        return SuperPolynomial(acc)

    def __rmul__(self, s):
        return self.scale(s)

    def truncate(self, order: int) -> "SuperPolynomial":
        return SuperPolynomial({m: c for m, c in self._terms.items() if mono_degree(m) <= order})

    def homogeneous(self, order: int) -> "SuperPolynomial":
        return SuperPolynomial({m: c for m, c in self._terms.items() if mono_degree(m) == order})

    def below(self, order: int) -> "SuperPolynomial":
        return SuperPolynomial({m: c for m, c in self._terms.items() if mono_degree(m) < order})

    def max_degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((mono_degree(m) for m in self._terms), default=-1)

    def parities(self) -> set[int]:
        return {mono_parity(m) for m in self._terms}

    def substitute(self, values: Sequence) -> object:
        """Evaluate at values[i] for parameter i; odd parameters must be given as 0."""
        total = Fraction(0)
        for (even, odd), c in self._terms.items():
            if odd:
                if any(values[k] != 0 for k in odd):
                    raise ValueError("odd parameters can only be specialized to 0")
                continue
            term = c
            for k, e in even:
                term = term * Fraction(values[k]) ** e
            total = total + term
        return total

    def format(self, registry: Sequence[Parameter]) -> str:
        if not self._terms:
            return "0"
        size = len(registry)
        items = sorted(self._terms.items(), key=lambda t: order_key(t[0], size), reverse=True)
        parts = []
        for k, (m, c) in enumerate(items):
            parts.append(_format_term(m, c, registry, k == 0))
        return "".join(parts)


def order_key(m: Monomial, size: int):
    """Local order: lower total degree is larger; ties broken lexicographically (earlier parameter first)."""
    return (-mono_degree(m), exponent_vector(m, size))


def _monomial_text(m: Monomial, registry: Sequence[Parameter]) -> str:
    even, odd = m
    factors = []
    for k, e in even:
        factors.append(registry[k].name if e == 1 else f"{registry[k].name}^{e}")
    for k in odd:
        factors.append(registry[k].name)
    return "*".join(factors)


def _format_term(m: Monomial, c, registry, first: bool) -> str:
    text = format_scalar(c)
    neg = text.startswith("-")
    mag = text[1:] if neg else text
    body = _monomial_text(m, registry)
    if not body:
        core = mag
    elif mag == "1":
        core = body
    else:
        core = f"{mag}*{body}"
    if first:
        return ("-" if neg else "") + core
    return (" - " if neg else " + ") + core


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_superpoly(text: str, registry: Sequence[Parameter]) -> SuperPolynomial:
    """Parse sums of products like '-3/2*t1*h2 + t2^2*h1'; factors multiply left to right."""
    names = {p.name: i for i, p in enumerate(registry)}
    text = text.strip()
    if text == "0":
        return SuperPolynomial()
    total = SuperPolynomial()
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse superpolynomial at position {pos}: {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        term = SuperPolynomial.constant(sign)
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            base, _, exp = factor.partition("^")
            if base in names:
                i = names[base]
                v = SuperPolynomial.variable(i, registry[i].parity)
                for _ in range(int(exp) if exp else 1):
                    term = term * v
            else:
                term = term.scale(Fraction(factor))
        total = total + term
        pos = m.end()
    return total


class RelationIdeal:
    """Ideal generated by relations, reduced in the parameter ring truncated above a given order.

    Normal forms are computed by linear algebra: the truncated ideal is
    spanned by products mu * R for monomials mu, kept in a fully reduced
    echelon form whose pivots are leading terms in the local order.
    """

    def __init__(self, generators: Iterable[SuperPolynomial], nparams: int, parities: Sequence[Parity]):
        self.generators = [g for g in generators if g]
        self.nparams = nparams
        self.parities = list(parities)
        self._cache: dict[int, SparseEchelon] = {}

    def _monomials_up_to(self, degree: int) -> list[Monomial]:
        evens = [i for i in range(self.nparams) if self.parities[i] == Parity.EVEN]
        odds = [i for i in range(self.nparams) if self.parities[i] == Parity.ODD]
        out = [ONE]
        frontier = [ONE]
        for _ in range(degree):
            nxt = set()
            for m in frontier:
                for i in evens:
                    _, mm = mono_mul(m, (((i, 1),), ()))
                    nxt.add(mm)
                for i in odds:
                    if i not in m[1]:
                        _, mm = mono_mul(m, ((), (i,)))
                        nxt.add(mm)
            frontier = sorted(nxt)
            out += frontier
        return out

    def echelon(self, order: int) -> SparseEchelon:
        if order in self._cache:
            return self._cache[order]
        size = self.nparams
        ech = SparseEchelon(key=lambda m: order_key(m, size))
        for g in self.generators:
            low = g.min_degree()
            if low > order:
                continue
            for mu in self._monomials_up_to(order - low):
                prod = (SuperPolynomial({mu: 1}) * g).truncate(order)
                if prod:
                    ech.insert(dict(prod.items()))
        self._cache[order] = ech
        return ech

    def reduce(self, p: SuperPolynomial, order: int) -> SuperPolynomial:
        """Normal form of p truncated above `order`."""
        p = p.truncate(order)
        if not p or not self.generators:
            return p
        return SuperPolynomial(self.echelon(order).reduce(dict(p.items())))

    def contains(self, p: SuperPolynomial, order: int) -> bool:
        return not self.reduce(p, order)


def reduce_mod_relations(p: SuperPolynomial, relations: RelationIdeal, order: int | None = None) -> SuperPolynomial:
    if order is None:
        order = max(p.max_degree(), max((g.max_degree() for g in relations.generators), default=0))
    return relations.reduce(p, order)
