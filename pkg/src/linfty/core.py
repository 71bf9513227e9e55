"""Monomial bases of S(W), cochain spaces L_n = Hom(S^n(W), W), and the graded bracket.

W has one odd generator w1 and two even generators w2, w3.  A monomial
w1^i1 w2^i2 w3^i3 is a MultiIndex with i1 in {0, 1}.  The basis cochain
with index I and target j sends w^J to I! * delta(I, J) * w_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator, Mapping

from .scalars import Parity


class DegreeError(ValueError):
    pass


class ParityError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class MultiIndex:
    i1: int
    i2: int
    i3: int

    def __post_init__(self):
        if self.i1 not in (0, 1):
            raise ValueError("i1 must be 0 or 1")
        if self.i2 < 0 or self.i3 < 0:
            raise ValueError("exponents must be nonnegative")

    @property
    def degree(self) -> int:
        return self.i1 + self.i2 + self.i3

    @property
    def parity(self) -> Parity:
        return Parity(self.i1)

    def factorial(self) -> int:
        return factorial(self.i2) * factorial(self.i3)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.i1, self.i2, self.i3)

    def __getitem__(self, k: int) -> int:
        return (self.i1, self.i2, self.i3)[k]

    def __str__(self):
        return f"({self.i1},{self.i2},{self.i3})"


def _mi(t) -> MultiIndex | None:
    """MultiIndex from a triple, or None when w1 would appear squared or an exponent is negative."""
    a, b, c = t
    if a not in (0, 1) or b < 0 or c < 0:
        return None
    return MultiIndex(a, b, c)


GENERATOR_PARITY = {1: Parity.ODD, 2: Parity.EVEN, 3: Parity.EVEN}


@dataclass(frozen=True)
class BasisCochain:
    index: MultiIndex
    target: int

    def __post_init__(self):
        if self.target not in (1, 2, 3):
            raise ValueError("target must be 1, 2 or 3")
        if self.index.degree < 1:
            raise DegreeError("empty word degree")

    @property
    def parity(self) -> Parity:
        return self.index.parity + GENERATOR_PARITY[self.target]

    @property
    def degree(self) -> int:
        return self.index.degree

    @property
    def symbol(self) -> str:
        return "ps" if self.parity == Parity.ODD else "ph"

    def sort_key(self):
        """Deterministic basis order: degree, even before odd, block, then w2-exponent."""
        if self.parity == Parity.EVEN:
            block = {1: 0, 2: 1, 3: 2}[self.target]
        else:
            block = {2: 0, 3: 1, 1: 2}[self.target]
        return (self.degree, int(self.parity), block, self.index.i2)

    def __lt__(self, other: "BasisCochain"):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        i = self.index
        return f"{self.symbol}[{i.i1},{i.i2},{i.i3};{self.target}]"


def basis(i1: int, i2: int, i3: int, j: int) -> BasisCochain:
    return BasisCochain(MultiIndex(i1, i2, i3), j)


def enumerate_monomials(n: int) -> list[MultiIndex]:
    """All monomials of degree n: even block (0,p,n-p) by ascending p, then odd block (1,q,n-q-1)."""
    if n < 1:
        raise DegreeError("empty word degree")
    even = [MultiIndex(0, p, n - p) for p in range(n + 1)]
    odd = [MultiIndex(1, q, n - q - 1) for q in range(n)]
    return even + odd


@lru_cache(maxsize=None)
def _basis_cochains(n: int) -> tuple[BasisCochain, ...]:
    if n < 1:
        raise DegreeError("empty word degree")
    even = (
        [basis(1, q, n - q - 1, 1) for q in range(n)]
        + [basis(0, p, n - p, 2) for p in range(n + 1)]
        + [basis(0, p, n - p, 3) for p in range(n + 1)]
    )
    odd = (
        [basis(1, q, n - q - 1, 2) for q in range(n)]
        + [basis(1, q, n - q - 1, 3) for q in range(n)]
        + [basis(0, p, n - p, 1) for p in range(n + 1)]
    )
    return tuple(even + odd)


def basis_cochains(n: int, parity: Parity | None = None) -> list[BasisCochain]:
    """The 6n+3 basis cochains of L_n (3n+2 even, then 3n+1 odd)."""
    out = list(_basis_cochains(n))
    if parity is not None:
        out = [b for b in out if b.parity == parity]
    return out


class Cochain(Mapping):
    """Immutable sparse linear combination of basis cochains."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[BasisCochain, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[BasisCochain, object] = {}
        for b, c in items:
            if not isinstance(b, BasisCochain):
                raise TypeError(f"not a basis cochain: {b!r}")
            if isinstance(c, int):
                c = Fraction(c)
            acc[b] = acc[b] + c if b in acc else c
        self._terms = {b: c for b, c in sorted(acc.items(), key=lambda t: t[0].sort_key()) if c != 0}
        self._hash = None

    @classmethod
    def basis(cls, b: BasisCochain, coeff=1) -> "Cochain":
        return cls({b: coeff})

    @classmethod
    def zero(cls) -> "Cochain":
        return cls()

    def __getitem__(self, b):
        return self._terms[b]

    def get(self, b, default=0):
        return self._terms.get(b, default)

    def __iter__(self) -> Iterator[BasisCochain]:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def items(self):
        return self._terms.items()

    def __eq__(self, other):
        if isinstance(other, Cochain):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset((b, str(c)) for b, c in self._terms.items()))
        return self._hash

    def __add__(self, other: "Cochain") -> "Cochain":
        if not isinstance(other, Cochain):
            return NotImplemented
        return Cochain(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "Cochain":
        return Cochain({b: -c for b, c in self._terms.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        if not isinstance(other, Cochain):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "Cochain":
        return Cochain({b: c * s for b, c in self._terms.items()})

    def __mul__(self, s):
        if isinstance(s, Cochain):
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    def degrees(self) -> set[int]:
        return {b.degree for b in self._terms}

    def parities(self) -> set[Parity]:
        return {b.parity for b in self._terms}

    @property
    def parity(self) -> Parity | None:
        """Parity of a parity-homogeneous cochain; None for zero or mixed."""
        ps = self.parities()
        return next(iter(ps)) if len(ps) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1 and len(self.parities()) <= 1

    def component(self, degree: int) -> "Cochain":
        return Cochain({b: c for b, c in self._terms.items() if b.degree == degree})

    def substitute(self, func) -> "Cochain":
        """Apply func to every coefficient (e.g. evaluate Q(c) entries at a number)."""
        return Cochain({b: func(c) for b, c in self._terms.items()})

    def __str__(self):
        from .grammar import format_cochain

        return format_cochain(self)

    def __repr__(self):
        return f"Cochain({str(self)!r})"


def as_cochain(x) -> Cochain:
    if isinstance(x, Cochain):
        return x
    if isinstance(x, BasisCochain):
        return Cochain.basis(x)
    if x == 0:
        return Cochain()
    raise TypeError(f"cannot interpret {x!r} as a cochain")


def evaluate(f: Cochain, monomial: MultiIndex) -> list:
    """Coefficients of f(w^J) on (w1, w2, w3)."""
    f = as_cochain(f)
    degs = f.degrees()
    if degs and degs != {monomial.degree}:
        raise DegreeError(f"degree mismatch: cochain degree {sorted(degs)} vs monomial degree {monomial.degree}")
    out = [Fraction(0)] * 3
    for b, c in f.items():
        if b.index == monomial:
            out[b.target - 1] = out[b.target - 1] + c * b.index.factorial()
    return out


def extend_as_coderivation(f: Cochain, monomial: MultiIndex) -> dict[MultiIndex, object]:
    """The coderivation extension of f applied to w^K, as {monomial: coefficient}."""
    f = as_cochain(f)
    degs = f.degrees()
    if len(degs) > 1:
        raise DegreeError("extend_as_coderivation needs a degree-homogeneous cochain")
    if degs and next(iter(degs)) > monomial.degree:
        raise DegreeError("monomial degree is below the cochain degree")
    out: dict[MultiIndex, object] = {}
    K = monomial.as_tuple()
    for b, c in f.items():
        J = b.index.as_tuple()
        if any(j > k for j, k in zip(J, K)):
            continue
        mult = comb(K[0], J[0]) * comb(K[1], J[1]) * comb(K[2], J[2]) * b.index.factorial()
        rest = [k - j for k, j in zip(K, J)]
        rest[b.target - 1] += 1
        m = _mi(rest)
        if m is None:
            continue
        out[m] = out.get(m, 0) + c * mult
    return {m: v for m, v in out.items() if v != 0}


def _sign(p: int) -> int:
    return -1 if p % 2 else 1


def _plus(I: MultiIndex, J: MultiIndex, drop: int) -> MultiIndex | None:
    t = [a + b for a, b in zip(I.as_tuple(), J.as_tuple())]
    t[drop - 1] -= 1
    return _mi(t)


@lru_cache(maxsize=None)
def bracket_basis(f: BasisCochain, g: BasisCochain) -> tuple[tuple[BasisCochain, int], ...]:
    """[f, g] for two basis cochains as a tuple of (basis cochain, integer coefficient)."""
    a, b = f.target, g.target
    I, J = f.index, g.index
    terms: dict[BasisCochain, int] = {}
    # f composed after the extension of g
    coef = I[b - 1]
    if coef:
        K = _plus(I, J, b)
        if K is not None:
            key = BasisCochain(K, a)
            terms[key] = terms.get(key, 0) + coef
    coef = J[a - 1]
    if coef:
        K = _plus(I, J, a)
        if K is not None:
            key = BasisCochain(K, b)
            terms[key] = terms.get(key, 0) - _sign(f.parity * g.parity) * coef
    return tuple(sorted(((k, v) for k, v in terms.items() if v), key=lambda t: t[0].sort_key()))


def _require_parity(f: Cochain, name: str):
    if len(f.parities()) > 1:
        raise ParityError(f"{name} is not homogeneous in parity")


def bracket(f: Cochain, g: Cochain) -> Cochain:
    """Graded bracket [f, g] = f o g_bar - (-1)^{|f||g|} g o f_bar."""
    f, g = as_cochain(f), as_cochain(g)
    _require_parity(f, "first argument")
    _require_parity(g, "second argument")
    acc: list = []
    for bf, cf in f.items():
        for bg, cg in g.items():
            prod = cf * cg
            for k, v in bracket_basis(bf, bg):
                acc.append((k, prod * v))
    return Cochain(acc)


def bracket_via_extension(f: Cochain, g: Cochain) -> Cochain:
    """The same bracket computed by composing coderivation extensions on every monomial.

    Slower than `bracket`; kept as an internal cross-check of the closed form.
    """
    f, g = as_cochain(f), as_cochain(g)
    _require_parity(f, "first argument")
    _require_parity(g, "second argument")
    acc: list = []
    for m in sorted(f.degrees()):
        fm = f.component(m)
        for n in sorted(g.degrees()):
            gn = g.component(n)
            sign = _sign(int(fm.parity) * int(gn.parity))
            K = m + n - 1
            for mono in enumerate_monomials(K):
                val = [Fraction(0)] * 3
                for x, y, s in ((fm, gn, 1), (gn, fm, -sign)):
                    for mid, c in extend_as_coderivation(y, mono).items():
                        v = evaluate(x, mid)
                        for t in range(3):
                            val[t] = val[t] + s * c * v[t]
                for t in range(3):
                    if val[t] != 0:
                        acc.append((BasisCochain(mono, t + 1), val[t] / mono.factorial()))
    return Cochain(acc)


class Kind(Enum):
    FIRST = "FirstKind"
    SECOND = "SecondKind"
    ZERO = "Zero"
    MIXED = "Mixed"


def is_first_kind_term(b: BasisCochain) -> bool:
    return b.parity == Parity.ODD and b.index.i1 == 1 and b.target in (2, 3)


def is_second_kind_term(b: BasisCochain) -> bool:
    return b.parity == Parity.ODD and b.index.i1 == 0 and b.target == 1


def kind_of(d: Cochain) -> Kind:
    d = as_cochain(d)
    if len(d.degrees()) > 1:
        raise DegreeError("kind_of needs a degree-homogeneous cochain")
    if not d:
        return Kind.ZERO
    if all(is_first_kind_term(b) for b in d):
        return Kind.FIRST
    if all(is_second_kind_term(b) for b in d):
        return Kind.SECOND
    return Kind.MIXED


@dataclass(frozen=True)
class CodifferentialCheck:
    ok: bool
    residual: Cochain
    reason: str = ""

    def __bool__(self):
        return self.ok


def is_codifferential(d: Cochain, odd_check: bool = True) -> CodifferentialCheck:
    d = as_cochain(d)
    if not d:
        return CodifferentialCheck(True, Cochain(), "zero cochain")
    if len(d.parities()) > 1:
        return CodifferentialCheck(False, Cochain(), "not homogeneous in parity")
    if odd_check and d.parity != Parity.ODD:
        return CodifferentialCheck(False, Cochain(), "cochain is even")
    r = bracket(d, d)
    if r:
        return CodifferentialCheck(False, r, "[d,d] is nonzero")
    return CodifferentialCheck(True, r, "")
