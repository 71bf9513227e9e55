"""Linear automorphisms of S(W) and canonical forms of degree-1 and degree-2 codifferentials.

First-kind quadratic codifferentials are classified through the 2x2 matrix
M = (x b; a c) with d(w1w2) = x w2 + a w3 and d(w1w3) = b w2 + c w3.  An
automorphism acts on it by M -> q B^-1 M B, so tr^2/det and
diagonalizability decide the orbit.  Second-kind ones are classified by the
rank of the Gram matrix of values d(w_i w_j), which transforms by
congruence.  Every witness is checked by direct action before it is returned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import canonical
from .core import (
    BasisCochain,
    Cochain,
    DegreeError,
    Kind,
    MultiIndex,
    ParityError,
    as_cochain,
    basis,
    enumerate_monomials,
    evaluate,
    is_codifferential,
    kind_of,
)
from .scalars import Parity, QuadraticNumber, format_scalar, rational_sqrt


class ClassificationError(ValueError):
    pass


def _inv2(m):
    (a, b), (c, d) = m
    det = a * d - b * c
    if det == 0:
        raise ZeroDivisionError("singular block")
    inv = 1 / det
    return ((d * inv, -b * inv), (-c * inv, a * inv))


def _mul2(m, n):
    return tuple(
        tuple(m[i][0] * n[0][j] + m[i][1] * n[1][j] for j in range(2)) for i in range(2)
    )


@dataclass(frozen=True)
class LinearAutomorphism:
    """w1 -> q w1, w2 -> r w2 + s w3, w3 -> t w2 + u w3, stored as block ((r, t), (s, u))."""

    q: object
    block: tuple

    def __post_init__(self):
        (r, t), (s, u) = self.block
        object.__setattr__(self, "block", ((r, t), (s, u)))
        if self.q == 0 or r * u - s * t == 0:
            raise ClassificationError("automorphism is singular: q*(ru-st) must be nonzero")

    @classmethod
    def identity(cls) -> "LinearAutomorphism":
        one, zero = Fraction(1), Fraction(0)
        return cls(one, ((one, zero), (zero, one)))

    @property
    def r(self):
        return self.block[0][0]

    @property
    def t(self):
        return self.block[0][1]

    @property
    def s(self):
        return self.block[1][0]

    @property
    def u(self):
        return self.block[1][1]

    def inverse(self) -> "LinearAutomorphism":
        return LinearAutomorphism(1 / self.q, _inv2(self.block))

    def compose(self, other: "LinearAutomorphism") -> "LinearAutomorphism":
        """self after other."""
        return LinearAutomorphism(self.q * other.q, _mul2(self.block, other.block))

    def field(self) -> str:
        for x in (self.q, self.r, self.s, self.t, self.u):
            if isinstance(x, QuadraticNumber) and not x.is_rational():
                return f"Q(sqrt({x.delta}))"
        return "Q"

    def to_json_obj(self) -> dict:
        return {
            "q": format_scalar(self.q),
            "block": [[format_scalar(self.r), format_scalar(self.t)], [format_scalar(self.s), format_scalar(self.u)]],
            "field": self.field(),
        }


def _power_expansion(x, y, n: int) -> list[tuple[int, object]]:
    """(x w2 + y w3)^n as [(exponent of w2, coefficient)]."""
    return [(i, comb(n, i) * x**i * y ** (n - i)) for i in range(n + 1) if comb(n, i)]


def _image_of_monomial(g: LinearAutomorphism, K: MultiIndex) -> dict[MultiIndex, object]:
    out: dict[MultiIndex, object] = {}
    lead = g.q**K.i1
    for e2, c2 in _power_expansion(g.r, g.s, K.i2):
        for e3, c3 in _power_expansion(g.t, g.u, K.i3):
            m = MultiIndex(K.i1, e2 + e3, K.i2 - e2 + K.i3 - e3)
            out[m] = out.get(m, 0) + lead * c2 * c3
    return out


def act(g: LinearAutomorphism, d: Cochain) -> Cochain:
    """g^-1 o d o S(g), expressed in the basis cochains."""
    d = as_cochain(d)
    ginv = g.inverse()
    acc = []
    for n in sorted(d.degrees()):
        dn = d.component(n)
        for K in enumerate_monomials(n):
            val = [0, 0, 0]
            for m, coef in _image_of_monomial(g, K).items():
                v = evaluate(dn, m)
                for i in range(3):
                    if v[i] != 0:
                        val[i] = val[i] + coef * v[i]
            w1 = val[0] * ginv.q
            w2 = ginv.r * val[1] + ginv.t * val[2]
            w3 = ginv.s * val[1] + ginv.u * val[2]
            fact = K.factorial()
            for j, x in ((1, w1), (2, w2), (3, w3)):
                if x != 0:
                    acc.append((BasisCochain(K, j), x / fact))
    return Cochain(acc)


@dataclass(frozen=True)
class CanonicalLabel:
    variant: str
    c: Fraction | None = None
    j: Fraction | None = None

    def __str__(self):
        if self.variant == "family":
            if self.c is not None:
                return f"family(c={self.c})"
            return f"family(j={self.j})"
        return self.variant

    def representative(self) -> Cochain:
        return canonical.canonical_from_label(str(self))


@dataclass(frozen=True)
class ClassificationResult:
    label: CanonicalLabel
    canonical: Cochain
    witness: LinearAutomorphism | None
    direction: str = "input_to_canonical"
    minimal_polynomial: str | None = None

    def to_json_obj(self) -> dict:
        return {
            "label": str(self.label),
            "canonical": str(self.canonical),
            "witness": None if self.witness is None else self.witness.to_json_obj(),
            "direction": self.direction,
        }


def _verified(label: CanonicalLabel, d: Cochain, g: LinearAutomorphism | None, rep: Cochain | None = None) -> ClassificationResult:
    rep = label.representative() if rep is None else rep
    if g is not None and act(g, d) != rep:
        raise AssertionError(f"witness failed verification for {label}")
    return ClassificationResult(label, rep, g)


def _split_odd(d: Cochain):
    d = as_cochain(d)
    if not d:
        return d
    if d.parity != Parity.ODD:
        raise ParityError("codifferential must be odd")
    if len(d.degrees()) != 1:
        raise DegreeError("codifferential must be homogeneous in degree")
    return d


def classify_degree1(d: Cochain) -> ClassificationResult:
    d = _split_odd(d)
    if not d or d.degrees() != {1}:
        raise DegreeError("expected a nonzero degree-1 codifferential")
    kind = kind_of(d)
    one, zero = Fraction(1), Fraction(0)
    if kind == Kind.FIRST:
        a1 = d.get(basis(1, 0, 0, 2), zero)
        a2 = d.get(basis(1, 0, 0, 3), zero)
        t, u = (zero, one) if a1 != 0 else (one, zero)
        g = LinearAutomorphism(one, ((a1, t), (a2, u)))
        return _verified(CanonicalLabel("deg1-first"), d, g)
    if kind == Kind.SECOND:
        a1 = d.get(basis(0, 1, 0, 1), zero)
        a2 = d.get(basis(0, 0, 1, 1), zero)
        n = a1 * a1 + a2 * a2
        b1, b2 = a1 / n, a2 / n
        g = LinearAutomorphism(one, ((b1, -a2), (b2, a1)))
        return _verified(CanonicalLabel("deg1-second"), d, g)
    raise ClassificationError("mixed first- and second-kind terms: not a codifferential")


def _fraction(x) -> Fraction:
    if isinstance(x, QuadraticNumber):
        if not x.is_rational():
            raise ClassificationError("irrational coefficient")
        return x.a
    return Fraction(x)


def _sqrt(x: Fraction):
    return QuadraticNumber.sqrt(x)


def _eigenvector(M, lam):
    (x, b), (a, c) = M
    if b != 0:
        return (b, lam - x)
    if a != 0:
        return (lam - c, a)
    # diagonal matrix
    if lam == x:
        return (Fraction(1), Fraction(0))
    return (Fraction(0), Fraction(1))


def _normalized_c(j: Fraction) -> Fraction | None:
    """Root of c^2 + (2-j)c + 1 with |c| <= 1 when rational, else None."""
    disc = j * (j - 4)
    root = rational_sqrt(disc)
    if root is None:
        return None
    c1 = ((j - 2) + root) / 2
    c2 = ((j - 2) - root) / 2
    return c1 if abs(c1) <= 1 else c2


def first_kind_matrix(d: Cochain):
    """(x b; a c) for a degree-2 first-kind cochain."""
    z = Fraction(0)
    return (
        (d.get(basis(1, 1, 0, 2), z), d.get(basis(1, 0, 1, 2), z)),
        (d.get(basis(1, 1, 0, 3), z), d.get(basis(1, 0, 1, 3), z)),
    )


def classify_first_kind_deg2(x, a, b, c) -> ClassificationResult:
    x, a, b, c = (Fraction(v) for v in (x, a, b, c))
    d = canonical.first_kind_type(x, a, b, c)
    M = ((x, b), (a, c))
    tr = x + c
    det = x * c - a * b
    one, zero = Fraction(1), Fraction(0)
    if x == a == b == c == 0:
        return ClassificationResult(CanonicalLabel("zero"), Cochain(), LinearAutomorphism.identity())
    if a == 0 and b == 0 and x == c:
        # scalar matrix
        return _verified(CanonicalLabel("family", c=one), d, LinearAutomorphism(1 / x, ((one, zero), (zero, one))))
    if det == 0 and tr == 0:
        # nilpotent: pick b1 with M b1 != 0, b2 = M b1
        b1 = (one, zero) if (x != 0 or a != 0) else (zero, one)
        b2 = (M[0][0] * b1[0] + M[0][1] * b1[1], M[1][0] * b1[0] + M[1][1] * b1[1])
        g = LinearAutomorphism(one, ((b1[0], b2[0]), (b1[1], b2[1])))
        return _verified(CanonicalLabel("star"), d, g)
    if tr * tr == 4 * det:
        lam = tr / 2
        N = ((x - lam, b), (a, c - lam))
        b1 = (one, zero) if (N[0][0] != 0 or N[1][0] != 0) else (zero, one)
        Nb1 = (N[0][0] * b1[0] + N[0][1] * b1[1], N[1][0] * b1[0] + N[1][1] * b1[1])
        b2 = (Nb1[0] / lam, Nb1[1] / lam)
        g = LinearAutomorphism(1 / lam, ((b1[0], b2[0]), (b1[1], b2[1])))
        return _verified(CanonicalLabel("sharp"), d, g)
    if det == 0:
        lam1, lam2 = tr, zero
        cval = zero
    else:
        j = tr * tr / det
        cval = _normalized_c(j)
        if cval is None:
            label = CanonicalLabel("family", j=j)
            rep = canonical.family_j_representative(j)
            g = _family_j_witness(M, rep)
            return _verified(label, d, g, rep)
        disc = tr * tr - 4 * det
        root = _sqrt(disc)
        lam1 = (root + tr) / 2
        lam2 = (-root + tr) / 2
        ratio = lam2 / lam1
        if _fraction(ratio) != cval:
            lam1, lam2 = lam2, lam1
    v1 = _eigenvector(M, lam1)
    v2 = _eigenvector(M, lam2)
    g = LinearAutomorphism(1 / lam1, ((v1[0], v2[0]), (v1[1], v2[1])))
    return _verified(CanonicalLabel("family", c=cval), d, g)


def _companion_basis(M):
    """B with B^-1 M B = (0 -det; 1 tr) for a non-scalar 2x2 matrix M."""
    (x, b), (a, c) = M
    one, zero = Fraction(1), Fraction(0)
    if a != 0:
        v = (one, zero)
    elif b != 0:
        v = (zero, one)
    else:
        v = (one, one)
    Mv = (x * v[0] + b * v[1], a * v[0] + c * v[1])
    return ((v[0], Mv[0]), (v[1], Mv[1]))


def _family_j_witness(M, rep: Cochain) -> LinearAutomorphism:
    """Rational witness taking M to the stored family(j) representative."""
    R = first_kind_matrix(rep)
    q = (R[0][0] + R[1][1]) / (M[0][0] + M[1][1])
    # qM and R have the same characteristic polynomial and are cyclic
    qM = ((q * M[0][0], q * M[0][1]), (q * M[1][0], q * M[1][1]))
    B = _mul2(_companion_basis(qM), _inv2(_companion_basis(R)))
    return LinearAutomorphism(q, B)


def gram_matrix(d: Cochain):
    z = Fraction(0)
    a = d.get(basis(0, 2, 0, 1), z)
    b = d.get(basis(0, 1, 1, 1), z)
    c = d.get(basis(0, 0, 2, 1), z)
    return ((2 * a, b), (b, 2 * c))


def classify_second_kind_deg2(a, b, c) -> ClassificationResult:
    a, b, c = (Fraction(v) for v in (a, b, c))
    d = canonical.second_kind_type(a, b, c)
    G = ((2 * a, b), (b, 2 * c))
    one, zero = Fraction(1), Fraction(0)
    det = G[0][0] * G[1][1] - G[0][1] * G[1][0]
    if a == b == c == 0:
        return ClassificationResult(CanonicalLabel("zero"), Cochain(), LinearAutomorphism.identity())
    if det == 0:
        # G = lam * v v^T
        if G[0][0] != 0:
            v = (G[0][0], G[0][1])
            lam = 1 / G[0][0]
        else:
            v = (G[1][0], G[1][1])
            lam = 1 / G[1][1]
        b1 = (one, zero) if v[0] != 0 else (zero, one)
        # kernel vector, scaled so that canonical input gets the identity
        b2 = (-v[1] / v[0], one) if v[0] != 0 else (one, zero)
        vb1 = v[0] * b1[0] + v[1] * b1[1]
        q = lam * vb1 * vb1 / 2
        g = LinearAutomorphism(q, ((b1[0], b2[0]), (b1[1], b2[1])))
        return _verified(CanonicalLabel("second-rank1"), d, g)
    if G[0][0] == 0 and G[1][1] == 0:
        g = LinearAutomorphism(b, ((one, zero), (zero, one)))
        return _verified(CanonicalLabel("second-rank2"), d, g)
    # rational diagonalization P^T G P = diag(alpha, beta)
    if G[0][0] != 0:
        P = ((one, -G[0][1] / G[0][0]), (zero, one))
        alpha, beta = G[0][0], det / G[0][0]
    else:
        P = ((-G[0][1] / G[1][1], one), (one, zero))
        alpha, beta = G[1][1], det / G[1][1]
    sigma = _sqrt(-beta / alpha)
    E = ((sigma, -sigma), (one, one))
    B = _mul2(P, E)
    g = LinearAutomorphism(2 * beta, B)
    return _verified(CanonicalLabel("second-rank2"), d, g)


def classify(d: Cochain) -> ClassificationResult:
    """Dispatch on degree and kind of a homogeneous odd codifferential."""
    d = _split_odd(d)
    if not d:
        return ClassificationResult(CanonicalLabel("zero"), Cochain(), LinearAutomorphism.identity())
    chk = is_codifferential(d)
    if not chk.ok:
        raise ClassificationError(f"not a codifferential: {chk.reason}")
    (n,) = d.degrees()
    kind = kind_of(d)
    if n == 1:
        return classify_degree1(d)
    if n != 2:
        raise ClassificationError("classification is only available in degrees 1 and 2")
    if kind == Kind.FIRST:
        (x, b), (a, c) = first_kind_matrix(d)
        return classify_first_kind_deg2(x, a, b, c)
    z = Fraction(0)
    return classify_second_kind_deg2(
        d.get(basis(0, 2, 0, 1), z), d.get(basis(0, 1, 1, 1), z), d.get(basis(0, 0, 2, 1), z)
    )


def degree2_directions(kind: Kind) -> list[Cochain]:
    if kind == Kind.SECOND:
        return [Cochain.basis(basis(0, p, 2 - p, 1)) for p in (2, 1, 0)]
    return [Cochain.basis(b) for b in (basis(1, 1, 0, 2), basis(1, 1, 0, 3), basis(1, 0, 1, 2), basis(1, 0, 1, 3))]


def closeness_scan(label: str, epsilons, directions: list[Cochain] | None = None) -> set[str]:
    """Labels reached by classifying representative + eps * direction."""
    rep = canonical.canonical_from_label(label)
    if directions is None:
        kind = kind_of(rep) if rep else Kind.FIRST
        directions = degree2_directions(kind)
    out: set[str] = set()
    for eps in epsilons:
        eps = Fraction(eps)
        for v in directions:
            out.add(str(classify(rep + v.scale(eps)).label))
    return out


def random_automorphism(rng: random.Random, bound: int = 5) -> LinearAutomorphism:
    while True:
        vals = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(5)]
        q, r, s, t, u = vals
        if q != 0 and r * u - s * t != 0:
            return LinearAutomorphism(q, ((r, t), (s, u)))


__all__ = [
    "CanonicalLabel",
    "ClassificationError",
    "ClassificationResult",
    "LinearAutomorphism",
    "act",
    "classify",
    "classify_degree1",
    "classify_first_kind_deg2",
    "classify_second_kind_deg2",
    "closeness_scan",
    "degree2_directions",
    "first_kind_matrix",
    "gram_matrix",
    "random_automorphism",
]
