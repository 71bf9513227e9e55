"""Brute-force coderivations on the truncated coalgebra S^{<=k}(W).

Deliberately independent of `core.bracket`: monomials are expanded into
words of labelled tensor factors, the coderivation is applied through all
unshuffles with Koszul signs, and the result is symmetrized back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial

from .core import BasisCochain, Cochain, DegreeError, MultiIndex, as_cochain

LETTER_PARITY = {1: 1, 2: 0, 3: 0}


def word_of(m: MultiIndex) -> tuple[int, ...]:
    return (1,) * m.i1 + (2,) * m.i2 + (3,) * m.i3


def canonical_word(word: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sort a word of generators with its supercommutation sign; sign 0 if an odd letter repeats."""
    w = list(word)
    sign = 1
    for i in range(len(w)):
        for j in range(len(w) - 1 - i):
            if w[j] > w[j + 1]:
                if LETTER_PARITY[w[j]] and LETTER_PARITY[w[j + 1]]:
                    sign = -sign
                w[j], w[j + 1] = w[j + 1], w[j]
    for a, b in zip(w, w[1:]):
        if a == b and LETTER_PARITY[a]:
            return 0, tuple(w)
    return sign, tuple(w)


def monomial_of(word: tuple[int, ...]) -> MultiIndex:
    return MultiIndex(word.count(1), word.count(2), word.count(3))


def koszul_sign(word: tuple[int, ...], first: tuple[int, ...]) -> int:
    """Sign of reordering `word` as the positions `first` followed by the rest."""
    rest = [i for i in range(len(word)) if i not in first]
    order = list(first) + rest
    sign = 1
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b] and LETTER_PARITY[word[order[a]]] and LETTER_PARITY[word[order[b]]]:
                sign = -sign
    return sign


def _apply_cochain_to_word(f: Cochain, word: tuple[int, ...]) -> dict[int, object]:
    """f on the product of the letters of `word`, as {generator: coefficient}."""
    sign, w = canonical_word(word)
    if sign == 0:
        return {}
    mono = monomial_of(w)
    out: dict[int, object] = {}
    for b, c in f.items():
        if b.index == mono:
            out[b.target] = out.get(b.target, 0) + sign * c * factorial(mono.i2) * factorial(mono.i3)
    return out


def coderivation_on_word(f: Cochain, word: tuple[int, ...]) -> dict[MultiIndex, object]:
    """Apply the coderivation extension of a degree-homogeneous f to a word of generators."""
    degs = f.degrees()
    out: dict[MultiIndex, object] = {}
    if not degs:
        return out
    (m,) = degs
    k = len(word)
    if m > k:
        return out
    for first in combinations(range(k), m):
        eps = koszul_sign(word, first)
        sub = tuple(word[i] for i in first)
        rest = tuple(word[i] for i in range(k) if i not in first)
        for gen, c in _apply_cochain_to_word(f, sub).items():
            s, w = canonical_word((gen,) + rest)
            if s == 0:
                continue
            mono = monomial_of(w)
            out[mono] = out.get(mono, 0) + eps * s * c
    return {x: v for x, v in out.items() if v != 0}


@dataclass(frozen=True)
class TruncatedCoalgebraBasis:
    k_max: int
    monomials: tuple[MultiIndex, ...] = field(init=False)

    def __post_init__(self):
        monos = []
        for n in range(1, self.k_max + 1):
            # independent listing: all triples with i1 in {0,1}, ordered by (degree, i1, i2)
            for i1 in (0, 1):
                for i2 in range(n - i1 + 1):
                    monos.append(MultiIndex(i1, i2, n - i1 - i2))
        object.__setattr__(self, "monomials", tuple(monos))

    def __len__(self):
        return len(self.monomials)

    def position(self) -> dict[MultiIndex, int]:
        return {m: i for i, m in enumerate(self.monomials)}


def coderivation_matrix(f: Cochain, k_max: int) -> list[list]:
    """Matrix of the coderivation extension of f on S^{1..k_max}(W); columns are input monomials."""
    f = as_cochain(f)
    if len(f.degrees()) > 1:
        raise DegreeError("coderivation_matrix needs a degree-homogeneous cochain")
    if f.degrees() and max(f.degrees()) > k_max:
        raise DegreeError("cochain degree exceeds the truncation k_max")
    B = TruncatedCoalgebraBasis(k_max)
    pos = B.position()
    n = len(B)
    M = [[Fraction(0)] * n for _ in range(n)]
    for col, mono in enumerate(B.monomials):
        for out, c in coderivation_on_word(f, word_of(mono)).items():
            if out in pos:
                M[pos[out]][col] += c
    return M


def _parity_of(f: Cochain) -> int:
    p = f.parity
    return 0 if p is None else int(p)


def oracle_bracket(f: Cochain, g: Cochain, k_max: int = 5) -> Cochain:
    """Cochain part of the matrix commutator M_f M_g - (-1)^{|f||g|} M_g M_f."""
    f, g = as_cochain(f), as_cochain(g)
    if len(f.parities()) > 1 or len(g.parities()) > 1:
        raise ValueError("oracle_bracket needs parity-homogeneous arguments")
    B = TruncatedCoalgebraBasis(k_max)
    pos = B.position()
    acc = []
    for m in sorted(f.degrees()):
        fm = f.component(m)
        for n in sorted(g.degrees()):
            gn = g.component(n)
            K = m + n - 1
            if K > k_max:
                raise DegreeError(f"truncation k_max={k_max} too small for degree {K}")
            Mf = coderivation_matrix(fm, k_max)
            Mg = coderivation_matrix(gn, k_max)
            sign = -1 if (_parity_of(fm) * _parity_of(gn)) % 2 else 1
            gens = {MultiIndex(0, 1, 0): 2, MultiIndex(0, 0, 1): 3, MultiIndex(1, 0, 0): 1}
            for mono in B.monomials:
                if mono.degree != K:
                    continue
                col = pos[mono]
                for gmono, j in gens.items():
                    row = pos[gmono]
                    v = Fraction(0)
                    for mid in range(len(B)):
                        v += Mf[row][mid] * Mg[mid][col] - sign * Mg[row][mid] * Mf[mid][col]
                    if v != 0:
                        acc.append((BasisCochain(mono, j), v / (factorial(mono.i2) * factorial(mono.i3))))
    return Cochain(acc)
