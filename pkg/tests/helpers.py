"""Shared fixtures data: bracket table rows, cached deformation runs, cochain builders."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from linfty import Cochain, basis, run
from linfty.canonical import d_family, d_sharp, d_star, second_rank1, second_rank2
from linfty.core import MultiIndex

BOUND = 4


def ch(*terms) -> Cochain:
    """Cochain from (coeff, i1, i2, i3, j) tuples."""
    return Cochain([(basis(i1, i2, i3, j), Fraction(c)) for c, i1, i2, i3, j in terms])


def _expect(*terms):
    """Expected bracket: terms with an invalid index must carry a zero coefficient."""
    good = []
    for c, i1, i2, i3, j in terms:
        if i1 not in (0, 1) or i2 < 0 or i3 < 0 or i1 + i2 + i3 < 1:
            if c != 0:
                raise AssertionError(f"table row produced nonzero coefficient {c} on an invalid index")
            continue
        good.append((c, i1, i2, i3, j))
    return ch(*good)


def _pairs(deg_range, index_range):
    for n in deg_range:
        for p in index_range(n):
            yield n, p


def table_rows():
    """(name, f, g, expected) for every row of the three tables with degree parameters up to BOUND."""
    rows = []
    B = BOUND
    # odd x odd
    for n, p in _pairs(range(1, B + 1), lambda n: range(n + 1)):
        for m, q in _pairs(range(1, B + 1), lambda m: range(m)):
            f = ch((1, 0, p, n - p, 1))
            rows.append(("oo-12", f, ch((1, 1, q, m - q - 1, 2)),
                         _expect((p, 1, p + q - 1, n - p + m - q - 1, 1), (1, 0, p + q, n - p + m - q - 1, 2))))
            rows.append(("oo-13", f, ch((1, 1, q, m - q - 1, 3)),
                         _expect((n - p, 1, p + q, n - p + m - q - 2, 1), (1, 0, p + q, n - p + m - q - 1, 3))))
        for m, q in _pairs(range(1, B + 1), lambda m: range(m + 1)):
            rows.append(("oo-11", ch((1, 0, p, n - p, 1)), ch((1, 0, q, m - q, 1)), Cochain()))
    for n, p in _pairs(range(1, B + 1), lambda n: range(n)):
        for m, q in _pairs(range(1, B + 1), lambda m: range(m)):
            for j1, j2 in ((2, 2), (2, 3), (3, 3)):
                rows.append((f"oo-{j1}{j2}", ch((1, 1, p, n - p - 1, j1)), ch((1, 1, q, m - q - 1, j2)), Cochain()))
    # even x odd; phi^{0,p,m-p} has degree m, phi^{1,p,m-p} degree m+1
    for m in range(0, B + 1):
        for p in range(m + 1):
            e1 = ch((1, 1, p, m - p, 1))
            e2 = ch((1, 0, p, m - p, 2)) if m >= 1 else None
            e3 = ch((1, 0, p, m - p, 3)) if m >= 1 else None
            for n in range(1, B + 1):
                for q in range(n + 1):
                    s1 = ch((1, 0, q, n - q, 1))
                    rows.append(("eo-1/1", e1, s1, _expect((1, 0, p + q, m + n - p - q, 1))))
                    if e2 is not None:
                        rows.append(("eo-2/1", e2, s1, _expect((-q, 0, p + q - 1, m + n - p - q, 1))))
                        rows.append(("eo-3/1", e3, s1, _expect((-(n - q), 0, p + q, m + n - p - q - 1, 1))))
            for n in range(0, B + 1):
                for q in range(n + 1):
                    s2 = ch((1, 1, q, n - q, 2))
                    s3 = ch((1, 1, q, n - q, 3))
                    rows.append(("eo-1/2", e1, s2, _expect((-1, 1, p + q, m + n - p - q, 2))))
                    rows.append(("eo-1/3", e1, s3, _expect((-1, 1, p + q, m + n - p - q, 3))))
                    if e2 is None:
                        continue
                    rows.append(("eo-2/2", e2, s2, _expect((p - q, 1, p + q - 1, m + n - p - q, 2))))
                    rows.append(("eo-3/2", e3, s2, _expect((-(n - q), 1, p + q, m + n - p - q - 1, 2),
                                                           (p, 1, p + q - 1, m + n - p - q, 3))))
                    rows.append(("eo-2/3", e2, s3, _expect((m - p, 1, p + q, m + n - p - q - 1, 2),
                                                           (-q, 1, p + q - 1, m + n - p - q, 3))))
                    rows.append(("eo-3/3", e3, s3, _expect((m - p - (n - q), 1, p + q, m + n - p - q - 1, 3))))
    # even x even
    for m in range(0, B + 1):
        for p in range(m + 1):
            a1 = ch((1, 1, p, m - p, 1))
            a2 = ch((1, 0, p, m - p, 2)) if m >= 1 else None
            a3 = ch((1, 0, p, m - p, 3)) if m >= 1 else None
            for n in range(0, B + 1):
                for q in range(n + 1):
                    b1 = ch((1, 1, q, n - q, 1))
                    rows.append(("ee-1/1", a1, b1, Cochain()))
                    if a2 is not None:
                        rows.append(("ee-2/1", a2, b1, _expect((-q, 1, p + q - 1, m + n - p - q, 1))))
                        rows.append(("ee-3/1", a3, b1, _expect((-(n - q), 1, p + q, m + n - p - q - 1, 1))))
                    if a2 is None or n < 1:
                        continue
                    b2 = ch((1, 0, q, n - q, 2))
                    b3 = ch((1, 0, q, n - q, 3))
                    rows.append(("ee-2/2", a2, b2, _expect((p - q, 0, p + q - 1, m + n - p - q, 2))))
                    rows.append(("ee-3/2", a3, b2, _expect((-(n - q), 0, p + q, m + n - p - q - 1, 2),
                                                           (p, 0, p + q - 1, m + n - p - q, 3))))
                    rows.append(("ee-3/3", a3, b3, _expect((m - p - (n - q), 0, p + q, m + n - p - q - 1, 3))))
    return rows


# deformation runs shared by several test modules
RUNS = {
    "sharp": (d_sharp, 6, 4),
    "generic": (lambda: d_family(Fraction(2, 3)), 6, 4),
    "c=1": (lambda: d_family(1), 6, 4),
    "c=1/2": (lambda: d_family(Fraction(1, 2)), 6, 4),
    "c=0": (lambda: d_family(0), 4, 4),
    "c=-1": (lambda: d_family(-1), 5, 3),
    "star": (d_star, 6, 2),
    "type100": (second_rank1, 6, 2),
    "type010": (second_rank2, 6, 3),
    "type010-2": (second_rank2, 6, 2),
}


@lru_cache(maxsize=None)
def miniversal(name: str):
    make, n_max, K_max = RUNS[name]
    return run(make(), n_max=n_max, K_max=K_max)


def mono(*t) -> MultiIndex:
    return MultiIndex(*t)


# acceptance bookkeeping: criterion -> list of (part, passed, note)
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def record(criterion: int, part: str, passed: bool, note: str = "") -> None:
    ACCEPTANCE.setdefault(criterion, []).append((part, passed, note))
    print(f"criterion {criterion} [{part}]: {'PASS' if passed else 'FAIL'}{' - ' + note if note else ''}")
