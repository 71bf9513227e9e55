"""Acceptance criteria 1-10.

Each test records one or more parts through ``record``; the terminal summary
prints one PASS/FAIL line per criterion. Run with ``-s`` to see every part.
Parts that check a statement the computation refutes are strict xfails: they
still record FAIL, and they break the build if they ever start passing.
"""

import os
import random
from fractions import Fraction
from pathlib import Path

import pytest

from helpers import ch, miniversal, record, table_rows
from linfty import (
    Cochain,
    Cohomology,
    Parity,
    act,
    basis_cochains,
    bracket,
    canonical,
    classify,
    classify_first_kind_deg2,
    classify_second_kind_deg2,
    coboundaries,
    infinitesimal,
    oracle_bracket,
    parse_superpoly,
    residual,
)
from linfty.classify import random_automorphism
from linfty.deformation import normalize_relation
from linfty.linalg import matmul, rank

F = Fraction
LEDGER = Path(os.environ.get("LINFTY_LEDGER", "/root/notes/decisions.md"))


def strict_xfail(reason):
    return pytest.mark.xfail(strict=True, reason=reason)


# ---------------------------------------------------------------- helpers


def valid_representatives(d, n, reps):
    """Cocycles whose span meets the coboundaries trivially."""
    C = Cohomology(d)
    if any(C.D(r) != Cochain() for r in reps):
        return False
    space = basis_cochains(n)

    def vec(f):
        return [f.get(b, 0) for b in space]

    bs = [vec(b) for b in coboundaries(d, n)]
    base = rank(bs) if bs else 0
    return rank(bs + [vec(r) for r in reps]) == base + len(reps)


def relation_polys(result, terms_list):
    """Normalized relations from lists of (coefficient, monomial text)."""
    out = set()
    size = len(result.registry)
    for terms in terms_list:
        p = None
        for c, m in terms:
            if c == 0:
                continue
            q = parse_superpoly(m, result.registry).scale(F(c))
            p = q if p is None else p + q
        if p:
            out.add(normalize_relation(p, size))
    return out


def pairs(n, ordered=True):
    """(k, l) with k + l = n + 1 and k, l >= 1."""
    return [(k, n + 1 - k) for k in range(1, n + 1) if ordered or k < n + 1 - k]


# ---------------------------------------------------------------- 1


def test_criterion_1_bracket_tables():
    rows = table_rows()
    bad = [name for name, f, g, want in rows if bracket(f, g) != want]
    record(1, "table rows", not bad, f"{len(rows)} rows, {len(bad)} mismatches")
    assert not bad


# ---------------------------------------------------------------- 2


def test_criterion_2_oracle_equivalence():
    cochains = [(n, Cochain.basis(b)) for n in range(1, 4) for b in basis_cochains(n)]
    checked = bad = 0
    for n, f in cochains:
        for m, g in cochains:
            if n + m > 4:
                continue
            checked += 1
            if bracket(f, g) != oracle_bracket(f, g):
                bad += 1
    record(2, "basis pairs", bad == 0, f"{checked} pairs, {bad} mismatches")
    assert bad == 0 and checked == 954


# ---------------------------------------------------------------- 3


def test_criterion_3_dimensions():
    dims = [(len(basis_cochains(n, Parity.EVEN)), len(basis_cochains(n, Parity.ODD))) for n in range(1, 9)]
    ok = dims == [(3 * n + 2, 3 * n + 1) for n in range(1, 9)]
    record(3, "dimension law n<=8", ok)
    assert ok


# ---------------------------------------------------------------- 4


def test_criterion_4_degree_one_cohomology_observed():
    # what the computation gives: one even class phi^{0,0,n}_3 in every degree
    ok = True
    for d in (canonical.deg1_first(), canonical.deg1_second()):
        C = Cohomology(d)
        for n in range(1, 7):
            ok &= C.h(n) == (1, 0) and C.representatives(n) == [ch((1, 0, 0, n, 3))]
    record(4, "observed 1|0 with rep phi^{0,0,n}_3", ok)
    assert ok


@strict_xfail("phi^{0,0,n}_3 commutes with both degree-1 forms and is never a coboundary")
def test_criterion_4_degree_one_vanishing():
    hs = [Cohomology(d).h(n) for d in (canonical.deg1_first(), canonical.deg1_second()) for n in range(1, 7)]
    ok = all(h == (0, 0) for h in hs)
    record(4, "vanishing 0|0", ok, "computed h_n = 1|0 for n = 1..6")
    assert ok


# ---------------------------------------------------------------- 5


def test_criterion_5_star_and_sharp():
    C = Cohomology(canonical.d_star())
    ok = [C.h(n) for n in range(1, 7)] == [(3, 2)] + [(2, 2)] * 5
    ok &= all(valid_representatives(canonical.d_star(), n, C.representatives(n)) for n in range(1, 7))
    record(5, "star", ok)
    C = Cohomology(canonical.d_sharp())
    ok2 = [C.h(n) for n in range(1, 7)] == [(2, 2), (0, 1)] + [(0, 0)] * 4
    ok2 &= all(valid_representatives(canonical.d_sharp(), n, C.representatives(n)) for n in range(1, 3))
    record(5, "sharp", ok2)
    assert ok and ok2


GENERIC = [(2, 2), (0, 1), (0, 0), (0, 0), (0, 0), (0, 0)]


def test_criterion_5_generic_family():
    ok = all([Cohomology(canonical.d_family(c)).h(n) for n in range(1, 7)] == GENERIC for c in (F(2, 3), F(3, 7)))
    # c = 5 is equivalent to c = 1/5, an integer-m case; the generic table holds below degree m
    C5 = Cohomology(canonical.d_family(5))
    table5 = [C5.h(n) for n in range(1, 7)]
    ok &= table5[:4] == GENERIC[:4]
    ok &= table5 == [Cohomology(canonical.d_family(F(1, 5))).h(n) for n in range(1, 7)]
    record(5, "generic c (c=2/3, 3/7; c=5 below degree 5)", ok)
    assert ok


@strict_xfail("c = 5 is conjugate to c = 1/5 and gains phi^{0,5,0}_3 and psi^{1,5,0}_3")
def test_criterion_5_c5_full_generic_table():
    C = Cohomology(canonical.d_family(5))
    table = [C.h(n) for n in range(1, 7)]
    ok = table == GENERIC
    record(5, "c=5 generic for n<=6", ok, f"computed {table}")
    assert ok


def test_criterion_5_special_values():
    d1, dh, d0, dm = (canonical.d_family(c) for c in (1, F(1, 2), 0, -1))
    ok1 = [Cohomology(d1).h(n) for n in (1, 2)] == [(4, 2), (0, 3)]
    record(5, "c=1", ok1)
    Ch = Cohomology(dh)
    ok_half = ch((1, 0, 0, 2, 2)) in Ch.representatives(2) and valid_representatives(dh, 2, [ch((1, 0, 0, 2, 2))])
    record(5, "c=1/2 H^2 contains phi^{0,0,2}_2", ok_half)
    C0 = Cohomology(d0)
    ok0 = True
    for n in range(2, 7):
        reps = [ch((1, 1, 0, n - 1, 3)), ch((1, 0, 0, n, 3))]
        ok0 &= C0.h(n) == (1, 1) and set(map(str, C0.representatives(n))) == set(map(str, reps))
        ok0 &= valid_representatives(d0, n, reps)
    record(5, "c=0 pattern", ok0)
    # c/(c-1) = 1/2: r = 1, s = 2
    Cm = Cohomology(dm)
    expected = {3: ch((1, 0, 1, 2, 3)), 4: ch((1, 1, 1, 2, 3)), 5: ch((1, 0, 2, 3, 3))}
    okm = all(Cm.representatives(n) == [rep] and valid_representatives(dm, n, [rep]) for n, rep in expected.items())
    record(5, "c=-1 (r,s)=(1,2)", okm)
    assert ok1 and ok_half and ok0 and okm


# ---------------------------------------------------------------- 6


def test_criterion_6_second_kind():
    d = canonical.second_rank2()
    C = Cohomology(d)
    ok = True
    for n in range(2, 7):
        phi = ch((1, 1, 0, n - 1, 1), (1, 0, 0, n, 3))
        sigma = ch((1, 1, n - 1, 0, 1), (1, 0, n, 0, 2))
        ok &= C.h(n) == (2, 0) and valid_representatives(d, n, [phi, sigma])
    record(6, "type (0,1,0)", ok)
    d = canonical.second_rank1()
    C = Cohomology(d)
    ok2 = True
    for n in range(2, 7):
        reps = [ch((1, 0, 0, n, 1)), ch((1, 0, 0, n, 3)), ch((1, 0, 1, n - 1, 3)), ch((2, 1, 0, n - 1, 1), (1, 0, 1, n - 1, 2))]
        ok2 &= C.h(n) == (3, 1) and valid_representatives(d, n, reps)
    record(6, "type (1,0,0)", ok2)
    assert ok and ok2


# ---------------------------------------------------------------- 7


def test_criterion_7_classification():
    table = {(1, 1, -1, -1): "star", (1, 0, 1, 0): "family(c=0)", (0, 1, 1, 0): "family(c=-1)",
             (1, 1, 0, 1): "sharp", (1, 0, 0, 2): "family(c=1/2)"}
    ok = True
    for coeffs, label in table.items():
        res = classify_first_kind_deg2(*coeffs)
        ok &= str(res.label) == label and act(res.witness, canonical.first_kind_type(*coeffs)) == res.canonical
    record(7, "decision table with witnesses", ok)
    rng = random.Random(7)
    trials = 0
    for _ in range(200):
        g = random_automorphism(rng)
        coeffs = rng.choice(list(table))
        d = canonical.first_kind_type(*coeffs)
        trials += classify(act(g, d)).label == classify(d).label
    record(7, "200 conjugation trials", trials == 200, f"{trials}/200")
    assert ok and trials == 200


# ---------------------------------------------------------------- 8


def test_criterion_8_sharp():
    r = miniversal("sharp")
    # literal relations, with t3 -> -t3 for the opposite sign of the correction phi^{0,0,1}_2
    stated = relation_polys(r, [[(1, "t1*h1"), (1, "t2*h2")], [(-1, "t1*h2"), (-1, "t2*t3*h1")]])
    ok = r.converged and set(r.relations) == stated
    record(8, "sharp", ok, "equal after t3 -> -t3")
    assert ok


def test_criterion_8_generic():
    r = miniversal("generic")
    ok = r.converged and r.relation_strings() == ["t1*h1", "t2*h2"]
    ok &= r.deformation == infinitesimal(canonical.d_family(F(2, 3))).deformation
    record(8, "generic c", ok)
    assert ok


C1_STATED = [
    [(1, "t1*h1"), (1, "t2*h3")],
    [(1, "t2*h2"), (1, "t1*h4")],
    [(1, "t4*h4"), (-1, "t5*h3")],
    [(1, "t3*h3"), (1, "t4*h1"), (-1, "t4*h2")],
    [(1, "t3*h4"), (1, "t5*h1"), (-1, "t5*h2")],
]


def test_criterion_8_c_one_stated_relations():
    r = miniversal("c=1")
    stated = relation_polys(r, C1_STATED)
    # the even degree-1 classes contribute theta*theta relations, as the integer-m formula does at m = 1
    theta = relation_polys(r, [[(1, "h1*h3"), (-1, "h2*h3")], [(1, "h1*h4"), (-1, "h2*h4")], [(1, "h3*h4")]])
    ok = r.converged and r.order <= 3 and set(r.relations) == stated | theta
    record(8, "c=1 five stated relations, converged", ok, f"order {r.order}, plus 3 theta*theta relations")
    assert ok


@strict_xfail("three theta*theta relations from the even degree-1 classes are left out of the stated set")
def test_criterion_8_c_one_exactly_five():
    r = miniversal("c=1")
    ok = set(r.relations) == relation_polys(r, C1_STATED)
    record(8, "c=1 exactly five generators", ok, f"{len(r.relations)} generators")
    assert ok


def test_criterion_8_c_half_series():
    r = miniversal("c=1/2")
    got = r.deformation[next(iter(ch((1, 0, 0, 1, 2))))]
    # 4 t2 h3 / (1 - 2 t3) through parameter order 4
    ok = got == parse_superpoly("4*t2*h3 + 8*t2*t3*h3 + 16*t2*t3^2*h3", r.registry)
    record(8, "c=1/2 series", ok, got.format(r.registry))
    assert ok


def test_criterion_8_c_zero():
    r = miniversal("c=0")
    stated = [[(1, "s*e")]]
    for n in range(1, 5):
        stated.append([(k - l - 1, f"t{k}*h{l}") for k, l in pairs(n)])
        stated.append([(k - l, f"h{k}*h{l}") for k, l in pairs(n, ordered=False)])
    ok = r.converged and set(r.relations) == relation_polys(r, stated)
    record(8, "c=0 families n<=4", ok)
    assert ok


STAR_BASE = [[(1, "s1*z"), (1, "t1*e1")], [(1, "z*h1")], [(-1, "s1*e1"), (1, "s1*h1")]]


def star_theta_eta():
    out = []
    for n in range(2, 7):
        out.append([(n - 1, f"h{n}*e1")] + [(k - l, f"h{k}*h{l}") for k, l in pairs(n, ordered=False)])
    for n in range(3, 8):
        out.append([(k - l, f"e{k}*e{l}") for k, l in pairs(n - 1, ordered=False)])
    return out


def test_criterion_8_star_corrected():
    r = miniversal("star")
    rels = list(STAR_BASE) + star_theta_eta()
    for n in range(2, 7):
        rels.append([(n - 2, f"s{n}*e1")] + [(n, f"s{k}*h{l}") for k, l in pairs(n)])
        rels.append([(n - 2, f"t{n}*e1")] + [(k - 1, f"t{k}*h{l}") for k, l in pairs(n)]
                    + [(F(-3, n - 1), f"s{n - 1}*e2")])
    ok = set(r.relations) == relation_polys(r, rels)
    record(8, "star second order (corrected psi/xi families)", ok, f"{len(r.relations)} generators")
    assert ok


@strict_xfail("the psi-family has no t*eta^2 term and the xi-family carries -3/(n-1) s^{n-1} eta^2")
def test_criterion_8_star_literal():
    r = miniversal("star")
    rels = list(STAR_BASE) + star_theta_eta()
    for n in range(2, 7):
        rels.append([(n - 2, f"s{n}*e1"), (F(5 - 2 * n, n - 1), f"t{n - 1}*e2")] + [(n, f"s{k}*h{l}") for k, l in pairs(n)])
        rels.append([(n - 2, f"t{n}*e1")] + [(k - 1, f"t{k}*h{l}") for k, l in pairs(n)])
    ok = set(r.relations) == relation_polys(r, rels)
    record(8, "star second order (literal list)", ok, "psi and xi families differ")
    assert ok


def type100_common():
    rels = [[(-1, "s1*z1"), (1, "t1*e1")]]
    for n in range(2, 7):
        rels.append([(k - l, f"h{k}*h{l}") for k, l in pairs(n, ordered=False)])
        rels.append([(1 - l, f"h{k}*z{l}") for k, l in pairs(n)])
    return rels


def test_criterion_8_type100_corrected():
    r = miniversal("type100")
    rels = type100_common()
    for n in range(1, 7):
        rels.append([(k - l + 1, f"h{k}*e{l}") for k, l in pairs(n)] + [(1, f"e{k}*z{l}") for k, l in pairs(n)])
        rels.append([(k, f"t{k}*h{l}") for k, l in pairs(n)] + [(-2, f"t{k}*z{l}") for k, l in pairs(n)])
    ok = set(r.relations) == relation_polys(r, rels)
    record(8, "type (1,0,0) second order (corrected)", ok, f"{len(r.relations)} generators")
    assert ok


@strict_xfail("theta*eta coefficients are (k-l+1) and the t-family is sum t^k (k theta^l - 2 zeta^l)")
def test_criterion_8_type100_literal():
    r = miniversal("type100")
    rels = type100_common() + [[(1, "h1*e1"), (1, "e1*z1")]]
    for n in range(2, 7):
        rels.append([(k - l - 1, f"h{k}*e{l}") for k, l in pairs(n)] + [(1, f"e{k}*z{l}") for k, l in pairs(n)])
    for n in range(1, 7):
        rels.append([(k, f"t{k}*h{l}") for k, l in pairs(n)] + [(-2 * k, f"t{k}*e{l}") for k, l in pairs(n)])
    ok = set(r.relations) == relation_polys(r, rels)
    record(8, "type (1,0,0) second order (literal)", ok)
    assert ok


def test_criterion_8_type010_second_order():
    r = miniversal("type010-2")
    rels = [[(1, "s1*e1")], [(1, "s2*h1")]]
    for n in range(2, 7):
        rels.append([(k - l, f"h{k}*h{l}") for k, l in pairs(n, ordered=False)])
        rels.append([(k - l, f"e{k}*e{l}") for k, l in pairs(n, ordered=False)])
    ok = set(r.relations) == relation_polys(r, rels)
    record(8, "type (0,1,0) second order", ok)
    got = miniversal("type010").relation_strings()
    ok3 = "s2*h1 - s1*s2*e2 - s2^2*h2" in got
    record(8, "type (0,1,0) third order (computed update)", ok3, "s2*h1 - s1*s2*e2 - s2^2*h2")
    assert ok and ok3


@strict_xfail("the third-order update of s^2 theta^1 computed exactly is s2*h1 - s1*s2*e2 - s2^2*h2")
def test_criterion_8_type010_literal_update():
    r = miniversal("type010")
    want = relation_polys(r, [[(1, "s2*h1"), (1, "s1*s2*e1")]])
    ok = want <= set(r.relations)
    record(8, "type (0,1,0) third order (literal)", ok)
    assert ok


# ---------------------------------------------------------------- 9


def random_cochain(rng, parity):
    n = rng.randint(1, 2)
    pool = basis_cochains(n, parity)
    chosen = rng.sample(pool, rng.randint(1, 3))
    return Cochain([(b, F(rng.randint(-3, 3), rng.randint(1, 3))) for b in chosen])


def test_criterion_9_antisymmetry_and_jacobi():
    rng = random.Random(9)
    bad = 0
    for _ in range(500):
        f, g, h = (random_cochain(rng, rng.choice([Parity.EVEN, Parity.ODD])) for _ in range(3))

        def s(x, y):
            return -1 if x.parity == Parity.ODD and y.parity == Parity.ODD else 1

        bad += bracket(f, g) != bracket(g, f).scale(-s(f, g))
        jac = (bracket(bracket(f, g), h).scale(s(f, h)) + bracket(bracket(g, h), f).scale(s(g, f))
               + bracket(bracket(h, f), g).scale(s(h, g)))
        bad += jac != Cochain()
    record(9, "antisymmetry and Jacobi, 500 triples", bad == 0)
    assert bad == 0


CANONICALS = {
    "star": canonical.d_star(), "sharp": canonical.d_sharp(), "second-rank1": canonical.second_rank1(),
    "second-rank2": canonical.second_rank2(), "deg1-first": canonical.deg1_first(),
    "deg1-second": canonical.deg1_second(),
    **{f"family(c={c})": canonical.d_family(c) for c in (F(2, 3), 1, F(1, 2), 0, -1, 5)},
}


def test_criterion_9_D_squared():
    bad = []
    for name, d in CANONICALS.items():
        C = Cohomology(d)
        shift = max(d.degrees()) - 1
        for n in range(1, 7 - 2 * shift):
            for p in (Parity.EVEN, Parity.ODD):
                first, second = C.block_matrix(n, p), C.block_matrix(n + shift, p + Parity.ODD)
                if first and second and any(x != 0 for row in matmul(second, first) for x in row):
                    bad.append((name, n))
    record(9, "D^2 = 0", not bad, f"{len(CANONICALS)} codifferentials, degrees up to 6")
    assert not bad


def test_criterion_9_residuals():
    names = ["sharp", "generic", "c=1", "c=1/2", "c=0", "c=-1", "star", "type100", "type010"]
    bad = [n for n in names if residual(miniversal(n)) != {}]
    record(9, "Maurer-Cartan residual in the ideal", not bad, ", ".join(bad))
    assert not bad


def test_criterion_9_specialisation():
    r = miniversal("sharp")
    rng = random.Random(99)
    ok = True
    for _ in range(20):
        vals = [F(rng.randint(-9, 9), rng.randint(1, 9)) if p.parity == Parity.EVEN else 0 for p in r.registry]
        ok &= all(rel.substitute(vals) == 0 for rel in r.relations)
        d = Cochain([(b, p.substitute(vals)) for b, p in r.deformation.items()])
        ok &= bracket(d, d) == Cochain()
    record(9, "sharp specialisation at 20 points", ok)
    assert ok


# ---------------------------------------------------------------- 10


def test_criterion_10_resolutions():
    # index ranges start at 0: psi^{1,0,0}_2 and phi^{0,1,0}_3 are basis elements
    degree1 = {str(Cochain.basis(b)) for b in basis_cochains(1)}
    ok_ranges = {"ps[1,0,0;2]", "ps[1,0,0;3]", "ph[0,1,0;3]", "ph[0,0,1;3]"} <= degree1 and len(degree1) == 9
    record(10, "basis index ranges from 0", ok_ranges)
    ok_disc = all(
        (str(classify_second_kind_deg2(1, b, c).label) == "second-rank1") == (b * b == 4 * c)
        for b in range(-4, 5) for c in range(-4, 5)
    )
    record(10, "second kind boundary b^2 = 4c", ok_disc)
    r = miniversal("sharp")
    corr = r.deformation[next(iter(ch((1, 0, 0, 1, 2))))].format(r.registry)
    ok_d2 = corr == "t3*h1"
    record(10, "sharp correction t3*h1 on phi^{0,0,1}_2", ok_d2, corr)
    assert ok_ranges and ok_disc and ok_d2


def test_criterion_10_ledger():
    if not LEDGER.exists():
        record(10, "ledger", False, f"{LEDGER} missing")
        pytest.fail(f"ledger {LEDGER} missing")
    text = LEDGER.read_text().lower()
    topics = ["index range", "4c", "t3"]
    missing = [t for t in topics if t not in text]
    record(10, "ledger documents the three resolutions", not missing, ", ".join(missing))
    assert not missing
