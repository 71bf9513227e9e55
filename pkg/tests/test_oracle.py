import random
from fractions import Fraction

import pytest

from helpers import ch, mono
from linfty import Cochain, DegreeError, basis_cochains, coderivation_matrix, extend_as_coderivation, oracle_bracket
from linfty import canonical, evaluate
from linfty.oracle import TruncatedCoalgebraBasis


def column(f, k_max, m):
    B = TruncatedCoalgebraBasis(k_max)
    M = coderivation_matrix(f, k_max)
    j = B.position()[m]
    return {B.monomials[i]: M[i][j] for i in range(len(B)) if M[i][j] != 0}


def test_truncated_basis_size():
    for k in range(1, 6):
        assert len(TruncatedCoalgebraBasis(k)) == sum(2 * n + 1 for n in range(1, k + 1))


def test_oracle_bracket_examples():
    assert oracle_bracket(ch((1, 0, 1, 0, 1)), ch((1, 1, 0, 1, 2)), 3) == ch((1, 1, 0, 1, 1), (1, 0, 1, 1, 2))
    f = ch((1, 0, 2, 0, 1))
    assert oracle_bracket(f, f) == Cochain()
    assert oracle_bracket(ch((1, 0, 1, 0, 3)), ch((1, 1, 0, 1, 2)), 3) == ch((-1, 1, 1, 0, 2), (1, 1, 0, 1, 3))


def test_matrix_column_is_evaluation():
    f = ch((1, 1, 1, 0, 3))
    assert column(f, 3, mono(1, 1, 0)) == {mono(0, 0, 1): 1}
    v = evaluate(f, mono(1, 1, 0))
    assert v == [0, 0, 1]


def test_columns_below_arity_vanish():
    f = ch((1, 0, 2, 1, 2))
    for m in TruncatedCoalgebraBasis(4).monomials:
        if m.degree < 3:
            assert column(f, 4, m) == {}


def test_euler_operator_counts_degree():
    E = ch((1, 0, 1, 0, 2), (1, 0, 0, 1, 3), (1, 1, 0, 0, 1))
    assert column(E, 3, mono(0, 2, 0)) == {mono(0, 2, 0): 2}
    for m in TruncatedCoalgebraBasis(4).monomials:
        assert column(E, 4, m) == {m: m.degree}


def test_leibniz_extension_agrees_with_core():
    rng = random.Random(7)
    monos = TruncatedCoalgebraBasis(5).monomials
    for _ in range(50):
        deg = rng.randint(1, 3)
        pool = basis_cochains(deg)
        # homogeneous parity so the extension sign is well defined
        par = rng.choice([0, 1])
        pool = [b for b in pool if int(b.parity) == par]
        f = Cochain([(b, Fraction(rng.randint(-3, 3), rng.randint(1, 3))) for b in rng.sample(pool, 2)])
        m = rng.choice([x for x in monos if x.degree >= deg])
        core = {k: v for k, v in extend_as_coderivation(f, m).items() if v != 0}
        assert column(f, 5, m) == core


CANONICAL = [
    canonical.d_star(),
    canonical.d_sharp(),
    canonical.d_family(Fraction(2, 3)),
    canonical.d_family(1),
    canonical.d_family(0),
    canonical.d_family(-1),
    canonical.second_rank1(),
    canonical.second_rank2(),
    canonical.deg1_first(),
    canonical.deg1_second(),
]


@pytest.mark.parametrize("d", CANONICAL, ids=str)
def test_canonical_codifferentials_square_to_zero(d):
    assert oracle_bracket(d, d, 5) == Cochain()


def test_truncation_errors():
    with pytest.raises(DegreeError):
        coderivation_matrix(ch((1, 0, 3, 0, 2)), 2)
    with pytest.raises(DegreeError):
        oracle_bracket(ch((1, 0, 3, 0, 2)), ch((1, 0, 3, 0, 2)), 4)
