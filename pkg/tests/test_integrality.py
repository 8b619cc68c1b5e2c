from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from ratcycles.composition import Composition
from ratcycles.cycles import discriminant, solve_cycle
from ratcycles.errors import (
    BadB,
    NoValidB,
    NotCertified,
    WraparoundUnsupported,
    ZeroCoefficient,
)
from ratcycles.integrality import (
    Witness,
    canonical_witness,
    certify,
    decompose_m,
    is_witness,
    lemma1_transform,
    lemma2_shift,
    remark_edge,
    search_witnesses,
    theorem_combination,
)

from conftest import compositions


@pytest.fixture
def thirteen():
    # q=2, n=4, p=(3,1,1,1): D = 13
    return Composition.from_pairs(2, [(3, 0), (1, 0), (1, 0), (1, 0)])


def test_is_witness_examples(mixed4, thirteen):
    assert is_witness(mixed4, 4, 2, 2)
    assert discriminant(thirteen) == 13
    assert not any(is_witness(thirteen, 1, 1, b) for b in (1, 2, 3))
    assert is_witness(thirteen, 9, 1, 2)


def test_is_witness_errors(mixed4):
    with pytest.raises(BadB):
        is_witness(mixed4, 1, 1, 0)
    with pytest.raises(BadB):
        is_witness(mixed4, 1, 1, 4)
    with pytest.raises(ZeroCoefficient):
        is_witness(mixed4, 0, 1, 1)
    with pytest.raises(NotCertified, match="11 does not divide 4"):
        certify(mixed4, 1, 1, 1)


def test_lemma1_examples(mixed4, seven_step):
    out = lemma1_transform(mixed4, Witness(4, 2, 2))
    assert out == Witness(140, 4, 2)
    assert (140 + 4 * 9) % 11 == 0
    out5 = lemma1_transform(seven_step, Witness(11, -1, 2))
    assert out5 == Witness(-121, 11, 5)
    twice = lemma1_transform(mixed4, out)
    assert twice == Witness(70 * 4, 70 * 2, 2)


def test_lemma2_examples(mixed4, seven_step):
    assert lemma2_shift(mixed4, Witness(4, 2, 2), 0)[0] == 2
    assert lemma2_shift(mixed4, Witness(4, 2, 2), 1)[0] == 6
    assert lemma2_shift(seven_step, Witness(1, -1, 3), 0)[0] == -1


def test_theorem_tables(mixed4):
    w1, w2 = Witness(4, 2, 2), Witness(-5, -13, 1)
    assert [theorem_combination(mixed4, w1, i) for i in range(4)] == [-116, 44, 106, 38]
    assert [theorem_combination(mixed4, w2, i) for i in range(4)] == [250, -135, -122, -87]


def test_theorem_table_by_hand(mixed4):
    # two table rows written out with Fractions
    x = solve_cycle(mixed4).x
    p = mixed4.ps
    assert 4 * x[3] + 2 * p[3] * p[0] * x[1] == 38
    assert -5 * x[3] - 13 * p[3] * x[0] == -87


def test_theorem_on_integer_cycle_any_coefficients():
    c = Composition.from_word(2, 3, "TTTSSSTSSSS")
    # not a witness, but x_i are integers, so the combination still is
    sol = solve_cycle(c)
    assert all(x.denominator == 1 for x in sol.x)
    assert not is_witness(c, 1, 1, 1)


def test_decompose_examples(mixed4):
    rep = decompose_m(mixed4, Witness(4, 2, 2), 0)
    assert rep.combination == -116
    assert sum(k * m for k, m in zip(mixed4.ks, rep.M)) == -116
    assert decompose_m(mixed4, Witness(-5, -13, 1), 2).combination == -122
    with pytest.raises(WraparoundUnsupported):
        decompose_m(mixed4, Witness(4, 2, 2), 2)


def test_decompose_m_values_by_fractions(mixed4):
    # independent expansion of the three M_j cases with Fraction U_t
    c, (alpha, beta, b), i = mixed4, (4, 2, 2), 0
    n, P = c.n, c.prod_p
    U = lambda t: Fraction(c.q ** t, 11)  # noqa: E731
    expected = []
    for j in range(n):
        if i <= j < i + b:
            expected.append(c.p_product(i, j) * (alpha * U(n + i - 1 - j) + beta * P * U(i + b - 1 - j)))
        elif j < i:
            expected.append(c.p_product(i, n + j) * (alpha * U(i - 1 - j) + beta * U(i + b - 1 - j)))
        else:
            expected.append(c.p_product(i, j) * (alpha * U(n + i - 1 - j) + beta * U(n + i + b - 1 - j)))
    assert list(decompose_m(c, Witness(alpha, beta, b), i).M) == expected


def test_remark_edge(mixed4):
    assert remark_edge(mixed4, 5, 6, 0)[0] == -69
    values = remark_edge(mixed4, 1, 30, 4)
    assert values[0] == -13179
    assert values == [2101 * x for x in solve_cycle(mixed4).x]
    with pytest.raises(ZeroCoefficient):
        remark_edge(mixed4, 11, 0, 0)
    with pytest.raises(NotCertified):
        remark_edge(mixed4, 1, 1, 0)
    with pytest.raises(BadB):
        remark_edge(mixed4, 1, 1, 2)


def test_search_examples(mixed4, seven_step, thirteen):
    found = [w.as_tuple() for w in search_witnesses(mixed4, 5, 5)]
    assert (2, 1, 2) in found and (4, 2, 2) in found
    assert search_witnesses(thirteen, 1, 1) == []
    assert (11, -1, 2) in [w.as_tuple() for w in search_witnesses(seven_step, 11, 1)]


def test_canonical_witness(mixed4, seven_step):
    assert canonical_witness(mixed4, 1) == Witness(1, -19683, 1)
    assert (1 - 19683 * 3) % 11 == 0
    assert canonical_witness(seven_step, 1) == Witness(1, -32, 1)
    assert canonical_witness(mixed4, 2) == Witness(2, -2 * 19683, 1)
    with pytest.raises(NoValidB):
        canonical_witness(Composition.from_word(2, 3, "S"), 1)


def test_witness_json(mixed4):
    assert Witness(4, 2, 2).to_json(mixed4) == {
        "alpha": 4, "beta": 2, "b": 2, "certificate": {"D": 11, "value": 2}}


def brute_window(c, A, B):
    D = discriminant(c)
    out = []
    for b in range(1, c.n):
        for a in range(-A, A + 1):
            for v in range(-B, B + 1):
                if a and v and (Fraction(a, D) + Fraction(v * c.q ** b, D)).denominator == 1:
                    out.append((b, a, v))
    return out


@settings(max_examples=150)
@given(compositions(max_n=6), st.integers(1, 6), st.integers(1, 6))
def test_search_sound_and_complete(c, A, B):
    found = search_witnesses(c, A, B)
    assert all(is_witness(c, *w.as_tuple()) for w in found)
    assert [(w.b, w.alpha, w.beta) for w in found] == brute_window(c, A, B)


@settings(max_examples=150)
@given(compositions(max_n=6))
def test_witness_properties(c):
    sol = solve_cycle(c)
    for w in search_witnesses(c, 4, 4):
        assert is_witness(c, *lemma1_transform(c, w).as_tuple())
        firsts = []
        for i in range(2 * c.n + 1):
            first, second = lemma2_shift(c, w, i)
            firsts.append(first)
        assert all(c.q * a == b for a, b in zip(firsts, firsts[1:]))
        for i in range(2 * c.n):
            value = theorem_combination(c, w, i, sol)
            direct = w.alpha * sol.term(i) + w.beta * c.p_product(i, i + w.b) * sol.term(i + w.b)
            assert direct == value
            if i + w.b < c.n:
                assert decompose_m(c, w, i, sol).combination == value


@given(compositions(), st.integers(1, 5))
def test_canonical_witness_certified(c, k):
    # beta = -k*q^(phi(|D|)-1) has about phi(|D|) digits; keep |D| small
    assume(c.n > 1 and abs(discriminant(c)) <= 10**4)
    w = canonical_witness(c, k)
    assert is_witness(c, *w.as_tuple())
