import json
import random

import pytest

from rewriter import monomial_word, normal_form, word_to_monomial
from uq2.algebra import (
    Element, Monomial, add, conditional_expectation, distance, e_basis, e_basis_word, element_from_json,
    element_relation_defects, element_to_json, gen_a, gen_a_star, gen_b, gen_b_star, gen_d, gen_d_star,
    grade_of, graded_components, is_homogeneous, multiply, power, product, scale, star, zeta_power,
)

LETTERS = {"a": gen_a, "A": gen_a_star, "b": gen_b, "B": gen_b_star, "d": gen_d, "E": gen_d_star}


def from_word(word, qp):
    return product([LETTERS[ch]() for ch in word], qp)


def oracle_element(word, qp):
    return Element({Monomial(*word_to_monomial(w)): c for w, c in normal_form(word, qp.q).items()})


def test_linear_ops():
    a, b = gen_a(), gen_b()
    assert add(a, -a).is_zero()
    assert scale(0, a + b).is_zero()
    assert len(add(a, b)) == 2


def test_relations_exact(q_any):
    assert max(element_relation_defects(q_any).values()) < 1e-15


def test_printed_products(q_small):
    q = q_small.q
    assert distance(multiply(gen_b(), gen_a(), q_small), Element.mono(1, 1, 0, 0, q)) == 0
    assert distance(multiply(gen_a(), gen_a_star(), q_small),
                    Element.one() - Element.mono(0, 1, 1, 0)) < 1e-15
    assert distance(multiply(gen_d(), gen_b(), q_small),
                    Element.mono(0, 1, 0, 1, q.conjugate() / q)) < 1e-15
    x = gen_a() * 2 + gen_b_star() * 1j
    assert distance(multiply(Element.one(), x, q_small), x) == 0


def test_star_examples(q_small):
    assert distance(star(gen_a(), q_small), Element.mono(n=-1)) == 0
    ab = Element.mono(1, 1, 0, 0)
    expected = Element.mono(-1, 0, 1, 0, 1 / q_small.q.conjugate())
    assert distance(star(ab, q_small), expected) < 1e-15


@pytest.mark.parametrize("seed", range(4))
def test_engine_matches_word_rewriter(q_any, seed):
    rng = random.Random(seed)
    for _ in range(60):
        word = "".join(rng.choice("aAbBdE") for _ in range(rng.randint(1, 6)))
        assert distance(from_word(word, q_any), oracle_element(word, q_any)) < 1e-12, word


def test_monomial_products_match_rewriter(q_small):
    rng = random.Random(7)
    for _ in range(100):
        x = Monomial(rng.randint(-3, 3), rng.randint(0, 2), rng.randint(0, 2), rng.randint(-2, 2))
        y = Monomial(rng.randint(-3, 3), rng.randint(0, 2), rng.randint(0, 2), rng.randint(-2, 2))
        got = multiply(Element({x: 1.0}), Element({y: 1.0}), q_small)
        want = oracle_element(monomial_word(x) + monomial_word(y), q_small)
        assert distance(got, want) < 1e-12


def test_normal_form_words_are_monomials(q_small):
    for mono in [Monomial(2, 1, 0, -1), Monomial(-3, 0, 2, 2), Monomial(0, 0, 0, 0)]:
        assert distance(from_word(monomial_word(mono), q_small), Element({mono: 1.0})) < 1e-15


def test_grading():
    assert grade_of(Monomial(0, 0, 0, 0)) == (0, 0, 0)
    assert grade_of(Monomial(1, 1, 0, 0)) == (2, 0, 0)
    assert grade_of(Monomial(0, 1, 1, 0)) == (0, 0, 0)
    comps = graded_components(gen_a() + gen_b())
    assert set(comps) == {(1, 1, 0), (1, -1, 0)}
    assert is_homogeneous(zeta_power(3) + Element.one())


def test_product_grades_add(q_small):
    rng = random.Random(3)
    for _ in range(50):
        x = Monomial(rng.randint(-2, 2), rng.randint(0, 2), rng.randint(0, 2), rng.randint(-2, 2))
        y = Monomial(rng.randint(-2, 2), rng.randint(0, 2), rng.randint(0, 2), rng.randint(-2, 2))
        gx, gy = grade_of(x), grade_of(y)
        total = tuple(s + t for s, t in zip(gx, gy))
        prod = multiply(Element({x: 1.0}), Element({y: 1.0}), q_small)
        assert set(graded_components(prod)) <= {total}


def test_e_basis(q_small):
    assert distance(e_basis(0, 0), Element.one()) == 0
    assert distance(e_basis(1, -1), gen_b()) == 0
    assert distance(e_basis(2, 0), Element.mono(1, 1, 0, 0)) == 0
    with pytest.raises(ValueError):
        e_basis(1, 0)
    for m, n in [(-3, -1), (-2, 0), (1, -3), (-4, 2)]:
        word = e_basis_word(m, n, q_small)
        (mono, _), = word.terms.items()
        assert grade_of(mono)[:2] == (m, n)
        assert set(e_basis(m, n).terms) == {mono}


def test_conditional_expectation():
    assert distance(conditional_expectation(Element.one()), Element.one()) == 0
    assert conditional_expectation(Element.mono(l=3)).is_zero()
    assert distance(conditional_expectation(Element.mono(n=1, l=1) + gen_b()), gen_b()) == 0


def test_power_and_zeta(q_small):
    assert distance(power(gen_b(), 3, q_small), Element.mono(m=3)) == 0
    assert distance(zeta_power(2), multiply(Element.mono(m=1, k=1), Element.mono(m=1, k=1), q_small)) < 1e-15


def test_json_round_trip_is_bit_exact():
    x = Element({Monomial(1, 0, 2, -1): 0.1 + 0.2j, Monomial(-2, 1, 0, 3): -1 / 3})
    text = element_to_json(x)
    back = element_from_json(text)
    assert back.terms == x.terms
    rec = json.loads(text)[0]
    assert set(rec) == {"n", "m", "k", "l", "re", "im"}
