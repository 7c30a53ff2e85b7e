"""Property-based checks of the algebraic invariants."""
import cmath

from hypothesis import given, settings, strategies as st

from uq2.algebra import Element, Monomial, distance, grade_of, multiply, star
from uq2.fourier import fourier, plancherel_pairing
from uq2.haar import inner_left
from uq2.hopf import TensorElement, comultiply, counit, tensor_distance, tensor_multiply
from uq2.qcomb import QParam, box_bracket, q_binomial

small_q = st.builds(lambda r, t: QParam(cmath.rect(r, t)),
                    st.floats(0.3, 0.9), st.floats(-3.0, 3.0))
unit_q = st.builds(lambda t: QParam(cmath.exp(1j * t)), st.floats(0.1, 3.0))
large_q = st.builds(lambda r, t: QParam(cmath.rect(r, t)), st.floats(1.1, 1.8), st.floats(-3.0, 3.0))
any_q = st.one_of(small_q, unit_q, large_q)
haar_q = st.one_of(small_q, unit_q)

coeff = st.builds(complex, st.floats(-2, 2), st.floats(-2, 2))
monomial = st.builds(Monomial, st.integers(-2, 2), st.integers(0, 2), st.integers(0, 2), st.integers(-2, 2))
element = st.dictionaries(monomial, coeff, min_size=1, max_size=3).map(Element)

FAST = settings(max_examples=40, deadline=None)


def _scale(x: Element) -> float:
    return 1 + x.norm()


@FAST
@given(any_q, element, element, element)
def test_associativity(qp, x, y, z):
    lhs = multiply(multiply(x, y, qp), z, qp)
    rhs = multiply(x, multiply(y, z, qp), qp)
    assert distance(lhs, rhs) < 1e-9 * _scale(lhs)


@FAST
@given(any_q, element, element)
def test_star_reverses_products(qp, x, y):
    lhs = star(multiply(x, y, qp), qp)
    assert distance(lhs, multiply(star(y, qp), star(x, qp), qp)) < 1e-9 * _scale(lhs)


@FAST
@given(any_q, element)
def test_star_is_involutive(qp, x):
    assert distance(star(star(x, qp), qp), x) < 1e-10 * _scale(x)


@FAST
@given(any_q, monomial, monomial)
def test_grading_is_additive(qp, x, y):
    prod = multiply(Element({x: 1.0}), Element({y: 1.0}), qp)
    gx, gy = grade_of(x), grade_of(y)
    expected = tuple(u + v for u, v in zip(gx, gy))
    assert all(grade_of(mono) == expected for mono in prod.terms)


@FAST
@given(any_q, element, element)
def test_coproduct_is_multiplicative(qp, x, y):
    lhs = comultiply(multiply(x, y, qp), qp)
    rhs = tensor_multiply(comultiply(x, qp), comultiply(y, qp), qp)
    # the coproduct magnifies coefficients, so compare against its own size
    scale = 1 + tensor_distance(rhs, TensorElement(legs=2))
    assert tensor_distance(lhs, rhs) < 1e-9 * scale


@FAST
@given(any_q, element, element)
def test_counit_is_multiplicative(qp, x, y):
    assert abs(counit(multiply(x, y, qp)) - counit(x) * counit(y)) < 1e-9 * (1 + x.norm() * y.norm())


@FAST
@given(st.integers(1, 12), st.data(), coeff)
def test_q_binomial_pascal(n, data, base):
    m = data.draw(st.integers(1, n - 1)) if n > 1 else 0
    if m == 0:
        assert q_binomial(n, 0, base) == 1
        return
    lhs = q_binomial(n, m, base)
    rhs = q_binomial(n - 1, m - 1, base) + base ** m * q_binomial(n - 1, m, base)
    assert abs(lhs - rhs) < 1e-9 * (1 + abs(lhs))


@FAST
@given(st.integers(0, 15), st.floats(0.2, 5.0))
def test_box_bracket_is_symmetric_under_inversion(m, r):
    assert abs(box_bracket(m, r) - box_bracket(m, 1 / r)) < 1e-9 * box_bracket(m, r)


@FAST
@given(haar_q, element, element, coeff)
def test_fourier_is_linear(qp, f, g, c):
    lhs = fourier(f + g * c, qp)
    ff, gg = fourier(f, qp), fourier(g, qp)
    for two_l, k in lhs.blocks.keys() | ff.blocks.keys() | gg.blocks.keys():
        diff = lhs.block(two_l, k) - ff.block(two_l, k) - c * gg.block(two_l, k)
        assert abs(diff).max() < 1e-9 * (1 + f.norm() + abs(c) * g.norm())


@FAST
@given(haar_q, element, element)
def test_plancherel_matches_inner_product(qp, f, g):
    lhs = plancherel_pairing(fourier(f, qp), fourier(g, qp), qp)
    assert abs(lhs - inner_left(f, g, qp)) < 1e-9 * (1 + f.norm() * g.norm())
