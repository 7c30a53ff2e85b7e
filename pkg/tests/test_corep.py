import random

import pytest

from uq2 import numeric
from uq2.algebra import Element, distance, e_basis, gen_a, gen_b, multiply, star
from uq2.corep import (
    CorepMatrix, corep_matrix, e_vector, entry_grade, f_vector, left_coaction_matrix, matcoef,
    matcoef_closed, matcoef_jacobi, matcoef_via_delta, matrix_distance, matrix_grades_ok, onb_element,
    pw_inner_closed, unitarity_defect, zeta_factor,
)
from uq2.haar import InnerProductKind, inner_left
from uq2.hopf import TensorElement, antipode, comultiply, tensor_distance
from uq2.qcomb import box_bracket, little_q_jacobi_coeffs, spin_range

L, R = InnerProductKind.LEFT, InnerProductKind.RIGHT


def test_f_vectors(q_small):
    assert distance(f_vector(0, 0, q_small), Element.one()) == 0
    assert distance(f_vector(1, -1, q_small), gen_a()) == 0
    assert distance(f_vector(1, 1, q_small), gen_b()) == 0
    r = q_small.r
    for two_l in range(5):
        for two_j in spin_range(two_l):
            f = f_vector(two_l, two_j, q_small)
            assert abs(inner_left(f, f, q_small) - r ** (-two_l) / box_bracket(two_l, r)) < 1e-13


def test_spin_half_matrix(q_small):
    m = matcoef_via_delta(1, q_small)
    expected = [[gen_a(), gen_b()],
                [Element.mono(k=1, l=1, coeff=-q_small.q), Element.mono(n=-1, l=1)]]
    for i in range(2):
        for j in range(2):
            assert distance(m.entries[i][j], expected[i][j]) < 1e-15
    assert distance(matcoef_via_delta(0, q_small).entries[0][0], Element.one()) == 0


def test_first_row_is_f_vector(q_small):
    for two_l in range(6):
        for two_j in spin_range(two_l):
            assert distance(matcoef_closed(two_l, -two_l, two_j, q_small), f_vector(two_l, two_j, q_small)) < 1e-14


def test_jacobi_trivial_cases(q_small):
    assert distance(matcoef_jacobi(0, 0, 0, 5, q_small), Element.mono(l=5)) == 0
    assert distance(matcoef_jacobi(1, -1, -1, 0, q_small), gen_a()) < 1e-15


def test_jacobi_polynomial_matches_spin_one_centre(q_small):
    # t^1_{00} is a polynomial in zeta; its coefficients come from P_1^{(0,0)}
    coeffs = zeta_factor(matcoef(2, 0, 0, 0, q_small), 2, 0, 0)
    poly = little_q_jacobi_coeffs(1, 0, 0, q_small.r2)
    ratio = coeffs[0] / poly[0]
    assert all(abs(c - ratio * p) < 1e-14 for c, p in zip(coeffs, poly))


def test_three_routes_agree(q_any):
    for two_l in range(6):
        for two_i in spin_range(two_l):
            for two_j in spin_range(two_l):
                closed = matcoef_closed(two_l, two_i, two_j, q_any)
                for k in (-1, 0, 2):
                    ref = matcoef(two_l, two_i, two_j, k, q_any)
                    assert distance(multiply(closed, Element.mono(l=k), q_any), ref) < 1e-12
                    assert distance(matcoef_jacobi(two_l, two_i, two_j, k, q_any), ref) < 1e-12


def test_grades(q_small):
    for two_l in range(6):
        for k in (-1, 0, 2):
            assert matrix_grades_ok(corep_matrix(two_l, k, q_small))
    assert entry_grade(3, 1, -1, 0) == (-1, 1, 2)


def test_unitarity_low_spin_double_precision(q_any):
    for two_l in range(4):
        assert unitarity_defect(corep_matrix(two_l, 0, q_any), q_any) < 1e-10


def test_unitarity_extended_precision(q_haar):
    with numeric.extended_precision():
        for two_l in range(7):
            assert unitarity_defect(corep_matrix(two_l, 2, q_haar), q_haar) < 1e-30


def test_peter_weyl_closed_form_examples(q_small):
    assert pw_inner_closed((0, 0, 0, 0), (0, 0, 0, 0), L, q_small) == 1
    assert abs(pw_inner_closed((1, -1, -1, 0), (1, -1, -1, 0), L, q_small) - 1 / 1.3125) < 1e-15
    assert pw_inner_closed((1, -1, -1, 0), (1, -1, -1, 1), L, q_small) == 0
    assert pw_inner_closed((2, 0, 0, 0), (0, 0, 0, 0), R, q_small) == 0


def test_onb_elements(q_haar):
    rng = random.Random(21)
    labels = []
    for _ in range(20):
        two_l = rng.randint(0, 4)
        labels.append((two_l, rng.choice(list(spin_range(two_l))), rng.choice(list(spin_range(two_l))),
                       rng.randint(-1, 1)))
    assert distance(onb_element(0, 0, 0, 0, q_haar), Element.one()) < 1e-15
    elems = [onb_element(*lab, q_haar) for lab in labels]
    for u, x in zip(labels, elems):
        for v, y in zip(labels, elems):
            want = 1.0 if u == v else 0.0
            assert abs(inner_left(x, y, q_haar) - want) < 1e-12


def test_left_coaction_coefficients_coincide(q_small):
    for two_l in range(5):
        w = left_coaction_matrix(two_l, q_small)
        t = matcoef_via_delta(two_l, q_small)
        for i in range(two_l + 1):
            for j in range(two_l + 1):
                assert distance(w[i][j], t.entries[i][j]) < 1e-12


def test_zeta_polynomial_structure(q_small):
    for two_l in range(6):
        for two_i in spin_range(two_l):
            for two_j in spin_range(two_l):
                t = matcoef(two_l, two_i, two_j, 0, q_small)
                coeffs = zeta_factor(t, two_l, two_i, two_j)
                assert len(coeffs) - 1 == (two_l - max(abs(two_i), abs(two_j))) // 2
                assert set(e_basis(-two_i, -two_j).terms) <= {m._replace(m=m.m - r, k=m.k - r, l=0)
                                                                for r in range(len(coeffs))
                                                                for m in t.terms}


def test_antipode_is_adjoint_transpose(q_any):
    for two_l in range(5):
        for two_i in spin_range(two_l):
            for two_j in spin_range(two_l):
                for m in (-1, 0, 2):
                    lhs = antipode(matcoef(two_l, two_i, two_j, m, q_any), q_any)
                    rhs = star(matcoef(two_l, two_j, two_i, m, q_any), q_any)
                    assert distance(lhs, rhs) < 1e-9


def test_corepresentation_identity(q_small):
    for two_l in range(5):
        t = matcoef_via_delta(two_l, q_small).entries
        n = two_l + 1
        for i in range(n):
            for j in range(n):
                rhs = TensorElement(legs=2)
                for k in range(n):
                    rhs = rhs + TensorElement.simple(t[i][k], t[k][j])
                assert tensor_distance(comultiply(t[i][j], q_small), rhs) < 1e-12


def test_e_vectors_span_left_legs(q_small):
    for two_l in range(4):
        for two_i in spin_range(two_l):
            assert len(e_vector(two_l, two_i, q_small)) == 1


def test_corep_json_round_trip(q_small):
    m = corep_matrix(2, 1, q_small)
    back = CorepMatrix.from_json(m.to_json())
    assert matrix_distance(m, back) == 0


def test_invalid_index_rejected(q_small):
    with pytest.raises(ValueError):
        matcoef(2, 1, 0, 0, q_small)
