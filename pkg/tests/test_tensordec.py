import pytest

from uq2.algebra import Element, distance
from uq2.tensordec import (
    CorepLabel, character, character_dimension, decompose, decomposition_csv, verify_decomposition,
)


def test_examples():
    assert decompose(CorepLabel(1, 0), CorepLabel(1, 0)) == [CorepLabel(2, 0), CorepLabel(0, 1)]
    assert decompose(CorepLabel(2, 0), CorepLabel(2, 0)) == [CorepLabel(4, 0), CorepLabel(2, 1),
                                                            CorepLabel(0, 2)]
    assert decompose(CorepLabel(0, 3), CorepLabel(3, -1)) == [CorepLabel(3, 2)]
    assert str(CorepLabel(3, -1)) == "(3/2,-1)"


def test_dimension_count():
    for l1 in range(7):
        for l2 in range(7):
            p, r = CorepLabel(l1, 1), CorepLabel(l2, -2)
            parts = decompose(p, r)
            assert sum(s.dim for s in parts) == p.dim * r.dim
            assert decompose(r, p) == parts


def test_spin_half_character(q_small):
    expected = Element.mono(n=1) + Element.mono(n=-1, l=1)
    assert distance(character(CorepLabel(1, 0), q_small), expected) < 1e-15


def test_character_counit(q_small):
    for two_l in range(6):
        assert abs(character_dimension(CorepLabel(two_l, 2), q_small) - (two_l + 1)) < 1e-10


def test_character_identity(q_any):
    for l1 in range(4):
        for l2 in range(4):
            assert verify_decomposition(CorepLabel(l1, 1), CorepLabel(l2, 0), q_any) < 1e-9


def test_csv():
    text = decomposition_csv([(CorepLabel(1, 0), CorepLabel(1, 0))])
    assert text.splitlines() == ["twoL1,m1,twoL2,m2,summands", "1,0,1,0,2:0 0:1"]


def test_negative_spin_rejected():
    with pytest.raises(ValueError):
        decompose(CorepLabel(-1, 0), CorepLabel(1, 0))
