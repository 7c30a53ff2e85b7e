import json

import pytest

from uq2.cli import ExprSyntaxError, RunConfig, main, parse_expression
from uq2.algebra import Element, distance


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_normal_form_commutation(capsys):
    code, out, _ = run(capsys, "normal-form", "ba")
    assert code == 0
    assert json.loads(out) == [{"n": 1, "m": 1, "k": 0, "l": 0, "re": 0.5, "im": 0.25}]


def test_normal_form_of_one(capsys):
    _, out, _ = run(capsys, "normal-form", "1")
    assert json.loads(out) == [{"n": 0, "m": 0, "k": 0, "l": 0, "re": 1.0, "im": 0.0}]


def test_star_is_postfix(q_small):
    # a*a = 1 - |q|^2 bb*; b*a reads as (b*)a
    x = parse_expression("a*a", q_small)
    assert distance(x, Element.one() - Element.mono(m=1, k=1, coeff=q_small.r2)) < 1e-15
    y = parse_expression("b*a", q_small)
    assert distance(y, Element.mono(n=1, k=1, coeff=q_small.q.conjugate())) < 1e-15


def test_literals_and_powers(q_small):
    x = parse_expression("(2-1.5i) b^2 D^-1 + i", q_small)
    expected = Element.mono(m=2, l=-1, coeff=2 - 1.5j) + Element.one() * 1j
    assert distance(x, expected) < 1e-15


def test_parse_error_position(capsys, q_small):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expression("a+*", q_small)
    assert info.value.pos == 2
    code, _, err = run(capsys, "normal-form", "a+*")
    assert code == 2
    assert "    ^" in err


def test_negative_power_only_on_d(q_small):
    with pytest.raises(ExprSyntaxError):
        parse_expression("a^-1", q_small)


def test_tensor(capsys):
    _, out, _ = run(capsys, "tensor", "2", "0", "2", "0")
    assert json.loads(out)["summands"] == [[4, 0], [2, 1], [0, 2]]


def test_tensor_csv(capsys):
    _, out, _ = run(capsys, "--format", "csv", "tensor", "1", "0", "1", "0")
    lines = out.splitlines()
    assert lines[0] == "twoL1,m1,twoL2,m2,summands,defect"
    assert lines[1].startswith("1,0,1,0,2:0 0:1,")


def test_matcoef(capsys):
    _, out, _ = run(capsys, "matcoef", "1", "0")
    data = json.loads(out)
    assert data["twoL"] == 1
    assert data["entries"][1][0] == [{"n": 0, "m": 0, "k": 1, "l": 1, "re": -0.5, "im": -0.25}]


def test_haar(capsys):
    _, out, _ = run(capsys, "haar", "b b*")
    val = json.loads(out)
    assert abs(val["re"] - 1 / 1.3125) < 1e-12


def test_haar_above_one_needs_pullback(capsys):
    code, _, err = run(capsys, "--q-re", "2", "haar", "a")
    assert code == 2
    assert "pull" in err
    code, out, _ = run(capsys, "--q-re", "2", "haar", "--pullback", "b b*")
    assert code == 0
    assert json.loads(out)["re"] > 0


def test_gram_csv(capsys):
    code, out, _ = run(capsys, "--format", "csv", "gram", "0")
    assert code == 0
    assert out.strip()


def test_fourier_and_plancherel(capsys):
    _, out, _ = run(capsys, "fourier", "a")
    assert json.loads(out)[0]["twoL"] == 1
    _, out, _ = run(capsys, "plancherel", "a + b", "a")
    assert json.loads(out)["difference"] < 1e-12


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "InverseQ")
    assert code == 0
    assert "InverseQ" in out


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "peter-weyl")
    assert code == 0
    assert "left orthogonality" in out


def test_deterministic_output(capsys):
    _, first, _ = run(capsys, "verify", "engine")
    _, second, _ = run(capsys, "verify", "engine")
    assert first == second


def test_tolerance_range(capsys, q_small):
    with pytest.raises(ValueError):
        RunConfig(q_small, tol=0.5)
    code, _, err = run(capsys, "--tol", "0.5", "normal-form", "a")
    assert code == 2
    assert "tol" in err
