"""Irreducible corepresentation matrices t^l_{ij} D^k.

Three independent constructions are provided:

* :func:`matcoef_via_delta` reads the coefficients off Δ(f_j^l), the reference;
* :func:`matcoef_closed` evaluates the finite double sum in a, b, c, d;
* :func:`matcoef_jacobi` uses little q-Jacobi polynomials in ζ = bb*.

Spins are doubled integers throughout: ``two_l = 2l``, ``two_i = 2i``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .algebra import (
    Element, Monomial, distance, element_from_records, element_to_records, grade_of, multiply,
    power, scalar, star,
)
from . import numeric
from .haar import InnerProductKind, _require_haar_regime
from .hopf import mono_coproduct
from .qcomb import QParam, box_bracket, check_spin, little_q_jacobi_coeffs, q_binomial, spin_range


class MalformedLegError(RuntimeError):
    """A coproduct produced a leg outside the expected basis."""


def _sqrt_binom(n: int, m: int, qp: QParam) -> float:
    value = q_binomial(n, m, numeric.qvals(qp)[1])
    if hasattr(value, "imag") and value.imag != 0 or value <= 0:
        raise ArithmeticError(f"q-binomial [{n} {m}] = {value!r} is not a positive real")
    return numeric.sqrt(value)


def _half(two_x: int) -> int:
    if two_x % 2:
        raise ValueError("expected an even doubled value")
    return two_x // 2


def gen_c(qp: QParam) -> Element:
    """c = -q̄ D b*, normal-ordered as -q b* D."""
    return Element.mono(k=1, l=1, coeff=-numeric.qvals(qp)[0])


def gen_d_coef(qp: QParam) -> Element:
    """d = D a* = a* D."""
    return Element.mono(n=-1, l=1)


def f_vector(two_l: int, two_j: int, qp: QParam) -> Element:
    check_spin(two_l, two_j)
    lmj, lpj = _half(two_l - two_j), _half(two_l + two_j)
    return Element.mono(n=lmj, m=lpj, coeff=_sqrt_binom(two_l, lpj, qp))


def e_vector(two_l: int, two_i: int, qp: QParam) -> Element:
    check_spin(two_l, two_i)
    lmi, lpi = _half(two_l - two_i), _half(two_l + two_i)
    word = multiply(Element.mono(n=lmi), power(gen_c(qp), lpi, qp), qp)
    return word * _sqrt_binom(two_l, lpi, qp)


@dataclass
class CorepMatrix:
    two_l: int
    d_power: int
    entries: list  # entries[row][col], rows/cols ordered by increasing 2i

    @property
    def size(self) -> int:
        return self.two_l + 1

    def index(self, two_i: int) -> int:
        check_spin(self.two_l, two_i)
        return (two_i + self.two_l) // 2

    def entry(self, two_i: int, two_j: int) -> Element:
        return self.entries[self.index(two_i)][self.index(two_j)]

    def to_records(self) -> dict:
        return {
            "twoL": self.two_l,
            "dPower": self.d_power,
            "entries": [[element_to_records(x) for x in row] for row in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_records())

    @classmethod
    def from_json(cls, text: str) -> "CorepMatrix":
        data = json.loads(text)
        entries = [[element_from_records(x) for x in row] for row in data["entries"]]
        return cls(int(data["twoL"]), int(data["dPower"]), entries)


@lru_cache(maxsize=None)
def _delta_matrix(two_l: int, qp: QParam, bits) -> tuple:
    size = two_l + 1
    norms = {two_i: _sqrt_binom(two_l, _half(two_l + two_i), qp) for two_i in spin_range(two_l)}
    left_index = {Monomial(_half(two_l - t), _half(two_l + t), 0, 0): t for t in spin_range(two_l)}
    cols = []
    for two_j in spin_range(two_l):
        fj = f_vector(two_l, two_j, qp)
        (mono, coeff), = fj.terms.items()
        buckets: dict = {t: {} for t in spin_range(two_l)}
        for (left, right), c in mono_coproduct(mono, qp).terms.items():
            if left not in left_index:
                raise MalformedLegError(f"left leg {left} is not of the form a^(l-i) b^(l+i)")
            bucket = buckets[left_index[left]]
            bucket[right] = bucket.get(right, 0j) + c * coeff
        cols.append([Element(buckets[t]) / norms[t] for t in spin_range(two_l)])
    return tuple(tuple(cols[j][i] for j in range(size)) for i in range(size))


def matcoef_via_delta(two_l: int, qp: QParam) -> CorepMatrix:
    check_spin(two_l)
    return CorepMatrix(two_l, 0, [list(row) for row in _delta_matrix(two_l, qp, numeric.precision_bits())])


def matcoef_closed(two_l: int, two_i: int, two_j: int, qp: QParam) -> Element:
    check_spin(two_l, two_i, two_j)
    lmi = _half(two_l - two_i)
    lmj, lpj = _half(two_l - two_j), _half(two_l + two_j)
    ratio = _sqrt_binom(two_l, lpj, qp) / _sqrt_binom(two_l, _half(two_l + two_i), qp)
    c, d, b = gen_c(qp), gen_d_coef(qp), Element.mono(m=1)
    q, r2, _ = numeric.qvals(qp)
    out = Element()
    n_range = range(max(0, lmi - lmj), min(lpj, lmi) + 1)
    assert len(n_range) > 0, "constrained sum is never empty for valid indices"
    for n in n_range:
        m = lmi - n
        weight = (q ** (n * (lmj - m)) * ratio
                  * q_binomial(lmj, m, r2) * q_binomial(lpj, n, r2))
        word = multiply(Element.mono(n=m), power(c, lmj - m, qp), qp)
        word = multiply(word, power(b, n, qp), qp)
        word = multiply(word, power(d, lpj - n, qp), qp)
        out = out + word * weight
    return out


def zeta_poly(coeffs: Sequence[complex]) -> Element:
    return Element({Monomial(0, r, r, 0): c for r, c in enumerate(coeffs)})


JACOBI_CASES = ("i+j<=0,i>=j", "i+j<=0,i<=j", "i+j>=0,i<=j", "i+j>=0,i>=j")


def jacobi_case(two_i: int, two_j: int) -> int:
    """Default case (0-based) for the sign pattern; boundaries pick the first match."""
    s, d = two_i + two_j, two_i - two_j
    if s <= 0 and d >= 0:
        return 0
    if s <= 0 and d <= 0:
        return 1
    if s >= 0 and d <= 0:
        return 2
    return 3


def matcoef_jacobi(two_l: int, two_i: int, two_j: int, k: int, qp: QParam,
                   case: int | None = None) -> Element:
    """t^l_{ij} D^k through little q-Jacobi polynomials in ζ.

    ``case`` forces one of the four sign cases (0..3), which is only valid
    when the sign conditions hold; on the boundaries several cases apply and
    must agree.
    """
    check_spin(two_l, two_i, two_j)
    s, dd = two_i + two_j, two_i - two_j
    if case is None:
        case = jacobi_case(two_i, two_j)
    conditions = (s <= 0 and dd >= 0, s <= 0 and dd <= 0, s >= 0 and dd <= 0, s >= 0 and dd >= 0)
    if not conditions[case]:
        raise ValueError(f"case {JACOBI_CASES[case]} does not apply to 2i={two_i}, 2j={two_j}")
    l_pi, l_pj = _half(two_l + two_i), _half(two_l + two_j)
    l_mi, l_mj = _half(two_l - two_i), _half(two_l - two_j)
    ipj, imj = _half(s), _half(dd)
    ratio = _sqrt_binom(two_l, l_pj, qp) / _sqrt_binom(two_l, l_pi, qp)
    q, base, _ = numeric.qvals(qp)
    qbar = q.conjugate()
    c = gen_c(qp)
    b = Element.mono(m=1)
    if case == 0:
        pref = qbar ** ((-imj) * l_pj) * ratio * q_binomial(l_mj, imj, base)
        poly = little_q_jacobi_coeffs(l_pj, imj, -ipj, base)
        left = multiply(Element.mono(n=-ipj), power(c, imj, qp), qp)
        right, dpow = Element.one(), l_pj + k
    elif case == 1:
        pref = q ** (imj * l_pi) * ratio * q_binomial(l_pj, -imj, base)
        poly = little_q_jacobi_coeffs(l_pi, -imj, -ipj, base)
        left = multiply(Element.mono(n=-ipj), power(b, -imj, qp), qp)
        right, dpow = Element.one(), l_pi + k
    elif case == 2:
        pref = q ** (imj * l_pi) * ratio * q_binomial(l_pj, -imj, base)
        poly = little_q_jacobi_coeffs(l_mj, -imj, ipj, base)
        left = Element.one()
        right, dpow = multiply(Element.mono(n=-ipj), power(b, -imj, qp), qp), l_pi + k
    else:
        pref = qbar ** ((-imj) * l_pj) * ratio * q_binomial(l_mj, imj, base)
        poly = little_q_jacobi_coeffs(l_mi, imj, ipj, base)
        left = Element.one()
        right, dpow = multiply(Element.mono(n=-ipj), power(c, imj, qp), qp), l_pj + k
    out = multiply(left, zeta_poly(poly), qp)
    out = multiply(out, right, qp)
    out = multiply(out, Element.mono(l=dpow), qp)
    return out * pref


def corep_matrix(two_l: int, k: int, qp: QParam) -> CorepMatrix:
    base = matcoef_via_delta(two_l, qp)
    dk = Element.mono(l=k)
    entries = [[multiply(x, dk, qp) for x in row] for row in base.entries]
    return CorepMatrix(two_l, k, entries)


def matcoef(two_l: int, two_i: int, two_j: int, k: int, qp: QParam) -> Element:
    """Single entry t^l_{ij} D^k from the reference construction."""
    check_spin(two_l, two_i, two_j)
    t = _delta_matrix(two_l, qp, numeric.precision_bits())[(two_i + two_l) // 2][(two_j + two_l) // 2]
    return multiply(t, Element.mono(l=k), qp) if k else t


def unitarity_defect(mat: CorepMatrix, qp: QParam) -> float:
    """Largest coefficient of u*u - 1 and uu* - 1, with u the matrix of Elements."""
    size = mat.size
    e = mat.entries
    stars = [[star(x, qp) for x in row] for row in e]
    worst = 0.0
    for i in range(size):
        for j in range(size):
            target = scalar(1.0 if i == j else 0.0)
            uu = Element()
            vv = Element()
            for r in range(size):
                uu = uu + multiply(stars[r][i], e[r][j], qp)
                vv = vv + multiply(e[i][r], stars[j][r], qp)
            worst = max(worst, (uu - target).norm(), (vv - target).norm())
    return worst


def pw_inner_closed(label1: tuple, label2: tuple, kind: InnerProductKind, qp: QParam) -> float:
    """Closed-form ⟨t^l_{ij}D^m, t^{l'}_{i'j'}D^{m'}⟩; labels are (2l, 2i, 2j, m)."""
    two_l, two_i, two_j, m = label1
    check_spin(two_l, two_i, two_j)
    check_spin(label2[0], label2[1], label2[2])
    _require_haar_regime(qp)
    if tuple(label1) != tuple(label2):
        return 0.0
    r = numeric.modulus(qp)
    weight = r ** (two_i if kind is InnerProductKind.LEFT else -two_j)
    return weight / box_bracket(two_l, r)


def onb_element(two_l: int, two_i: int, two_j: int, m: int, qp: QParam) -> Element:
    """|q|^{-i} |2l+1|^{1/2} t^l_{ij} D^m, of unit left norm."""
    r = numeric.modulus(qp)
    scale = numeric.sqrt(r ** (-two_i) * box_bracket(two_l, r))
    return matcoef(two_l, two_i, two_j, m, qp) * scale


def left_coaction_matrix(two_l: int, qp: QParam) -> list:
    """w^l_{ij} defined by Δ(e_i^l) = Σ_j w^l_{ij} ⊗ e_j^l."""
    e_vecs = {t: e_vector(two_l, t, qp) for t in spin_range(two_l)}
    right_index = {}
    for t, vec in e_vecs.items():
        (mono, coeff), = vec.terms.items()
        right_index[mono] = (t, coeff)
    rows = []
    for two_i in spin_range(two_l):
        buckets: dict = {t: {} for t in spin_range(two_l)}
        for mono_i, c_i in e_vecs[two_i].terms.items():
            for (left, right), c in mono_coproduct(mono_i, qp).terms.items():
                if right not in right_index:
                    raise MalformedLegError(f"right leg {right} is not a multiple of some e_j")
                t, coeff = right_index[right]
                buckets[t][left] = buckets[t].get(left, 0j) + c * c_i / coeff
        rows.append([Element(buckets[t]) for t in spin_range(two_l)])
    return rows


def zeta_factor(t: Element, two_l: int, two_i: int, two_j: int) -> list:
    """Coefficients of P with t = e_{-2i,-2j} P(ζ) D^{l+i}.

    Raises if some monomial of ``t`` is not of the form e_{-2i,-2j} ζ^r D^{l+i}.
    """
    check_spin(two_l, two_i, two_j)
    n0 = -_half(two_i + two_j)
    d = _half(two_j - two_i)
    m0, k0, l0 = max(d, 0), max(-d, 0), _half(two_l + two_i)
    coeffs: dict = {}
    for mono, c in t.terms.items():
        r = mono.m - m0
        if mono.n != n0 or mono.l != l0 or r < 0 or mono.k - k0 != r:
            raise ValueError(f"{mono} is not e_(-2i,-2j) ζ^r D^(l+i)")
        coeffs[r] = c
    top = max(coeffs, default=-1)
    return [coeffs.get(r, 0j) for r in range(top + 1)]


def entry_grade(two_l: int, two_i: int, two_j: int, k: int) -> tuple:
    return (-two_i, -two_j, _half(two_l + two_i) + k)


def matrix_grades_ok(mat: CorepMatrix) -> bool:
    for two_i in spin_range(mat.two_l):
        for two_j in spin_range(mat.two_l):
            expected = entry_grade(mat.two_l, two_i, two_j, mat.d_power)
            if any(grade_of(mono) != expected for mono in mat.entry(two_i, two_j).terms):
                return False
    return True


def matrix_distance(x: CorepMatrix, y: CorepMatrix) -> float:
    if (x.two_l, x.d_power) != (y.two_l, y.d_power):
        return math.inf
    return max(distance(u, v) for ru, rv in zip(x.entries, y.entries) for u, v in zip(ru, rv))
