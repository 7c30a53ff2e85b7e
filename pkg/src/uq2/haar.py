"""Haar state, the left and right inner products, and Gram matrices."""
from __future__ import annotations

import enum
import io
from collections import defaultdict
from typing import Sequence

import numpy as np

from . import numeric
from .algebra import Element, Monomial, _mono_mul, grade_of, star
from .qcomb import QParam, Regime, RegimeError, box_bracket, q_binomial


class InnerProductKind(enum.Enum):
    LEFT = "Left"
    RIGHT = "Right"


def _require_haar_regime(qp: QParam) -> None:
    if qp.regime is Regime.MODULUS_GREATER_ONE:
        raise RegimeError(
            f"Haar state at |q|>1 ({qp}) must be pulled back through the isomorphism to 1/q "
            "(classify.haar_pullback or the CLI flag --pullback)"
        )


def haar_zeta_power(m: int, qp: QParam) -> float:
    """h((bb*)^m)."""
    if qp.regime is Regime.MODULUS_ONE:
        return numeric.coerce_real(1) / (m + 1)
    r2 = numeric.qvals(qp)[1]
    return (1 - r2) / (1 - r2 ** (m + 1))


def haar_mono(mono: Monomial, qp: QParam) -> float:
    n, m, k, l = mono
    if n or l or m != k:
        return 0
    return haar_zeta_power(m, qp)


def haar(x: Element, qp: QParam) -> complex:
    _require_haar_regime(qp)
    return sum((c * haar_mono(mono, qp) for mono, c in x.terms.items()), 0j)


def haar_of_product(x: Element, y: Element, qp: QParam) -> complex:
    """h(xy) without forming the full product.

    Only term pairs whose grades cancel can contribute, since h vanishes off
    the zero grade and products add grades. A pair that would multiply a^p
    into (a*)^p is evaluated as h(σ(y)x) instead: the expansion of
    (a*)^p a^p has coefficients bounded by one, whereas a^p (a*)^p carries
    factors up to |q|^{-p(p-1)} that cancel catastrophically.
    """
    _require_haar_regime(qp)
    by_grade: dict = defaultdict(list)
    for mono, c in y.terms.items():
        by_grade[grade_of(mono)].append((mono, c))
    qv = numeric.qvals(qp)
    r2 = qv[1]
    total = numeric.zero()
    for mx, cx in x.terms.items():
        g = grade_of(mx)
        for my, cy in by_grade.get((-g[0], -g[1], -g[2]), ()):
            if mx.n > 0:
                pairs, weight = _mono_mul(my, mx, *qv), r2 ** (-my.n)
            else:
                pairs, weight = _mono_mul(mx, my, *qv), 1
            for mono, c in pairs:
                total += cx * cy * weight * c * haar_mono(mono, qp)
    return total


def inner(kind: InnerProductKind, x: Element, y: Element, qp: QParam) -> complex:
    """Left: h(x*y). Right: conj(h(xy*))."""
    if kind is InnerProductKind.LEFT:
        return haar_of_product(star(x, qp), y, qp)
    return haar_of_product(x, star(y, qp), qp).conjugate()


def inner_left(x: Element, y: Element, qp: QParam) -> complex:
    return inner(InnerProductKind.LEFT, x, y, qp)


def inner_right(x: Element, y: Element, qp: QParam) -> complex:
    return inner(InnerProductKind.RIGHT, x, y, qp)


def d_norm(r: int, s: int, qp: QParam) -> float:
    """Closed form of ⟨a^r b^s, a^r b^s⟩_L."""
    _require_haar_regime(qp)
    rq = numeric.modulus(qp)
    return 1 / (rq ** (r + s) * box_bracket(r + s, rq) * q_binomial(r + s, s, rq * rq))


def c_norm(r: int, s: int, qp: QParam) -> float:
    """Closed form of ⟨a^r b^s, a^r b^s⟩_R."""
    return numeric.modulus(qp) ** (2 * r) * d_norm(r, s, qp)


def modular_sigma(x: Element, qp: QParam) -> Element:
    """Automorphism with h(xy) = h(σ(y)x): a ↦ |q|^-2 a, a* ↦ |q|^2 a*.

    It is the identity at |q| = 1, where h is a trace.
    """
    if qp.regime is Regime.MODULUS_ONE:
        return x
    r2 = numeric.qvals(qp)[1]
    return Element({mono: c * r2 ** (-mono.n) for mono, c in x.terms.items()}, prune=False)


def gram_matrix(monos: Sequence[Monomial], kind: InnerProductKind, qp: QParam) -> np.ndarray:
    elems = [Element({Monomial(*m): 1.0}) for m in monos]
    stars = [star(e, qp) for e in elems]
    size = len(elems)
    gram = np.zeros((size, size), dtype=complex)
    for u in range(size):
        for v in range(size):
            if kind is InnerProductKind.LEFT:
                gram[u, v] = haar_of_product(stars[u], elems[v], qp)
            else:
                gram[u, v] = haar_of_product(elems[u], stars[v], qp).conjugate()
    return gram


def monomials_in_box(bound: int) -> list[Monomial]:
    """All monomials with |n|, m, k, |l| <= bound, in lexicographic order."""
    rng, nat = range(-bound, bound + 1), range(bound + 1)
    return [Monomial(n, m, k, l) for n in rng for m in nat for k in nat for l in rng]


def matrix_to_csv(mat: np.ndarray) -> str:
    """Row-major CSV with each cell written as a "re,im" pair."""
    buf = io.StringIO()
    for row in np.asarray(mat):
        buf.write(",".join(f"{z.real!r},{z.imag!r}" for z in (complex(v) for v in row)))
        buf.write("\n")
    return buf.getvalue()
