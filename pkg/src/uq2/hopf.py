"""Comultiplication, counit and antipode, plus arithmetic on tensor powers.

A :class:`TensorElement` is keyed by tuples of monomials, one per leg, so the
same type covers A⊗A and the triple tensor powers needed for coassociativity.
"""
from __future__ import annotations

import itertools
import json
from collections import defaultdict
from functools import lru_cache
from typing import Callable, Mapping, Sequence, Union

from . import numeric
from .algebra import Element, Monomial, ONE_MONO, _mono_mul, distance, multiply, power, scalar
from .qcomb import QParam

Key = tuple  # tuple[Monomial, ...]


class TensorElement:
    """Finite linear combination of simple tensors of basis monomials."""

    __slots__ = ("terms", "legs")

    def __init__(self, terms: Mapping[Key, complex] | None = None, legs: int | None = None,
                 prune: bool = True):
        coerce = numeric.coerce
        terms = {tuple(Monomial(*m) for m in key): coerce(c) for key, c in (terms or {}).items()}
        if legs is None:
            legs = len(next(iter(terms))) if terms else 2
        if any(len(key) != legs for key in terms):
            raise ValueError("inconsistent number of tensor legs")
        self.legs = legs
        if prune and terms:
            cutoff = numeric.prune_rtol() * max(abs(c) for c in terms.values())
            terms = {key: c for key, c in terms.items() if abs(c) > cutoff}
        self.terms = terms

    @classmethod
    def simple(cls, *factors: Element) -> "TensorElement":
        """x1 ⊗ x2 ⊗ ... from Elements."""
        terms = {}
        for combo in itertools.product(*(f.terms.items() for f in factors)):
            key = tuple(mono for mono, _ in combo)
            c = 1 + 0j
            for _, v in combo:
                c *= v
            terms[key] = terms.get(key, 0j) + c
        return cls(terms, legs=len(factors))

    @classmethod
    def one(cls, legs: int = 2) -> "TensorElement":
        return cls({(ONE_MONO,) * legs: 1.0}, legs=legs)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "TensorElement") -> "TensorElement":
        _check_legs(self, other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0j) + c
        return TensorElement(out, legs=self.legs)

    def __neg__(self) -> "TensorElement":
        return TensorElement({key: -c for key, c in self.terms.items()}, legs=self.legs, prune=False)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __mul__(self, c: complex) -> "TensorElement":
        if isinstance(c, TensorElement):
            raise TypeError("use tensor_multiply(X, Y, qp) for products")
        return TensorElement({key: c * v for key, v in self.terms.items()}, legs=self.legs)

    __rmul__ = __mul__

    def norm(self) -> float:
        return max((float(abs(c)) for c in self.terms.values()), default=0.0)

    def __repr__(self) -> str:
        if not self.terms:
            return "TensorElement(0)"
        body = " + ".join(
            f"({complex(c).real:.6g}{complex(c).imag:+.6g}j)" + "⊗".join(str(m) for m in key) for key, c in self
        )
        return f"TensorElement({body})"


def _check_legs(x: TensorElement, y: TensorElement) -> None:
    if x.legs != y.legs:
        raise ValueError(f"leg mismatch: {x.legs} vs {y.legs}")


def tensor_distance(x: TensorElement, y: TensorElement) -> float:
    _check_legs(x, y)
    worst = 0.0
    for key in set(x.terms) | set(y.terms):
        cx, cy = x.terms.get(key, 0j), y.terms.get(key, 0j)
        worst = max(worst, float(abs(cx - cy) / max(1.0, abs(cx), abs(cy))))
    return worst


def _leg_product(kx: Key, ky: Key, qv: tuple):
    per_leg = [_mono_mul(mx, my, *qv) for mx, my in zip(kx, ky)]
    for combo in itertools.product(*per_leg):
        c = 1 + 0j
        for _, v in combo:
            c *= v
        yield tuple(mono for mono, _ in combo), c


def tensor_multiply(x: TensorElement, y: TensorElement, qp: QParam) -> TensorElement:
    """Leg-wise product (x1⊗x2)(y1⊗y2) = x1y1 ⊗ x2y2."""
    _check_legs(x, y)
    qv = numeric.qvals(qp)
    acc: dict = defaultdict(numeric.zero)
    for kx, cx in x.terms.items():
        for ky, cy in y.terms.items():
            cxy = cx * cy
            for key, c in _leg_product(kx, ky, qv):
                acc[key] += cxy * c
    return TensorElement(acc, legs=x.legs)


def _tensor_power(x: TensorElement, e: int, qp: QParam) -> TensorElement:
    out = TensorElement.one(x.legs)
    for _ in range(e):
        out = tensor_multiply(out, x, qp)
    return out


# comultiplication -----------------------------------------------------------

def _mono(n=0, m=0, k=0, l=0, c=1.0) -> Element:
    return Element.mono(n, m, k, l, coeff=c)


def generator_coproducts(qp: QParam) -> dict:
    """Δ on the six generators."""
    q = numeric.qvals(qp)[0]
    simple = TensorElement.simple
    return {
        # -q̄ b⊗Db* with Db* = (q/q̄) b*D
        "a": simple(_mono(n=1), _mono(n=1)) + simple(_mono(m=1, c=-q), _mono(k=1, l=1)),
        "b": simple(_mono(n=1), _mono(m=1)) + simple(_mono(m=1), _mono(n=-1, l=1)),
        "a*": simple(_mono(n=-1), _mono(n=-1)) + simple(_mono(k=1, c=-q), _mono(m=1, l=-1)),
        "b*": simple(_mono(n=-1), _mono(k=1)) + simple(_mono(k=1), _mono(n=1, l=-1)),
        "D": simple(_mono(l=1), _mono(l=1)),
        "D*": simple(_mono(l=-1), _mono(l=-1)),
    }


@lru_cache(maxsize=None)
def _gen_power_coproduct(name: str, e: int, qp: QParam, bits) -> TensorElement:
    if e == 0:
        return TensorElement.one()
    prev = _gen_power_coproduct(name, e - 1, qp, bits)
    return tensor_multiply(prev, generator_coproducts(qp)[name], qp)


@lru_cache(maxsize=None)
def _mono_coproduct(mono: Monomial, qp: QParam, bits) -> TensorElement:
    n, m, k, l = mono
    out = _gen_power_coproduct("a" if n >= 0 else "a*", abs(n), qp, bits)
    out = tensor_multiply(out, _gen_power_coproduct("b", m, qp, bits), qp)
    out = tensor_multiply(out, _gen_power_coproduct("b*", k, qp, bits), qp)
    # Δ(D^l) = D^l ⊗ D^l directly
    out = tensor_multiply(out, TensorElement({(Monomial(0, 0, 0, l),) * 2: 1.0}), qp)
    return out


def mono_coproduct(mono: Monomial, qp: QParam) -> TensorElement:
    return _mono_coproduct(Monomial(*mono), qp, numeric.precision_bits())


def comultiply(x: Element, qp: QParam) -> TensorElement:
    acc: dict = defaultdict(numeric.zero)
    for mono, c in x.terms.items():
        for key, v in mono_coproduct(mono, qp).terms.items():
            acc[key] += c * v
    return TensorElement(acc, legs=2)


def counit(x: Element) -> complex:
    return sum((c for mono, c in x.terms.items() if mono.m == 0 and mono.k == 0), 0j)


def mono_counit(mono: Monomial) -> complex:
    return 1.0 + 0j if mono.m == 0 and mono.k == 0 else 0j


# antipode -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _mono_antipode(mono: Monomial, qp: QParam, bits) -> Element:
    q = numeric.qvals(qp)[0]
    n, m, k, l = mono
    s_b = Element.mono(m=1, l=-1, coeff=-q)                       # S(b) = -q b D*
    s_bs = Element.mono(k=1, l=1, coeff=-1 / q.conjugate())       # S(b*) = -q̄^-1 b* D
    # S reverses order: S(D^l) S(b*)^k S(b)^m S(A(n))
    out = Element.mono(l=-l)
    out = multiply(out, power(s_bs, k, qp), qp)
    out = multiply(out, power(s_b, m, qp), qp)
    return multiply(out, Element.mono(n=-n), qp)


def mono_antipode(mono: Monomial, qp: QParam) -> Element:
    return _mono_antipode(Monomial(*mono), qp, numeric.precision_bits())


def antipode(x: Element, qp: QParam) -> Element:
    acc: dict = defaultdict(numeric.zero)
    for mono, c in x.terms.items():
        for mono2, v in mono_antipode(mono, qp).terms.items():
            acc[mono2] += c * v
    return Element(acc)


# leg maps -------------------------------------------------------------------

LegImage = Union[complex, Element, TensorElement]


def _as_legs(value) -> list:
    """Normalize a leg image into [(key_fragment, coeff)]."""
    if isinstance(value, TensorElement):
        return list(value.terms.items())
    if isinstance(value, Element):
        return [((mono,), c) for mono, c in value.terms.items()]
    return [((), complex(value))]


def leg_map(x: TensorElement, leg: int, f: Callable[[Monomial], LegImage]):
    """Apply a linear map defined on monomials to one leg.

    ``f`` may return a scalar (the leg disappears), an Element (the leg is
    replaced) or a TensorElement (the leg is split). The result is an Element
    when exactly one leg remains, a scalar when none remains, else a
    TensorElement.
    """
    cache: dict = {}
    acc: dict = defaultdict(numeric.zero)
    for key, c in x.terms.items():
        mono = key[leg]
        if mono not in cache:
            cache[mono] = _as_legs(f(mono))
        for frag, v in cache[mono]:
            acc[key[:leg] + frag + key[leg + 1:]] += c * v
    return _collapse_keys(acc)


def _collapse_keys(acc: dict):
    lengths = {len(key) for key in acc}
    if not acc:
        return Element()
    if len(lengths) != 1:
        raise ValueError("leg map produced keys of different lengths")
    width = lengths.pop()
    if width == 0:
        return acc[()]
    if width == 1:
        return Element({key[0]: c for key, c in acc.items()})
    return TensorElement(acc, legs=width)


def tensor_apply_left(f: Callable[[Element], LegImage], x: TensorElement):
    return leg_map(x, 0, lambda mono: f(Element({mono: 1.0}, prune=False)))


def tensor_apply_right(f: Callable[[Element], LegImage], x: TensorElement):
    return leg_map(x, x.legs - 1, lambda mono: f(Element({mono: 1.0}, prune=False)))


def collapse(x: TensorElement, qp: QParam) -> Element:
    """Multiplication map A⊗...⊗A → A."""
    acc: dict = defaultdict(numeric.zero)
    qv = numeric.qvals(qp)
    for key, c in x.terms.items():
        partial = [(key[0], c)]
        for mono in key[1:]:
            nxt = []
            for left, v in partial:
                nxt.extend((m2, v * w) for m2, w in _mono_mul(left, mono, *qv))
            partial = nxt
        for mono, v in partial:
            acc[mono] += v
    return Element(acc)


def coassociativity_defect(x: Element, qp: QParam) -> float:
    dx = comultiply(x, qp)
    lhs = leg_map(dx, 0, lambda mono: mono_coproduct(mono, qp))
    rhs = leg_map(dx, 1, lambda mono: mono_coproduct(mono, qp))
    return tensor_distance(lhs, rhs) if isinstance(lhs, TensorElement) else 0.0


def counit_defect(x: Element, qp: QParam) -> float:
    dx = comultiply(x, qp)
    left = leg_map(dx, 0, mono_counit)
    right = leg_map(dx, 1, mono_counit)
    return max(distance(left, x), distance(right, x))


def antipode_defect(x: Element, qp: QParam) -> float:
    """Distance of m(S⊗id)Δx and m(id⊗S)Δx from ε(x)1."""
    dx = comultiply(x, qp)
    target = scalar(counit(x))
    s_left = leg_map(dx, 0, lambda mono: mono_antipode(mono, qp))
    s_right = leg_map(dx, 1, lambda mono: mono_antipode(mono, qp))
    return max(distance(collapse(s_left, qp), target), distance(collapse(s_right, qp), target))


# serialization --------------------------------------------------------------

def _mono_record(mono: Monomial) -> dict:
    return {"n": mono.n, "m": mono.m, "k": mono.k, "l": mono.l}


def tensor_to_records(x: TensorElement) -> list[dict]:
    if x.legs != 2:
        raise ValueError("JSON export is defined for two-leg tensors")
    return [{"left": _mono_record(key[0]), "right": _mono_record(key[1]), "re": float(c.real), "im": float(c.imag)}
            for key, c in x]


def tensor_from_records(records: Sequence[dict]) -> TensorElement:
    terms: dict = {}
    for rec in records:
        key = tuple(Monomial(*(int(rec[side][f]) for f in "nmkl")) for side in ("left", "right"))
        terms[key] = terms.get(key, 0j) + complex(rec["re"], rec["im"])
    return TensorElement(terms, legs=2, prune=False)


def tensor_to_json(x: TensorElement) -> str:
    return json.dumps(tensor_to_records(x))


def tensor_from_json(text: str) -> TensorElement:
    return tensor_from_records(json.loads(text))


__all__ = [
    "TensorElement", "tensor_multiply", "comultiply", "counit", "antipode", "leg_map",
    "tensor_apply_left", "tensor_apply_right", "mono_coproduct", "mono_antipode", "collapse", "coassociativity_defect",
    "counit_defect", "antipode_defect", "tensor_to_json", "tensor_from_json", "tensor_distance",
    "generator_coproducts",
]
