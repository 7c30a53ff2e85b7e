"""Isomorphisms O(U_q(2)) → O(U_q'(2)) for q' in {q, 1/q, 1/q̄, q̄}.

A map is given by the images of a, b, D in the target algebra and extended as a
*-homomorphism. :func:`verify_morphism` checks that the images satisfy the
source relations and that the map intertwines the two coproducts on the
generators. For |q| > 1 the Haar state is obtained by pulling back the
|1/q| < 1 Haar state through the 1/q isomorphism.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .algebra import (
    Element, Monomial, gen_a, gen_a_star, gen_b, gen_b_star, gen_d, gen_d_star, multiply,
    relation_residuals, star,
)
from .haar import haar
from .hopf import TensorElement, comultiply, generator_coproducts, leg_map, tensor_distance
from .qcomb import QParam, Regime


class IsoKind(enum.Enum):
    IDENTITY = "Identity"
    INVERSE_Q = "InverseQ"
    INVERSE_CONJ_Q = "InverseConjQ"
    CONJ_Q = "ConjQ"


@dataclass(frozen=True)
class GeneratorMap:
    source: QParam
    target: QParam
    img_a: Element
    img_b: Element
    img_d: Element

    def images(self) -> dict:
        """Images of all six generators, keyed by 'a', 'a*', 'b', 'b*', 'd', 'd*'."""
        t = self.target
        return {
            "a": self.img_a, "a*": star(self.img_a, t),
            "b": self.img_b, "b*": star(self.img_b, t),
            "d": self.img_d, "d*": star(self.img_d, t),
        }


def target_parameter(kind: IsoKind, qp: QParam) -> QParam:
    q = qp.q
    return QParam({
        IsoKind.IDENTITY: q,
        IsoKind.INVERSE_Q: 1 / q,
        IsoKind.INVERSE_CONJ_Q: 1 / q.conjugate(),
        IsoKind.CONJ_Q: q.conjugate(),
    }[kind])


def _inverse_q(qp: QParam, target: QParam) -> GeneratorMap:
    # a ↦ a*D, b ↦ -q' b*D, D ↦ D
    return GeneratorMap(qp, target, Element.mono(n=-1, l=1),
                        Element.mono(k=1, l=1, coeff=-target.q), gen_d())


def _inverse_conj_q(qp: QParam, target: QParam) -> GeneratorMap:
    # a ↦ a*, b ↦ conj(q') b*, D ↦ D*
    return GeneratorMap(qp, target, gen_a_star(),
                        Element.mono(k=1, coeff=target.q.conjugate()), gen_d_star())


def iso(kind: IsoKind, qp: QParam) -> GeneratorMap:
    target = target_parameter(kind, qp)
    if kind is IsoKind.IDENTITY:
        return GeneratorMap(qp, target, gen_a(), gen_b(), gen_d())
    if kind is IsoKind.INVERSE_Q:
        return _inverse_q(qp, target)
    if kind is IsoKind.INVERSE_CONJ_Q:
        return _inverse_conj_q(qp, target)
    first = iso(IsoKind.INVERSE_Q, qp)
    return compose(first, iso(IsoKind.INVERSE_CONJ_Q, first.target))


def with_target(gmap: GeneratorMap, target: QParam) -> GeneratorMap:
    """Same image formulas, read in a different target algebra (negative controls)."""
    return GeneratorMap(gmap.source, target, gmap.img_a, gmap.img_b, gmap.img_d)


def _power(x: Element, e: int, qp: QParam) -> Element:
    out = Element.one()
    for _ in range(e):
        out = multiply(out, x, qp)
    return out


def extend_monomial(gmap: GeneratorMap, mono: Monomial, images: dict | None = None) -> Element:
    images = images or gmap.images()
    t = gmap.target
    n, m, k, l = mono
    out = _power(images["a" if n >= 0 else "a*"], abs(n), t)
    out = multiply(out, _power(images["b"], m, t), t)
    out = multiply(out, _power(images["b*"], k, t), t)
    return multiply(out, _power(images["d" if l >= 0 else "d*"], abs(l), t), t)


def extend(gmap: GeneratorMap, x: Element) -> Element:
    images = gmap.images()
    out = Element()
    for mono, c in x.terms.items():
        out = out + extend_monomial(gmap, mono, images) * c
    return out


def compose(first: GeneratorMap, second: GeneratorMap) -> GeneratorMap:
    """second ∘ first; requires first.target == second.source."""
    if first.target != second.source:
        raise ValueError("maps are not composable")
    return GeneratorMap(first.source, second.target, extend(second, first.img_a),
                        extend(second, first.img_b), extend(second, first.img_d))


def _extend_tensor(gmap: GeneratorMap, x: TensorElement) -> TensorElement:
    images = gmap.images()
    cache: dict = {}

    def f(mono):
        if mono not in cache:
            cache[mono] = extend_monomial(gmap, mono, images)
        return cache[mono]

    for leg in range(x.legs):
        x = leg_map(x, leg, f)
    return x


def morphism_defects(gmap: GeneratorMap) -> dict:
    """Relation residual norms and coproduct intertwining defects, by name."""
    img = gmap.images()
    t = gmap.target
    res = relation_residuals(img["a"], img["a*"], img["b"], img["b*"], img["d"], img["d*"],
                             Element.one(), lambda x, y: multiply(x, y, t), gmap.source)
    out = {name: max(v.norm() for v in (val if isinstance(val, tuple) else (val,)))
           for name, val in res.items()}
    source_delta = generator_coproducts(gmap.source)
    for name, key in (("a", "a"), ("b", "b"), ("d", "D")):
        lhs = comultiply(img[name], t)
        rhs = _extend_tensor(gmap, source_delta[key])
        out[f"Δ({key})"] = tensor_distance(lhs, rhs)
    return out


def verify_morphism(gmap: GeneratorMap) -> float:
    return max(morphism_defects(gmap).values())


def haar_pullback(x: Element, qp: QParam) -> complex:
    """Haar state at any regime; at |q| > 1 evaluated as h_{1/q}(Φ(x))."""
    if qp.regime is not Regime.MODULUS_GREATER_ONE:
        return haar(x, qp)
    gmap = iso(IsoKind.INVERSE_Q, qp)
    return haar(extend(gmap, x), gmap.target)
