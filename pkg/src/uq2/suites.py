"""Named invariant sweeps shared by the command line and the test suite.

Every suite returns a mapping from check name to the largest defect seen, so a
caller only has to compare each value against its tolerance. Random samples
use a fixed seed and are reproducible run to run.
"""
from __future__ import annotations

import random
from typing import Callable

import numpy as np

from . import numeric
from .algebra import (
    Element, Monomial, distance, element_relation_defects, multiply, star,
)
from .classify import IsoKind, extend, haar_pullback, iso, verify_morphism, with_target
from .corep import (
    corep_matrix, matcoef, matcoef_closed, matcoef_jacobi, matcoef_via_delta, matrix_grades_ok,
    pw_inner_closed, unitarity_defect,
)
from .fourier import fourier, inverse_fourier, plancherel_pairing, preimage, support_bound
from .haar import (
    InnerProductKind, c_norm, d_norm, gram_matrix, haar, haar_of_product, inner_left, inner_right,
    monomials_in_box,
)
from .hopf import antipode_defect, coassociativity_defect, counit_defect
from .opmodel import (
    TruncationSpec, adjoint_defect, build_rep, numeric_haar, product_defect, relation_defect,
)
from .qcomb import QParam, Regime, spin_range
from .tensordec import CorepLabel, decompose, verify_decomposition

SEED = 20240611


def random_element(rng: random.Random, terms: int = 2, bound: int = 2) -> Element:
    """Sum of ``terms`` monomials with |n|, m, k, |l| <= bound and Gaussian coefficients."""
    out: dict = {}
    for _ in range(terms):
        mono = Monomial(rng.randint(-bound, bound), rng.randint(0, bound),
                        rng.randint(0, bound), rng.randint(-bound, bound))
        out[mono] = complex(rng.gauss(0, 1), rng.gauss(0, 1))
    return Element(out)


def _worst(values) -> float:
    return max((float(v) for v in values), default=0.0)


def engine_suite(qp: QParam, samples: int = 1000, seed: int = SEED) -> dict:
    rng = random.Random(seed)
    assoc, star_anti, involution = [], [], []
    for _ in range(samples):
        x, y, z = (random_element(rng, 2, 2) for _ in range(3))
        xy = multiply(x, y, qp)
        assoc.append(distance(multiply(xy, z, qp), multiply(x, multiply(y, z, qp), qp)))
        star_anti.append(distance(star(xy, qp), multiply(star(y, qp), star(x, qp), qp)))
        involution.append(distance(star(star(x, qp), qp), x))
    return {
        "relations": max(element_relation_defects(qp).values()),
        "associativity": _worst(assoc),
        "star anti-multiplicative": _worst(star_anti),
        "star involutive": _worst(involution),
    }


def hopf_suite(qp: QParam, bound: int = 2) -> dict:
    monos = monomials_in_box(bound)
    out = {"coassociativity": 0.0, "counit": 0.0, "antipode": 0.0}
    for mono in monos:
        x = Element({mono: 1.0})
        out["coassociativity"] = max(out["coassociativity"], coassociativity_defect(x, qp))
        out["counit"] = max(out["counit"], counit_defect(x, qp))
        out["antipode"] = max(out["antipode"], antipode_defect(x, qp))
    return out


def haar_suite(qp: QParam, max_rs: int = 6) -> dict:
    out = {}
    dn = cn = 0.0
    for r in range(max_rs + 1):
        for s in range(max_rs + 1 - r):
            x = Element.mono(n=r, m=s)
            dn = max(dn, abs(inner_left(x, x, qp) - d_norm(r, s, qp)))
            cn = max(cn, abs(inner_right(x, x, qp) - c_norm(r, s, qp)))
    out["d_norm closed form"] = dn
    out["c_norm closed form"] = cn
    a = Element.mono(n=1)
    a_s = Element.mono(n=-1)
    comm = multiply(a_s, a, qp) - multiply(a, a_s, qp)
    r2 = numeric.to_float(numeric.qvals(qp)[1])
    out["h(a*a - aa*)"] = abs(complex(haar(comm, qp)) - (1 - r2) / (1 + r2))
    return out


def unitarity_suite(qp: QParam, max_two_l: int = 6, ks=(-1, 0, 2)) -> dict:
    """Unitarity of the corepresentation matrices, in extended precision."""
    worst = 0.0
    with numeric.extended_precision():
        for two_l in range(max_two_l + 1):
            for k in ks:
                worst = max(worst, unitarity_defect(corep_matrix(two_l, k, qp), qp))
    return {"unitarity": worst}


def corep_routes_suite(qp: QParam, max_two_l: int = 5, ks=(-1, 0, 2)) -> dict:
    closed = jacobi = 0.0
    grades_ok = True
    dk = {k: Element.mono(l=k) for k in ks}
    for two_l in range(max_two_l + 1):
        ref = matcoef_via_delta(two_l, qp)
        grades_ok &= matrix_grades_ok(ref)
        for two_i in spin_range(two_l):
            for two_j in spin_range(two_l):
                base_closed = matcoef_closed(two_l, two_i, two_j, qp)
                for k in ks:
                    target = matcoef(two_l, two_i, two_j, k, qp)
                    closed = max(closed, distance(multiply(base_closed, dk[k], qp), target))
                    jacobi = max(jacobi, distance(matcoef_jacobi(two_l, two_i, two_j, k, qp), target))
    return {"closed sum vs coproduct": closed, "little q-Jacobi vs coproduct": jacobi,
            "grading": 0.0 if grades_ok else float("inf")}


def peter_weyl_suite(qp: QParam, max_two_l: int = 5, ms=(-1, 0, 1)) -> dict:
    labels = [(two_l, ti, tj, m) for two_l in range(max_two_l + 1)
              for ti in spin_range(two_l) for tj in spin_range(two_l) for m in ms]
    elems = {lab: matcoef(*lab, qp) for lab in labels}
    stars = {lab: star(x, qp) for lab, x in elems.items()}
    left = right = 0.0
    for l1 in labels:
        for l2 in labels:
            v_left = complex(haar_of_product(stars[l1], elems[l2], qp))
            v_right = complex(haar_of_product(elems[l1], stars[l2], qp)).conjugate()
            left = max(left, abs(v_left - pw_inner_closed(l1, l2, InnerProductKind.LEFT, qp)))
            right = max(right, abs(v_right - pw_inner_closed(l1, l2, InnerProductKind.RIGHT, qp)))
    return {"left orthogonality": left, "right orthogonality": right}


def tensor_suite(qp: QParam, max_two_l: int = 4, ms=(-1, 0, 1)) -> dict:
    worst = 0.0
    dims_ok = True
    for l1 in range(max_two_l + 1):
        for l2 in range(max_two_l + 1):
            for m in ms:
                for n in ms:
                    p, r = CorepLabel(l1, m), CorepLabel(l2, n)
                    dims_ok &= sum(s.dim for s in decompose(p, r)) == p.dim * r.dim
                    worst = max(worst, verify_decomposition(p, r, qp))
    return {"character identity": worst, "dimension count": 0.0 if dims_ok else float("inf")}


def fourier_suite(qp: QParam, bound: int = 2, samples: int = 50, seed: int = SEED) -> dict:
    trip = pre = support = 0.0
    for mono in monomials_in_box(bound):
        f = Element({mono: 1.0})
        coeffs = fourier(f, qp)
        if not set(coeffs.blocks) <= support_bound(f):
            support = float("inf")
        trip = max(trip, distance(inverse_fourier(coeffs, qp), f))
        pre = max(pre, distance(preimage(coeffs, qp), f))
    rng = random.Random(seed)
    rand_trip = planch = 0.0
    for _ in range(samples):
        f, g = random_element(rng, 3, 2), random_element(rng, 3, 2)
        ff, gg = fourier(f, qp), fourier(g, qp)
        rand_trip = max(rand_trip, distance(inverse_fourier(ff, qp), f))
        planch = max(planch, abs(plancherel_pairing(ff, gg, qp) - complex(inner_left(f, g, qp))))
    return {"round trip on monomials": trip, "preimage on monomials": pre, "support bound": support,
            "round trip on random elements": rand_trip, "Plancherel": planch}


def oracle_suite(qp: QParam, trunc: TruncationSpec = TruncationSpec(), pairs: int = 200,
                 seed: int = SEED) -> dict:
    rep = build_rep(qp, trunc)
    rng = random.Random(seed)
    prod = adj = 0.0
    for _ in range(pairs):
        x, y = random_element(rng, 2, 2), random_element(rng, 2, 2)
        prod = max(prod, product_defect(rep, x, y, multiply(x, y, qp)))
    for _ in range(pairs // 4):
        x = random_element(rng, 2, 2)
        adj = max(adj, adjoint_defect(rep, x, star(x, qp)))
    out = {"relations": relation_defect(rep), "products": prod, "adjoints": adj}
    if qp.regime is Regime.MODULUS_LESS_ONE:
        worst = 0.0
        for m in range(4):
            z = Element.mono(m=m, k=m)
            value, tail = numeric_haar(rep, z)
            worst = max(worst, abs(value - complex(haar(z, qp))) - tail)
        out["numeric Haar"] = max(worst, 0.0)
    return out


def classify_suite(qp: QParam, max_degree: int = 3) -> dict:
    out = {kind.value: verify_morphism(iso(kind, qp)) for kind in IsoKind}
    wrong = with_target(iso(IsoKind.INVERSE_Q, qp), QParam(2 * qp.q))
    # a healthy negative control reports zero here
    out["negative control"] = max(0.0, 1e-3 - verify_morphism(wrong))
    # Haar compatibility: h_{q'}(Φ(x)) = h_q(x), evaluated through the pullback when needed
    worst = 0.0
    for kind in IsoKind:
        gmap = iso(kind, qp)
        for mono in monomials_in_box(max_degree):
            if abs(mono.n) + mono.m + mono.k + abs(mono.l) > max_degree:
                continue
            x = Element({mono: 1.0})
            worst = max(worst, abs(complex(haar_pullback(extend(gmap, x), gmap.target))
                                   - complex(haar_pullback(x, qp))))
    out["Haar compatibility"] = worst
    return out


def gram_suite(qp: QParam, bound: int = 1) -> dict:
    out = {}
    for kind in InnerProductKind:
        gram = gram_matrix(monomials_in_box(bound), kind, qp)
        herm = float(np.abs(gram - gram.conj().T).max())
        low = float(np.linalg.eigvalsh((gram + gram.conj().T) / 2).min())
        out[f"{kind.value} Hermitian"] = herm
        # reported as a shortfall below the 1e-6 positivity margin
        out[f"{kind.value} positivity"] = max(0.0, 1e-6 - low)
    return out


SUITES: dict[str, Callable[..., dict]] = {
    "engine": engine_suite,
    "hopf-axioms": hopf_suite,
    "haar": haar_suite,
    "unitarity": unitarity_suite,
    "corep-routes": corep_routes_suite,
    "peter-weyl": peter_weyl_suite,
    "tensor": tensor_suite,
    "fourier": fourier_suite,
    "oracle": oracle_suite,
    "classify": classify_suite,
    "gram": gram_suite,
}
