"""Fourier transform, its inverse, the q-trace and the Plancherel pairing.

Block (l, k) of the transform of f has entries ĥ_{m,n} = h(S(t^l_{mn} D^k) f).
Since S(t^l_{mn} D^k) = (t^l_{nm} D^k)^*, an entry equals ⟨t^l_{nm} D^k, f⟩_L
and vanishes unless f has a component in the grade of t^l_{nm} D^k. Only
those entries are evaluated.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import numeric
from .algebra import Element, graded_components, zeta_degree
from .corep import matcoef
from .haar import _require_haar_regime, haar_of_product
from .hopf import antipode
from .qcomb import QParam, box_bracket, check_spin, spin_range


@dataclass
class FourierCoefficients:
    """Finite family of blocks (2l, k) -> (2l+1)x(2l+1) complex matrix.

    Rows and columns are ordered by increasing 2i, as in CorepMatrix.
    """

    blocks: dict = field(default_factory=dict)

    def block(self, two_l: int, k: int) -> np.ndarray:
        return self.blocks.get((two_l, k), np.zeros((two_l + 1, two_l + 1), dtype=complex))

    def pruned(self, tol: float = 0.0) -> "FourierCoefficients":
        return FourierCoefficients({key: m for key, m in self.blocks.items() if np.abs(m).max() > tol})

    def to_records(self) -> list[dict]:
        return [
            {"twoL": two_l, "k": k,
             "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in mat]}
            for (two_l, k), mat in sorted(self.blocks.items())
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_records())

    @classmethod
    def from_records(cls, records: list[dict]) -> "FourierCoefficients":
        blocks = {}
        for rec in records:
            mat = np.array([[complex(re, im) for re, im in row] for row in rec["matrix"]], dtype=complex)
            two_l = int(rec["twoL"])
            if mat.shape != (two_l + 1, two_l + 1):
                raise ValueError(f"block 2l={two_l} has shape {mat.shape}")
            blocks[(two_l, int(rec["k"]))] = mat
        return cls(blocks)

    @classmethod
    def from_json(cls, text: str) -> "FourierCoefficients":
        return cls.from_records(json.loads(text))


def _slot(two_l: int, two_i: int) -> int:
    return (two_i + two_l) // 2


def _component_labels(grade: tuple, zdeg: int):
    """Yield (2l, 2i, 2j, k) with t^l_{ij} D^k in the given grade."""
    two_i, two_j, r = -grade[0], -grade[1], grade[2]
    base = max(abs(two_i), abs(two_j))
    for step in range(zdeg + 1):
        two_l = base + 2 * step
        yield two_l, two_i, two_j, r - (two_l + two_i) // 2


def support_bound(f: Element) -> set:
    """Block labels (2l, k) that can be nonzero in the transform of f."""
    labels = set()
    for grade, comp in graded_components(f).items():
        for two_l, _, _, k in _component_labels(grade, zeta_degree(comp)):
            labels.add((two_l, k))
    return labels


def fourier(f: Element, qp: QParam) -> FourierCoefficients:
    _require_haar_regime(qp)
    blocks: dict = {}
    for grade, comp in graded_components(f).items():
        for two_l, two_i, two_j, k in _component_labels(grade, zeta_degree(comp)):
            # entry (j, i) of block (l, k) pairs f against t^l_{ij} D^k
            s = antipode(matcoef(two_l, two_j, two_i, k, qp), qp)
            value = complex(haar_of_product(s, comp, qp))
            mat = blocks.setdefault((two_l, k), np.zeros((two_l + 1, two_l + 1), dtype=complex))
            mat[_slot(two_l, two_j), _slot(two_l, two_i)] += value
    return FourierCoefficients(blocks).pruned()


def _dim_weight(two_l: int, qp: QParam):
    return box_bracket(two_l, numeric.modulus(qp))


def inverse_fourier(coeffs: FourierCoefficients, qp: QParam) -> Element:
    """f = Σ |2l+1|_{|q|} Σ_{i,j} |q|^{-2i} ĥ^{(l,k)}_{j,i} t^l_{ij} D^k."""
    r = numeric.modulus(qp)
    out = Element()
    for (two_l, k), mat in coeffs.blocks.items():
        dim = _dim_weight(two_l, qp)
        for two_i in spin_range(two_l):
            for two_j in spin_range(two_l):
                c = mat[_slot(two_l, two_j), _slot(two_l, two_i)]
                if c != 0:
                    out = out + matcoef(two_l, two_i, two_j, k, qp) * (dim * r ** (-two_i) * c)
    return out


def preimage(coeffs: FourierCoefficients, qp: QParam) -> Element:
    """An element whose transform is ``coeffs``, written with the geometric-sum weight.

    Uses Σ |q|^{-2(l+j)} (1-|q|^{2(2l+1)})/(1-|q|²) φ_{i,j} t^l_{ji} D^k, which at
    |q| = 1 reads (2l+1) φ_{i,j} t^l_{ji} D^k. It is an independent spelling of
    the inverse transform that exercises the dimension constant directly.
    """
    r2 = numeric.qvals(qp)[1]
    r = numeric.modulus(qp)
    out = Element()
    for (two_l, k), mat in coeffs.blocks.items():
        for two_i in spin_range(two_l):
            for two_j in spin_range(two_l):
                c = mat[_slot(two_l, two_i), _slot(two_l, two_j)]
                if c == 0:
                    continue
                if r == 1:
                    weight = two_l + 1
                else:
                    weight = r ** (-(two_l + two_j)) * (1 - r2 ** (two_l + 1)) / (1 - r2)
                out = out + matcoef(two_l, two_j, two_i, k, qp) * (weight * c)
    return out


def q_trace(two_l: int, mat, qp: QParam) -> complex:
    """Σ_i |q|^{-2i} m_ii."""
    check_spin(two_l)
    mat = np.asarray(mat)
    if mat.shape != (two_l + 1, two_l + 1):
        raise ValueError(f"expected a {two_l + 1}x{two_l + 1} matrix, got {mat.shape}")
    r = numeric.to_float(numeric.modulus(qp))
    return complex(sum(r ** (-two_i) * mat[_slot(two_l, two_i), _slot(two_l, two_i)]
                       for two_i in spin_range(two_l)))


def plancherel_pairing(f_hat: FourierCoefficients, g_hat: FourierCoefficients, qp: QParam) -> complex:
    """Σ_{l,k} |2l+1|_{|q|} τ_l(F^{(l,k)*} G^{(l,k)}); conjugate-linear in the first slot."""
    total = 0j
    for key in f_hat.blocks.keys() & g_hat.blocks.keys():
        two_l = key[0]
        prod = f_hat.blocks[key].conj().T @ g_hat.blocks[key]
        total += numeric.to_float(_dim_weight(two_l, qp)) * q_trace(two_l, prod, qp)
    return total
