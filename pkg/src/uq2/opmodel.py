"""Truncated operator representations used as a numerical oracle.

|q| < 1 acts on ℓ²(ℕ) ⊗ ℓ²(ℤ) ⊗ ℓ²(ℤ):

    π(a) = √(1-|q|^{2N}) V ⊗ I ⊗ I   (V e_n = e_{n+1}, diagonal applied after V)
    π(b) = q^N ⊗ U ⊗ I
    π(D) = I ⊗ (q̄/q)^N ⊗ U

and |q| = 1 acts on ℓ²(ℤ)^{⊗3}:

    π(a) = U ⊗ I ⊗ (U* + U)/2,  π(b) = q^N ⊗ U ⊗ (U* - U)/(2i),  π(D) = U² ⊗ I ⊗ U.

Each factor is truncated (ℕ to 0..nCut-1, ℤ to -M..M). Every generator image
is a Kronecker product of three small factor matrices, so every monomial is
too; elements are kept as lists of (coefficient, F1, F2, F3) and full
operators are assembled only on request.

Comparisons are made on interior basis vectors whose coordinates stay a full
shift budget away from every truncation edge, where the truncated factors act
exactly. On that column grid each factor splits into diagonal bands, and the
entries of a Kronecker sum at a fixed band triple form an outer-product sum
over the grid, which is how entrywise defects are evaluated.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import reduce

import numpy as np
import scipy.sparse as sp

from .algebra import Element, Monomial, relation_residuals
from .qcomb import QParam, Regime, RegimeError


@dataclass(frozen=True)
class TruncationSpec:
    n_cut: int = 60
    z_window: int = 24

    def __post_init__(self):
        if self.n_cut < 1 or self.z_window < 1:
            raise ValueError("n_cut and z_window must be positive")


@dataclass
class OperatorRep:
    """Truncated images of a, b, D given factor by factor.

    ``a``, ``b``, ``d`` assemble the full sparse operators on the tensor
    product; ``factors`` holds the three small dense factors per generator.
    """

    qp: QParam
    trunc: TruncationSpec
    regime: Regime
    dims: tuple
    factors: dict
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    @property
    def d_shift(self) -> int:
        """How far one power of D can move a basis vector in a single factor."""
        return 2 if self.regime is Regime.MODULUS_ONE else 1

    def _full(self, name: str) -> sp.csr_matrix:
        if name not in self._cache:
            self._cache[name] = _kron(*(sp.csr_matrix(f) for f in self.factors[name]))
        return self._cache[name]

    @property
    def a(self) -> sp.csr_matrix:
        return self._full("a")

    @property
    def b(self) -> sp.csr_matrix:
        return self._full("b")

    @property
    def d(self) -> sp.csr_matrix:
        return self._full("d")


def _shift(size: int) -> np.ndarray:
    """e_i -> e_{i+1}; the top basis vector is sent to zero."""
    return np.eye(size, k=-1, dtype=complex)


def _kron(*mats) -> sp.csr_matrix:
    return reduce(lambda x, y: sp.kron(x, y, format="csr"), mats)


def build_rep(qp: QParam, trunc: TruncationSpec = TruncationSpec()) -> OperatorRep:
    regime = qp.regime
    if regime is Regime.MODULUS_GREATER_ONE:
        raise RegimeError("no operator model for |q| > 1; pull back through the isomorphism to 1/q")
    size_z = 2 * trunc.z_window + 1
    zs = np.arange(-trunc.z_window, trunc.z_window + 1)
    u_z = _shift(size_z)
    i_z = np.eye(size_z, dtype=complex)
    q = qp.q
    if regime is Regime.MODULUS_LESS_ONE:
        ns = np.arange(trunc.n_cut)
        pa = np.diag(np.sqrt(1 - qp.r2 ** ns)).astype(complex) @ _shift(trunc.n_cut)
        i_n = np.eye(trunc.n_cut, dtype=complex)
        factors = {
            "a": (pa, i_z, i_z),
            "b": (np.diag(q ** ns), u_z, i_z),
            "d": (i_n, np.diag((q.conjugate() / q) ** zs), u_z),
        }
        dims = (trunc.n_cut, size_z, size_z)
    else:
        u_star = u_z.conj().T
        factors = {
            "a": (u_z, i_z, (u_star + u_z) / 2),
            "b": (np.diag(q ** zs), u_z, (u_star - u_z) / 2j),
            "d": (u_z @ u_z, i_z, u_z),
        }
        dims = (size_z, size_z, size_z)
    return OperatorRep(qp, trunc, regime, dims, factors)


def _gen_power_factors(rep: OperatorRep, name: str, e: int) -> tuple:
    key = ("pow", name, e)
    if key not in rep._cache:
        if e == 0:
            rep._cache[key] = tuple(np.eye(s, dtype=complex) for s in rep.dims)
        else:
            base = rep.factors[name.rstrip("*")]
            if name.endswith("*"):
                base = tuple(f.conj().T for f in base)
            prev = _gen_power_factors(rep, name, e - 1)
            rep._cache[key] = tuple(p @ f for p, f in zip(prev, base))
    return rep._cache[key]


def monomial_factors(rep: OperatorRep, mono: Monomial) -> tuple:
    """The three factor matrices of π(mono)."""
    key = ("mono", tuple(mono))
    if key not in rep._cache:
        n, m, k, l = mono
        parts = [
            _gen_power_factors(rep, "a" if n >= 0 else "a*", abs(n)),
            _gen_power_factors(rep, "b", m),
            _gen_power_factors(rep, "b*", k),
            _gen_power_factors(rep, "d" if l >= 0 else "d*", abs(l)),
        ]
        rep._cache[key] = tuple(reduce(lambda x, y: x @ y, fs) for fs in zip(*parts))
    return rep._cache[key]


def element_terms(rep: OperatorRep, x: Element) -> list:
    return [(complex(c), *monomial_factors(rep, mono)) for mono, c in x.terms.items()]


def shift_budget(rep: OperatorRep, x: Element) -> int:
    """Largest distance any monomial of x can move a basis vector in one factor."""
    return max((abs(mo.n) + mo.m + mo.k + rep.d_shift * abs(mo.l) for mo in x.terms), default=0)


def check_margin(rep: OperatorRep, budget: int) -> None:
    limit = rep.trunc.z_window
    if rep.regime is Regime.MODULUS_LESS_ONE:
        limit = min(limit, rep.trunc.n_cut - 1)
    if budget > limit:
        raise ValueError(f"shift budget {budget} exceeds truncation margin {limit}; enlarge nCut/zWindow")


def apply_element(rep: OperatorRep, x: Element) -> sp.csr_matrix:
    """The full sparse operator π(x) on the truncated space."""
    check_margin(rep, shift_budget(rep, x))
    out = sp.csr_matrix((rep.dim, rep.dim), dtype=complex)
    for c, f1, f2, f3 in element_terms(rep, x):
        out = out + c * _kron(sp.csr_matrix(f1), sp.csr_matrix(f2), sp.csr_matrix(f3))
    return out.tocsr()


def interior_axes(rep: OperatorRep, margin: int) -> list:
    """Per-factor index arrays of the interior column grid."""
    w = rep.trunc.z_window
    z_idx = np.flatnonzero(np.abs(np.arange(-w, w + 1)) <= w - margin)
    if rep.regime is Regime.MODULUS_ONE:
        axes = [z_idx, z_idx, z_idx]
    else:
        axes = [np.arange(max(rep.trunc.n_cut - margin, 0)), z_idx, z_idx]
    if any(ax.size == 0 for ax in axes):
        raise ValueError(f"interior is empty for margin {margin}; enlarge nCut/zWindow")
    return axes


def interior_columns(rep: OperatorRep, margin: int) -> np.ndarray:
    """Flat indices of the interior column grid."""
    axes = interior_axes(rep, margin)
    grids = np.meshgrid(*axes, indexing="ij")
    return np.ravel_multi_index(tuple(g.ravel() for g in grids), rep.dims)


def _bands(mat: np.ndarray, cols: np.ndarray) -> dict:
    """offset s -> vector of mat[c+s, c] over the given columns, for nonzero bands."""
    sub = mat[:, cols]
    rows, pos = np.nonzero(sub)
    out = {}
    for s in np.unique(rows - cols[pos]):
        r = cols + s
        ok = (r >= 0) & (r < mat.shape[0])
        vec = np.zeros(cols.size, dtype=complex)
        vec[ok] = mat[r[ok], cols[ok]]
        out[int(s)] = vec
    return out


def kron_sum_bands(terms: list, axes: list) -> dict:
    """Band decomposition of Σ c F1⊗F2⊗F3 restricted to the column grid.

    Returns (s1, s2, s3) -> 3-D array over the grid of the entry at row
    offset (s1, s2, s3) from each column.
    """
    acc: dict = defaultdict(lambda: np.zeros(tuple(ax.size for ax in axes), dtype=complex))
    for c, f1, f2, f3 in terms:
        b1, b2, b3 = (_bands(f, ax) for f, ax in zip((f1, f2, f3), axes))
        for s1, v1 in b1.items():
            cv1 = c * v1
            for s2, v2 in b2.items():
                p12 = np.multiply.outer(cv1, v2)
                for s3, v3 in b3.items():
                    acc[(s1, s2, s3)] += np.multiply.outer(p12, v3)
    return acc


def kron_sum_max_abs(terms: list, axes: list) -> float:
    bands = kron_sum_bands(terms, axes)
    return max((float(np.abs(v).max()) for v in bands.values()), default=0.0)


def product_terms(xs: list, ys: list) -> list:
    return [(cx * cy, f1 @ g1, f2 @ g2, f3 @ g3)
            for cx, f1, f2, f3 in xs for cy, g1, g2, g3 in ys]


def _negate(terms: list) -> list:
    return [(-c, f1, f2, f3) for c, f1, f2, f3 in terms]


def product_defect(rep: OperatorRep, x: Element, y: Element, xy: Element) -> float:
    """Largest entry of π(x)π(y) - π(xy) on the interior columns."""
    margin = max(shift_budget(rep, x) + shift_budget(rep, y), shift_budget(rep, xy))
    check_margin(rep, margin)
    axes = interior_axes(rep, margin)
    lhs = product_terms(element_terms(rep, x), element_terms(rep, y))
    return kron_sum_max_abs(lhs + _negate(element_terms(rep, xy)), axes)


def adjoint_defect(rep: OperatorRep, x: Element, x_star: Element) -> float:
    """Largest entry of π(x*) - π(x)^† on the interior columns."""
    margin = shift_budget(rep, x)
    check_margin(rep, margin)
    axes = interior_axes(rep, margin)
    adj = [(c.conjugate(), f1.conj().T, f2.conj().T, f3.conj().T) for c, f1, f2, f3 in element_terms(rep, x)]
    return kron_sum_max_abs(element_terms(rep, x_star) + _negate(adj), axes)


def spectral_bound(mat: sp.spmatrix, cols: np.ndarray) -> float:
    """Upper bound sqrt(‖R‖₁‖R‖∞) for the spectral norm of R = mat restricted to cols."""
    sub = abs(mat.tocsc()[:, cols])
    if sub.nnz == 0:
        return 0.0
    col_sum = float(sub.sum(axis=0).max())
    row_sum = float(sub.sum(axis=1).max())
    return float(np.sqrt(col_sum * row_sum))


def relation_defects(rep: OperatorRep) -> dict:
    """Interior spectral-norm bounds of the defining relation residuals, by relation."""
    eye = sp.identity(rep.dim, dtype=complex, format="csr")
    adj = lambda m: m.conj().T.tocsr()  # noqa: E731
    res = relation_residuals(rep.a, adj(rep.a), rep.b, adj(rep.b), rep.d, adj(rep.d), eye,
                             lambda x, y: x @ y, rep.qp)
    cols = interior_columns(rep, 2 * rep.d_shift)
    return {name: max(spectral_bound(m, cols) for m in (val if isinstance(val, tuple) else (val,)))
            for name, val in res.items()}


def relation_defect(rep: OperatorRep) -> float:
    return max(relation_defects(rep).values())


def numeric_haar(rep: OperatorRep, x: Element) -> tuple:
    """Partial sum (1-|q|²) Σ_n |q|^{2n} ⟨e_{n,0,0}, π(x) e_{n,0,0}⟩ and a tail bound.

    The sum stops at n = nCut-1-P, with P the shift budget of x, so every
    used diagonal entry is free of truncation effects. The omitted tail is
    bounded by |q|^{2(nCut-P)} Σ|c|, because π maps monomials to contractions.
    """
    if rep.regime is not Regime.MODULUS_LESS_ONE:
        raise RegimeError("the series form of the Haar state needs |q| < 1")
    budget = shift_budget(rep, x)
    check_margin(rep, budget)
    top = rep.trunc.n_cut - 1 - budget
    r2 = rep.qp.r2
    z0 = rep.trunc.z_window
    weights = r2 ** np.arange(top + 1)
    total = 0j
    for c, f1, f2, f3 in element_terms(rep, x):
        diag = np.diagonal(f1)[: top + 1]
        total += c * f2[z0, z0] * f3[z0, z0] * np.dot(weights, diag)
    total *= 1 - r2
    l1 = sum(float(abs(c)) for c in x.terms.values())
    tail = r2 ** (top + 1) * l1
    return complex(total), tail
