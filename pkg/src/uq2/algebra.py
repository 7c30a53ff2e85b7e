"""Normal forms in O(U_q(2)) on the basis <n,m,k,l> = a^n b^m (b*)^k D^l.

Negative ``n`` encodes (a*)^{-n} and negative ``l`` encodes (D*)^{-l}.
Products are reduced with the commutation rules

    ba = q ab,  b a* = q^-1 a* b,  b* a = q̄ a b*,  b* a* = q̄^-1 a* b*,
    D^l b^m (b*)^k = (q̄/q)^{l(m-k)} b^m (b*)^k D^l,  D a = a D,

and collisions of a against a* are resolved in one pass with

    a^p (a*)^p = sum_j (-1)^j [p j]_{|q|^2} |q|^{j^2+j-2jp} ζ^j
    (a*)^p a^p = sum_j (-1)^j [p j]_{|q|^2} |q|^{j^2+j} ζ^j,      ζ = bb*.
"""
from __future__ import annotations

import json
from collections import defaultdict
from functools import lru_cache
from typing import Callable, Iterable, Mapping, NamedTuple

from . import numeric
from .qcomb import TOL, QParam, q_binomial


class Monomial(NamedTuple):
    n: int
    m: int
    k: int
    l: int

    def __str__(self) -> str:
        return f"<{self.n},{self.m},{self.k},{self.l}>"

    @property
    def degree(self) -> int:
        return abs(self.n) + self.m + self.k + abs(self.l)


ONE_MONO = Monomial(0, 0, 0, 0)


class Element:
    """A finite linear combination of basis monomials.

    Treated as an immutable value; arithmetic returns new elements. Only
    linear operations are available as operators because the product
    depends on q (see :func:`multiply`).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, complex] | None = None, prune: bool = True):
        coerce = numeric.coerce
        terms = {Monomial(*mono): coerce(c) for mono, c in (terms or {}).items()}
        self.terms = _pruned(terms) if prune else terms

    @classmethod
    def mono(cls, n: int = 0, m: int = 0, k: int = 0, l: int = 0, coeff: complex = 1.0) -> "Element":
        if m < 0 or k < 0:
            raise ValueError("b and b* powers must be natural")
        return cls({Monomial(n, m, k, l): coeff})

    @classmethod
    def one(cls) -> "Element":
        return cls({ONE_MONO: 1.0})

    @classmethod
    def zero(cls) -> "Element":
        return cls({})

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def coeff(self, mono: Monomial) -> complex:
        return self.terms.get(mono, 0j)

    def is_zero(self, tol: float = TOL) -> bool:
        return all(abs(c) <= tol for c in self.terms.values())

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            other = scalar(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0j) + c
        return Element(out)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element({mono: -c for mono, c in self.terms.items()}, prune=False)

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            other = scalar(other)
        return self + (-other)

    def __rsub__(self, other) -> "Element":
        return scalar(other) - self

    def __mul__(self, c: complex) -> "Element":
        if isinstance(c, Element):
            raise TypeError("use multiply(x, y, qp) for algebra products")
        return Element({mono: c * v for mono, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c: complex) -> "Element":
        return self * (1 / c)

    def norm(self) -> float:
        """Max-coefficient norm used for defect reporting."""
        return max((float(abs(c)) for c in self.terms.values()), default=0.0)

    def max_degree(self) -> int:
        return max((mono.degree for mono in self.terms), default=0)

    def __repr__(self) -> str:
        if not self.terms:
            return "Element(0)"
        body = " + ".join(f"({complex(c).real:.6g}{complex(c).imag:+.6g}j){mono}" for mono, c in self)
        return f"Element({body})"


def _pruned(terms: dict) -> dict:
    if not terms:
        return terms
    cutoff = numeric.prune_rtol() * max(abs(c) for c in terms.values())
    return {mono: c for mono, c in terms.items() if abs(c) > cutoff}


def scalar(c: complex) -> Element:
    return Element({ONE_MONO: c})


def add(x: Element, y: Element) -> Element:
    return x + y


def scale(c: complex, x: Element) -> Element:
    return x * c


def isclose(x: Element, y: Element, tol: float = TOL) -> bool:
    return distance(x, y) <= tol


def distance(x: Element, y: Element) -> float:
    """Largest coefficient gap, measured relative to the larger magnitude
    (absolute when both coefficients are below one)."""
    worst = 0.0
    for mono in set(x.terms) | set(y.terms):
        cx, cy = x.terms.get(mono, 0j), y.terms.get(mono, 0j)
        worst = max(worst, float(abs(cx - cy) / max(1.0, abs(cx), abs(cy))))
    return worst


# generators ---------------------------------------------------------------

def gen_a() -> Element:
    return Element.mono(n=1)


def gen_a_star() -> Element:
    return Element.mono(n=-1)


def gen_b() -> Element:
    return Element.mono(m=1)


def gen_b_star() -> Element:
    return Element.mono(k=1)


def gen_d() -> Element:
    return Element.mono(l=1)


def gen_d_star() -> Element:
    return Element.mono(l=-1)


GENERATORS: dict[str, Callable[[], Element]] = {
    "a": gen_a, "a*": gen_a_star, "b": gen_b, "b*": gen_b_star, "D": gen_d, "D*": gen_d_star,
}


def zeta_power(j: int) -> Element:
    return Element.mono(m=j, k=j)


# products -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _collision(s: int, r2: float, a_first: bool, bits) -> tuple:
    """Coefficients of zeta^j in a^s (a*)^s (a_first) or (a*)^s a^s."""
    out = []
    for j in range(s + 1):
        sign = -1 if j % 2 else 1
        # |q|^(j^2+j-2js) and |q|^(j^2+j): the exponent is always even
        half_expo = (j * j + j - 2 * j * s if a_first else j * j + j) // 2
        out.append(sign * q_binomial(s, j, r2) * r2 ** half_expo)
    return tuple(out)


@lru_cache(maxsize=None)
def _mono_mul(x: Monomial, y: Monomial, q: complex, r2: float, bits=None) -> tuple:
    n1, m1, k1, l1 = x
    n2, m2, k2, l2 = y
    qbar = q.conjugate()
    c = (q / qbar) ** (l1 * (k2 - m2)) * q ** (m1 * n2) * qbar ** (k1 * n2)
    m, k, l = m1 + m2, k1 + k2, l1 + l2
    if n1 * n2 >= 0:
        return ((Monomial(n1 + n2, m, k, l), c),)
    p, r = abs(n1), abs(n2)
    s = min(p, r)
    coeffs = _collision(s, r2, n1 > 0, bits)
    out = []
    for j, cj in enumerate(coeffs):
        if p >= r:
            # leftover power sits to the left of zeta^j: already ordered
            n_out, shift = n1 + n2, 1
        elif n1 > 0:
            # zeta^j (a*)^t = |q|^{-2jt} (a*)^t zeta^j
            t = r - s
            n_out, shift = -t, r2 ** (-j * t)
        else:
            # zeta^j a^t = |q|^{2jt} a^t zeta^j
            t = r - s
            n_out, shift = t, r2 ** (j * t)
        out.append((Monomial(n_out, m + j, k + j, l), c * cj * shift))
    return tuple(out)


def mono_product(x: Monomial, y: Monomial, qp: QParam) -> tuple:
    return _mono_mul(Monomial(*x), Monomial(*y), *numeric.qvals(qp))


def multiply(x: Element, y: Element, qp: QParam) -> Element:
    """Normal form of the product xy."""
    qv = numeric.qvals(qp)
    acc: dict = defaultdict(numeric.zero)
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            cxy = cx * cy
            for mono, c in _mono_mul(mx, my, *qv):
                acc[mono] += cxy * c
    return Element(acc)


def product(factors: Iterable[Element], qp: QParam) -> Element:
    out = Element.one()
    for f in factors:
        out = multiply(out, f, qp)
    return out


def power(x: Element, e: int, qp: QParam) -> Element:
    if e < 0:
        raise ValueError("negative powers are only defined for D")
    out = Element.one()
    base = x
    while e:
        if e & 1:
            out = multiply(out, base, qp)
        e >>= 1
        if e:
            base = multiply(base, base, qp)
    return out


@lru_cache(maxsize=None)
def _mono_star(x: Monomial, q: complex, r2: float, bits=None) -> tuple:
    n, m, k, l = x
    # (A(n) b^m b*^k D^l)* = D^-l b^k b*^m A(-n); moving D^-l right past
    # b^k (b*)^m costs (q/q̄)^{-l(m-k)}
    phase = (q / q.conjugate()) ** (-l * (m - k))
    return tuple((mono, phase * c) for mono, c in _mono_mul(Monomial(0, k, m, -l), Monomial(-n, 0, 0, 0), q, r2, bits))


def star(x: Element, qp: QParam) -> Element:
    """Antilinear anti-multiplicative involution."""
    qv = numeric.qvals(qp)
    acc: dict = defaultdict(numeric.zero)
    for mono, c in x.terms.items():
        cc = c.conjugate()
        for mono2, c2 in _mono_star(mono, *qv):
            acc[mono2] += cc * c2
    return Element(acc)


# grading ------------------------------------------------------------------

Grade = tuple  # (g1, g2, g3)


def grade_of(mono: Monomial) -> Grade:
    n, m, k, l = mono
    return (n + m - k, n - m + k, l)


def graded_components(x: Element) -> dict:
    parts: dict = defaultdict(dict)
    for mono, c in x.terms.items():
        parts[grade_of(mono)][mono] = c
    return {g: Element(t, prune=False) for g, t in parts.items()}


def is_homogeneous(x: Element) -> bool:
    return len({grade_of(mono) for mono in x.terms}) <= 1


def e_basis(m: int, n: int) -> Element:
    """The generator e_{m,n} of A_q[m, n] as a free C[zeta]-module.

    When m + n < 0 the defining word b^d (a*)^t is returned as its normal
    monomial (a*)^t b^d with coefficient 1; the two differ by a nonzero scalar,
    which is immaterial for a module generator. Use :func:`e_basis_word` for
    the literal product.
    """
    if (m - n) % 2:
        raise ValueError(f"e_basis: m - n = {m - n} is odd, A_q[m,n] = 0")
    s, d = (m + n) // 2, (m - n) // 2
    return Element.mono(n=s, m=max(d, 0), k=max(-d, 0))


def e_basis_word(m: int, n: int, qp: QParam) -> Element:
    """e_{m,n} as the literal product in its defining case, normal-ordered."""
    if (m - n) % 2:
        raise ValueError(f"e_basis: m - n = {m - n} is odd, A_q[m,n] = 0")
    s, d = (m + n) // 2, (m - n) // 2
    if s >= 0:
        return Element.mono(n=s, m=max(d, 0), k=max(-d, 0))
    return multiply(Element.mono(m=max(d, 0), k=max(-d, 0)), Element.mono(n=s), qp)


def zeta_degree(x: Element) -> int:
    return max((min(mono.m, mono.k) for mono in x.terms), default=0)


def conditional_expectation(x: Element) -> Element:
    """Keep the D-free part: E(D^l) = 1 if l = 0 else 0."""
    return Element({mono: c for mono, c in x.terms.items() if mono.l == 0}, prune=False)


# relations ----------------------------------------------------------------

RELATION_NAMES = (
    "ba=qab", "a*b=qba*", "bb*=b*b", "aa*+bb*=1",
    "aD=Da", "bD=q^2|q|^-2Db", "DD*=D*D=1", "a*a+|q|^2b*b=1",
)


def relation_residuals(a, a_s, b, b_s, d, d_s, one, mul: Callable, qp: QParam) -> dict:
    """Residuals of the defining relations for any concrete images.

    Works for Elements, sparse matrices or anything supporting ``+``, ``-``,
    scalar ``*`` and the supplied ``mul``. The unitarity of D contributes both
    DD* - 1 and D*D - 1 under a single name.
    """
    q, r2, _ = numeric.qvals(qp)
    return {
        "ba=qab": mul(b, a) - q * mul(a, b),
        "a*b=qba*": mul(a_s, b) - q * mul(b, a_s),
        "bb*=b*b": mul(b, b_s) - mul(b_s, b),
        "aa*+bb*=1": mul(a, a_s) + mul(b, b_s) - one,
        "aD=Da": mul(a, d) - mul(d, a),
        "bD=q^2|q|^-2Db": mul(b, d) - (q / q.conjugate()) * mul(d, b),
        "DD*=D*D=1": (mul(d, d_s) - one, mul(d_s, d) - one),
        "a*a+|q|^2b*b=1": mul(a_s, a) + r2 * mul(b_s, b) - one,
    }


def element_relation_defects(qp: QParam) -> dict:
    mul = lambda x, y: multiply(x, y, qp)  # noqa: E731
    res = relation_residuals(gen_a(), gen_a_star(), gen_b(), gen_b_star(), gen_d(), gen_d_star(),
                             Element.one(), mul, qp)
    out = {}
    for name, val in res.items():
        vals = val if isinstance(val, tuple) else (val,)
        out[name] = max(v.norm() for v in vals)
    return out


# serialization --------------------------------------------------------------

def element_to_records(x: Element) -> list[dict]:
    return [{"n": mono.n, "m": mono.m, "k": mono.k, "l": mono.l,
             "re": float(c.real), "im": float(c.imag)} for mono, c in x]


def element_from_records(records: list[dict]) -> Element:
    terms = {}
    for rec in records:
        mono = Monomial(int(rec["n"]), int(rec["m"]), int(rec["k"]), int(rec["l"]))
        terms[mono] = terms.get(mono, 0j) + complex(rec["re"], rec["im"])
    return Element(terms, prune=False)


def element_to_json(x: Element) -> str:
    return json.dumps(element_to_records(x))


def element_from_json(text: str) -> Element:
    return element_from_records(json.loads(text))
