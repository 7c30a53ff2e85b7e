"""Deformation parameter and q-combinatorial special functions.

Spins are passed around as doubled integers (``two_l = 2*l``) so that
half-integer bookkeeping stays exact.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from functools import lru_cache

TOL = 1e-9
ROOT_OF_UNITY_ORDER = 64
ROOT_OF_UNITY_EPS = 1e-12
UNIT_MODULUS_EPS = 1e-12


class Regime(enum.Enum):
    MODULUS_LESS_ONE = "ModulusLessOne"
    MODULUS_ONE = "ModulusOne"
    MODULUS_GREATER_ONE = "ModulusGreaterOne"


class RegimeError(ValueError):
    """Raised when an operation is not defined in the regime of q."""


@dataclass(frozen=True)
class QParam:
    """A nonzero complex deformation parameter that is not a root of unity."""

    q: complex

    def __post_init__(self):
        q = complex(self.q)
        object.__setattr__(self, "q", q)
        if q == 0:
            raise ValueError("q must be nonzero")
        power = 1 + 0j
        for n in range(1, ROOT_OF_UNITY_ORDER + 1):
            power *= q
            if abs(power - 1) <= ROOT_OF_UNITY_EPS:
                raise ValueError(f"q={q!r} is a root of unity of order {n}")

    @classmethod
    def from_parts(cls, re: float, im: float = 0.0) -> "QParam":
        return cls(complex(re, im))

    @property
    def qbar(self) -> complex:
        return self.q.conjugate()

    @property
    def r(self) -> float:
        """Modulus |q|; snapped to exactly 1 inside the unit-circle band."""
        r = abs(self.q)
        return 1.0 if abs(r - 1) <= UNIT_MODULUS_EPS else r

    @property
    def r2(self) -> float:
        return self.r * self.r

    @property
    def theta(self) -> float:
        return cmath.phase(self.q) / math.pi

    @property
    def regime(self) -> Regime:
        r = abs(self.q)
        if abs(r - 1) <= UNIT_MODULUS_EPS:
            return Regime.MODULUS_ONE
        return Regime.MODULUS_LESS_ONE if r < 1 else Regime.MODULUS_GREATER_ONE

    @property
    def phase_ratio(self) -> complex:
        """q / conj(q), the constant in the relation bD = (q/q̄) Db."""
        return self.q / self.qbar

    def __str__(self) -> str:
        return f"q={self.q.real:+.12g}{self.q.imag:+.12g}i"


def isclose(x: complex, y: complex, tol: float = TOL) -> bool:
    """Relative comparison against the larger magnitude, absolute near zero."""
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def _num():
    from . import numeric
    return numeric


def q_pochhammer(alpha: complex, base: complex, n: int) -> complex:
    """(alpha; base)_n = prod_{r<n} (1 - alpha*base^r)."""
    if n < 0:
        raise ValueError("n must be a natural number")
    out = _num().one()
    p = _num().one()
    for _ in range(n):
        out *= 1 - alpha * p
        p *= base
    return out


@lru_cache(maxsize=None)
def _gauss_row(n: int, base, bits) -> tuple:
    # Pascal recursion keeps the base = 1 limit finite (ordinary binomials).
    one = _num().one()
    if n == 0:
        return (one,)
    prev = _gauss_row(n - 1, base, bits)
    row = [one]
    for m in range(1, n):
        row.append(prev[m - 1] + base ** m * prev[m])
    row.append(one)
    return tuple(row)


def q_binomial(n: int, m: int, base: complex) -> complex:
    """Gaussian binomial coefficient [n choose m] at the given base."""
    if n < 0 or m < 0:
        raise ValueError("q_binomial needs natural arguments")
    if m > n:
        raise ValueError(f"q_binomial: m={m} exceeds n={n}")
    num = _num()
    value = _gauss_row(n, num.coerce(base), num.precision_bits())[m]
    return value.real if value.imag == 0 else value


def box_bracket(m: int, r: float) -> float:
    """|m+1|_r = sum_{k=0}^{m} r^(m-2k); equals m+1 at r = 1."""
    if r <= 0:
        raise ValueError("box_bracket needs r > 0")
    if r == 1:
        return _num().coerce_real(m + 1)
    return sum((r ** (m - 2 * k) for k in range(m + 1)), _num().coerce_real(0))


def little_q_jacobi_coeffs(n: int, alpha: int, beta: int, base: complex) -> list[complex]:
    """Power-series coefficients c_r with P_n^{(alpha,beta)}(z; base) = sum c_r z^r.

    The terminating sum is
    sum_r (base^-n; base)_r (base^(alpha+beta+n+1); base)_r
          / ((base; base)_r (base^(alpha+1); base)_r) * (base z)^r.
    At base = 1 the classical limit 2F1(-n, alpha+beta+n+1; alpha+1; z) is used.
    """
    if n < 0:
        raise ValueError("degree must be natural")
    num = _num()
    base = num.coerce(base)
    if abs(base - 1) <= UNIT_MODULUS_EPS:
        coeffs = [num.one()]
        c = num.one()
        for r in range(n):
            den = (r + 1) * (alpha + 1 + r)
            if den == 0:
                raise ValueError("little_q_jacobi: vanishing denominator in classical limit")
            c = c * (-n + r) * (alpha + beta + n + 1 + r) / den
            coeffs.append(c)
        return coeffs
    coeffs = []
    for r in range(n + 1):
        den = q_pochhammer(base, base, r) * q_pochhammer(base ** (alpha + 1), base, r)
        if abs(den) <= ROOT_OF_UNITY_EPS:
            raise ValueError("little_q_jacobi: vanishing denominator Pochhammer")
        num_ = q_pochhammer(base ** (-n), base, r) * q_pochhammer(base ** (alpha + beta + n + 1), base, r)
        coeffs.append(num_ / den * base ** r)
    return coeffs


def little_q_jacobi(n: int, alpha: int, beta: int, z: complex, base: complex) -> complex:
    coeffs = little_q_jacobi_coeffs(n, alpha, beta, base)
    out = _num().zero()
    for c in reversed(coeffs):
        out = out * z + c
    return out


def spin_range(two_l: int) -> range:
    """Doubled indices 2i for i in {-l, ..., l}."""
    return range(-two_l, two_l + 1, 2)


def check_spin(two_l: int, *two_idx: int) -> None:
    if two_l < 0:
        raise ValueError(f"spin 2l={two_l} must be natural")
    for t in two_idx:
        if abs(t) > two_l or (t - two_l) % 2:
            raise ValueError(f"index 2i={t} is not in I_l for 2l={two_l}")


def fmt_half(two_x: int) -> str:
    return str(two_x // 2) if two_x % 2 == 0 else f"{two_x}/2"
