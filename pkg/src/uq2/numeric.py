"""Scalar arithmetic mode: machine complex by default, MPFR on request.

Normal forms can carry coefficients of size |q|^{-p(p-1)} that cancel in
later sums (e.g. a^p (a*)^p expands into such terms). Inside
:func:`extended_precision` every coefficient becomes a ``gmpy2.mpc`` and all
q-dependent constants are recomputed at the working precision, so those
cancellations stay exact to far below any reporting tolerance.
"""
from __future__ import annotations

import contextlib
import contextvars
import math

import gmpy2

from .qcomb import QParam, Regime

DEFAULT_EXTENDED_BITS = 192

_BITS: contextvars.ContextVar = contextvars.ContextVar("uq2_precision_bits", default=None)


def precision_bits():
    """None in machine-precision mode, else the MPFR mantissa width."""
    return _BITS.get()


@contextlib.contextmanager
def extended_precision(bits: int = DEFAULT_EXTENDED_BITS):
    token = _BITS.set(bits)
    try:
        with gmpy2.context(gmpy2.get_context(), precision=bits):
            yield
    finally:
        _BITS.reset(token)


def coerce(c):
    if _BITS.get() is None:
        return complex(c)
    return gmpy2.mpc(c)


def coerce_real(x):
    if _BITS.get() is None:
        return float(x)
    return gmpy2.mpfr(x)


def sqrt(x):
    if _BITS.get() is None:
        return math.sqrt(x)
    return gmpy2.sqrt(gmpy2.mpfr(x))


def one():
    return coerce(1)


def zero():
    return coerce(0)


def prune_rtol() -> float:
    bits = _BITS.get()
    if bits is None:
        return 1e-14
    # keep roughly 20 bits of headroom above the working epsilon
    return 2.0 ** (-(bits - 20))


def qvals(qp: QParam) -> tuple:
    """(q, |q|^2, bits) at the working precision; bits joins cache keys."""
    bits = _BITS.get()
    if bits is None:
        return qp.q, qp.r2, None
    q = gmpy2.mpc(qp.q)
    if qp.regime is Regime.MODULUS_ONE:
        return q / abs(q), gmpy2.mpfr(1), bits
    return q, q.real ** 2 + q.imag ** 2, bits


def modulus(qp: QParam):
    """|q| at the working precision (exactly 1 on the unit circle)."""
    q, r2, bits = qvals(qp)
    return qp.r if bits is None else gmpy2.sqrt(r2)


def to_complex(c) -> complex:
    return complex(c)


def to_float(x) -> float:
    return float(x)
