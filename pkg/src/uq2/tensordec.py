"""Clebsch-Gordan rule for T_l D^m and its check through characters."""
from __future__ import annotations

import csv
import io
from typing import NamedTuple, Sequence

from .algebra import Element, multiply
from .corep import matcoef
from .hopf import counit
from .qcomb import QParam, check_spin, fmt_half, spin_range


class CorepLabel(NamedTuple):
    """The irreducible T_l D^m, stored with a doubled spin."""

    two_l: int
    m: int = 0

    def __str__(self) -> str:
        return f"({fmt_half(self.two_l)},{self.m})"

    @property
    def dim(self) -> int:
        return self.two_l + 1


def decompose(p: CorepLabel, r: CorepLabel) -> list[CorepLabel]:
    """Summands (l1+l2-t, m+n+t) for t = 0, ..., 2 min(l1, l2)."""
    check_spin(p.two_l)
    check_spin(r.two_l)
    top = p.two_l + r.two_l
    return [CorepLabel(top - 2 * t, p.m + r.m + t) for t in range(min(p.two_l, r.two_l) + 1)]


def character(p: CorepLabel, qp: QParam) -> Element:
    """Σ_i t^l_{ii} D^m."""
    out = Element()
    for two_i in spin_range(p.two_l):
        out = out + matcoef(p.two_l, two_i, two_i, p.m, qp)
    return out


def character_dimension(p: CorepLabel, qp: QParam) -> complex:
    return counit(character(p, qp))


def verify_decomposition(p: CorepLabel, r: CorepLabel, qp: QParam) -> float:
    """Coefficient norm of χ(p)χ(r) minus the sum of the summand characters."""
    lhs = multiply(character(p, qp), character(r, qp), qp)
    rhs = Element()
    for s in decompose(p, r):
        rhs = rhs + character(s, qp)
    return (lhs - rhs).norm()


def decomposition_rows(pairs: Sequence[tuple], qp: QParam | None = None) -> list[list]:
    """Rows twoL1, m1, twoL2, m2, summands[, defect] for CSV output."""
    rows = []
    for p, r in pairs:
        summands = " ".join(f"{s.two_l}:{s.m}" for s in decompose(p, r))
        row = [p.two_l, p.m, r.two_l, r.m, summands]
        if qp is not None:
            row.append(verify_decomposition(p, r, qp))
        rows.append(row)
    return rows


def decomposition_csv(pairs: Sequence[tuple], qp: QParam | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["twoL1", "m1", "twoL2", "m2", "summands"] + (["defect"] if qp is not None else [])
    writer.writerow(header)
    writer.writerows(decomposition_rows(pairs, qp))
    return buf.getvalue()
