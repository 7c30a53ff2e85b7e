"""Command-line entry point: ``uq2 [global flags] <command> [args]``.

Expressions are sums of terms; a term is an optional numeric coefficient
followed by a word in a, a*, b, b*, D, D*, each with an optional ``^e``::

    uq2 normal-form "2 a*a - (0.5-1i) b b*^2 D^-1"

Here ``*`` always marks the adjoint, so ``b*a`` is b* times a.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import numeric
from .algebra import Element, Monomial, element_to_records, multiply, power
from .classify import IsoKind, haar_pullback, iso, morphism_defects
from .corep import corep_matrix
from .fourier import fourier, plancherel_pairing
from .haar import InnerProductKind, gram_matrix, haar, inner_left, matrix_to_csv, monomials_in_box
from .opmodel import TruncationSpec
from .qcomb import QParam, RegimeError
from .suites import SUITES
from .tensordec import CorepLabel, decompose, decomposition_csv, verify_decomposition


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_NUMBER = re.compile(r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?")
_GENERATORS = {
    "a": Monomial(1, 0, 0, 0), "a*": Monomial(-1, 0, 0, 0),
    "b": Monomial(0, 1, 0, 0), "b*": Monomial(0, 0, 1, 0),
    "D": Monomial(0, 0, 0, 1), "D*": Monomial(0, 0, 0, -1),
}


class _Parser:
    """Recursive-descent parser over the expression grammar."""

    def __init__(self, text: str, qp: QParam):
        self.text = text
        self.pos = 0
        self.qp = qp

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _number(self) -> float | None:
        self._skip()
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return float(m.group())

    def _imag_suffix(self) -> bool:
        if self._peek() == "i":
            self.pos += 1
            return True
        return False

    def _literal(self) -> complex | None:
        """re, im i, re±im i, i, or any of these in parentheses."""
        if self._peek() == "(":
            start = self.pos
            self.pos += 1
            sign = 1.0
            if self._peek() in ("+", "-"):
                sign = -1.0 if self.text[self.pos] == "-" else 1.0
                self.pos += 1
            value = self._literal()
            if value is None:
                raise ExprSyntaxError("expected a number", self.pos)
            value *= sign
            if self._peek() in ("+", "-"):
                sign = -1.0 if self.text[self.pos] == "-" else 1.0
                self.pos += 1
                num = self._number()
                if not self._imag_suffix():
                    raise ExprSyntaxError("expected an imaginary part ending in i", self.pos)
                value += sign * 1j * (1.0 if num is None else num)
            if self._peek() != ")":
                raise ExprSyntaxError(f"unclosed parenthesis (opened at {start})", self.pos)
            self.pos += 1
            return value
        num = self._number()
        if num is None:
            return 1j if self._imag_suffix() else None
        if self._imag_suffix():
            return 1j * num
        # re±im i written without parentheses
        save = self.pos
        if self._peek() in ("+", "-"):
            sign = -1.0 if self.text[self.pos] == "-" else 1.0
            self.pos += 1
            im = self._number()
            if self._imag_suffix():
                return num + sign * 1j * (1.0 if im is None else im)
        self.pos = save
        return complex(num)

    def _exponent(self, allow_negative: bool) -> int:
        if self._peek() != "^":
            return 1
        self.pos += 1
        self._skip()
        m = re.compile(r"[+-]?\d+").match(self.text, self.pos)
        if not m:
            raise ExprSyntaxError("expected an integer exponent", self.pos)
        value = int(m.group())
        if value < 0 and not allow_negative:
            raise ExprSyntaxError("negative exponents are only allowed on D and D*", self.pos)
        self.pos = m.end()
        return value

    def _word(self) -> Element:
        out = Element.one()
        found = False
        while self._peek() in ("a", "b", "D"):
            letter = self.text[self.pos]
            self.pos += 1
            if self.pos < len(self.text) and self.text[self.pos] == "*":
                letter += "*"
                self.pos += 1
            e = self._exponent(letter.startswith("D"))
            mono = _GENERATORS[letter]
            if e < 0:
                mono, e = _GENERATORS["D*" if letter == "D" else "D"], -e
            out = multiply(out, power(Element({mono: 1.0}), e, self.qp), self.qp)
            found = True
        return out if found else None

    def _term(self) -> Element:
        start = self.pos
        coeff = self._literal()
        word = self._word()
        if coeff is None and word is None:
            self._skip()
            raise ExprSyntaxError(f"unexpected {self.text[self.pos:self.pos + 1]!r}", self.pos) \
                if self.pos < len(self.text) else ExprSyntaxError("expected a term", start)
        word = Element.one() if word is None else word
        return word * (1.0 if coeff is None else coeff)

    def parse(self) -> Element:
        total = Element()
        sign = 1.0
        if self._peek() in ("+", "-"):
            sign = -1.0 if self.text[self.pos] == "-" else 1.0
            self.pos += 1
        total = total + self._term() * sign
        while self._peek():
            ch = self._peek()
            if ch not in "+-":
                raise ExprSyntaxError(f"unexpected {ch!r}", self.pos)
            self.pos += 1
            total = total + self._term() * (-1.0 if ch == "-" else 1.0)
        return total


def parse_expression(text: str, qp: QParam) -> Element:
    if not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    return _Parser(text, qp).parse()


@dataclass(frozen=True)
class RunConfig:
    qp: QParam
    tol: float = 1e-9
    max_two_l: int = 6
    fmt: str = "json"
    trunc: TruncationSpec = TruncationSpec()

    def __post_init__(self):
        if not 0 < self.tol < 1e-3:
            raise ValueError("tol must lie in (0, 1e-3)")


def _complex_record(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _emit_rows(header: list, rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _element_out(x: Element, cfg: RunConfig) -> str:
    if cfg.fmt == "csv":
        return _emit_rows(["n", "m", "k", "l", "re", "im"],
                          [[*mono, repr(complex(c).real), repr(complex(c).imag)]
                           for mono, c in sorted(x.terms.items())])
    return json.dumps(element_to_records(x))


def _defects_out(report: dict, cfg: RunConfig) -> str:
    if cfg.fmt == "csv":
        return _emit_rows(["check", "defect", "ok"],
                          [[name, repr(v), v <= cfg.tol] for name, v in report.items()])
    return json.dumps({name: {"defect": v, "ok": v <= cfg.tol} for name, v in report.items()}, indent=1)


def cmd_normal_form(args, cfg: RunConfig) -> int:
    print(_element_out(parse_expression(args.expr, cfg.qp), cfg), end="" if cfg.fmt == "csv" else "\n")
    return 0


def cmd_haar(args, cfg: RunConfig) -> int:
    x = parse_expression(args.expr, cfg.qp)
    value = haar_pullback(x, cfg.qp) if args.pullback else haar(x, cfg.qp)
    if cfg.fmt == "csv":
        print(_emit_rows(["re", "im"], [[complex(value).real, complex(value).imag]]), end="")
    else:
        print(json.dumps(_complex_record(value)))
    return 0


def cmd_matcoef(args, cfg: RunConfig) -> int:
    if args.two_l > cfg.max_two_l:
        raise ValueError(f"2l={args.two_l} exceeds --max-two-l={cfg.max_two_l}")
    mat = corep_matrix(args.two_l, args.k, cfg.qp)
    if cfg.fmt == "csv":
        rows = []
        for r, row in enumerate(mat.entries):
            for c, x in enumerate(row):
                for mono, v in sorted(x.terms.items()):
                    rows.append([2 * r - mat.two_l, 2 * c - mat.two_l, *mono,
                                 repr(complex(v).real), repr(complex(v).imag)])
        print(_emit_rows(["twoI", "twoJ", "n", "m", "k", "l", "re", "im"], rows), end="")
    else:
        print(mat.to_json())
    return 0


def cmd_gram(args, cfg: RunConfig) -> int:
    kind = InnerProductKind.LEFT if args.kind == "left" else InnerProductKind.RIGHT
    monos = monomials_in_box(args.max_deg)
    gram = gram_matrix(monos, kind, cfg.qp)
    if cfg.fmt == "csv":
        print(matrix_to_csv(gram), end="")
        return 0
    herm = float(np.abs(gram - gram.conj().T).max())
    low = float(np.linalg.eigvalsh((gram + gram.conj().T) / 2).min())
    print(json.dumps({"kind": kind.value, "monomials": [list(m) for m in monos],
                      "hermitianDefect": herm, "minEigenvalue": low,
                      "gram": [[[z.real, z.imag] for z in row] for row in gram]}))
    return 0


def cmd_fourier(args, cfg: RunConfig) -> int:
    coeffs = fourier(parse_expression(args.expr, cfg.qp), cfg.qp)
    if cfg.fmt == "csv":
        rows = [[two_l, k, r, c, repr(z.real), repr(z.imag)]
                for (two_l, k), mat in sorted(coeffs.blocks.items())
                for r, row in enumerate(mat) for c, z in enumerate(row) if z != 0]
        print(_emit_rows(["twoL", "k", "row", "col", "re", "im"], rows), end="")
    else:
        print(coeffs.to_json())
    return 0


def cmd_plancherel(args, cfg: RunConfig) -> int:
    f = parse_expression(args.expr1, cfg.qp)
    g = parse_expression(args.expr2, cfg.qp)
    pairing = plancherel_pairing(fourier(f, cfg.qp), fourier(g, cfg.qp), cfg.qp)
    direct = complex(inner_left(f, g, cfg.qp))
    diff = abs(pairing - direct)
    if cfg.fmt == "csv":
        print(_emit_rows(["pairing_re", "pairing_im", "inner_re", "inner_im", "difference"],
                         [[pairing.real, pairing.imag, direct.real, direct.imag, diff]]), end="")
    else:
        print(json.dumps({"plancherel": _complex_record(pairing), "innerLeft": _complex_record(direct),
                          "difference": diff}))
    return 0 if diff <= cfg.tol else 1


def cmd_tensor(args, cfg: RunConfig) -> int:
    p, r = CorepLabel(args.two_l1, args.m1), CorepLabel(args.two_l2, args.m2)
    if cfg.fmt == "csv":
        print(decomposition_csv([(p, r)], cfg.qp), end="")
        return 0
    defect = verify_decomposition(p, r, cfg.qp)
    print(json.dumps({"left": list(p), "right": list(r),
                      "summands": [list(s) for s in decompose(p, r)], "defect": defect}))
    return 0 if defect <= cfg.tol else 1


def cmd_classify(args, cfg: RunConfig) -> int:
    kinds = list(IsoKind) if args.kind == "all" else [IsoKind(args.kind)]
    report = {}
    for kind in kinds:
        gmap = iso(kind, cfg.qp)
        defects = morphism_defects(gmap)
        report[kind.value] = {"target": _complex_record(gmap.target.q), "defect": max(defects.values()),
                              "checks": defects}
    worst = max(v["defect"] for v in report.values())
    if cfg.fmt == "csv":
        print(_emit_rows(["kind", "target_re", "target_im", "defect"],
                         [[k, v["target"]["re"], v["target"]["im"], v["defect"]] for k, v in report.items()]),
              end="")
    else:
        print(json.dumps(report, indent=1))
    return 0 if worst <= cfg.tol else 1


def _suite_kwargs(name: str, cfg: RunConfig) -> dict:
    if name == "unitarity":
        return {"max_two_l": cfg.max_two_l}
    if name in ("peter-weyl", "corep-routes"):
        return {"max_two_l": min(cfg.max_two_l, 5)}
    if name == "tensor":
        return {"max_two_l": min(cfg.max_two_l, 4)}
    if name == "oracle":
        return {"trunc": cfg.trunc}
    return {}


def cmd_verify(args, cfg: RunConfig) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    report = {}
    for name in names:
        for check, value in SUITES[name](cfg.qp, **_suite_kwargs(name, cfg)).items():
            report[f"{name}: {check}"] = value
    print(_defects_out(report, cfg), end="" if cfg.fmt == "csv" else "\n")
    return 0 if all(v <= cfg.tol for v in report.values()) else 1


def cmd_opcheck(args, cfg: RunConfig) -> int:
    report = SUITES["oracle"](cfg.qp, trunc=cfg.trunc, pairs=args.pairs)
    print(_defects_out(report, cfg), end="" if cfg.fmt == "csv" else "\n")
    # the oracle comparisons are made at a looser tolerance than the engine checks
    return 0 if all(v <= max(cfg.tol, 1e-8) for v in report.values()) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="uq2", description="Computations in the Hopf *-algebra O(U_q(2)).")
    p.add_argument("--q-re", type=float, default=0.5)
    p.add_argument("--q-im", type=float, default=0.25)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--max-two-l", type=int, default=6)
    p.add_argument("--ncut", type=int, default=60)
    p.add_argument("--zwindow", type=int, default=24)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--extended", action="store_true",
                   help="carry coefficients as 192-bit MPFR complex numbers")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normal-form", help="normal form of an expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_normal_form)

    s = sub.add_parser("haar", help="Haar state of an expression")
    s.add_argument("expr")
    s.add_argument("--pullback", action="store_true", help="for |q|>1, evaluate through the 1/q isomorphism")
    s.set_defaults(func=cmd_haar)

    s = sub.add_parser("matcoef", help="corepresentation matrix t^l D^k")
    s.add_argument("two_l", type=int)
    s.add_argument("k", type=int)
    s.set_defaults(func=cmd_matcoef)

    s = sub.add_parser("gram", help="Gram matrix of monomials with |n|,m,k,|l| <= max_deg")
    s.add_argument("max_deg", type=int)
    s.add_argument("--kind", choices=("left", "right"), default="left")
    s.set_defaults(func=cmd_gram)

    s = sub.add_parser("fourier", help="Fourier coefficients of an expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_fourier)

    s = sub.add_parser("plancherel", help="Plancherel pairing against the left inner product")
    s.add_argument("expr1")
    s.add_argument("expr2")
    s.set_defaults(func=cmd_plancherel)

    s = sub.add_parser("tensor", help="decompose T_l1 D^m1 ⊗ T_l2 D^m2")
    for name in ("two_l1", "m1", "two_l2", "m2"):
        s.add_argument(name, type=int)
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("classify", help="verify the isomorphisms to q, 1/q, 1/q̄, q̄")
    s.add_argument("kind", nargs="?", default="all", choices=["all"] + [k.value for k in IsoKind])
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("verify", help="run a named invariant suite")
    s.add_argument("suite", choices=["all"] + list(SUITES))
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("opcheck", help="compare the engine with the truncated operator model")
    s.add_argument("--pairs", type=int, default=200)
    s.set_defaults(func=cmd_opcheck)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(QParam(complex(args.q_re, args.q_im)), args.tol, args.max_two_l, args.format,
                        TruncationSpec(args.ncut, args.zwindow))
        ctx = numeric.extended_precision() if args.extended else contextlib.nullcontext()
        with ctx:
            return args.func(args, cfg)
    except ExprSyntaxError as exc:
        print(f"uq2: parse error: {exc}", file=sys.stderr)
        if getattr(args, "expr", None) is not None:
            print(f"  {args.expr}\n  {' ' * exc.pos}^", file=sys.stderr)
        return 2
    except (RegimeError, ValueError) as exc:
        print(f"uq2: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
