"""Model-file ingestion, descendent parsing, command dispatch, reporting.

Exit codes: 0 success / checks passed, 1 a verification command failed,
2 malformed input (model file, expression, flags).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .bethe import bethe_relations_q1, dmodule_relations, render_bethe_system
from .coulomb import CoulombAlgebra
from .exactring import (Poly, Scalar, VariableTable, mono_str, scalar_str,
                        scalar_structured)
from .hypertoric import (Cone, GaugeData, ModelError, circuits, eff_cone,
                         eff_cone_fp, fixed_points)
from .vertex import (Descendent, QSeries, qde_check, vertex_fp,
                     vertex_fp_nonab, whittaker_function)
from .verma import VermaModule
from .wallcross import check_reversal, dmodule_match, make_scenario


class ExprError(ValueError):
    """Syntax error in a descendent or scalar expression."""


# ---------------------------------------------------------------------------
# expression grammar
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|[a-zA-Z][a-zA-Z0-9]*|\*|\+|-|\^|/|\(|\))")


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ExprError("syntax error at position %d: %r" % (pos, text[pos:pos + 8]))
            break
        out.append((m.group(1), pos))
        pos = m.end()
    return out


class _ExprParser:
    """Recursive descent over +, -, *, ^ with rational literals and variables."""

    def __init__(self, table: VariableTable, tokens, allow_q: bool):
        self.table = table
        self.tokens = tokens
        self.i = 0
        self.allow_q = allow_q

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, what):
        if self.peek() != what:
            raise ExprError("expected %r at position %d" % (what, self._pos()))
        return self.next()

    def _pos(self):
        return self.tokens[self.i][1] if self.i < len(self.tokens) else -1

    def parse(self) -> Poly:
        p = self.expr()
        if self.i != len(self.tokens):
            raise ExprError("unexpected token %r at position %d" % (self.peek(), self._pos()))
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek() in ("+", "-"):
            op, _ = self.next()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            if self.peek() == "*":
                self.next()
                p = p * self.factor()
            elif self.peek() == "/":
                raise ExprError("division not allowed in descendents")
            else:
                return p

    def factor(self) -> Poly:
        if self.peek() == "-":
            self.next()
            return -self.factor()
        p, is_var = self.atom()
        while self.peek() == "^":
            self.next()
            num, den = self.exponent()
            p = self._power(p, is_var, num, den)
            is_var = False
        return p

    def exponent(self):
        if self.peek() == "(":
            self.next()
            sign = 1
            if self.peek() == "-":
                self.next()
                sign = -1
            num = int(self.expect_number())
            self.expect("/")
            den = int(self.expect_number())
            self.expect(")")
            return sign * num, den
        sign = 1
        if self.peek() == "-":
            self.next()
            sign = -1
        return sign * int(self.expect_number()), 1

    def expect_number(self):
        tok = self.peek()
        if tok is None or not tok.isdigit():
            raise ExprError("expected integer at position %d" % self._pos())
        return self.next()[0]

    def _power(self, p: Poly, is_var, num, den) -> Poly:
        if den not in (1, 2):
            raise ExprError("only integer or half exponents are supported")
        if is_var is not None:
            idx, half_units = is_var
            if den == 2:
                if not self.table.is_half_variable(idx):
                    raise ExprError("half powers only allowed on q, h, Q variables")
                e = num
            else:
                e = num * half_units
            return Poly.monomial(self.table.mono({idx: e}))
        if den == 2:
            raise ExprError("half powers only allowed on single variables")
        if num < 0:
            if p.is_monomial():
                (m, c), = p.terms.items()
                if c == 1:
                    return Poly.monomial(tuple(x * num for x in m))
            raise ExprError("division not allowed in descendents")
        return p ** num

    def atom(self):
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression")
        if tok == "(":
            self.next()
            p = self.expr()
            self.expect(")")
            return p, None
        if tok.isdigit():
            self.next()
            if self.peek() == "/":
                self.next()
                den = int(self.expect_number())
                if den == 0:
                    raise ExprError("zero denominator in rational literal")
                return Poly.monomial(self.table.unit(), Fraction(int(tok), den)), None
            return Poly.monomial(self.table.unit(), int(tok)), None
        if not tok[0].isalpha():
            raise ExprError("syntax error at position %d: unexpected %r" % (self._pos(), tok))
        self.next()
        idx = self._variable(tok)
        half_units = 2 if self.table.is_half_variable(idx) else 1
        return Poly.monomial(self.table.mono({idx: half_units})), (idx, half_units)

    def _variable(self, name: str) -> int:
        table = self.table
        if name == "h":
            return 1
        if name == "q":
            if not self.allow_q:
                raise ExprError("the variable q is not allowed in descendents")
            return 0
        m = re.fullmatch(r"a(\d+)", name)
        if m and 1 <= int(m.group(1)) <= table.n:
            return table.a(int(m.group(1)) - 1)
        m = re.fullmatch(r"s(\d+)", name)
        if m and 1 <= int(m.group(1)) <= table.k:
            return table.s(int(m.group(1)) - 1)
        m = re.fullmatch(r"Q(\d+)", name)
        if m and self.allow_q and 1 <= int(m.group(1)) <= table.k:
            return table.qvar(int(m.group(1)) - 1)
        raise ExprError("unknown variable %r" % name)


def parse_descendent(text: str, table: VariableTable) -> Descendent:
    poly = _ExprParser(table, _tokenize(text), allow_q=False).parse()
    return Descendent(poly)


def parse_scalar_expr(text: str, table: VariableTable) -> Poly:
    return _ExprParser(table, _tokenize(text), allow_q=True).parse()


def _parse_monomial_image(text: str, table: VariableTable) -> tuple:
    poly = _ExprParser(table, _tokenize(text), allow_q=False).parse()
    if not poly.is_monomial():
        raise ExprError("expected a monomial, got %r" % text)
    (m, c), = poly.terms.items()
    if c != 1:
        raise ExprError("expected a monomial with coefficient 1, got %r" % text)
    return m


# ---------------------------------------------------------------------------
# generator words for `mul`
# ---------------------------------------------------------------------------

_GEN = re.compile(r"\s*([rR])\[([-0-9,\s]*)\]")


def parse_generator_word(text: str, alg: CoulombAlgebra):
    """Juxtaposed product of r[d...], R[d...] and scalar prefixes."""
    element = alg.one()
    pos = 0
    pending = []

    def flush():
        nonlocal element, pending
        for chunk in pending:
            poly = parse_scalar_expr(chunk, alg.table)
            element = alg.mul(element, alg.cartan(Scalar.from_poly(poly)))
        pending = []

    while pos < len(text):
        m = _GEN.match(text, pos)
        if m:
            flush()
            entries = [e for e in m.group(2).replace(" ", "").split(",") if e]
            d = tuple(int(e) for e in entries)
            if len(d) != alg.data.k:
                raise ExprError("generator degree %r has length %d, expected %d"
                                % (m.group(0).strip(), len(d), alg.data.k))
            gen = alg.r(d) if m.group(1) == "r" else alg.mixed_generator(d)
            element = alg.mul(element, gen)
            pos = m.end()
            continue
        nxt = _GEN.search(text, pos)
        chunk = text[pos:nxt.start()] if nxt else text[pos:]
        if chunk.strip():
            pending.append(chunk.strip())
        pos = nxt.start() if nxt else len(text)
    flush()
    return element


# ---------------------------------------------------------------------------
# model files
# ---------------------------------------------------------------------------

def load_model(path: str) -> GaugeData:
    with open(path, "r") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelError("parse error in %s: %s" % (path, exc))
    for key in ("chi", "theta"):
        if key not in raw:
            raise ModelError("model file is missing %r" % key)
    aspec = None
    if raw.get("a_specialization"):
        chi = raw["chi"]
        table = VariableTable(len(chi), len(raw["theta"]))
        aspec = {}
        for name, expr in raw["a_specialization"].items():
            m = re.fullmatch(r"a(\d+)", name)
            if not m or not 1 <= int(m.group(1)) <= table.n:
                raise ModelError("a_specialization key %r is not a flavor variable" % name)
            aspec[int(m.group(1)) - 1] = _parse_monomial_image(expr, table)
    return GaugeData.create(raw["chi"], raw["theta"], blocks=raw.get("blocks"),
                            labels=raw.get("labels"), a_specialization=aspec)


def _select_point(data: GaugeData, spec: str):
    pts = fixed_points(data)
    if re.fullmatch(r"\d+", spec or ""):
        idx = int(spec)
        if not 0 <= idx < len(pts):
            raise ModelError("point index %d out of range (0..%d)" % (idx, len(pts) - 1))
        return pts[idx]
    try:
        support = tuple(sorted(int(x) - 1 for x in spec.split(",")))
    except ValueError:
        raise ModelError("bad --point %r" % spec)
    for p in pts:
        if p.support == support:
            return p
    raise ModelError("no fixed point with support {%s}" % spec)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def _series_report(alg, series: QSeries, as_json: bool):
    table = alg.table
    items = sorted(series.coeffs.items())
    if as_json:
        return {"order": series.order,
                "coefficients": [{"degree": list(d), "value": scalar_structured(f)}
                                 for d, f in items]}
    lines = ["order %d" % series.order]
    for d, f in items:
        lines.append("Q^(%s): %s" % (",".join(str(x) for x in d), scalar_str(table, f)))
    return "\n".join(lines) + "\n"


def _cone_json(c: Cone):
    return {"generators": [list(g) for g in c.generators],
            "facet_normals": [list(f) for f in c.facet_normals]}


def _print(out, payload):
    if isinstance(payload, str):
        out.write(payload)
    else:
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def dispatch(args, out=sys.stdout) -> int:
    data = load_model(args.model)
    alg = CoulombAlgebra(data)
    table = alg.table

    if args.command == "circuits":
        cs = circuits(data)
        if args.json:
            _print(out, [{"vector": list(c.vector), "wall_rows": sorted(i + 1 for i in c.wall_rows)}
                         for c in cs])
        else:
            for idx, c in enumerate(cs):
                _print(out, "rho[%d] = (%s)  wall rows {%s}\n" % (
                    idx, ",".join(str(x) for x in c.vector),
                    ",".join(str(i + 1) for i in sorted(c.wall_rows))))
        return 0

    if args.command == "fixed-points":
        pts = fixed_points(data)
        if args.json:
            _print(out, [_point_json(table, p) for p in pts])
        else:
            for idx, p in enumerate(pts):
                _print(out, _point_text(table, idx, p))
        return 0

    if args.command == "analyze":
        cs = circuits(data)
        cone = eff_cone(data)
        pts = fixed_points(data)
        if args.json:
            _print(out, {
                "n": data.n, "k": data.k,
                "circuits": [list(c.vector) for c in cs],
                "effective_cone": _cone_json(cone),
                "kahler_chamber_generators": [list(f) for f in cone.facet_normals],
                "fixed_points": [_point_json(table, p) for p in pts],
            })
            return 0
        _print(out, "model: n=%d k=%d%s\n" % (
            data.n, data.k, " blocks=%r" % (list(data.blocks),) if data.blocks else ""))
        for idx, c in enumerate(cs):
            _print(out, "rho[%d] = (%s)\n" % (idx, ",".join(str(x) for x in c.vector)))
        _print(out, "effective cone generators: %s\n"
               % "; ".join("(%s)" % ",".join(str(x) for x in g) for g in cone.generators))
        _print(out, "chamber of theta generated by: %s\n"
               % "; ".join("(%s)" % ",".join(str(x) for x in f) for f in cone.facet_normals))
        for idx, p in enumerate(pts):
            _print(out, _point_text(table, idx, p))
        return 0

    if args.command == "vertex":
        p = _select_point(data, args.point or "0")
        tau = parse_descendent(args.descendent, table) if args.descendent else \
            Descendent(Poly.one(table.width))
        if data.blocks is not None and any(b > 1 for b in data.blocks):
            series = vertex_fp_nonab(alg, p, tau, args.order)
        else:
            series = vertex_fp(alg, p, tau, args.order)
        _print(out, _series_report(alg, series, args.json))
        return 0

    if args.command == "whittaker":
        p = _select_point(data, args.point or "0")
        module = VermaModule(alg, p)
        w = module.whittaker_vector(args.order)
        items = sorted(w.terms.items())
        if args.json:
            _print(out, [{"degree": list(d), "value": scalar_structured(f)} for d, f in items])
        else:
            lines = ["order %d" % args.order]
            for d, f in items:
                lines.append("[%s]: %s" % (",".join(str(x) for x in d), scalar_str(table, f)))
            _print(out, "\n".join(lines) + "\n")
        return 0

    if args.command == "qde-check":
        cs = circuits(data)
        if not 0 <= args.circuit < len(cs):
            raise ModelError("circuit index %d out of range" % args.circuit)
        tau = parse_descendent(args.descendent, table) if args.descendent else \
            Descendent(Poly.one(table.width))
        pts = fixed_points(data)
        sel = [_select_point(data, args.point)] if args.point else pts
        ok = True
        for p in sel:
            report = qde_check(alg, p, tau, cs[args.circuit].vector, args.order)
            ok = ok and report.passed
            _print(out, "%s circuit (%s) at %s\n" % (
                "PASS" if report.passed else "FAIL",
                ",".join(str(x) for x in report.circuit), p.label()))
        return 0 if ok else 1

    if args.command == "bethe":
        rels = bethe_relations_q1(alg) if args.q1 else dmodule_relations(alg)
        payload = render_bethe_system(alg, rels, "json" if args.json else "text")
        _print(out, payload)
        return 0

    if args.command == "mul":
        element = parse_generator_word(args.word, alg)
        if args.json:
            _print(out, [{"degree": list(d), "value": scalar_structured(f)}
                         for d, f in sorted(element.terms.items())])
        else:
            if element.is_zero():
                _print(out, "0\n")
            for d, f in sorted(element.terms.items()):
                _print(out, "(%s) r[%s]\n" % (scalar_str(table, f),
                                              ",".join(str(x) for x in d)))
        return 0

    if args.command == "wallcross":
        theta2 = tuple(int(x) for x in args.theta2.split(","))
        if len(theta2) != data.k:
            raise ModelError("--theta2 must have %d entries" % data.k)
        scn = make_scenario(alg, theta2)
        ok = True
        results = []
        for rho in list(scn.reversing) + list(scn.kept):
            rep = check_reversal(scn, rho)
            match = dmodule_match(scn, rho)
            ok = ok and rep.passed and match.passed
            results.append((rho, rho in scn.reversing, rep.passed and match.passed))
        if args.json:
            _print(out, [{"circuit": list(r), "reversing": rev, "passed": okc}
                         for r, rev, okc in results])
        else:
            for r, rev, okc in results:
                _print(out, "%s circuit (%s): %s\n" % (
                    "reversing" if rev else "kept", ",".join(str(x) for x in r),
                    "PASS" if okc else "FAIL"))
        return 0 if ok else 1

    raise ModelError("unknown command %r" % args.command)


def _point_json(table, p):
    return {"support": [i + 1 for i in p.support],
            "plus": sorted(i + 1 for i in p.plus),
            "minus": sorted(i + 1 for i in p.minus),
            "rays": [list(r) for r in p.rays],
            "restriction": {"s%d" % (j + 1): mono_str(table, m)
                            for j, m in sorted(p.restriction.items())}}


def _point_text(table, idx, p):
    rest = "  ".join("s%d -> %s" % (j + 1, mono_str(table, m))
                     for j, m in sorted(p.restriction.items()))
    return "p[%d] %s  plus={%s} minus={%s}  rays: %s\n  %s\n" % (
        idx, p.label(),
        ",".join(str(i + 1) for i in sorted(p.plus)),
        ",".join(str(i + 1) for i in sorted(p.minus)),
        "; ".join("(%s)" % ",".join(str(x) for x in r) for r in p.rays),
        rest)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coulombkit",
                                 description="exact engine for convolution-algebra models")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, order=True, point=False):
        sp.add_argument("model", help="path to the JSON model file")
        sp.add_argument("--json", action="store_true")
        if order:
            sp.add_argument("--order", type=int, default=3)
        if point:
            sp.add_argument("--point", default=None,
                            help="fixed point: index or 1-based support like 1,2")

    common(sub.add_parser("analyze"), order=False)
    common(sub.add_parser("circuits"), order=False)
    common(sub.add_parser("fixed-points"), order=False)
    sp = sub.add_parser("vertex")
    common(sp, point=True)
    sp.add_argument("--descendent", default=None)
    sp = sub.add_parser("whittaker")
    common(sp, point=True)
    sp = sub.add_parser("qde-check")
    common(sp, point=True)
    sp.add_argument("--circuit", type=int, required=True)
    sp.add_argument("--descendent", default=None)
    sp = sub.add_parser("bethe")
    common(sp, order=False)
    sp.add_argument("--q1", action="store_true")
    sp = sub.add_parser("mul")
    common(sp, order=False)
    sp.add_argument("word", help="generator word, e.g. \"r[1,0] r[-1,0]\"")
    sp = sub.add_parser("wallcross")
    common(sp, order=False)
    sp.add_argument("--theta2", required=True)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return dispatch(args)
    except (ModelError, ExprError, FileNotFoundError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
