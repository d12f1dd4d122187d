"""Command-line interface: ``alphaexp <subcommand> --alpha "(-1+3i)/2" ...``.

Every JSON document starts with a ``config`` block describing the resolved
number system. Exit codes: 0 success, 2 usage, 3 domain, 4 precision,
5 resource.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import complexexp, digitarith, finiteness, language, padic, tiles
from .errors import AlphaExpError, DomainError, PrecisionError, ResourceError
from .gaussian import GaussInt, GaussRat
from .numsys import (
    CycleReport,
    Expansion,
    NumberSystem,
    format_expansion,
    integer_expansion,
    lattice_value,
    make_number_system,
    parse_expansion,
    require_lattice,
)

EXIT_USAGE, EXIT_DOMAIN, EXIT_PRECISION, EXIT_RESOURCE = 2, 3, 4, 5


# --- parsing ----------------------------------------------------------------


class ExprError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokens(text: str) -> list[str]:
    out = []
    for m in _TOKEN.finditer(text):
        if m.group(1):
            out.append(m.group(1))
        elif m.group(2) and not m.group(2).isspace():
            out.append(m.group(2))
    return out


class _Parser:
    """Recursive descent over ``+ - * / ( ) i j`` and integers; juxtaposition multiplies."""

    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.pos += 1
        return t

    def parse(self) -> GaussRat:
        if not self.toks:
            raise ExprError("empty expression")
        v = self.expr()
        if self.peek() is not None:
            raise ExprError(f"unexpected {self.peek()!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while True:
            t = self.peek()
            if t in ("*", "/"):
                self.take()
                w = self.unary()
                if t == "/":
                    if w.is_zero():
                        raise ExprError("division by zero")
                    v = v / w
                else:
                    v = v * w
            elif t is not None and (t.isdigit() or t in ("i", "j", "(")):
                v = v * self.unary()
            else:
                return v

    def unary(self):
        t = self.peek()
        if t == "-":
            self.take()
            return -self.unary()
        if t == "+":
            self.take()
            return self.unary()
        return self.atom()

    def atom(self):
        t = self.take()
        if t is None:
            raise ExprError("unexpected end of expression")
        if t.isdigit():
            return GaussRat.coerce(int(t))
        if t in ("i", "j"):
            return GaussRat(Fraction(0), Fraction(1))
        if t == "(":
            v = self.expr()
            if self.take() != ")":
                raise ExprError("missing ')'")
            return v
        raise ExprError(f"unexpected {t!r}")


def parse_gauss_expr(text: str) -> GaussRat:
    """Exact value of expressions such as ``(-1+3i)/2``, ``1-3/2i`` or ``-6+6i``."""
    return _Parser(text).parse()


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ExprError(f"not a rational: {text!r}") from exc


# --- JSON shapes ------------------------------------------------------------


def q_json(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def gauss_json(x) -> dict:
    x = GaussRat.coerce(x)
    return {
        "re_num": x.re.numerator,
        "re_den": x.re.denominator,
        "im_num": x.im.numerator,
        "im_den": x.im.denominator,
        "text": str(x),
    }


def expansion_json(ns: NumberSystem, e: Expansion) -> dict:
    return {
        "digits": list(e.digits),
        "msb_exponent": e.msb_exponent,
        "truncated": e.truncated,
        "text": format_expansion(e, ns.base),
    }


def point_json(ns: NumberSystem, p) -> dict:
    return {"lam": p.lam, "mu": p.mu, "value": gauss_json(lattice_value(ns, p))}


def config_json(ns: NumberSystem) -> dict:
    return {
        "alpha": gauss_json(ns.alpha),
        "a2": ns.a2,
        "a1": ns.a1,
        "a0": ns.a0,
        "degree": ns.degree,
        "digits": {"min": 0, "max": ns.digit_max},
        "basis": [gauss_json(b) for b in ns.brunotte],
        "num": gauss_json(ns.num),
        "den": gauss_json(ns.den),
    }


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# --- subcommands ------------------------------------------------------------


def _ns(args) -> NumberSystem:
    return make_number_system(args.alpha)


def _word(args_value: str) -> Expansion:
    try:
        return parse_expansion(args_value)
    except ValueError as exc:
        raise ExprError(f"malformed digit word {args_value!r}") from exc


def cmd_expand(args):
    ns = _ns(args)
    p = require_lattice(ns, args.n)
    out = integer_expansion(ns, p)
    doc = {"config": config_json(ns), "input": point_json(ns, p)}
    if isinstance(out, CycleReport):
        doc["finite"] = False
        doc["cycle"] = [point_json(ns, q) for q in out.cycle]
        doc["cycle_digits"] = list(out.cycle_digits)
        return doc, EXIT_DOMAIN
    doc["finite"] = True
    doc["expansion"] = expansion_json(ns, out)
    return doc, 0


def cmd_finiteness(args):
    ns = _ns(args)
    dec = finiteness.decide_finiteness(ns)
    wit = sorted(dec.witnesses)
    doc = {
        "config": config_json(ns),
        "finite": dec.finite,
        "srs_parameter": [q_json(r) for r in dec.param.r],
        "witness_set": [list(z) for z in wit],
        "witness_values": [gauss_json(lattice_value(ns, finiteness.iota(ns, z))) for z in wit],
        "cycles": [],
    }
    for cyc in dec.cycles:
        pts = [finiteness.iota(ns, z) for z in cyc]
        rep = integer_expansion(ns, pts[0])
        digits = list(rep.cycle_digits) if isinstance(rep, CycleReport) else []
        doc["cycles"].append({"points": [point_json(ns, p) for p in pts], "digits": digits})
    return doc, 0


def cmd_tree(args):
    ns = _ns(args)
    root = require_lattice(ns, args.root) if args.root is not None else language.ORIGIN
    nodes = list(language.iter_tree(ns, args.depth, root))
    if args.format == "dot":
        lines = ["digraph tree {", "  node [shape=circle];"]
        names = {}
        for k, nd in enumerate(nodes):
            names[nd.path] = f"n{k}"
            label = "".join(map(str, nd.path)) if ns.base <= 10 else ",".join(map(str, nd.path))
            lines.append(f'  n{k} [label="{label or "ε"}", tooltip="{lattice_value(ns, nd.value)}"];')
            if nd.path:
                lines.append(f'  {names[nd.path[:-1]]} -> n{k} [label="{nd.path[-1]}"];')
        lines.append("}")
        header = "// " + json.dumps(config_json(ns), sort_keys=True)
        return header + "\n" + "\n".join(lines) + "\n", 0
    levels: dict[int, int] = {}
    for nd in nodes:
        levels[len(nd.path)] = levels.get(len(nd.path), 0) + 1
    doc = {
        "config": config_json(ns),
        "root": point_json(ns, root),
        "depth": args.depth,
        "level_sizes": [levels.get(k, 0) for k in range(args.depth + 1)],
        "nodes": [
            {"path": list(nd.path), "point": point_json(ns, nd.value), "children_residue": nd.children_residue}
            for nd in nodes
        ],
    }
    return doc, 0


def _arith(args, op):
    ns = _ns(args)
    x, y = _word(args.x), _word(args.y)
    res = op(ns, x, y, max_rewrites=args.max_rewrites, check=not args.no_check)
    doc = {
        "config": config_json(ns),
        "x": expansion_json(ns, x),
        "y": expansion_json(ns, y),
        "result": expansion_json(ns, res),
    }
    return doc, 0


def cmd_add(args):
    return _arith(args, digitarith.add)


def cmd_mul(args):
    return _arith(args, digitarith.multiply)


_SQRT = re.compile(r"^sqrt\(?(\d+)\)?$")


def _complex_input(args, n: int) -> complexexp.ComplexInput:
    bits = args.precision_bits if args.precision_bits is not None else complexexp.default_precision(n)
    if args.x is not None:
        m = _SQRT.match(args.x.strip())
        if m:
            return complexexp.sqrt_input(int(m.group(1)), bits)
        return complexexp.ComplexInput.exact(parse_gauss_expr(args.x))
    re_ = parse_rational(args.x_re) if args.x_re is not None else Fraction(0)
    im_ = parse_rational(args.x_im) if args.x_im is not None else Fraction(0)
    err = Fraction(1, 2**bits) if args.precision_bits is not None else Fraction(0)
    return complexexp.ComplexInput(re_, im_, err)


def _numeric_json(v: complexexp.NumericValue) -> dict:
    return {
        "re": repr(v.value.real),
        "im": repr(v.value.imag),
        "rounding_error": repr(v.rounding_error),
        "tail_bound": repr(v.tail_bound),
    }


def cmd_approx(args):
    ns = _ns(args)
    x = _complex_input(args, args.n)
    rounding = (args.round_re, args.round_im)
    p = complexexp.lambda_map(ns, x, rounding, _n=args.n)
    w = complexexp.approximate_expansion(ns, x, args.n, rounding)
    doc = {
        "config": config_json(ns),
        "x": {"re": q_json(x.re), "im": q_json(x.im), "error": q_json(x.error)},
        "n": args.n,
        "lambda": point_json(ns, p),
        "w_n": expansion_json(ns, w),
        "value": _numeric_json(complexexp.numeric_evaluate(ns, w)),
    }
    return doc, 0


def cmd_check(args):
    ns = _ns(args)
    e = _word(args.word)
    rep = padic.check_convergence(ns, e, args.depth)
    doc = {
        "config": config_json(ns),
        "word": expansion_json(ns, e),
        "verdict": "valid"
        if rep.valid
        else {"invalid_at": {"l": rep.invalid_at[0], "prime": gauss_json(rep.invalid_at[1])}},
        "lattice_valid": rep.lattice_valid,
        "valuation_bound_holds": rep.valuation_invalid_at is None,
        "primes": [
            {
                "prime": gauss_json(t.prime),
                "exponent": t.exponent,
                "conductor": t.conductor,
                "valuations": [{"l": l, "v": v if v != float("inf") else "inf"} for l, v in t.valuations],
            }
            for t in rep.traces
        ],
    }
    return doc, 0


def cmd_ambi(args):
    ns = _ns(args)
    x = _complex_input(args, args.frac_digits + 2 * padic.GUARD_DIGITS + 16)
    y = require_lattice(ns, args.y)
    amb = padic.Ambinumber(x, y)
    w = padic.ambi_expansion(ns, amb, args.frac_digits)
    res = padic.residual_valuations(ns, w, lattice_value(ns, y))
    doc = {
        "config": config_json(ns),
        "x": {"re": q_json(x.re), "im": q_json(x.im), "error": q_json(x.error)},
        "y": point_json(ns, y),
        "frac_digits": args.frac_digits,
        "expansion": expansion_json(ns, w),
        "value": _numeric_json(complexexp.numeric_evaluate(ns, w)),
        "residual_valuations": [
            {"prime": gauss_json(p), "v": v if v != float("inf") else "inf"} for p, v in res.items()
        ],
    }
    return doc, 0


def _pixels(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)[x,](\d+)", text.strip())
    if not m:
        raise ExprError("pixels must look like 600x600")
    return int(m.group(1)), int(m.group(2))


def cmd_tile(args):
    ns = _ns(args)
    clouds = tiles.figure_clouds(ns, args.max_word_length, args.depth)
    window = tiles.Window.parse(args.window) if args.window else tiles.default_window(ns, args.max_word_length)
    px = _pixels(args.pixels)
    body = tiles.render(ns, clouds, window, px, args.format)
    header = json.dumps(
        {"config": config_json(ns), "window": [window.xmin, window.xmax, window.ymin, window.ymax],
         "depth": args.depth, "max_word_length": args.max_word_length, "tiles": len(clouds)},
        sort_keys=True,
    )
    if args.format == "ppm":
        # PPM allows comment lines after the magic number
        body = body.replace(b"P6\n", b"P6\n# " + header.encode() + b"\n", 1)
    else:
        body = body.replace(b"?>\n", b"?>\n<!-- " + header.replace("--", "- -").encode() + b" -->\n", 1)
    return body, 0


# --- driver -----------------------------------------------------------------


def _gauss_arg(text: str) -> GaussRat:
    try:
        return parse_gauss_expr(text)
    except ExprError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="alphaexp", description="Digit expansions in bases from Q(i).")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--alpha", type=_gauss_arg, default=None, help='base, e.g. "(-1+3i)/2"')
        p.add_argument("--alpha-re", default=None, help="real part as a rational")
        p.add_argument("--alpha-im", default=None, help="imaginary part as a rational")
        p.add_argument("--output", "-o", default=None, help="write to a file instead of stdout")

    def xargs(p):
        p.add_argument("--x", default=None, help='exact value or "sqrt2"')
        p.add_argument("--x-re", default=None)
        p.add_argument("--x-im", default=None)
        p.add_argument("--precision-bits", type=int, default=None)

    p = sub.add_parser("expand", help="integer expansion of a lattice point")
    common(p)
    p.add_argument("--n", type=_gauss_arg, required=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("finiteness", help="decide the finiteness property")
    common(p)
    p.set_defaults(func=cmd_finiteness)

    p = sub.add_parser("tree", help="the tree of integer expansions")
    common(p)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--root", type=_gauss_arg, default=None)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(func=cmd_tree)

    for name, fn in (("add", cmd_add), ("mul", cmd_mul)):
        p = sub.add_parser(name, help=f"digitwise {name} of two words")
        common(p)
        p.add_argument("--x", required=True)
        p.add_argument("--y", required=True)
        p.add_argument("--max-rewrites", type=int, default=digitarith.MAX_REWRITES)
        p.add_argument("--no-check", action="store_true", help="accept arbitrary digit words")
        p.set_defaults(func=fn)

    p = sub.add_parser("approx", help="approximate expansion of a complex number")
    common(p)
    xargs(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--round-re", choices=["floor", "ceil"], default="floor")
    p.add_argument("--round-im", choices=["floor", "ceil"], default="floor")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("check", help="p-adic convergence check of a word")
    common(p)
    p.add_argument("--word", required=True)
    p.add_argument("--depth", type=int, default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("ambi", help="expansion of an ambinumber (x, y)")
    common(p)
    xargs(p)
    p.add_argument("--y", type=_gauss_arg, required=True)
    p.add_argument("--frac-digits", type=int, default=27)
    p.set_defaults(func=cmd_ambi)

    p = sub.add_parser("tile", help="render the tiles of short integer words")
    common(p)
    p.add_argument("--window", default=None, help="xmin,xmax,ymin,ymax")
    p.add_argument("--pixels", default="600x600")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--max-word-length", type=int, default=3)
    p.add_argument("--format", choices=["ppm", "svg"], default="ppm")
    p.set_defaults(func=cmd_tile)
    return ap


def _resolve_alpha(ap, args):
    if args.alpha is not None:
        if args.alpha_re is not None or args.alpha_im is not None:
            ap.error("give either --alpha or --alpha-re/--alpha-im")
        return
    if args.alpha_re is None and args.alpha_im is None:
        ap.error("--alpha is required")
    try:
        re_ = parse_rational(args.alpha_re or "0")
        im_ = parse_rational(args.alpha_im or "0")
    except ExprError as exc:
        ap.error(str(exc))
    args.alpha = GaussRat(re_, im_)


def _emit(out, path: str | None) -> None:
    data = out if isinstance(out, bytes) else _dump(out) if not isinstance(out, str) else out
    if path:
        mode = "wb" if isinstance(data, bytes) else "w"
        with open(path, mode) as fh:
            fh.write(data)
    elif isinstance(data, bytes):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        sys.stdout.write(data)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    _resolve_alpha(ap, args)
    try:
        out, code = args.func(args)
    except ExprError as exc:
        print(f"alphaexp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"alphaexp: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except PrecisionError as exc:
        hint = f" (try --precision-bits {exc.required_bits})" if exc.required_bits else ""
        print(f"alphaexp: precision error: {exc}{hint}", file=sys.stderr)
        return EXIT_PRECISION
    except ResourceError as exc:
        print(f"alphaexp: resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except AlphaExpError as exc:  # pragma: no cover - every subclass is handled above
        print(f"alphaexp: error: {exc}", file=sys.stderr)
        return 1
    _emit(out, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
