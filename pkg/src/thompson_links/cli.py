"""Command-line interface.

Elements use the tree-pair grammar ``"top ; bottom"`` (``"top ; bottom @ k"``
for T) and links are PD JSON files ``{"pd": [[a, b, c, d], ...], "free_loops": 0}``.
Exit codes: 0 success, 1 domain error, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import alexander, graphs, links, spin, thompson
from .errors import BudgetExceeded, ThompsonError

DEFAULT_MAX_VERTICES = 16


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _element(text: str):
    return thompson.parse_any(text)


def _is_t(*elements) -> bool:
    return any(isinstance(g, thompson.TElement) for g in elements)


def _graph(g):
    return graphs.gamma_T(g) if isinstance(g, thompson.TElement) else graphs.gamma_F(g)


def _check_vertices(graph, args):
    if graph.n_vertices > args.max_vertices:
        raise BudgetExceeded(f"graph has {graph.n_vertices} vertices, limit is {args.max_vertices}")


def _read_link(path: str) -> links.LinkDiagram:
    try:
        with open(path) as fh:
            return links.LinkDiagram.from_json(json.load(fh))
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ThompsonError(f"cannot read PD file {path}: {exc}") from exc


def _fraction(x: Fraction):
    return x.numerator if x.denominator == 1 else str(x)


# ---------------------------------------------------------------------------
# verbs: each returns (text, json-able value)

def cmd_mul(args):
    gs = [_element(s) for s in args.elements]
    out = gs[0]
    for h in gs[1:]:
        out = thompson.multiply_T(out, h) if _is_t(out, h) else thompson.multiply(out, h)
    if isinstance(out, thompson.TElement):
        out = thompson.reduce_T(out)
    else:
        out = thompson.reduce(out)
    return str(out), {"element": str(out)}


def cmd_inv(args):
    g = _element(args.element)
    out = thompson.reduce_T(thompson.invert_T(g)) if _is_t(g) else thompson.reduce(thompson.invert(g))
    return str(out), {"element": str(out)}


def cmd_eval(args):
    g = _element(args.element)
    value = thompson.evaluate(g, thompson.dyadic(args.point))
    return str(value), {"value": str(value)}


def cmd_gamma(args):
    graph = _graph(_element(args.element))
    return json.dumps(graph.to_json(), sort_keys=True), graph.to_json()


def cmd_link(args):
    L = links.medial_link(_graph(_element(args.element)))
    return L.dumps(), L.to_json()


def _link_arg(args) -> links.LinkDiagram:
    if args.pd:
        return _read_link(args.pd)
    if args.element:
        return links.medial_link(_graph(_element(args.element)))
    raise _UsageError("give --pd FILE or an element")


def cmd_bracket(args):
    b = links.kauffman_bracket(_link_arg(args), args.max_crossings)
    text = b.format("A")
    return text, {"bracket": text}


def cmd_jones(args):
    vs = sorted(links.format_jones(v) for v in links.jones_set(_link_arg(args), args.max_crossings))
    return "\n".join(vs), {"jones": vs}


def _poly_graph(args):
    graph = _graph(_element(args.element))
    _check_vertices(graph, args)
    return graph


def cmd_chromatic(args):
    text = spin.chromatic(_poly_graph(args)).format("Q")
    return text, {"chromatic": text}


def cmd_tutte(args):
    text = str(spin.tutte(_poly_graph(args)))
    return text, {"tutte": text}


def cmd_coeff(args):
    g = _element(args.element)
    _check_vertices(_graph(g), args)
    if args.Q is None:
        text = str(spin.coefficient_chromatic(g))
        return text, {"coefficient": text}
    if args.method == "spin":
        value = spin.coefficient_spin(g, args.Q, args.max_vertices)
    else:
        value = spin.coefficient_chromatic(g, args.Q)
    return str(value), {"Q": args.Q, "coefficient": _fraction(value)}


def cmd_member(args):
    g = _element(args.element)
    if args.group == "Farrow":
        if isinstance(g, thompson.TElement):
            if g.offset:
                raise ThompsonError("element is not in F")
            g = g.pair
        ok = spin.in_F_arrow(g)
    else:
        if not isinstance(g, thompson.TElement):
            g = thompson.TElement(g, 0)
        ok = spin.in_T_arrow(g)
    return str(ok).lower(), {"group": args.group, "member": ok}


def cmd_stabilizer(args):
    try:
        with open(args.h_table) as fh:
            table = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ThompsonError(f"cannot read h table: {exc}") from exc
    if not isinstance(table, list) or sorted(table) != list(range(len(table))):
        raise ThompsonError("h table must be a permutation list of 0..|X|-1")
    if not 0 <= args.x0 < len(table):
        raise ThompsonError("x0 outside X")
    ok = spin.in_h_stabilizer(_element(args.element), table, args.x0)
    return str(ok).lower(), {"stabilizes": ok}


def cmd_from_link(args):
    L = _read_link(args.pd)
    run = alexander.from_link_oriented if args.oriented else alexander.from_link
    result = run(L, verify=not args.no_verify)
    if args.trace:
        with open(args.trace, "w") as fh:
            json.dump(result.trace.to_json(), fh, indent=1)
    data = result.to_json()
    text = f"{result.element}\nleaves: {result.leaf_count}\nunknots: {result.unknots}\nverified: {result.verified}"
    return text, data


def cmd_from_signs(args):
    signs = []
    for tok in args.signs.replace(",", " ").split():
        if tok not in ("+", "-", "+1", "-1"):
            raise _UsageError(f"bad sign {tok!r}")
        signs.append(1 if tok.startswith("+") else -1)
    g = thompson.reduce(graphs.from_sign_sequence(signs))
    return str(g), {"element": str(g)}


def cmd_export_dot(args):
    graph = _graph(_element(args.element))
    if args.svg:
        if not isinstance(graph, graphs.StandardSignedGraph):
            raise ThompsonError("SVG export is only available for elements of F")
        text = graphs.to_svg(graph)
    else:
        text = graphs.to_dot(graph)
    return text, {"format": "svg" if args.svg else "dot", "text": text}


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="thompson-links", description="Thompson groups, graphs and links.")
    p.add_argument("--json", action="store_true", help="print JSON output")
    p.add_argument("--max-crossings", type=int, default=links.DEFAULT_MAX_CROSSINGS)
    p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    p.add_argument("--seed", type=int, default=None, help="unused by deterministic verbs")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, func, help_text):
        s = sub.add_parser(name, help=help_text)
        s.set_defaults(func=func)
        return s

    verb("mul", cmd_mul, "product g1 g2 ... (g1 applied last)").add_argument("elements", nargs="+")
    verb("inv", cmd_inv, "inverse").add_argument("element")
    s = verb("eval", cmd_eval, "evaluate at a dyadic point")
    s.add_argument("element")
    s.add_argument("point")
    verb("gamma", cmd_gamma, "graph of an element as JSON").add_argument("element")
    verb("link", cmd_link, "medial link of the graph as PD JSON").add_argument("element")
    for name, func in (("bracket", cmd_bracket), ("jones", cmd_jones)):
        s = verb(name, func, f"{name} of a PD file or of the link of an element")
        s.add_argument("element", nargs="?")
        s.add_argument("--pd")
    verb("chromatic", cmd_chromatic, "chromatic polynomial of the graph").add_argument("element")
    verb("tutte", cmd_tutte, "Tutte polynomial of the graph").add_argument("element")
    s = verb("coeff", cmd_coeff, "normalised chromatic coefficient")
    s.add_argument("element")
    s.add_argument("--Q", type=int)
    s.add_argument("--method", choices=("chromatic", "spin"), default="chromatic")
    s = verb("member", cmd_member, "membership in the oriented subgroup")
    s.add_argument("element", nargs="?", default=". ; .")
    s.add_argument("--group", choices=("Farrow", "Tarrow"), default="Farrow")
    s = verb("stabilizer", cmd_stabilizer, "stabilizer test for a spin map h")
    s.add_argument("element")
    s.add_argument("--h-table", required=True)
    s.add_argument("--x0", type=int, default=0)
    s = verb("from-link", cmd_from_link, "element of F realising a link")
    s.add_argument("--pd", required=True)
    s.add_argument("--oriented", action="store_true")
    s.add_argument("--trace")
    s.add_argument("--no-verify", action="store_true")
    verb("from-signs", cmd_from_signs, "element of F-> from a sign sequence").add_argument("signs")
    s = verb("export-dot", cmd_export_dot, "graph as DOT (or SVG)")
    s.add_argument("element")
    s.add_argument("--svg", action="store_true")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text, data = args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ThompsonError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(data, sort_keys=True) if args.json else text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
