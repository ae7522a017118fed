"""Command-line interface.

Exit status: 0 on success, 1 when a computation fails or cannot be certified,
2 on invalid input.  ``--json`` wraps every result as
``{"command": ..., "result": ..., "format": ...}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import ci, correlated, gamefile, nash, spohn
from .errors import ComputationError, InvalidInputError
from .fields import parse_field
from .gametensor import Format, Game, Tensor, random_game
from .groebner import set_default_budget
from .polyring import nash_equilibrium_ring, probability_ring


class UsageError(InvalidInputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _parse_format(text: str) -> Format:
    try:
        dims = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidInputError(f"bad format {text!r}; expected e.g. 2,2,2") from exc
    return Format(dims)


def _parse_param(text: str | None):
    if text is None:
        return None, None
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise InvalidInputError(f"bad --param {text!r}; expected NAME=VALUE")
    try:
        return name.strip(), Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"bad parameter value {value!r}") from exc


def _load(args) -> Game:
    name, value = _parse_param(getattr(args, "param", None))
    g = gamefile.load_game(args.game, param=name or "e")
    if isinstance(g, nash.ParametricGame):
        if value is None:
            raise InvalidInputError(f"game has parametric entries; pass --param {g.name}=VALUE")
        g = g.at(value)
    elif value is not None:
        raise InvalidInputError("--param given but the game has no parametric entries")
    if getattr(args, "field", None):
        F = parse_field(args.field)
        if F != g.field:
            g = Game(_convert_tensor(t, F) for t in g)
    return g


def _convert_tensor(t, F):
    return Tensor(t.format, F, {idx: F.convert(x) for idx, x in t.items()})


def _q(x) -> str:
    return str(Fraction(x))


def _columns(rows: Sequence[Sequence[str]]) -> str:
    if not rows:
        return ""
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    return "\n".join("| " + " ".join(s.rjust(w) for s, w in zip(r, widths)) + " |" for r in rows)


def _labels(args, n: int) -> list:
    if args.labels:
        labels = [x.strip() for x in args.labels.split(",")]
        if len(labels) != n:
            raise InvalidInputError(f"need {n} labels, got {len(labels)}")
        return labels
    return list(range(1, n + 1))


def _model(args, n: int):
    labels = _labels(args, n)
    if bool(args.statements) == bool(args.graph):
        raise InvalidInputError("give exactly one of --statements and --graph")
    if args.statements:
        return ci.parse_statements(args.statements, labels), labels
    return ci.parse_graph(args.graph, labels), labels


# ---------------------------------------------------------------------------
# subcommands: each returns (text, json_result, format)
# ---------------------------------------------------------------------------


def cmd_random_game(args):
    fmt = _parse_format(args.format)
    g = random_game(fmt, parse_field(args.field or "QQ"), args.seed)
    data = gamefile.game_to_dict(g)
    if args.output:
        gamefile.save_game(g, args.output)
        return f"wrote {args.output}", {"path": args.output}, fmt
    return gamefile.dump_game(g).rstrip("\n"), data, fmt


def cmd_tmne_count(args):
    fmt = _parse_format(args.format)
    k = nash.number_tmne(fmt)
    return str(k), k, fmt


def cmd_tmne_block_derangements(args):
    fmt = _parse_format(args.format)
    ders = nash.block_derangements(fmt)
    if not args.list:
        return str(len(ders)), len(ders), fmt
    lists = [[sorted(list(slot) for slot in S) for S in d.sets] for d in ders]
    lines = [str(len(ders))]
    for sets in lists:
        lines.append(" ".join("{" + ",".join(f"({j},{s})" for j, s in S) + "}" for S in sets))
    return "\n".join(lines), {"count": len(ders), "derangements": lists}, fmt


def cmd_nash_ideal(args):
    g = _load(args)
    R = nash_equilibrium_ring(g.format, g.field)
    gens = [str(f) for f in nash.nash_equilibrium_ideal(R, g)]
    return "\n".join(gens), gens, g.format


def cmd_nash_solve(args):
    g = _load(args)
    res = nash.solve_totally_mixed(g)
    sols = []
    for s in res.solutions:
        exact = s.exact()
        sols.append(
            {
                "variable": str(s.variable),
                "interval": [_q(s.interval[0]), _q(s.interval[1])],
                "exact": {str(v): _q(x) for v, x in exact.items()} | {str(s.variable): _q(s.interval[0])}
                if exact is not None
                else None,
            }
        )
    result = {"count": res.count, "eliminant": str(res.eliminant), "degree": res.degree, "solutions": sols}
    lines = [f"count: {res.count}", f"eliminant: {res.eliminant}", f"degree: {res.degree}"]
    for s in sols:
        if s["exact"] is not None:
            lines.append("solution: " + ", ".join(f"{v} = {x}" for v, x in s["exact"].items()))
        else:
            lo, hi = s["interval"]
            lines.append(f"solution: {s['variable']} in ({lo}, {hi})")
    return "\n".join(lines), result, g.format


def cmd_correlated(args):
    g = _load(args)
    CE = correlated.correlated_equilibria(g)
    what = args.what or "vertices"
    if what == "dim":
        d = CE.dim()
        return str(d), d, g.format
    if what == "fvector":
        f = CE.f_vector()
        return " ".join(map(str, f)), f, g.format
    if what == "vertices":
        verts = CE.vertices()
        result = [[_q(x) for x in v] for v in verts]
        rows = [list(r) for r in zip(*result)] if result else []
        return _columns(rows), result, g.format
    if what == "facets":
        fd = CE.facets()
        facets = [{"a": list(a), "b": b} for a, b in fd.facets]
        hull = [{"c": list(c), "g": gam} for c, gam in fd.hull]
        lines = [f"{' '.join(map(str, a))} <= {b}" for a, b in fd.facets]
        lines += [f"{' '.join(map(str, c))} = {gam}" for c, gam in fd.hull]
        return "\n".join(lines), {"facets": facets, "hull": hull}, g.format
    if what == "payoffs":
        pays = [[_q(x) for x in p] for p in CE.vertex_payoffs()]
        return "\n".join("(" + ", ".join(p) + ")" for p in pays), pays, g.format
    raise InvalidInputError(f"unknown query {what}")


def cmd_spohn(args):
    g = _load(args)
    R = probability_ring(g.format, g.field)
    if args.what == "matrices":
        mats = spohn.spohn_matrices(R, g)
        return "\n\n".join(map(str, mats)), [M.to_strings() for M in mats], g.format
    if args.what == "ideal":
        gens = [str(f) for f in spohn.spohn_ideal(R, g)]
        return "\n".join(gens), gens, g.format
    K = spohn.konstanz_matrix(R, g, args.label)
    return str(K), K.to_strings(), g.format


def cmd_ci_ideal(args):
    fmt = _parse_format(args.format)
    R = probability_ring(fmt, parse_field(args.field or "QQ"))
    model, labels = _model(args, len(fmt))
    gens = [str(f) for f in ci.ci_ideal(R, model, labels)]
    return "\n".join(gens), gens, fmt


def cmd_spohn_ci(args):
    g = _load(args)
    R = probability_ring(g.format, g.field)
    model, labels = _model(args, len(g.format))
    J = ci.spohn_ci(R, g, model, labels, verbose=args.verbose)
    gens = [str(f) for f in J]
    return "\n".join(gens), gens, g.format


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="wrap the result in a JSON object")
    common.add_argument("--gb-budget", type=int, default=None, help="Groebner reduction-step budget")
    common.add_argument("--field", default=None, help="coefficient field (QQ or ZZ/p)")

    p = _Parser(prog="equilibria", description="Exact algebra and geometry of game equilibria.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    rg = sub.add_parser("random-game", parents=[common], help="random game file")
    rg.add_argument("--format", required=True)
    rg.add_argument("--seed", type=int, default=0)
    rg.add_argument("-o", "--output", default=None)
    rg.set_defaults(func=cmd_random_game)

    tm = sub.add_parser("tmne", help="counting totally mixed equilibria")
    tms = tm.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    c = tms.add_parser("count", parents=[common])
    c.add_argument("--format", required=True)
    c.set_defaults(func=cmd_tmne_count)
    b = tms.add_parser("block-derangements", parents=[common])
    b.add_argument("--format", required=True)
    b.add_argument("--list", action="store_true")
    b.set_defaults(func=cmd_tmne_block_derangements)

    na = sub.add_parser("nash", help="Nash equilibrium ideal and solving")
    nas = na.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name, fn in (("ideal", cmd_nash_ideal), ("solve", cmd_nash_solve)):
        q = nas.add_parser(name, parents=[common])
        q.add_argument("game")
        q.add_argument("--param", default=None, help="NAME=VALUE for parametric entries")
        q.set_defaults(func=fn)

    co = sub.add_parser("correlated", parents=[common], help="correlated equilibrium polytope")
    co.add_argument("game")
    grp = co.add_mutually_exclusive_group()
    for what in ("vertices", "facets", "fvector", "dim", "payoffs"):
        grp.add_argument(f"--{what}", dest="what", action="store_const", const=what)
    co.set_defaults(func=cmd_correlated)

    sp = sub.add_parser("spohn", parents=[common], help="Spohn and Konstanz matrices")
    sp.add_argument("what", choices=["matrices", "ideal", "konstanz"])
    sp.add_argument("game")
    sp.add_argument("--label", default="k", help="Konstanz variable name")
    sp.set_defaults(func=cmd_spohn)

    cg = sub.add_parser("ci", help="conditional independence ideals")
    cgs = cg.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    ci_ideal = cgs.add_parser("ideal", parents=[common])
    ci_ideal.add_argument("--format", required=True)
    ci_ideal.set_defaults(func=cmd_ci_ideal)

    sc = sub.add_parser("spohn-ci", parents=[common], help="Spohn CI variety")
    sc.add_argument("game")
    sc.add_argument("--verbose", action="store_true")
    sc.set_defaults(func=cmd_spohn_ci)

    for q in (ci_ideal, sc):
        q.add_argument("--statements", default=None, help='e.g. "1|3|2;1,2|3|"')
        q.add_argument("--graph", default=None, help='e.g. "1-2,2-3"')
        q.add_argument("--labels", default=None, help="comma-separated player labels")
    return p


def _command_name(args) -> str:
    sub = getattr(args, "sub", None)
    return f"{args.command} {sub}" if sub else args.command


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        if args.gb_budget is not None:
            if args.gb_budget <= 0:
                raise InvalidInputError("--gb-budget must be positive")
            set_default_budget(args.gb_budget)
        text, result, fmt = args.func(args)
    except InvalidInputError as exc:
        return _fail(exc, 2, want_json)
    except ComputationError as exc:
        return _fail(exc, 1, want_json)
    finally:
        set_default_budget(None)
    if args.json:
        print(json.dumps({"command": _command_name(args), "result": result, "format": list(fmt)}))
    else:
        print(text)
    return 0


def _fail(exc: Exception, code: int, want_json: bool) -> int:
    msg = str(exc) or type(exc).__name__
    if want_json:
        print(json.dumps({"error": msg, "type": type(exc).__name__, "exit": code}), file=sys.stderr)
    else:
        print(f"error: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
