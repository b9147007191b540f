"""Command-line front end.

Verbs:

* ``diff EXPR``        apply the shift derivation --n times
* ``mul EXPR EXPR``    multiply two (differential) polynomials
* ``eval EXPR``        evaluate at a JSON environment of series (stdin),
                       reporting the coefficient recursion and the series
                       ring evaluation side by side
* ``hurwitz A B``      Hurwitz product of two series literals
* ``power A B``        Cauchy product of two series literals
* ``psi A``            convert between power and Hurwitz flavors
* ``laws``             run every law suite; nonzero exit on any failure
* ``rb --op ...``      shuffle / product / P / D on JSON input (stdin)

Exit codes: 0 success, 1 law failure, 2 parse or usage error.  All output
is deterministic given the inputs and --seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import hurwitz as hz
from . import rota_baxter as rb
from .errors import DiffalgError, ModeError, ParseError
from .expr import DIFF_MODE, POLY_MODE, parse_poly, parse_series_literal
from .free_diff import d_shift
from .polynomial import Poly
from .suites import run_all

SCHEMA = 1


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="diffalg", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="verb", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("diff", help="apply the shift derivation")
    p.add_argument("expr")
    p.add_argument("--n", type=int, default=1, help="iteration count")
    common(p)

    p = sub.add_parser("mul", help="multiply two polynomials")
    p.add_argument("expr")
    p.add_argument("other")
    common(p)

    p = sub.add_parser("eval", help="evaluate at a JSON series environment from stdin")
    p.add_argument("expr")
    p.add_argument("--order", type=int, default=8)
    common(p)

    for flavor in ("hurwitz", "power"):
        p = sub.add_parser(flavor, help=f"{flavor} product of two series literals")
        p.add_argument("left")
        p.add_argument("right")
        p.add_argument("--order", type=int, default=8, help="truncate inputs to this order")
        common(p)

    p = sub.add_parser("psi", help="convert series flavor via factorial rescaling")
    p.add_argument("series")
    p.add_argument("--from", dest="src", choices=("power", "hurwitz"), default="power")
    p.add_argument("--to", dest="dst", choices=("power", "hurwitz"), default=None)
    p.add_argument("--order", type=int, default=8)
    common(p)

    p = sub.add_parser("laws", help="run the full law suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    common(p)

    p = sub.add_parser("rb", help="shuffle-algebra operations on JSON input")
    p.add_argument("--op", choices=("shuffle", "mul", "P", "D", "raw"), required=True)
    common(p)

    return ap


def _positional(value: str) -> str:
    return sys.stdin.read().strip() if value == "-" else value


def _emit_poly(p: Poly, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps({"schema": SCHEMA, "result": str(p)}))
    else:
        print(p)


def _emit_series(s: hz.Series, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps({
            "schema": SCHEMA,
            "flavor": s.flavor.value,
            "coeffs": [str(c) for c in s.coeffs],
        }))
    else:
        print(s)


def _series_from_json(obj) -> hz.Series:
    flavor = hz.Flavor(obj["flavor"])
    coeffs = tuple(Fraction(str(c)) for c in obj["coeffs"])
    return hz.Series(coeffs, flavor)


def _rbelem_from_json(obj) -> rb.RBElem:
    out = rb.RBElem.zero()
    for t in obj["terms"]:
        letters = [parse_poly(s, POLY_MODE) for s in t["word"]]
        tail = parse_poly(t["tail"], POLY_MODE)
        out = out + rb.RBElem.term(letters, tail, Fraction(str(t.get("coeff", 1))))
    return out


def _rbelem_to_json(elem: rb.RBElem) -> dict:
    term_map = dict(elem.terms())
    terms = []
    for (w, t) in sorted(term_map):
        c = term_map[(w, t)]
        terms.append({
            "word": [str(Poly({m: Fraction(1)})) for m in w],
            "tail": str(Poly({t: Fraction(1)})),
            "coeff": str(c),
        })
    return {"schema": SCHEMA, "terms": terms}


def _cmd_diff(args) -> int:
    p = parse_poly(_positional(args.expr), DIFF_MODE)
    if args.n < 0:
        raise ParseError("--n must be non-negative", 1, frozenset({"natural number"}))
    for _ in range(args.n):
        p = d_shift(p)
    _emit_poly(p, args.format)
    return 0


def _cmd_mul(args) -> int:
    p = parse_poly(_positional(args.expr), DIFF_MODE)
    q = parse_poly(args.other, DIFF_MODE)
    _emit_poly(p * q, args.format)
    return 0


def _cmd_eval(args) -> int:
    if args.expr == "-":
        # first stdin line is the expression, the remainder is the JSON env
        text = sys.stdin.read()
        first, _, rest = text.partition("\n")
        p = parse_poly(first.strip(), POLY_MODE)
        payload = json.loads(rest)
    else:
        p = parse_poly(args.expr, POLY_MODE)
        payload = json.load(sys.stdin)
    env_obj = payload.get("env", payload) if isinstance(payload, dict) else payload
    env = {}
    for name, obj in env_obj.items():
        if name == "schema":
            continue
        env[name] = _series_from_json(obj)
    if not env:
        raise ParseError("empty environment", 1, frozenset({"series object"}))
    first = next(iter(env.values()))
    order = min(args.order, min(s.order for s in env.values()))
    oracle = hz.ring_eval(p, {k: s.truncate(order) for k, s in env.items()})
    evaluator = hz.omega_eval if first.flavor is hz.Flavor.HURWITZ else hz.delta_eval
    rows = []
    for n in range(order + 1):
        rec = evaluator(p, env, n)
        rows.append({"n": n, "recursion": str(rec), "ring": str(oracle.coeffs[n])})
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, "flavor": first.flavor.value, "components": rows}))
    else:
        for r in rows:
            agree = "ok" if r["recursion"] == r["ring"] else "MISMATCH"
            print(f"n={r['n']}: recursion={r['recursion']} ring={r['ring']} [{agree}]")
    return 0


def _cmd_series_mul(args, flavor: hz.Flavor) -> int:
    left = parse_series_literal(_positional(args.left))
    right = parse_series_literal(args.right)
    f = hz.Series(left, flavor).truncate(args.order)
    g = hz.Series(right, flavor).truncate(args.order)
    _emit_series(hz.smul_trunc(f, g), args.format)
    return 0


def _cmd_psi(args) -> int:
    coeffs = parse_series_literal(_positional(args.series))
    src = hz.Flavor.POWER if args.src == "power" else hz.Flavor.HURWITZ
    if args.dst is not None and args.dst == args.src:
        raise ParseError("--to must differ from --from", 1, frozenset({"flavor"}))
    s = hz.Series(coeffs, src).truncate(args.order)
    out = hz.psi(s) if src is hz.Flavor.POWER else hz.psi_inv(s)
    _emit_series(out, args.format)
    return 0


def _cmd_laws(args) -> int:
    reports = run_all(args.seed, args.trials)
    failed = False
    for rep in reports:
        print(rep.to_json())
        if not rep.passed:
            failed = True
    return 1 if failed else 0


def _cmd_rb(args) -> int:
    payload = json.load(sys.stdin)
    if args.op == "shuffle":
        u = [parse_poly(s, POLY_MODE) for s in payload["u"]]
        v = [parse_poly(s, POLY_MODE) for s in payload["v"]]
        combo = rb.shuffle(u, v)
        terms = [
            {"word": [str(Poly({m: Fraction(1)})) for m in w], "coeff": str(combo[w])}
            for w in sorted(combo)
        ]
        print(json.dumps({"schema": SCHEMA, "result": terms}))
        return 0
    if args.op == "mul":
        s = _rbelem_from_json(payload["s"])
        t = _rbelem_from_json(payload["t"])
        print(json.dumps(_rbelem_to_json(rb.rb_mul(s, t))))
        return 0
    if args.op == "P":
        print(json.dumps(_rbelem_to_json(rb.rb_P(_rbelem_from_json(payload["s"])))))
        return 0
    if args.op == "D":
        print(json.dumps(_rbelem_to_json(rb.rb_D(_rbelem_from_json(payload["s"])))))
        return 0
    raw = rb.rb_D_raw(_rbelem_from_json(payload["s"]))
    terms = [
        {
            "word": [str(Poly({m: Fraction(1)})) for m in w],
            "tail": str(Poly({t: Fraction(1)})),
            "var": str(v),
            "coeff": str(raw[(w, t, v)]),
        }
        for (w, t, v) in sorted(raw)
    ]
    print(json.dumps({"schema": SCHEMA, "result": terms}))
    return 0


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        if args.verb == "diff":
            return _cmd_diff(args)
        if args.verb == "mul":
            return _cmd_mul(args)
        if args.verb == "eval":
            return _cmd_eval(args)
        if args.verb == "hurwitz":
            return _cmd_series_mul(args, hz.Flavor.HURWITZ)
        if args.verb == "power":
            return _cmd_series_mul(args, hz.Flavor.POWER)
        if args.verb == "psi":
            return _cmd_psi(args)
        if args.verb == "laws":
            return _cmd_laws(args)
        if args.verb == "rb":
            return _cmd_rb(args)
        raise AssertionError(f"unhandled verb {args.verb}")
    except (ParseError, ModeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DiffalgError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
