"""Command-line entry point.

Every JSON artifact carries a ``config`` block holding the full run
configuration, so a run can be repeated from its own output. Rationals are
written as ``"p/q"``; nothing is written as a float.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from biorder import freeword as fw
from biorder.errors import BiorderError, IdentityInput, NotFound, TruncationExceeded

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _words(text: str | None) -> list[str]:
    if not text:
        return []
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            out.append(fw.parse(part))
        except ValueError as exc:
            raise _UsageError(str(exc)) from None
    return out


def _word(text: str) -> str:
    try:
        return fw.parse(text)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _oracle(args):
    from biorder.magnus import MagnusOracle
    from biorder.transform import from_descriptor

    source = getattr(args, "order", "magnus") or "magnus"
    try:
        o = from_descriptor(source)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise _UsageError(f"bad order descriptor {source!r}: {exc}") from None
    degree = getattr(args, "degree", None)
    max_degree = getattr(args, "max_degree", None)
    if (degree or max_degree) and isinstance(o, MagnusOracle):
        o = MagnusOracle(degree or o.degree, max_degree or o.max_degree, o.swapped)
    return o


def _config(args) -> dict:
    cfg = {}
    for k, v in sorted(vars(args).items()):
        if k.startswith("_"):
            continue
        cfg[k] = v
    return cfg


def _dump(data: dict, args) -> str:
    data = {"config": _config(args), **data}
    return json.dumps(data, indent=2, sort_keys=False) + "\n"


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --- subcommands -----------------------------------------------------------

def cmd_sign(args):
    o = _oracle(args)
    s = o.sign(_word(args.word))
    print("+" if s > 0 else "-")
    return EXIT_OK


def cmd_cmp(args):
    o = _oracle(args)
    c = o.compare(_word(args.w1), _word(args.w2))
    print({-1: "<", 0: "=", 1: ">"}[c])
    return EXIT_OK


def cmd_arch(args):
    o = _oracle(args)
    r = o.arch_cmp(_word(args.w1), _word(args.w2))
    print({"<<": "<<", "~": "~~", ">>": ">>"}[r])
    return EXIT_OK


def cmd_saturate(args):
    from biorder import cones

    cone = cones.cone_from_signs(_words(args.positives), _words(args.negatives),
                                 L=args.length, Lc=args.conj, mode=args.mode)
    sat, rep = cones.saturate(cone)
    data = cones.report_json(sat, rep)
    if args.format == "csv":
        rows = [[a["word"], a["sign"]] for a in data["assignments"]]
        _emit(_csv(rows, ["word", "sign"]), args.out)
    else:
        _emit(_dump(data, args), args.out)
    if args.out:
        print(rep.outcome)
    return EXIT_OK if rep.consistent else EXIT_FAIL


def cmd_census(args):
    from biorder import cones

    cone = cones.cone_from_signs(_words(args.positives), _words(args.negatives),
                                 L=args.length, Lc=args.conj, mode=args.mode)
    census = cones.enumerate_extensions(cone, budget=args.budget)
    completions = [c.assignments() for c in census.completions]
    if args.format == "csv":
        rows = [[i, a["word"], a["sign"]] for i, comp in enumerate(completions) for a in comp]
        _emit(_csv(rows, ["completion", "word", "sign"]), args.out)
    else:
        _emit(_dump({"count": len(completions), "exhausted": census.exhausted,
                     "nodes": census.nodes, "completions": completions}, args), args.out)
    if args.out:
        print(len(completions))
    return EXIT_OK


def cmd_witness(args):
    from biorder.isolation import witness_nonisolation

    o = _oracle(args)
    try:
        cert = witness_nonisolation(_words(args.positives), L=args.length, Lc=args.conj,
                                    budget=args.budget, base=o)
    except NotFound as exc:
        _emit(_dump({"outcome": "NotFound", "message": str(exc), "stats": exc.stats}, args),
              args.out)
        return EXIT_FAIL
    data = cert.to_json()
    _emit(_dump(data, args), args.out)
    if args.out:
        print(f"{data['method']} {data['witness_word']}")
    return EXIT_OK


def cmd_verify(args):
    from biorder.verify import verify_certificate

    try:
        res = verify_certificate(args.certificate)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"invalid: {exc}")
        return EXIT_FAIL
    if res.valid:
        print("valid")
        return EXIT_OK
    print("invalid")
    for r in res.reasons:
        print(f"  {r}")
    return EXIT_FAIL


def cmd_sweep(args):
    from biorder.isolation import nonisolation_sweep

    rep = nonisolation_sweep(args.max_constraints, args.max_word_length, args.length,
                             args.conj, args.budget)
    if args.format == "csv":
        rows = [[" ".join(c["constraints"]) or "-", c["method"], c["witness_word"]]
                for c in rep["items"]]
        rows += [[" ".join(n["constraints"]) or "-", "not-found", ""] for n in rep["not_found"]]
        _emit(_csv(rows, ["constraints", "method", "witness"]), args.out)
    else:
        _emit(_dump(rep, args), args.out)
    if args.out:
        print(f"{rep['certificates']}/{rep['total']} certificates, "
              f"structured {rep['structured_rate']}, invalid {len(rep['invalid'])}")
    ok = rep["certificates"] == rep["total"] and not rep["invalid"]
    return EXIT_OK if ok else EXIT_FAIL


def cmd_dynreal(args):
    from biorder import dynreal

    o = _oracle(args)
    stage = dynreal.build_embedding(o, args.elements)
    atlas = dynreal.build_tau(o, args.tau_length) if args.tau_length else None
    data = dynreal.stage_json(stage, atlas)
    data["order_preserving"] = dynreal.check_order_preserving(stage)
    if args.word is not None:
        g = _word(args.word)
        f = dynreal.realize(g, stage)
        data["realization"] = {"word": fw.fmt(g),
                               "points": [[dynreal.qstr(x), dynreal.qstr(y)] for x, y in f.points]}
        if args.plot:
            from biorder.plotting import plot_realization

            plot_realization(stage, g, args.plot)
    elif args.plot:
        raise _UsageError("--plot needs --word")
    if args.format == "csv":
        rows = [[fw.fmt(w), dynreal.qstr(stage.t[w])] for w in stage.elements]
        _emit(_csv(rows, ["word", "t"]), args.out)
    else:
        _emit(_dump(data, args), args.out)
    return EXIT_OK


def cmd_homeo(args):
    from biorder import homeo
    from biorder.dynreal import qstr

    pts = []
    try:
        for pair in args.points.split(";"):
            x, y = pair.split(",")
            pts.append((homeo.Fraction(x.strip()), homeo.Fraction(y.strip())))
        f = homeo.RationalPLMap.from_points(pts)
    except ValueError as exc:
        raise _UsageError(f"bad --points: {exc}") from None
    t = homeo.tail_analysis(f)
    if args.csv:
        Path(args.csv).write_text(f.to_csv())
    if args.plot:
        from biorder.plotting import plot_map

        plot_map(f, args.plot, title="PL map")
    data = {"points": [[qstr(x), qstr(y)] for x, y in f.points],
            "violation_sup": qstr(t.violation_sup),
            "strict_witness": None if t.strict_witness is None else qstr(t.strict_witness),
            "in_P": homeo.in_P(f), "inverse_in_P": homeo.in_P(homeo.pl_invert(f))}
    _emit(_dump(data, args), args.out)
    return EXIT_OK


def cmd_wreath_demo(args):
    from biorder.wreath import demo

    rep = demo(args.instance, args.samples, args.seed)
    _emit(_dump(rep, args), args.out)
    if args.out:
        print("passed" if rep["axioms"]["passed"] and rep["gap_elimination"]["passed"]
              else "failed")
    ok = rep["axioms"]["passed"] and rep["gap_elimination"]["passed"]
    return EXIT_OK if ok else EXIT_FAIL


def cmd_class_census(args):
    from biorder.magnus import class_census

    o = _oracle(args)
    census = class_census(args.length, o)
    if args.format == "csv":
        _emit(_csv([[m, fw.fmt(w)] for m, w in census.items()], ["class", "first_word"]),
              args.out)
    else:
        _emit(_dump({"classes": [{"class": m, "first_word": fw.fmt(w)}
                                 for m, w in census.items()]}, args), args.out)
    return EXIT_OK


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="biorder",
                                description="Bi-orderings of the free group of rank two.")
    sub = p.add_subparsers(dest="command", required=True)

    def order(sp):
        sp.add_argument("--order", default="magnus",
                        help="descriptor JSON path, 'magnus' or 'magnus-swapped'")

    def out(sp, fmt=True):
        sp.add_argument("--out", help="write here instead of stdout")
        if fmt:
            sp.add_argument("--format", choices=("json", "csv"), default="json")

    def bounds(sp, length=4):
        sp.add_argument("--length", type=int, default=length, help="word length bound L")
        sp.add_argument("--conj", type=int, default=None, help="conjugator bound (default L)")

    sp = sub.add_parser("sign", help="sign of a word")
    sp.add_argument("word")
    sp.add_argument("--degree", type=int)
    sp.add_argument("--max-degree", type=int)
    order(sp)
    sp.set_defaults(_run=cmd_sign)

    for name, fn, helptext in (("cmp", cmd_cmp, "compare two words"),
                               ("arch", cmd_arch, "compare Archimedean classes")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("w1")
        sp.add_argument("w2")
        order(sp)
        sp.set_defaults(_run=fn)

    sp = sub.add_parser("saturate", help="bounded saturation of asserted signs")
    sp.add_argument("--positives", default="")
    sp.add_argument("--negatives", default="")
    bounds(sp)
    sp.add_argument("--mode", choices=("bi", "left"), default="bi")
    out(sp)
    sp.set_defaults(_run=cmd_saturate)

    sp = sub.add_parser("census", help="count consistent completions")
    sp.add_argument("--positives", default="")
    sp.add_argument("--negatives", default="")
    bounds(sp, 2)
    sp.add_argument("--mode", choices=("bi", "left"), default="bi")
    sp.add_argument("--budget", type=int, default=10_000)
    out(sp)
    sp.set_defaults(_run=cmd_census)

    sp = sub.add_parser("witness", help="non-isolation certificate for a basic open set")
    sp.add_argument("--positives", default="")
    bounds(sp, 6)
    sp.add_argument("--budget", type=int, default=500)
    order(sp)
    out(sp, fmt=False)
    sp.set_defaults(_run=cmd_witness)

    sp = sub.add_parser("verify", help="independently check a certificate")
    sp.add_argument("certificate")
    sp.set_defaults(_run=cmd_verify)

    sp = sub.add_parser("sweep", help="certificates for every small basic open set")
    sp.add_argument("--max-constraints", type=int, default=2)
    sp.add_argument("--max-word-length", type=int, default=3)
    sp.add_argument("--length", type=int, default=6)
    sp.add_argument("--conj", type=int, default=3)
    sp.add_argument("--budget", type=int, default=500)
    out(sp)
    sp.set_defaults(_run=cmd_sweep)

    sp = sub.add_parser("dynreal", help="finite-stage dynamical realization")
    order(sp)
    sp.add_argument("--elements", type=int, default=50)
    sp.add_argument("--tau-length", type=int, default=None)
    sp.add_argument("--word", default=None, help="realize this word as a PL map")
    sp.add_argument("--plot", help="SVG path for the realization of --word")
    out(sp)
    sp.set_defaults(_run=cmd_dynreal)

    sp = sub.add_parser("homeo", help="analyse a PL map of [0, 1]")
    sp.add_argument("--points", required=True, help="breakpoints, e.g. '0,0;1/4,3/8;1,1'")
    sp.add_argument("--csv", help="write breakpoints as CSV")
    sp.add_argument("--plot", help="SVG path")
    sp.add_argument("--out")
    sp.set_defaults(_run=cmd_homeo)

    sp = sub.add_parser("wreath-demo", help="axiom sampling for a wreath-product order")
    sp.add_argument("--instance", choices=("f2-magnus", "lamplighter"), default="lamplighter")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    out(sp, fmt=False)
    sp.set_defaults(_run=cmd_wreath_demo)

    sp = sub.add_parser("class-census", help="Archimedean classes up to a word length")
    sp.add_argument("--length", type=int, default=8)
    order(sp)
    out(sp)
    sp.set_defaults(_run=cmd_class_census)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args._run(args)
    except _UsageError as exc:
        print(f"biorder: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IdentityInput as exc:
        print(f"biorder: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TruncationExceeded, NotFound) as exc:
        print(f"biorder: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except BiorderError as exc:
        print(f"biorder: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
