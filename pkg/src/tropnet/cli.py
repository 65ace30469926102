"""Command-line interface: ``tropnet <command> [<kind>] [options]``.

Exit status: 0 success / member / feasible, 1 non-member / infeasible,
2 usage or data error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import serialize as ser
from .canonical import invert_gz, invert_horn
from .errors import TraceMismatch, TropnetError
from .fixtures import intro_concatenation, intro_net
from .hive import (
    HornTriple,
    boundary_horizontal,
    boundary_outer,
    horn_feasible,
    in_C2,
    in_C3,
    in_GZ,
)
from .multipath import (
    DEFAULT_CAP,
    L_map,
    M_map,
    brute_max_kpath_weight,
    max_kpath_weight,
)
from .network import delta0, gamma0, gamma0_delta0, zero_weighting
from .randnet import random_network, random_weighting
from .recombine import (
    FIRST,
    SECOND,
    THIRD,
    canonical_decomposition,
    recombine_balance,
    recombine_shift,
    split,
    union,
)
from .render import render_dot, render_svg
from .tropical import format_weight


class UsageError(Exception):
    pass


def _fmt(v):
    return None if v is None else format_weight(v)


def _violations(vs):
    return [{"family": v.family, "k": v.k, "i": v.i,
             "lhs": ser._entry(v.lhs), "rhs": ser._entry(v.rhs)} for v in vs]


def _net(args):
    if not args.net:
        raise UsageError("--net is required")
    return ser.network_from_json(ser.load(args.net))


def _weights(args, net):
    if not getattr(args, "weights", None):
        return zero_weighting(net)
    w = ser.weighting_from_json(ser.load(args.weights))
    w.check_total(net)
    return w


def _tableau(args):
    if not args.tableau:
        raise UsageError("--tableau is required")
    return ser.tableau_from_json(ser.load(args.tableau))


def _emit_artifact(args, obj, report):
    if getattr(args, "output", None):
        ser.dump(obj, args.output)
        report["output"] = args.output
    else:
        report["result"] = obj


# -- commands ------------------------------------------------------------------

def cmd_gen(args, report):
    if args.kind == "gamma0":
        net = gamma0(args.n)
    elif args.kind == "delta0":
        net = delta0(args.n, Fraction(args.a), Fraction(args.b))
    elif args.kind == "horn":
        net = gamma0_delta0(args.n)
    elif args.kind == "intro":
        net = intro_net()
    elif args.kind == "intro-concat":
        net = intro_concatenation()
    else:  # random
        net = random_network(random.Random(args.seed), rank=args.n, max_edges=args.edges)
    report["summary"] = {"vertices": len(net.vertices), "edges": len(net.edges), "rank": net.rank}
    _emit_artifact(args, ser.network_to_json(net), report)
    return 0


def cmd_weights(args, report):
    net = _net(args)
    if args.kind == "zero":
        w = zero_weighting(net)
    else:
        w = random_weighting(net, random.Random(args.seed), args.lo, args.hi)
    _emit_artifact(args, ser.weighting_to_json(w), report)
    return 0


def cmd_eval(args, report):
    net = _net(args)
    w = _weights(args, net)
    if args.kind == "l":
        n = net.rank if net.rank is not None else min(len(net.sources), len(net.sinks))
        rows = []
        for k in range(n + 1):
            if args.method == "enumerate":
                val, wit = brute_max_kpath_weight(net, w, k, args.cap)
            else:
                val, wit = max_kpath_weight(net, w, k)
            rows.append({"k": k, "l": _fmt(val),
                         "witness": None if wit is None else [list(p) for p in wit.paths]})
        report["l"] = rows
        return 0
    if net.middle is not None:
        t = M_map(net, None, w, method=args.method)
        ok, bad = in_C3(t)
        cone = "C3"
    else:
        t = L_map(net, w)
        ok, bad = in_C2(t)
        cone = "C2"
    report["tableau"] = ser.tableau_to_json(t)
    report["cone"] = {"name": cone, "member": ok, "violations": _violations(bad)}
    if args.kind == "hive" and t.is_finite():
        report["boundary"] = ser.triple_to_json(boundary_outer(t))
    if getattr(args, "output", None):
        ser.dump(ser.tableau_to_json(t), args.output)
    return 0


def cmd_check(args, report):
    if args.kind == "horn":
        try:
            triple = HornTriple.of(ser.parse_vector(args.lam), ser.parse_vector(args.mu),
                                   ser.parse_vector(args.nu))
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad triple: {exc}") from exc
        try:
            ok, wit = horn_feasible(triple, cap=args.horn_cap, slack=Fraction(args.slack))
        except TraceMismatch as exc:
            report.update(verdict="infeasible", reason=str(exc))
            return 1
        report["verdict"] = "feasible" if ok else "infeasible"
        if wit is not None:
            report["witness"] = ser.tableau_to_json(wit)
        return 0 if ok else 1
    t = _tableau(args)
    if args.kind == "gz":
        ok = in_GZ(boundary_horizontal(t))
        bad = [] if ok else in_C2(t)[1]
    elif args.kind == "c2":
        ok, bad = in_C2(t)
    else:
        ok, bad = in_C3(t)
    report["verdict"] = "member" if ok else "non-member"
    report["violations"] = _violations(bad)
    return 0 if ok else 1


def cmd_invert(args, report):
    t = _tableau(args)
    w = invert_gz(t) if args.kind == "gz" else invert_horn(t)
    report["network"] = f"{'gamma0' if args.kind == 'gz' else 'horn'} n={t.n}"
    _emit_artifact(args, ser.weighting_to_json(w), report)
    return 0


def cmd_recombine(args, report):
    net = _net(args)
    w = _weights(args, net)
    f = ser.multipath_from_json(net, ser.load(args.f))
    g = ser.multipath_from_json(net, ser.load(args.g))
    fn = recombine_shift if args.kind == "shift" else recombine_balance
    even, odd = fn(f, g, args.k, net)
    report["even"] = ser.multipath_to_json(even)
    report["odd"] = ser.multipath_to_json(odd)
    before, after = f.weight(w) + g.weight(w), even.weight(w) + odd.weight(w)
    report["weight"] = {"before": _fmt(before), "after": _fmt(after), "conserved": before == after}
    return 0


def cmd_decompose(args, report):
    gd = _net(args)
    a = ser.gd_path_from_json(gd, ser.load(args.alpha))
    b = ser.gd_path_from_json(gd, ser.load(args.beta))
    theta = union(a, b, gd)
    dec = canonical_decomposition(theta)
    report["type"] = list(theta.type)
    report["classes"] = {name: [[list(c) for c in dec.paths[j]] for j in idx]
                         for name, idx in dec.classes.items()}
    if args.variant:
        if args.k is None or args.i is None:
            raise UsageError("--variant needs --k and --i")
        red, green = split(theta, (args.k, args.i), args.variant)
        report["red"] = ser.gd_path_to_json(red)
        report["green"] = ser.gd_path_to_json(green)
        w = _weights(args, gd)
        report["weight_conserved"] = red.weight(w) + green.weight(w) == theta.weight(w)
    return 0


def cmd_spectra(args, report):
    from .spectra import principal_tableau, rationalize_triple, sample_horn_instance

    if args.kind == "sample":
        a, b, c, triple = sample_horn_instance(args.n, args.seed, args.scale)
        report["matrices"] = {k: ser.matrix_to_json(m) for k, m in (("A", a), ("B", b), ("C", c))}
        report["triple"] = ser.triple_to_json(triple)
        rat = rationalize_triple(triple)
        ok, _ = horn_feasible(rat, cap=args.horn_cap, slack=Fraction(1, 10**4))
        report["rationalized"] = ser.triple_to_json(rat)
        report["verdict"] = "feasible" if ok else "infeasible"
        return 0 if ok else 1
    if not args.matrix:
        raise UsageError("--matrix is required")
    t = principal_tableau(ser.matrix_from_json(ser.load(args.matrix)))
    ok, bad = in_C2(t, slack=1e-9)
    report["tableau"] = ser.tableau_to_json(t)
    report["verdict"] = "member" if ok else "non-member"
    return 0 if ok else 1


def cmd_render(args, report):
    net = _net(args)
    w = _weights(args, net) if args.weights else None
    marked = None
    if args.highlight:
        obj = ser.load(args.highlight)
        marked = {e for key in ("paths", "gamma", "delta") for p in obj.get(key, []) for e in p}
    fmt = args.format or (Path(args.output).suffix.lstrip(".") if args.output else "svg")
    text = render_dot(net, w, marked) if fmt == "dot" else render_svg(net, w, marked)
    if args.output:
        Path(args.output).write_text(text)
        report["output"] = args.output
    else:
        report["text"] = text
    return 0


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration limit")
    common.add_argument("-o", "--output")

    p = argparse.ArgumentParser(prog="tropnet", parents=[common],
                                description="Tropical eigenvalues of weighted planar networks.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a network")
    g.add_argument("kind", choices=["gamma0", "delta0", "horn", "intro", "intro-concat", "random"])
    g.add_argument("--n", type=int, default=3)
    g.add_argument("--a", default="0")
    g.add_argument("--b", default="1")
    g.add_argument("--edges", type=int, default=14)

    w = sub.add_parser("weights", parents=[common], help="generate a weighting")
    w.add_argument("kind", choices=["random", "zero"])
    w.add_argument("--net")
    w.add_argument("--lo", type=int, default=-9)
    w.add_argument("--hi", type=int, default=9)

    e = sub.add_parser("eval", parents=[common], help="evaluate l-vector or tableau")
    e.add_argument("kind", choices=["l", "tableau", "hive"])
    e.add_argument("--net")
    e.add_argument("--weights")
    e.add_argument("--method", choices=["flow", "enumerate"], default="flow")

    c = sub.add_parser("check", parents=[common], help="cone membership / Horn feasibility")
    c.add_argument("kind", choices=["c2", "c3", "gz", "horn"])
    c.add_argument("--tableau")
    c.add_argument("--lambda", dest="lam")
    c.add_argument("--mu")
    c.add_argument("--nu")
    c.add_argument("--slack", default="0")
    c.add_argument("--horn-cap", type=int, default=5)

    i = sub.add_parser("invert", parents=[common], help="weighting realising a tableau")
    i.add_argument("kind", choices=["gz", "horn"])
    i.add_argument("--tableau")

    r = sub.add_parser("recombine", parents=[common], help="even/odd recombination")
    r.add_argument("kind", choices=["shift", "balance"])
    r.add_argument("--net")
    r.add_argument("--weights")
    r.add_argument("--f", required=True)
    r.add_argument("--g", required=True)
    r.add_argument("--k", type=int, required=True)

    d = sub.add_parser("decompose", parents=[common], help="canonical decomposition of a union")
    d.add_argument("--net")
    d.add_argument("--weights")
    d.add_argument("--alpha", required=True)
    d.add_argument("--beta", required=True)
    d.add_argument("--variant", choices=[FIRST, SECOND, THIRD])
    d.add_argument("--k", type=int)
    d.add_argument("--i", type=int)

    s = sub.add_parser("spectra", parents=[common], help="symmetric-matrix cross-checks")
    s.add_argument("kind", choices=["sample", "tableau"])
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--scale", type=float, default=1.0)
    s.add_argument("--matrix")
    s.add_argument("--horn-cap", type=int, default=5)

    v = sub.add_parser("render", parents=[common], help="draw a network as SVG or DOT")
    v.add_argument("--net")
    v.add_argument("--weights")
    v.add_argument("--highlight")
    v.add_argument("--format", choices=["svg", "dot"])
    return p


COMMANDS = {
    "gen": cmd_gen, "weights": cmd_weights, "eval": cmd_eval, "check": cmd_check,
    "invert": cmd_invert, "recombine": cmd_recombine, "decompose": cmd_decompose,
    "spectra": cmd_spectra, "render": cmd_render,
}


def _print_text(report: dict) -> None:
    if "text" in report:
        sys.stdout.write(report["text"])
        return
    for key, val in report.items():
        if key == "command":
            continue
        if isinstance(val, (dict, list)):
            val = json.dumps(val)
        print(f"{key}: {val}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    report = {"command": " ".join(sys.argv[1:] if argv is None else argv)}
    start = time.perf_counter()
    try:
        code = COMMANDS[args.command](args, report)
    except (UsageError, TropnetError, OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if args.json:
            print(json.dumps({"command": report["command"], "error": str(exc)}))
        return 2
    report["seconds"] = round(time.perf_counter() - start, 6)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        report.pop("seconds")
        _print_text(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
