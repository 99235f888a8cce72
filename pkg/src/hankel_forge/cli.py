"""Command-line front end: decompositions, straightening and verification sweeps.

Exit codes: 0 pass, 1 assertion failure, 2 usage or parse error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .chains import standard_tableau, gamma_t, parse_tableau, shape_of
from .errors import HankelForgeError
from .hankel import HankelConfig
from .polyring import parse_monomial
from .report import BUDGET, FAIL, PASS
from .sweep import CHECKS, PRESETS, merge_verdict, preset_instances, run_sweep

EXIT = {PASS: 0, FAIL: 1, BUDGET: 3}
USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _tau(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tau must look like 3,2 got {text!r}")
    if not parts or any(p < 1 for p in parts):
        raise argparse.ArgumentTypeError(f"tau parts must be positive, got {text!r}")
    return parts


def _emit(args, text: str, payload: dict) -> None:
    out = json.dumps(payload, indent=2, default=str) if args.json else text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def cmd_decompose(args) -> int:
    delta = parse_monomial(args.monomial, args.n)
    tab = standard_tableau(delta, args.c)
    shape = shape_of(delta, args.c)
    n = delta.n
    m = HankelConfig(n, args.c).m
    gammas = {t: gamma_t(shape, t) for t in range(1, m + 1)}
    lines = [str(tab), "shape " + ",".join(map(str, shape))]
    lines += [f"gamma_{t} = {g}" for t, g in gammas.items()]
    payload = {
        "monomial": str(delta),
        "c": args.c,
        "n": n,
        "tableau": str(tab),
        "shape": list(shape),
        "gamma": {str(t): g for t, g in gammas.items()},
    }
    _emit(args, "\n".join(lines), payload)
    return 0


def cmd_straighten(args) -> int:
    from .straighten import reduce_tableau

    tab = parse_tableau(args.tableau, args.c, sort=True)
    trace: list = []
    rng = random.Random(args.seed)
    out = reduce_tableau(tab, args.strategy, rng=rng, trace=trace)
    lines = [str(out)] + [f"{rel.kind}: {rel.format()}" for rel in trace]
    payload = {
        "input": str(tab),
        "c": args.c,
        "seed": args.seed,
        "strategy": args.strategy,
        "normal_form": str(out),
        "trace": [{"kind": rel.kind, "relation": rel.format()} for rel in trace],
    }
    _emit(args, "\n".join(lines), payload)
    return 0


def _single_instance(args) -> dict:
    check = args.check
    if check == "confluence":
        return {}
    if args.n is None:
        raise HankelForgeError(f"verify {check} needs -n (or --preset)")
    cfg = HankelConfig(args.n, args.c)
    inst: dict = {"n": args.n, "c": args.c}
    if check in ("gb", "sympow"):
        if args.t is None:
            raise HankelForgeError(f"verify {check} needs -t")
        cfg.check_t(args.t)
        inst["t"] = args.t
    if check == "sympow":
        inst["s"] = args.s
    if check in ("primdec", "linquot", "rees"):
        if args.tau is None:
            raise HankelForgeError(f"verify {check} needs --tau")
        cfg.check_t(max(args.tau))
        inst["tau"] = tuple(sorted(args.tau, reverse=True))
    if check == "secant":
        inst["r"] = args.r
    return inst


def cmd_verify(args) -> int:
    if args.preset:
        instances = preset_instances(args.check, args.preset)
    elif args.check == "confluence":
        instances = [{"seed": args.seed + i} for i in range(args.seeds)]
    else:
        instances = [_single_instance(args)]
    reports = run_sweep(args.check, instances, workers=args.workers, budget_sec=args.budget_sec, bound=args.bound)
    verdict = merge_verdict(reports)
    for r in reports:
        r["seed"] = r["instance"].get("seed", args.seed)
    if len(reports) == 1:
        payload = reports[0]
    else:
        payload = {
            "check": args.check,
            "instance": {"preset": args.preset, "count": len(reports)},
            "verdict": verdict,
            "timings": {"total": round(sum(sum(r["timings"].values()) for r in reports), 6)},
            "seed": args.seed,
            "details": {"reports": reports},
        }
        failed = [r for r in reports if r["verdict"] != PASS]
        if failed:
            payload["counterexample"] = {"instance": failed[0]["instance"], "counterexample": failed[0].get("counterexample")}
    lines = []
    for r in reports:
        inst = " ".join(f"{k}={v}" for k, v in r["instance"].items())
        line = f"{r['check']} [{inst}] {r['verdict'].upper()} ({sum(r['timings'].values()):.2f}s)"
        if r.get("counterexample") is not None:
            line += f" counterexample: {r['counterexample']}"
        lines.append(line)
    lines.append(f"{args.check}: {verdict.upper()} ({len(reports)} instance(s), seed {args.seed})")
    _emit(args, "\n".join(lines), payload)
    return EXIT[verdict]


def cmd_membership(args) -> int:
    from .ideals import symbolic_membership

    delta = parse_monomial(args.monomial, args.n)
    cert = symbolic_membership(delta, args.t, args.s, args.c, verify=args.verify)
    d = cert.as_dict()
    text = f"{'member' if cert.verdict else 'not a member'} (gamma_{args.t} = {cert.gamma}, s = {args.s})"
    _emit(args, text, d)
    return 0


def cmd_pf(args) -> int:
    from .straighten import pf_labeling

    table = pf_labeling(args.lengths)
    _emit(args, str(table), {"lengths": list(args.lengths), "labels": table.rows()})
    return 0


def cmd_rees(args) -> int:
    from .straighten import rees_quadrics

    rels = rees_quadrics(args.n, args.c, tuple(sorted(args.tau, reverse=True)))
    lines = [rel.format(show_t=args.show_t) for rel in rels]
    payload = {"n": args.n, "c": args.c, "tau": list(args.tau), "relations": [{"kind": r.kind, "relation": r.format(show_t=True)} for r in rels]}
    _emit(args, "\n".join(lines), payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hankel-forge", description="Minors of extended Hankel matrices: decompositions, straightening, verification.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        sp.add_argument("--out", help="write the report to this file instead of stdout")
        sp.add_argument("--seed", type=int, default=0)

    d = sub.add_parser("decompose", help="c-decomposition, shape and gamma table of a monomial")
    d.add_argument("monomial")
    d.add_argument("-c", type=_positive, required=True)
    d.add_argument("-n", type=_positive, help="number of variables (default: largest index present)")
    common(d)
    d.set_defaults(func=cmd_decompose)

    s = sub.add_parser("straighten", help="quasi-sorted normal form of a tableau with the rule trace")
    s.add_argument("tableau", help='rows separated by "/", e.g. "1 4 7 10 / 3 12"')
    s.add_argument("-c", type=_positive, required=True)
    s.add_argument("--strategy", choices=("leftmost", "random"), default="leftmost")
    common(s)
    s.set_defaults(func=cmd_straighten)

    v = sub.add_parser("verify", help="run a verification check or sweep")
    v.add_argument("check", choices=CHECKS)
    v.add_argument("-n", type=_positive)
    v.add_argument("-c", type=_positive, default=1)
    v.add_argument("-t", type=_positive)
    v.add_argument("-s", type=_positive, default=2)
    v.add_argument("-r", type=_positive, default=2, help="secant order")
    v.add_argument("--tau", type=_tau)
    v.add_argument("--bound", type=_positive, help="degree bound for truncated checks")
    v.add_argument("--budget-sec", type=float, help="time budget per instance (default: HANKEL_FORGE_BUDGET_SEC or 600)")
    v.add_argument("--seeds", type=_positive, default=500, help="number of random tableaux for confluence")
    v.add_argument("--preset", choices=sorted(PRESETS), help="run the named parameter envelope")
    v.add_argument("--workers", type=_positive, help="worker processes for sweeps")
    common(v)
    v.set_defaults(func=cmd_verify)

    mb = sub.add_parser("membership", help="symbolic-power membership certificate")
    mb.add_argument("monomial")
    mb.add_argument("-c", type=_positive, required=True)
    mb.add_argument("-t", type=_positive, required=True)
    mb.add_argument("-s", type=_positive, required=True)
    mb.add_argument("-n", type=_positive)
    mb.add_argument("--verify", action="store_true", help="cross-check against the facet primes")
    common(mb)
    mb.set_defaults(func=cmd_membership)

    pf = sub.add_parser("pf", help="PF label table for row lengths")
    pf.add_argument("lengths", type=_tau, help="row lengths, e.g. 7,7,4,4,2,2")
    common(pf)
    pf.set_defaults(func=cmd_pf)

    rs = sub.add_parser("rees", help="dump the quadratic relations of the Rees presentation")
    rs.add_argument("-n", type=_positive, required=True)
    rs.add_argument("-c", type=_positive, required=True)
    rs.add_argument("--tau", type=_tau, required=True)
    rs.add_argument("--show-t", action="store_true", help="print the T-indices of the Y variables")
    common(rs)
    rs.set_defaults(func=cmd_rees)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HankelForgeError as exc:
        print(f"hankel-forge: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
