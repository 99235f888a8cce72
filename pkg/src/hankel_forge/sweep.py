"""Named parameter envelopes and a process-pool runner for verification sweeps."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from .groebner.engine import Budget
from .hankel import HankelConfig
from .report import BUDGET, FAIL, PASS, Report

CHECKS = ("gb", "sympow", "primdec", "secant", "linquot", "rees", "confluence", "perfectgraph")


def partitions_up_to(total: int):
    """Weakly decreasing tuples with at least one part, sum <= total, every part >= 1."""
    out = []

    def rec(rem, largest, acc):
        if acc:
            out.append(tuple(acc))
        for p in range(min(rem, largest), 0, -1):
            rec(rem - p, p, acc + [p])

    rec(total, total, [])
    return sorted(out)


def _m(n, c):
    return HankelConfig(n, c).m


def _gb(n_max, c_max):
    return [dict(n=n, c=c, t=t) for c in range(1, c_max + 1) for n in range(1, n_max + 1) for t in range(2, _m(n, c) + 1)]


def _sympow(n_max, c_max, s_max):
    return [
        dict(n=n, c=c, t=t, s=s)
        for c in range(1, c_max + 1)
        for n in range(1, n_max + 1)
        for t in range(2, _m(n, c) + 1)
        for s in range(1, s_max + 1)
    ]


def _tau_sweep(n_max, c_max, total):
    out = []
    for c in range(1, c_max + 1):
        for n in range(1, n_max + 1):
            for tau in partitions_up_to(total):
                if tau[0] <= _m(n, c):
                    out.append(dict(n=n, c=c, tau=tau))
    return out


def _rees(n_max, c_max):
    taus = [(2,), (3,), (2, 2), (3, 2)]
    return [
        dict(n=n, c=c, tau=tau)
        for c in range(1, c_max + 1)
        for n in range(1, n_max + 1)
        for tau in taus
        if tau[0] <= _m(n, c)
    ]


def _perfect(n_max, c_max):
    return [dict(n=n, c=c) for c in range(1, c_max + 1) for n in range(1, n_max + 1)]


# preset name -> check -> instance list
PRESETS: dict[str, dict[str, Callable[[], list[dict]]]] = {
    "smoke": {
        "gb": lambda: _gb(6, 2),
        "sympow": lambda: _sympow(6, 1, 2),
        "primdec": lambda: _tau_sweep(6, 1, 4),
        "secant": lambda: [dict(n=5, c=1, r=2)],
        "linquot": lambda: _tau_sweep(6, 2, 4),
        "rees": lambda: _rees(7, 2),
        "confluence": lambda: [dict(seed=s) for s in range(50)],
        "perfectgraph": lambda: _perfect(8, 3),
    },
    "desk": {
        "gb": lambda: _gb(9, 3),
        "sympow": lambda: _sympow(8, 2, 3),
        "primdec": lambda: _tau_sweep(8, 2, 6),
        "secant": lambda: [dict(n=7, c=2, r=2)],
        "linquot": lambda: _tau_sweep(8, 2, 6),
        "rees": lambda: _rees(9, 2),
        "confluence": lambda: [dict(seed=s) for s in range(500)],
        "perfectgraph": lambda: _perfect(12, 3),
    },
}
PRESETS["acceptance"] = PRESETS["desk"]


def preset_instances(check: str, preset: str) -> list[dict]:
    if preset not in PRESETS:
        raise KeyError(f"unknown preset {preset!r}; known: {', '.join(sorted(PRESETS))}")
    return PRESETS[preset][check]()


def run_instance(check: str, inst: dict, budget_sec: float | None = None, bound: int | None = None) -> Report:
    """Dispatch one instance to its verifier."""
    from .groebner import verify as gv
    from . import ideals, straighten

    budget = Budget(time_sec=budget_sec) if budget_sec is not None else None
    if check == "gb":
        return gv.verify_minors_gb(inst["n"], inst["c"], inst["t"], budget=budget)
    if check == "sympow":
        return gv.verify_symbolic_power(inst["n"], inst["c"], inst["t"], inst["s"], bound=inst.get("bound", bound), budget=budget)
    if check == "primdec":
        return gv.verify_primary_decomposition(inst["n"], inst["c"], inst["tau"], bound=inst.get("bound", bound), budget=budget)
    if check == "secant":
        return gv.verify_secant(inst["n"], inst["c"], inst.get("r", 2), budget=budget)
    if check == "linquot":
        return ideals.verify_linear_quotients(inst["n"], inst["c"], inst["tau"])
    if check == "rees":
        return straighten.verify_standard_monomials(inst["n"], inst["c"], inst["tau"])
    if check == "confluence":
        return straighten.confluence_check(inst["seed"])
    if check == "perfectgraph":
        return ideals.verify_perfect_graph(inst["n"], inst["c"])
    raise KeyError(f"unknown check {check!r}")


def _worker(args):
    check, inst, budget_sec, bound = args
    return run_instance(check, inst, budget_sec, bound).as_dict()


def _sort_key(rep: dict):
    # fields in instance order; integers compare numerically, everything else as text
    return tuple((k, (0, v, "") if isinstance(v, int) else (1, 0, str(v))) for k, v in rep["instance"].items())


def run_sweep(
    check: str,
    instances: list[dict],
    workers: int | None = None,
    budget_sec: float | None = None,
    bound: int | None = None,
) -> list[dict]:
    """Run every instance (in worker processes when workers > 1); reports come back sorted by instance."""
    jobs = [(check, inst, budget_sec, bound) for inst in instances]
    workers = workers if workers is not None else min(len(jobs), os.cpu_count() or 1)
    if workers <= 1 or len(jobs) <= 1:
        results = [_worker(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_worker, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return sorted(results, key=_sort_key)


def merge_verdict(reports: list[dict]) -> str:
    verdicts = {r["verdict"] for r in reports}
    if FAIL in verdicts:
        return FAIL
    if BUDGET in verdicts:
        return BUDGET
    return PASS
