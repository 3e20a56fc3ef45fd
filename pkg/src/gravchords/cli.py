"""Command-line front end: ``gravchords <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import acceptance, cache, cobar, cohomology, moduli, operad
from .errors import GravchordsError, MalformedInput, SizeGuard
from .exterior import AlgebraElement
from .polygon import check_chord, check_polygon, diagram_from_json, diagram_to_json
from .weights import WeightVector

HARD_MAX_N = 9


@dataclass
class RunConfig:
    max_n: int = HARD_MAX_N
    cache_dir: str | None = None
    fmt: str = "json"
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.max_n > HARD_MAX_N:
            raise SizeGuard(f"--max-n may not exceed {HARD_MAX_N}")

    def guard(self, n: int) -> int:
        check_polygon(n)
        if n > self.max_n:
            raise SizeGuard(f"n = {n} exceeds the size guard {self.max_n}")
        return n


def _load_json(text: str):
    try:
        if text == "-":
            return json.load(sys.stdin)
        path = Path(text)
        if not text.lstrip().startswith(("{", "[")) and path.exists():
            return json.loads(path.read_text())
        return json.loads(text)
    except (OSError, ValueError) as exc:
        raise MalformedInput(f"cannot read JSON input: {exc}") from None


def _chord(text: str):
    try:
        i, j = (int(p) for p in text.replace(" ", "").strip("[]()").split(","))
    except ValueError:
        raise MalformedInput(f"chord must look like 'i,j', got {text!r}") from None
    return i, j


def _diagram(text: str, cfg: RunConfig):
    data = _load_json(text)
    try:
        n, chords = diagram_from_json(data)
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad diagram JSON: {exc}") from None
    cfg.guard(n)
    return n, chords


def _element(text: str, cfg: RunConfig) -> AlgebraElement:
    data = _load_json(text)
    try:
        a = AlgebraElement.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GravchordsError):
            raise
        raise MalformedInput(f"bad element JSON: {exc}") from None
    cfg.guard(a.n)
    return a


def _weights(text: str) -> WeightVector:
    return WeightVector.parse(text)


# subcommands; each returns (exit status, report)


def cmd_basis(args, cfg):
    n = cfg.guard(args.n)
    diagrams = cohomology.enumerate_gravity_basis(n, args.degree, prime_only=args.prime)
    return 0, {"n": n, "degree": args.degree, "prime_only": args.prime, "count": len(diagrams),
               "diagrams": [[list(c) for c in d] for d in diagrams]}


def cmd_reduce(args, cfg):
    a = _element(args.input, cfg)
    if a.basis == "omega":
        if args.certificate:
            out, cert = cohomology.reduce_arc(a, certificate=True)
            return 0, {"result": out.to_json(), "certificate": cert.to_json()}
        return 0, {"result": cohomology.reduce_arc(a).to_json()}
    if args.both:
        return 0, {"result": cohomology.reduce_chord_checked(a).to_json()}
    return 0, {"result": cohomology.reduce_chord(a).to_json()}


def cmd_residue(args, cfg):
    a = _element(args.input, cfg)
    if a.basis != "gravity":
        a = cohomology.reduce_chord(a)
    return 0, {"residue": operad.residue(a, _chord(args.chord)).to_json()}


def cmd_graft(args, cfg):
    n1, d1 = _diagram(args.outer, cfg)
    n2, d2 = _diagram(args.inner, cfg)
    n, chords, sign = operad.graft(n1, d1, args.slot, n2, d2)
    cfg.guard(n)
    return 0, {"diagram": diagram_to_json(n, chords), "sign": sign}


def cmd_cut(args, cfg):
    n, d = _diagram(args.diagram, cfg)
    n_out, outer, slot, n_in, inner, sign = operad.cut(n, d, check_chord(_chord(args.chord), n))
    return 0, {"outer": diagram_to_json(n_out, outer), "slot": slot,
               "inner": diagram_to_json(n_in, inner), "sign": sign}


def cmd_factor(args, cfg):
    n, d = _diagram(args.diagram, cfg)
    tree, sign = operad.prime_factorization(n, d)
    return 0, {"tree": tree.to_json(), "sign": sign, "vertices": tree.vertices}


def cmd_trace(args, cfg):
    n = cfg.guard(args.n)
    value = operad.prime_trace(n, args.degree)
    return 0, {"n": n, "degree": args.degree, "trace": str(value)}


def cmd_betti_open(args, cfg):
    n = cfg.guard(args.n)
    return 0, {"n": n, "poincare": moduli.poincare_open(n).to_list()}


def cmd_betti_delta(args, cfg):
    a = _weights(args.weights)
    cfg.guard(a.n)
    memo = moduli.BettiMemo()
    key = a.large_intervals()
    poly = moduli.poincare_delta(key, memo)
    return 0, {"weights": [str(w) for w in a.weights], "poincare": poly.to_list(),
               "memo": memo.stats.to_json()}


def cmd_walls(args, cfg):
    a = _weights(args.weights)
    cfg.guard(a.n)
    return 0, {"weights": [str(w) for w in a.normalized().weights], "walls": moduli.walls(a)}


def cmd_blowups(args, cfg):
    a = _weights(args.weights)
    cfg.guard(a.n)
    return 0, {"weights": [str(w) for w in a.normalized().weights],
               "steps": [s.to_json() for s in moduli.blowup_sequence(a)]}


def cmd_check_inverse(args, cfg):
    cfg.guard(args.order + 1)
    ok, report = moduli.inverse_gf_check(args.order)
    return (0 if ok else 1), {"holds": ok, **report}


def cmd_cobar(args, cfg):
    n = cfg.guard(args.n)
    cx = cobar.build_cobar(n)
    report = {"n": n, "dimensions": {str(D): cx.dims(D) for D in cx.total_degrees}}
    status = 0
    if args.check_d2 or args.ranks:
        report["d_squared_zero"] = cx.check_square_zero()
        status = 0 if report["d_squared_zero"] else 1
    if args.ranks and status == 0:
        report["homology_ranks"] = cobar.homology_ranks(cx)
    if args.export:
        report["complex"] = cx.to_json()
    return status, report


def _criterion(args):
    name, max_n = args
    if name == "basis":
        return acceptance.basis_correctness(max_n)
    if name == "relations":
        return acceptance.relation_vanishing(max_n)
    if name == "freeness":
        return acceptance.freeness(max_n)
    if name == "cobar":
        return acceptance.cobar_coherence(min(max_n, 6))
    if name == "purity":
        return acceptance.purity_recursion(max_n)
    if name == "inverse":
        return acceptance.generating_inverse()
    if name == "blowups":
        return acceptance.blowups()
    return acceptance.trace_check()


def cmd_verify_all(args, cfg):
    max_n = args.max_n or acceptance.DEFAULT_MAX_N
    if max_n > HARD_MAX_N:
        raise SizeGuard(f"--max-n may not exceed {HARD_MAX_N}")
    names = ["basis", "relations", "freeness", "cobar", "purity", "inverse", "blowups", "trace"]
    start = time.perf_counter()
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_criterion, [(nm, max_n) for nm in names]))
    else:
        results = [_criterion((nm, max_n)) for nm in names]
    results.append(acceptance.performance(time.perf_counter() - start, max_n))
    ok = all(r.passed for r in results)
    return (0 if ok else 1), {"max_n": max_n, "passed": ok,
                              "criteria": [r.to_json() for r in results]}


COMMANDS = {
    "basis": cmd_basis, "reduce": cmd_reduce, "residue": cmd_residue, "graft": cmd_graft,
    "cut": cmd_cut, "factor": cmd_factor, "trace": cmd_trace, "betti-open": cmd_betti_open,
    "betti-delta": cmd_betti_delta, "walls": cmd_walls, "blowups": cmd_blowups,
    "check-inverse": cmd_check_inverse, "cobar": cmd_cobar, "verify-all": cmd_verify_all,
}


def _global_options(parser, suppress: bool, with_guard: bool = True) -> None:
    def default(value):
        return argparse.SUPPRESS if suppress else value
    parser.add_argument("--cache-dir", default=default(None),
                        help=f"on-disk cache directory (default: ${cache.ENV_VAR}, else no cache)")
    parser.add_argument("--format", choices=("json", "table"), default=default("json"))
    parser.add_argument("--seed", type=int, default=default(0))
    parser.add_argument("--jobs", type=int, default=default(1))
    if with_guard:
        parser.add_argument("--max-n", type=int, default=default(HARD_MAX_N), dest="guard_n",
                            help="refuse polygons larger than this (at most 9)")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gravchords", description=__doc__)
    _global_options(p, suppress=False)
    # the same flags are accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    common_suite = argparse.ArgumentParser(add_help=False)
    _global_options(common_suite, suppress=True, with_guard=False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common_suite if name == "verify-all" else common], **kw)

    s = add("basis", help="list gravity diagrams")
    s.add_argument("n", type=int)
    s.add_argument("--degree", type=int, default=None)
    s.add_argument("--prime", action="store_true")

    s = add("reduce", help="reduce an element (JSON, path or '-')")
    s.add_argument("input")
    s.add_argument("--certificate", action="store_true")
    s.add_argument("--both", action="store_true", help="run both chord-side routes and compare")

    s = add("residue", help="residue of an element along a chord")
    s.add_argument("input")
    s.add_argument("--chord", required=True)

    s = add("graft", help="graft inner into slot of outer")
    s.add_argument("outer")
    s.add_argument("slot", type=int)
    s.add_argument("inner")

    s = add("cut", help="cut a diagram along a residual chord")
    s.add_argument("diagram")
    s.add_argument("--chord", required=True)

    s = add("factor", help="prime factorization tree")
    s.add_argument("diagram")

    s = add("trace", help="trace of rotation on prime coordinates")
    s.add_argument("n", type=int)
    s.add_argument("degree", type=int)

    s = add("betti-open", help="Poincare polynomial of M_{0,n}")
    s.add_argument("n", type=int)

    for name, text in (("betti-delta", "Poincare polynomial of the weighted space"),
                       ("walls", "large intervals and their weights"),
                       ("blowups", "symbolic blow-up sequence")):
        s = add(name, help=text)
        s.add_argument("--weights", required=True, help="comma-separated rationals, e.g. 1,1/3,1")

    s = add("check-inverse", help="check the generating-function inversion")
    s.add_argument("order", type=int)

    s = add("cobar", help="cobar complex at arity n-1")
    s.add_argument("n", type=int)
    s.add_argument("--ranks", action="store_true")
    s.add_argument("--check-d2", action="store_true")
    s.add_argument("--export", action="store_true")

    s = add("verify-all", help="run every acceptance criterion")
    s.add_argument("--max-n", type=int, default=None)
    return p


def _table(report, indent: int = 0) -> list[str]:
    pad = " " * indent
    lines = []
    if isinstance(report, dict):
        for k, v in report.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, str)) for x in v):
                lines.append(f"{pad}{k}:")
                lines.extend(_table(v, indent + 2))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(report, list):
        for item in report:
            if isinstance(item, dict):
                lines.extend(_table(item, indent))
                lines.append("")
            else:
                lines.append(f"{pad}{json.dumps(item)}")
    return lines


def _criteria_table(report) -> list[str]:
    lines = []
    for r in report["criteria"]:
        status = "PASS" if r["passed"] else "FAIL"
        lines.append(f"{status}  {r['criterion']}  {r['name']}  ({r['seconds']:.2f}s)")
    lines.append(f"seed {report['seed']}, max n {report['max_n']}")
    return lines


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(max_n=args.guard_n, cache_dir=args.cache_dir or os.environ.get(cache.ENV_VAR),
                        fmt=args.format, seed=args.seed, jobs=max(1, args.jobs))
        cache.set_cache_dir(cfg.cache_dir)
        status, report = COMMANDS[args.command](args, cfg)
    except GravchordsError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return exc.exit_code
    report = {"command": args.command, "seed": cfg.seed, **report}
    if cfg.fmt == "table":
        lines = _criteria_table(report) if args.command == "verify-all" else _table(report)
        print("\n".join(lines))
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    return status


if __name__ == "__main__":
    sys.exit(main())
