"""ldpc-guard command line.

Flags may be given as ``--key value`` or as bare ``key=value`` tokens; every
run prints its resolved configuration as ``# key=value`` lines first.

Exit codes: 0 ok, 2 input/parse error, 3 infeasible construction,
4 guarantee violated, 5 search budget exceeded.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__, alist
from .backend import BACKEND
from .decoder import DEFAULT_MAX_ITER, ErrorPattern, decode, default_schedule, get_schedule, ScheduleError
from .graph import GraphError, TannerGraph

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_GUARANTEE = 4
EXIT_BUDGET = 5


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code = code
        self.kind = kind


def _normalize(argv: Sequence[str]) -> list[str]:
    out = []
    for tok in argv:
        if not tok.startswith("-") and "=" in tok:
            k, v = tok.split("=", 1)
            out += ["--" + k.replace("_", "-"), v]
        else:
            out.append(tok)
    return out


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _resolve_seed(seed: Optional[int]) -> int:
    if seed is None:
        return int(np.random.SeedSequence().entropy % (1 << 32))
    return seed


def _print_config(cmd: str, cfg: dict, out=None) -> None:
    out = out or sys.stdout
    print(f"# command={cmd}", file=out)
    for k, v in cfg.items():
        print(f"# {k}={v}", file=out)
    out.flush()


def _load(path: str) -> TannerGraph:
    try:
        return alist.load_alist(path)
    except OSError as e:
        raise CliError(EXIT_PARSE, "InputError", str(e)) from None
    except GraphError as e:
        raise CliError(EXIT_PARSE, "ParseError", f"{path}: {e}") from None


def _schedule(name: Optional[str], graph: TannerGraph):
    if name is None:
        return default_schedule(graph)
    try:
        return get_schedule(name)
    except ScheduleError as e:
        raise CliError(EXIT_PARSE, "ParseError", str(e)) from None


def _write(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


# subcommands ----------------------------------------------------------------

def cmd_construct(a) -> int:
    from .construction import (
        ConstructionError, ConstructionSpec, PostVerificationFailed, describe, parse_avoid, peg_construct,
    )
    from .structures import Verdict

    try:
        if a.config:
            spec = ConstructionSpec.from_keyvalue(Path(a.config).read_text())
        else:
            if a.n is None or a.m is None:
                raise CliError(EXIT_PARSE, "ParseError", "construct needs n and m (or config)")
            spec = ConstructionSpec(a.n, a.m, a.gamma, a.max_check_degree or (7 if a.gamma == 3 else 9),
                                    a.depth, parse_avoid(a.avoid) if a.avoid else None,
                                    _resolve_seed(a.seed), a.retries)
    except (ValueError, OSError) as e:
        raise CliError(EXIT_PARSE, "ParseError", str(e)) from None
    cfg = {k: v for k, v in (ln.split("=", 1) for ln in spec.to_keyvalue().splitlines())}
    cfg["out"] = a.out or ""
    cfg["backend"] = BACKEND
    _print_config("construct", cfg)
    try:
        res = peg_construct(spec)
    except PostVerificationFailed as e:
        budget = any(c.verdict is Verdict.BUDGET_EXCEEDED for c in e.report.conditions.values())
        print(e.report.to_keyvalue(), end="")
        raise CliError(EXIT_BUDGET if budget else EXIT_INFEASIBLE, type(e).__name__, str(e)) from None
    except ConstructionError as e:
        raise CliError(EXIT_INFEASIBLE, type(e).__name__, str(e)) from None
    text = describe(res)
    if a.out:
        alist.save_alist(res.graph, a.out + ".alist")
        Path(a.out + ".report").write_text(text)
        print(f"wrote={a.out}.alist,{a.out}.report")
    print(text, end="")
    return EXIT_OK


def cmd_check(a) -> int:
    from .structures import DEFAULT_BUDGET, Verdict, analyze, split_names

    g = _load(a.input)
    conds = split_names(a.conditions) if a.conditions else None
    budget = a.budget or DEFAULT_BUDGET
    _print_config("check", {"in": a.input, "conditions": ",".join(conds) if conds else "default",
                            "budget": budget, "format": a.format, "backend": BACKEND})
    try:
        rep = analyze(g, conds, budget)
    except (ValueError, GraphError) as e:
        raise CliError(EXIT_PARSE, "ParseError", str(e)) from None
    _write(a.out, rep.to_keyvalue() if a.format == "kv" else rep.to_text())
    if any(c.verdict is Verdict.BUDGET_EXCEEDED for c in rep.conditions.values()):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_decode(a) -> int:
    g = _load(a.input)
    sch = _schedule(a.schedule, g)
    if a.received is not None:
        bits = a.received.strip()
        if len(bits) != g.n_vars or set(bits) - {"0", "1"}:
            raise CliError(EXIT_PARSE, "ParseError", f"received must be {g.n_vars} bits of 0/1")
        word = np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0")
    else:
        errs = _int_list(a.errors or "")
        if any(not 0 <= e < g.n_vars for e in errs):
            raise CliError(EXIT_PARSE, "ParseError", "error position out of range")
        word = ErrorPattern.of(errs).to_word(g.n_vars)
    _print_config("decode", {"in": a.input, "schedule": sch.name, "iterations": a.iterations,
                             "errors": ",".join(map(str, np.flatnonzero(word)))})
    out = decode(g, word, sch, a.iterations, record_trajectory=True)
    print(f"verdict={out.verdict}")
    print(f"converged={str(out.converged).lower()}")
    print(f"iteration={out.iteration if out.converged else ''}")
    print(f"iterations_run={out.iterations_run}")
    print(f"estimate_support={','.join(map(str, np.flatnonzero(out.final_estimate)))}")
    print(f"correct={str(out.is_correct()).lower()}")
    return EXIT_OK


def cmd_verify(a) -> int:
    from .verification import default_workers, exhaustive_verify, sampled_verify

    g = _load(a.input)
    sch = _schedule(a.schedule, g)
    workers = a.workers or default_workers()
    cfg = {"in": a.input, "schedule": sch.name, "t": a.t, "iterations": a.iterations,
           "workers": workers, "samples": a.samples or 0, "checkpoint": a.checkpoint or "",
           "backend": BACKEND}
    if a.samples:
        cfg["seed"] = _resolve_seed(a.seed)
    _print_config("verify", cfg)
    if a.samples:
        rep = exhaustive_verify(g, sch, a.t - 1, a.iterations, workers) if a.t > 1 else None
        samp = sampled_verify(g, sch, a.t, a.samples, a.iterations, cfg["seed"], workers)
        if rep is not None:
            samp.failures = rep.failures + samp.failures
            samp.patterns_tested += rep.patterns_tested
            samp.nonconverged += rep.nonconverged
            samp.miscorrected += rep.miscorrected
        rep = samp
    else:
        rep = exhaustive_verify(g, sch, a.t, a.iterations, workers, checkpoint=a.checkpoint)
    _write(a.out, rep.to_csv())
    return EXIT_OK if rep.guarantee_holds else EXIT_GUARANTEE


def cmd_simulate(a) -> int:
    from .channel import BscRun, points_to_csv, simulate_fer
    from .verification import default_workers

    g = _load(a.input)
    sch = _schedule(a.schedule, g)
    seed = _resolve_seed(a.seed)
    alphas = [float(x) for x in a.alpha.split(",")]
    workers = a.workers or default_workers()
    _print_config("simulate", {"in": a.input, "schedule": sch.name, "alpha": a.alpha, "seed": seed,
                               "max_trials": a.max_trials, "target_errors": a.target_errors,
                               "iterations": a.iterations, "workers": workers, "backend": BACKEND})
    try:
        pts = [simulate_fer(g, sch, BscRun(al, seed, a.max_trials, a.target_errors, a.iterations), workers)
               for al in alphas]
    except ValueError as e:
        raise CliError(EXIT_PARSE, "ParseError", str(e)) from None
    _write(a.out, points_to_csv(pts))
    return EXIT_OK


def cmd_find_counterexample(a) -> int:
    from .verification import NECESSITY_CONDITIONS, NotFound, search_necessity_counterexample

    seed = _resolve_seed(a.seed)
    _print_config("find-counterexample", {"condition": a.condition, "seed": seed,
                                          "max_attempts": a.max_attempts, "out": a.out or ""})
    try:
        ce = search_necessity_counterexample(a.condition, seed, a.max_attempts)
    except ValueError as e:
        raise CliError(EXIT_PARSE, "ParseError", str(e)) from None
    except NotFound as e:
        if a.condition not in NECESSITY_CONDITIONS:
            print(f"result=impossible\nreason={e}")
            return EXIT_OK
        raise CliError(EXIT_BUDGET, "NotFound", str(e)) from None
    pattern = ",".join(map(str, ce.pattern))
    if a.out:
        alist.save_alist(ce.graph, a.out + ".alist")
        Path(a.out + ".pattern").write_text(pattern + "\n")
        print(f"wrote={a.out}.alist,{a.out}.pattern")
    else:
        sys.stdout.write(alist.dumps(ce.graph).decode())
    print(f"core_variables={ce.core.n_vars}")
    print(f"core_checks={ce.core.n_checks}")
    print(f"pattern={pattern}")
    print(f"status={'FailedMaxIter' if ce.status == 2 else 'Miscorrected'}")
    print(f"attempts={ce.attempts}")
    return EXIT_OK


# parser -----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error=ParseError\nmessage={message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ldpc-guard", description="Guaranteed three-error correction tools for LDPC codes.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build a code with forbidden-structure rejection")
    c.add_argument("--n", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--gamma", type=int, default=3)
    c.add_argument("--max-check-degree", type=int)
    c.add_argument("--depth", type=int)
    c.add_argument("--avoid")
    c.add_argument("--seed", type=int)
    c.add_argument("--retries", type=int, default=10)
    c.add_argument("--config", help="key=value file with n, m, gamma, ...")
    c.add_argument("--out", help="output prefix; writes PREFIX.alist and PREFIX.report")
    c.set_defaults(func=cmd_construct)

    k = sub.add_parser("check", help="structural report for an alist graph")
    k.add_argument("--in", dest="input", required=True)
    k.add_argument("--conditions")
    k.add_argument("--budget", type=int)
    k.add_argument("--format", choices=("kv", "text"), default="kv")
    k.add_argument("--out")
    k.set_defaults(func=cmd_check)

    d = sub.add_parser("decode", help="decode one received word")
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--errors", help="comma-separated error positions")
    d.add_argument("--received", help="received word as a 0/1 string")
    d.add_argument("--schedule")
    d.add_argument("--iterations", type=int, default=DEFAULT_MAX_ITER)
    d.set_defaults(func=cmd_decode)

    v = sub.add_parser("verify", help="exhaustive (or sampled) error-pattern certification")
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--t", type=int, default=3)
    v.add_argument("--iterations", type=int, default=DEFAULT_MAX_ITER)
    v.add_argument("--schedule")
    v.add_argument("--workers", type=int)
    v.add_argument("--checkpoint")
    v.add_argument("--samples", type=int, help="sample weight-t patterns instead of enumerating them")
    v.add_argument("--seed", type=int)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", help="BSC Monte Carlo frame error rate")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--alpha", required=True, help="comma-separated crossover probabilities")
    s.add_argument("--seed", type=int)
    s.add_argument("--max-trials", type=int, default=10_000_000)
    s.add_argument("--target-errors", type=int, default=100)
    s.add_argument("--iterations", type=int, default=DEFAULT_MAX_ITER)
    s.add_argument("--schedule")
    s.add_argument("--workers", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_simulate)

    f = sub.add_parser("find-counterexample", help="small cw4 graph failing one expansion condition")
    f.add_argument("--condition", required=True)
    f.add_argument("--seed", type=int)
    f.add_argument("--max-attempts", type=int, default=200_000)
    f.add_argument("--out")
    f.set_defaults(func=cmd_find_counterexample)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_normalize(argv))
    try:
        return args.func(args)
    except CliError as e:
        print(f"error={e.kind}\nmessage={e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
