"""Command line front end: solve, verify, trace, ordinal, gen."""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .driver import FuelExhausted, SolveResult, VerificationError, solve, verify
from .dsl import Instance, ParseError, crit_text, parse_instance, parse_substitution, print_instance, substitution_lines
from .gen import GenParams, generate
from .injury import (
    InjuryTrace,
    check_finite_injury,
    check_weakly_finite_injury,
    height_o,
    is_proper_prefix,
    parse_path,
    path_str,
    remaining_height,
)

HEADER = "epsengine/1"

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_FUEL, EXIT_IO = range(5)


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# --- records ----------------------------------------------------------------


def result_record(res: SolveResult) -> str:
    lines = [
        HEADER,
        "kind result",
        f"formulas {len(res.tower.crs)}",
        f"levels {res.N}",
        f"path_t1 {path_str(res.path_t1)}",
    ]
    lines += [f"lifted {k} {path_str(node)}" for k, node in enumerate(res.lifted_nodes, start=1)]
    lines += [f"fuel {level} {n}" for level, n in sorted(res.stats.items())]
    lines += [f"entry {line}" for line in substitution_lines(res.substitution)]
    return "\n".join(lines) + "\n"


def trace_record(trace: InjuryTrace) -> str:
    lines = [HEADER, "kind trace", f"name {trace.name}"]
    lines += [f"step {path_str(s)} -> {path_str(i)}" for s, i in trace.steps]
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> InjuryTrace:
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise ParseError(f"missing {HEADER} header", 1, 1)
    trace = InjuryTrace()
    for n, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if line.startswith("name "):
            trace.name = line[5:]
        elif line.startswith("step "):
            try:
                src, img = line[5:].split("->")
                trace.add(parse_path(src), parse_path(img))
            except ValueError as exc:
                raise ParseError(f"bad step: {exc}", n, 1) from None
        elif line and not line.startswith(("kind ", "#")):
            raise ParseError(f"unrecognized record {line!r}", n, 1)
    return trace


# --- helpers ----------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from None


def _write(path: Path, text: str):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from None


def _load(path: str) -> Instance:
    text = _read(path)
    try:
        return parse_instance(text)
    except ParseError as exc:
        raise CliError(f"{path}:{exc}", EXIT_PARSE) from None


def _solve(inst: Instance, fuel: int) -> SolveResult:
    try:
        return solve(inst.crits, fuel=fuel)
    except FuelExhausted as exc:
        raise CliError(f"fuel exhausted: {exc}", EXIT_FUEL) from None
    except VerificationError as exc:
        raise CliError(f"verification failed: {exc}", EXIT_VERIFY) from None


def _all_traces(res: SolveResult) -> list[InjuryTrace]:
    return [res.step_trace, *res.traces]


def _trace_file(trace: InjuryTrace) -> str:
    return re.sub(r"[^\w-]", "_", trace.name) + ".trace"


def _write_traces(res: SolveResult, directory: str) -> list[Path]:
    out = []
    for trace in _all_traces(res):
        path = Path(directory) / _trace_file(trace)
        _write(path, trace_record(trace))
        out.append(path)
    return out


# --- commands ---------------------------------------------------------------


def cmd_solve(args, out) -> int:
    res = _solve(_load(args.file), args.fuel)
    for line in substitution_lines(res.substitution):
        print(line, file=out)
    if args.out:
        _write(Path(args.out), result_record(res))
    if args.trace_dir:
        _write_traces(res, args.trace_dir)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    inst = _load(args.file)
    if args.subst:
        try:
            S = parse_substitution(_read(args.subst), inst.skolems)
        except ParseError as exc:
            raise CliError(f"{args.subst}:{exc}", EXIT_PARSE) from None
    else:
        S = _solve(inst, args.fuel).substitution
    rep = verify(S, inst.crits)
    width = max((len(crit_text(cr, {})) for cr in inst.crits), default=0)
    for k, (cr, ok) in enumerate(zip(inst.crits, rep.verdicts)):
        print(f"{k:>3}  {crit_text(cr, {}):<{width}}  {'ok' if ok else 'FALSE'}", file=out)
    for term in rep.incorrect:
        print(f"incorrect {term} := {S[term]}", file=out)
    print(f"solving: {'PASS' if rep.solving else 'FAIL'}", file=out)
    print(f"correctness: {'PASS' if rep.correct else 'FAIL'}", file=out)
    return EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_trace(args, out) -> int:
    res = _solve(_load(args.file), args.fuel)
    if args.trace_dir:
        _write_traces(res, args.trace_dir)
    status = EXIT_OK
    for trace in _all_traces(res):
        fi = check_finite_injury(trace) is None
        wfi = check_weakly_finite_injury(trace, max(len(trace), 1)) is None
        print(f"{trace.name}: finite-injury {'PASS' if fi else 'FAIL'} weakly-finite-injury {'PASS' if wfi else 'FAIL'}", file=out)
        if trace is res.step_trace and not fi:
            status = EXIT_VERIFY
    return status


def cmd_ordinal(args, out) -> int:
    try:
        trace = parse_trace(_read(args.file))
    except ParseError as exc:
        raise CliError(f"{args.file}:{exc}", EXIT_PARSE) from None
    if check_finite_injury(trace) is not None:
        print("note: trace is not finite injury, descent is not guaranteed", file=out)
    h = remaining_height(trace.images)
    os = [height_o(img, h) for img in trace.images]
    for (src, img), o in zip(trace.steps, os):
        print(f"o({path_str(src)} -> {path_str(img)}) = {o}", file=out)
    bad = 0
    n = len(trace.steps)
    for i in range(n):
        for j in range(i + 1, n):
            if not is_proper_prefix(trace.steps[i][0], trace.steps[j][0]):
                continue
            a, b = path_str(trace.steps[i][0]), path_str(trace.steps[j][0])
            if os[j] < os[i]:
                print(f"o decreases {a} -> {b}: {os[i]} > {os[j]}", file=out)
            else:
                bad += 1
                print(f"o does not decrease {a} -> {b}: {os[i]} <= {os[j]}", file=out)
    return EXIT_OK if not bad else EXIT_VERIFY


def cmd_gen(args, out) -> int:
    params = GenParams(max_formulas=args.max_formulas, max_witness=args.max_witness)
    text = print_instance(generate(args.seed, params))
    if args.out:
        _write(Path(args.out), text)
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="epsengine", description="epsilon-substitution solver")
    sub = p.add_subparsers(dest="command", required=True)

    def instance_cmd(name, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file", help="instance file")
        sp.add_argument("--fuel", type=int, default=10**6, help="step budget per tree level")
        sp.add_argument("--trace-dir", help="directory for injury-trace files")
        return sp

    sp = instance_cmd("solve", "solve an instance and print the substitution")
    sp.add_argument("--out", help="write a machine-readable result record here")
    sp.set_defaults(run=cmd_solve)

    sp = instance_cmd("verify", "check a substitution against an instance")
    sp.add_argument("--subst", help="substitution file; solve first when omitted")
    sp.set_defaults(run=cmd_verify)

    sp = instance_cmd("trace", "write and check the injury traces of a solve")
    sp.set_defaults(run=cmd_trace, trace_dir="traces")

    sp = sub.add_parser("ordinal", help="check ordinal descent along a trace file")
    sp.add_argument("file", help="trace file")
    sp.set_defaults(run=cmd_ordinal)

    sp = sub.add_parser("gen", help="print a random rank-1 instance")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-witness", type=int, default=20)
    sp.add_argument("--max-formulas", type=int, default=10)
    sp.add_argument("--out", help="write the instance here instead of stdout")
    sp.set_defaults(run=cmd_gen)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.run(args, out)
    except CliError as exc:
        print(f"epsengine: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
