"""Command-line front end: ``shrinkca <subcommand> [options]``.

Exit codes: 0 success, 1 usage or input error, 2 attack found no survivors,
3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import automaton, repro
from .attack import brute_force_oracle, exhaustive_attack
from .errors import BudgetExceeded, ShrinkCAError
from .field import MINUS_INFINITY, build_field, cyclotomic_cosets, zech, zech_table_csv
from .gf2poly import format_poly
from .sequences import format_bits, parse_bits
from .shrinking import ShrinkingGeneratorConfig, interleaved_polynomial, shrunken_generate

EXIT_OK, EXIT_USAGE, EXIT_NO_SURVIVORS, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def read_config(path: str) -> dict[str, str]:
    """Parse ``key = value`` lines (``:`` also accepted, ``#`` starts a comment)."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for sep in ("=", ":"):
            if sep in line:
                key, value = line.split(sep, 1)
                break
        else:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key = key.strip().lower()
        if key not in ("p1", "p2", "init1", "init2"):
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value.strip()
    return out


def _bits_arg(text: str) -> np.ndarray:
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        return parse_bits(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _merge_config(args, needed):
    if getattr(args, "config", None):
        for k, v in read_config(args.config).items():
            if getattr(args, k, None) is None:
                setattr(args, k, v)
    missing = [f"--{k}" for k in needed if getattr(args, k, None) is None]
    if missing:
        raise UsageError(f"missing required option(s): {' '.join(missing)}")


def _key(args) -> ShrinkingGeneratorConfig:
    _merge_config(args, ("p1", "init1", "p2", "init2"))
    return ShrinkingGeneratorConfig.from_text(args.p1, args.init1, args.p2, args.init2)


def _segment(args) -> np.ndarray:
    if args.seq is None:
        raise UsageError("missing required option: --seq")
    bits = _bits_arg(args.seq)
    if args.n is not None:
        if args.n > bits.size:
            raise UsageError(f"--n {args.n} exceeds the {bits.size} bits given")
        bits = bits[: args.n]
    return bits


def cmd_gen(args) -> tuple[int, str]:
    cfg = _key(args)
    if args.n is None:
        raise UsageError("missing required option: --n")
    s = shrunken_generate(cfg, args.n)
    if args.format == "json":
        return EXIT_OK, json.dumps({"period": s.period, "bits": str(s)}) + "\n"
    return EXIT_OK, f"{s}\n"


def cmd_zech_table(args) -> tuple[int, str]:
    tables = build_field(args.p)
    if args.format == "csv":
        return EXIT_OK, zech_table_csv(tables)
    rows = [(t, zech(tables, t)) for t in range(tables.order)]
    if args.format == "json":
        doc = {
            "poly": format_poly(tables.poly.mask),
            "zech": [None if z is MINUS_INFINITY else z for _, z in rows],
        }
        return EXIT_OK, json.dumps(doc) + "\n"
    width = len(str(tables.order))
    return EXIT_OK, "".join(f"{t:>{width}}  {z}\n" for t, z in rows)


def cmd_cosets(args) -> tuple[int, str]:
    part = cyclotomic_cosets(args.L)
    if args.format == "json":
        doc = [{"leader": c.leader, "members": list(c.members)} for c in part.cosets]
        return EXIT_OK, json.dumps(doc) + "\n"
    if args.format == "csv":
        return EXIT_OK, "leader,members\n" + "".join(
            f"{c.leader},{' '.join(map(str, c.members))}\n" for c in part.cosets
        )
    return EXIT_OK, "".join(f"C_{c.leader}: {{{', '.join(map(str, c.members))}}}\n" for c in part.cosets)


def cmd_ca(args) -> tuple[int, str]:
    rule = automaton.Rule(args.rule)
    boundary = automaton.Boundary(args.boundary)
    if args.state is not None:
        ca = automaton.CellularAutomaton(_bits_arg(args.state), rule, boundary)
        steps = args.steps or ca.length
    else:
        cfg = _key(args)
        s = shrunken_generate(cfg, cfg.period)
        z1 = int(build_field(interleaved_polynomial(cfg.r2.poly, cfg.L1)).zech[1])
        ca = automaton.shrunken_ca(s, cfg.L1, cfg.L2, z1)
        ca = automaton.CellularAutomaton(ca.state, rule, boundary)
        steps = args.steps or cfg.period
    grid = automaton.ca_evolve(ca, steps)
    if args.export_pbm:
        Path(args.export_pbm).write_text(automaton.grid_to_pbm(grid))
    if args.format == "json":
        return EXIT_OK, json.dumps({"rows": [format_bits(r) for r in grid]}) + "\n"
    return EXIT_OK, automaton.grid_to_text(grid)


def cmd_attack(args) -> tuple[int, str]:
    _merge_config(args, ("p1", "p2"))
    s = _segment(args)
    report = exhaustive_attack(args.p1, args.p2, s, args.workers, budget=args.budget)
    if args.format == "json":
        text = json.dumps(report.to_dict(timing=not args.no_timing), indent=2) + "\n"
    else:
        lines = [
            f"config: p1={report.config['p1']} p2={report.config['p2']} "
            f"p={report.config['p']} delta={report.config['delta']} T={report.config['T']}",
            f"intercepted bits: {report.n_intercepted}",
            f"candidates tested: {report.candidates_tested}",
            f"survivors: {report.survivor_count}",
        ]
        for c, r2 in zip(report.survivors, report.recovered_r2_states):
            r2_text = "not derivable" if r2 is None else "".join(map(str, r2))
            lines.append(f"  R1 {c.state_text}  recovered bits {len(c.matrix)}  R2 {r2_text}")
        lines.append(f"zech lookups: {report.zech_lookups_total}")
        if not args.no_timing:
            lines.append(f"elapsed: {report.wall_time * 1000:.1f} ms")
        text = "\n".join(lines) + "\n"
    return (EXIT_OK if report.survivor_count else EXIT_NO_SURVIVORS), text


def cmd_oracle(args) -> tuple[int, str]:
    _merge_config(args, ("p1", "p2"))
    s = _segment(args)
    pairs = brute_force_oracle(args.p1, args.p2, s)
    fmt = lambda st: "".join(map(str, st))  # noqa: E731
    if args.format == "json":
        text = json.dumps([{"r1": fmt(a), "r2": fmt(b)} for a, b in pairs]) + "\n"
    elif args.format == "csv":
        text = "r1,r2\n" + "".join(f"{fmt(a)},{fmt(b)}\n" for a, b in pairs)
    else:
        text = "".join(f"{fmt(a)} {fmt(b)}\n" for a, b in pairs)
    return (EXIT_OK if pairs else EXIT_NO_SURVIVORS), text


def _rows_arg(text):
    rows = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            rows.extend(range(int(lo), int(hi) + 1))
        else:
            rows.append(int(part))
    return rows


def cmd_repro(args) -> tuple[int, str]:
    if args.table == 6:
        pairs = repro.table6()
        if args.format == "csv":
            return EXIT_OK, "p2,zech_1\n" + "".join(f"{p},{z}\n" for p, z in pairs)
        if args.format == "json":
            return EXIT_OK, json.dumps([{"p2": p, "zech_1": z} for p, z in pairs]) + "\n"
        return EXIT_OK, "".join(f"{p:<22} {z}\n" for p, z in pairs)
    rows = _rows_arg(args.rows) if args.rows is not None else None
    results = repro.repro_table7(
        rows,
        budget=args.budget,
        unbounded=args.unbounded,
        convention=args.convention,
        workers=args.workers,
    )
    if args.format == "json":
        doc = [
            dict(zip(repro.CSV_HEADER, r.csv_row()), true_key_found=r.true_key_found, status=r.status)
            for r in results
        ]
        return EXIT_OK, json.dumps(doc, indent=2) + "\n"
    return EXIT_OK, repro.table7_csv(results)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="shrinkca",
        description="Shrinking-generator tools: keystreams, Zech tables, CA models and the CA attack.",
        epilog="exit codes: 0 success, 1 usage or input error, 2 no survivors, 3 internal error",
    )
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(p, formats=("text", "json")):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--out", help="write output to this file instead of stdout")

    def key_opts(p):
        for k in ("p1", "init1", "p2", "init2"):
            p.add_argument(f"--{k}")
        p.add_argument("--config", help="key-value file with p1, p2, init1, init2")

    p = sub.add_parser("gen", help="generate a shrunken sequence")
    key_opts(p)
    p.add_argument("--n", type=int)
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("zech-table", help="Zech logarithm table of GF(2^L)")
    p.add_argument("--p", required=True, help="primitive polynomial")
    common(p, ("text", "csv", "json"))
    p.set_defaults(func=cmd_zech_table)

    p = sub.add_parser("cosets", help="cyclotomic cosets modulo 2^L - 1")
    p.add_argument("--L", type=int, required=True)
    common(p, ("text", "csv", "json"))
    p.set_defaults(func=cmd_cosets)

    p = sub.add_parser("ca", help="evolve a rule-102/60 CA, or the CA of a shrunken sequence")
    key_opts(p)
    p.add_argument("--state", help="initial CA row (bits or @path)")
    p.add_argument("--steps", type=int, help="rows to output, including the initial one")
    p.add_argument("--rule", type=int, choices=(102, 60), default=102)
    p.add_argument("--boundary", choices=("periodic", "null"), default="periodic")
    p.add_argument("--export-pbm", metavar="PATH")
    common(p)
    p.set_defaults(func=cmd_ca)

    p = sub.add_parser("attack", help="exhaustive search over R1 states")
    key_opts(p)
    p.add_argument("--seq", help="intercepted bits (or @path)")
    p.add_argument("--n", type=int, help="use only the first n bits of --seq")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: all CPUs)")
    p.add_argument("--budget", type=float, help="wall-clock limit in seconds")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed time for byte-stable output")
    common(p)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("oracle", help="brute-force every state pair (small registers only)")
    key_opts(p)
    p.add_argument("--seq", help="intercepted bits (or @path)")
    p.add_argument("--n", type=int)
    common(p, ("text", "csv", "json"))
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("repro", help="recompute a published table")
    p.add_argument("--table", type=int, choices=(6, 7), required=True)
    p.add_argument("--rows", help="Table 7 rows, 1-based, e.g. 1-5,7")
    p.add_argument("--budget", type=float, help="per-row wall-clock limit in seconds")
    p.add_argument("--unbounded", action="store_true", help=f"allow rows above degree {repro.DESK_DEGREE}")
    p.add_argument("--convention", choices=repro.CONVENTIONS, default="all-ones")
    p.add_argument("--workers", type=int, default=1)
    common(p, ("csv", "text", "json"))
    p.set_defaults(func=cmd_repro)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        code, text = args.func(args)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except (ShrinkCAError, ValueError, OSError) as exc:
        if isinstance(exc, RuntimeError):
            print(f"internal error: {exc}", file=stderr)
            return EXIT_INTERNAL
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - invariant breach
        print(f"internal error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INTERNAL
    if getattr(args, "out", None):
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            print(f"error: {exc}", file=stderr)
            return EXIT_USAGE
    else:
        stdout.write(text)
    return code


def main(argv=None) -> int:
    try:
        return run(argv)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
