"""Command-line surface: seq, locate, tree, verify, table.

Text output is human-first; json, csv and dot outputs are deterministic
byte for byte for fixed flags (timing and worker count never leak into
machine formats). Exit codes: 0 pass/success, 1 check failure, 2 usage
error, 3 undecided at budget (with --strict for seq).
"""

import argparse
import json
import os
import sys
from typing import List, Optional

from . import sequences, verify
from .matrices import locate, residue6
from .sequences import DEFAULT_MAX_STEPS, col_seq, stats, syr_seq_model
from .tree import build_tree, export

ENV_WORKERS = "SYRTREE_WORKERS"


def _seed(text: str) -> int:
    try:
        n = int(text, 16) if text.lower().startswith("0x") else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("seed must be >= 1")
    return n


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def _read_config(path: str) -> dict:
    """key=value lines; blank lines and # comments ignored."""
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {raw.rstrip()}")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key] = value
    return out


def _default_workers() -> int:
    env = os.environ.get(ENV_WORKERS)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syrtree",
        description="3n+1 sequences via incoming-term matrices, the "
        "component connection tree, and bounded verification sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_seq = sub.add_parser("seq", help="generate a sequence from a seed")
    p_seq.add_argument("n", type=_seed, help="seed (decimal or 0x hex)")
    p_seq.add_argument("--kind", choices=("syr", "col"), default="col")
    p_seq.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_seq.add_argument("--max-steps", type=_nonneg, default=DEFAULT_MAX_STEPS)
    p_seq.add_argument("--no-terms", action="store_true",
                       help="omit the terms column/field in csv and json")
    p_seq.add_argument("--strict", action="store_true",
                       help="exit 3 when the budget is exhausted")

    p_loc = sub.add_parser("locate", help="matrix coordinate of an odd integer")
    p_loc.add_argument("n", type=_seed)
    p_loc.add_argument("--format", choices=("text", "json"), default="text")

    p_tree = sub.add_parser("tree", help="build and export the connection tree")
    p_tree.add_argument("--levels", type=_nonneg, default=2)
    p_tree.add_argument("--max-p", type=_nonneg, default=8)
    p_tree.add_argument("--max-value", type=_positive, default=None,
                        help="cap on connecting entry values (default: none)")
    p_tree.add_argument("--format", choices=("dot", "json"), default="dot")
    p_tree.add_argument("--include-black", action="store_true",
                        help="annotate entries that accept no connection")

    p_ver = sub.add_parser("verify", help="run bounded checks and sweeps")
    p_ver.add_argument("--suite", choices=("all",) + verify.SUITE_IDS, default="all")
    p_ver.add_argument("--bound", type=_positive, default=None)
    p_ver.add_argument("--budget", type=_positive, default=None)
    p_ver.add_argument("--workers", type=_positive, default=None)
    p_ver.add_argument("--format", choices=("text", "json"), default="text")
    p_ver.add_argument("--config", default=None,
                       help="key=value file with sweep defaults "
                       "(bound, budget, workers)")

    p_tab = sub.add_parser("table", help="regenerate the reference tables as CSV")
    p_tab.add_argument("--which", choices=("A", "B"), required=True)
    p_tab.add_argument("--rows", type=_positive, default=16)
    return parser


def _cmd_seq(args) -> int:
    if args.kind == "syr":
        if args.n % 2 == 0:
            print("--kind syr needs an odd seed", file=sys.stderr)
            return 2
        seq = syr_seq_model(args.n, args.max_steps)
    else:
        seq = col_seq(args.n, args.max_steps)
    if args.format == "text":
        print(" ".join(str(t) for t in seq.terms))
        st = stats(seq)
        stop = "undecided" if st.stopping_time is None else st.stopping_time
        print(
            f"steps={seq.steps} stopping_time={stop} max_term={st.max_term} "
            f"odd_steps={st.odd_steps}" + (" truncated" if seq.truncated else ""),
            file=sys.stderr,
        )
    elif args.format == "json":
        print(sequences.to_json(seq, include_terms=not args.no_terms))
    else:
        sys.stdout.write(sequences.to_csv([seq], include_terms=not args.no_terms))
    return 3 if seq.truncated and args.strict else 0


def _cmd_locate(args) -> int:
    if args.n % 2 == 0:
        print("locate needs an odd integer", file=sys.stderr)
        return 2
    a, p, q = locate(args.n)
    anchor = args.n == 1
    if args.format == "json":
        doc = {
            "a": a,
            "p": p,
            "q": q,
            "entry": args.n,
            "residue": residue6(args.n),
            "syr": 6 * q + a,
            "trivial_cycle_anchor": anchor,
        }
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    else:
        line = f"a={a} p={p} q={q} entry={args.n} residue={residue6(args.n)} syr={6 * q + a}"
        if anchor:
            line += " trivial-cycle-anchor"
        print(line)
    return 0


def _cmd_tree(args) -> int:
    t = build_tree(args.levels, args.max_p, args.max_value,
                   include_black=args.include_black)
    sys.stdout.write(export(t, args.format, include_black=args.include_black).decode())
    return 0


def _check_text(c: verify.PropertyCheck) -> str:
    line = f"{c.id} {c.bound} {'PASS' if c.passed else 'FAIL'} ({c.elapsed:.2f}s)"
    for ce in c.counterexamples:
        line += "\n  counterexample: " + ", ".join(f"{k}={v}" for k, v in ce.items())
    return line


def _sweep_text(r: verify.SweepReport) -> str:
    mst = "-" if r.max_stopping_time is None else f"{r.max_stopping_time[0]}@{r.max_stopping_time[1]}"
    mex = "-" if r.max_excursion is None else f"{r.max_excursion[0]}@{r.max_excursion[1]}"
    line = (
        f"sweep [{r.lo},{r.hi}] budget={r.budget} decided={r.decided} "
        f"undecided={r.undecided} max_stopping_time={mst} max_excursion={mex} "
        f"{'PASS' if r.passed else 'UNDECIDED'} ({r.elapsed:.2f}s)"
    )
    if r.undecided_seeds:
        line += "\n  undecided seeds: " + " ".join(str(s) for s in r.undecided_seeds)
    return line


def _cmd_verify(args) -> int:
    config = {}
    if args.config:
        try:
            config = _read_config(args.config)
        except (OSError, ValueError) as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return 2
    bound = args.bound if args.bound is not None else (
        int(config["bound"]) if "bound" in config else None)
    budget = args.budget if args.budget is not None else (
        int(config["budget"]) if "budget" in config else 10**5)
    workers = args.workers if args.workers is not None else (
        int(config["workers"]) if "workers" in config else _default_workers())

    suites = list(verify.SUITE_IDS) if args.suite == "all" else [args.suite]
    checks: List[verify.PropertyCheck] = []
    sweep: Optional[verify.SweepReport] = None
    for sid in suites:
        if sid == "sweep":
            hi = bound if bound is not None else verify.SUITE_DEFAULT_BOUNDS["sweep"]
            sweep = verify.sweep_convergence(1, hi, budget=budget, workers=workers)
        else:
            checks.append(verify.run_check(sid, bound))

    if args.format == "json":
        doc = {
            "checks": [c.as_dict() for c in checks],
            "sweep": sweep.as_dict() if sweep is not None else None,
        }
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    else:
        for c in checks:
            print(_check_text(c))
        if sweep is not None:
            print(_sweep_text(sweep))

    if any(not c.passed for c in checks):
        return 1
    if sweep is not None and sweep.undecided > 0:
        return 3
    return 0


def _cmd_table(args) -> int:
    out = sys.stdout
    if args.which == "A":
        out.write("q,8q+1,8q+3,8q+5,8q+7,S1,S3,S5,S7\n")
        for row in verify.table_a_rows(args.rows - 1):
            out.write(",".join(str(v) for v in row) + "\n")
    else:
        out.write("a,b,x,y,m\n")
        for cell in verify.table_b_cells(8, args.rows - 1):
            out.write(",".join(str(v) for v in cell) + "\n")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "seq": _cmd_seq,
        "locate": _cmd_locate,
        "tree": _cmd_tree,
        "verify": _cmd_verify,
        "table": _cmd_table,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
