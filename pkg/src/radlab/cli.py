"""Command-line front end: vector evaluation, predicate checks, searches,
hunts, the claim suite, and the append-only run ledger.

Exit codes: 0 all checks hold, 1 a violation was found (report written),
2 usage or input error.  All serialized rationals are exact "p/q" strings;
no floating point appears in any report.
"""

from __future__ import annotations

import argparse
import datetime
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from .conjectures import (
    CheckReport,
    check_combinatorial,
    check_delta_alt,
    check_delta_inequality,
    check_gprime,
    check_hk_bound,
    check_pairing,
    check_symmetric_tails,
    check_tomaszewski,
    classify_A_or_B,
    delta_sweep,
)
from .core import parse_vector
from .counting import distribution, tail_counts
from .errors import ConjectureFalsified, RadlabError
from .search import (
    SearchState,
    SearchTarget,
    exhaustive_integer_search,
    hunt,
    local_descent,
    random_search,
)
from .verify import verify_paper

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_INTERRUPT = 130


def canonical_json_bytes(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode("utf-8")


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _utc_now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).replace(microsecond=0).isoformat()


def append_ledger(ledger: str, command: str, arguments: list[str], digest: str, report: str | None) -> None:
    entry = {
        "timestamp": _utc_now(),
        "command": command,
        "arguments": arguments,
        "digest": digest,
        "report": report,
    }
    with open(ledger, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(entry, sort_keys=True) + "\n")


def verify_ledger(ledger: str) -> list[tuple[dict, bool]]:
    """Recompute the digest of every stored report file, byte for byte."""
    out = []
    with open(ledger, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            entry = json.loads(line)
            ok = True
            if entry.get("report"):
                path = Path(entry["report"])
                ok = path.exists() and _digest(path.read_bytes()) == entry["digest"]
            out.append((entry, ok))
    return out


def _finish(report_obj, args, command: str) -> None:
    """Write the report artifact and the ledger entry, if requested."""
    data = canonical_json_bytes(report_obj)
    out_path = getattr(args, "out", None)
    if out_path:
        Path(out_path).write_bytes(data)
    if getattr(args, "ledger", None):
        append_ledger(args.ledger, command, sys.argv[1:], _digest(data), out_path)


def _emit_jsonl(line_obj, sink) -> None:
    sink.append(canonical_json_bytes(line_obj).decode("utf-8"))
    print(sink[-1], flush=True)


def _finish_jsonl(lines: list[str], args, command: str) -> None:
    data = ("\n".join(lines) + "\n").encode("utf-8")
    out_path = getattr(args, "out", None)
    if out_path:
        Path(out_path).write_bytes(data)
    if getattr(args, "ledger", None):
        append_ledger(args.ledger, command, sys.argv[1:], _digest(data), out_path)


def cmd_eval(args) -> int:
    vec = parse_vector(args.vector)
    counts = tail_counts(vec)
    report = {
        "vector": args.vector,
        "canonical": str(vec),
        "n": vec.n,
        "norm_sq": vec.norm_sq,
        "counts": {"below": counts.below, "at": counts.at, "above": counts.above},
        "p_lt_norm": str(counts.p_lt),
        "p_le_norm": str(counts.p_le),
        "p_eq_norm": str(counts.p_eq),
        "p_ge_norm": str(counts.p_ge),
        "p_gt_norm": str(counts.p_gt),
        "class": classify_A_or_B(vec),
    }
    if args.stats in ("dist", "all"):
        report["distribution"] = [[v, c] for v, c in distribution(vec).pairs]
    print(json.dumps(report, indent=2))
    _finish(report, args, "eval")
    return EXIT_OK


def _run_check(args) -> CheckReport:
    vec = parse_vector(args.vector)
    name = args.predicate
    if name == "tomaszewski":
        return check_tomaszewski(vec)
    if name == "tails":
        return check_symmetric_tails(vec)
    if name == "delta":
        if args.delta_sweep:
            return delta_sweep(vec)
        if args.delta is None:
            raise RadlabError("predicate 'delta' needs --delta P/Q or --delta-sweep")
        return check_delta_inequality(vec, Fraction(args.delta))
    if name == "delta-alt":
        if args.delta is None:
            raise RadlabError("predicate 'delta-alt' needs --delta P/Q")
        return check_delta_alt(vec, Fraction(args.delta))
    if name == "pairing":
        return check_pairing(vec)
    if name == "comb":
        return check_combinatorial(vec)
    if name == "hk":
        return check_hk_bound(vec)
    if name == "gprime":
        return check_gprime(vec)
    raise RadlabError(f"unknown predicate {name!r}")


def cmd_check(args) -> int:
    report = _run_check(args)
    obj = report.to_json_dict()
    print(json.dumps(obj, indent=2))
    _finish(obj, args, "check")
    return EXIT_VIOLATION if report.violated else EXIT_OK


def _parse_n_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(p) for p in text.split(",")]


def cmd_search(args) -> int:
    lines: list[str] = []
    resume_state = None
    if args.resume:
        resume_state = SearchState.from_json_dict(json.loads(Path(args.resume).read_text()))
        target, n, mode = resume_state.target, resume_state.n, "exhaustive"
        bound = resume_state.bound
    else:
        if not args.target or args.n is None:
            raise RadlabError("--target and --n are required (or --resume)")
        target = SearchTarget.parse(args.target)
        n, mode, bound = args.n, args.mode, args.bound

    checkpoint_path = args.checkpoint or "radlab-checkpoint.json"

    def save_checkpoint(state: SearchState) -> None:
        Path(checkpoint_path).write_text(json.dumps(state.to_json_dict(), indent=2))

    def progress(state: SearchState) -> None:
        save_checkpoint(state)
        _emit_jsonl({"kind": "progress", **state.to_json_dict()}, lines)

    try:
        if mode == "exhaustive":
            if bound is None:
                raise RadlabError("exhaustive mode needs --bound")
            record = exhaustive_integer_search(
                n, target, bound,
                resume=resume_state,
                checkpoint_every=args.progress_every or 0,
                on_checkpoint=progress if args.progress_every else save_checkpoint,
            )
        elif mode == "random":
            if args.trials is None:
                raise RadlabError("random mode needs --trials")
            record = random_search(
                n, target, args.trials, args.seed, args.entry_bound, workers=args.workers
            )
        elif mode == "descent":
            if not args.start:
                raise RadlabError("descent mode needs --start VECTOR")
            record = local_descent(parse_vector(args.start), target, args.steps)
        else:
            raise RadlabError(f"unknown mode {mode!r}")
    except KeyboardInterrupt:
        print(f"interrupted; checkpoint written to {checkpoint_path}", file=sys.stderr)
        _finish_jsonl(lines, args, "search")
        return EXIT_INTERRUPT
    _emit_jsonl({"kind": "final", **record.to_json_dict()}, lines)
    _finish_jsonl(lines, args, "search")
    return EXIT_OK


def cmd_hunt(args) -> int:
    lines: list[str] = []
    ns = _parse_n_range(args.n)
    try:
        violations = hunt(args.predicate, ns, args.trials, args.seed, args.entry_bound)
    except ConjectureFalsified as exc:
        _emit_jsonl({"kind": "falsified", "detail": exc.args[0]}, lines)
        _finish_jsonl(lines, args, "hunt")
        return EXIT_VIOLATION
    for rep in violations:
        _emit_jsonl({"kind": "violation", **rep.to_json_dict()}, lines)
    _emit_jsonl(
        {"kind": "summary", "predicate": args.predicate, "n": ns,
         "trials": args.trials, "violations": len(violations)},
        lines,
    )
    _finish_jsonl(lines, args, "hunt")
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_verify_paper(args) -> int:
    report = verify_paper(full=args.full, log=print, seed=args.seed)
    print()
    total = len(report["claims"])
    passed = sum(1 for c in report["claims"] if c["passed"])
    print(f"{passed}/{total} claims passed")
    _finish(report, args, "verify-paper")
    return EXIT_OK if report["all_passed"] else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radlab",
        description="Exact desk-scale verification of sign-sum tail claims.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the report artifact to this path")
        p.add_argument("--ledger", help="append a run entry to this ledger file")

    p = sub.add_parser("eval", help="tail counts, probabilities and class of one vector")
    p.add_argument("--vector", required=True, help='e.g. "2,2,1,1,1" or "1/2,1/2,1/2,1/2"')
    p.add_argument("--stats", choices=["tails", "dist", "all"], default="tails")
    common(p)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("check", help="run one predicate on one vector")
    p.add_argument(
        "predicate",
        choices=["tomaszewski", "tails", "delta", "delta-alt", "pairing", "comb", "hk", "gprime"],
    )
    p.add_argument("--vector", required=True)
    p.add_argument("--delta", help="threshold ratio P/Q for the delta predicates")
    p.add_argument("--delta-sweep", action="store_true",
                   help="sweep the whole critical set instead of one delta")
    common(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("search", help="minimize a tail probability over integer vectors")
    p.add_argument("--target", help="T, G or Gprime")
    p.add_argument("--n", type=int)
    p.add_argument("--mode", choices=["exhaustive", "random", "descent"], default="exhaustive")
    p.add_argument("--bound", type=int, help="entry-sum bound for exhaustive mode")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--entry-bound", type=int, default=20)
    p.add_argument("--start", help="start vector for descent mode")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--workers", type=int)
    p.add_argument("--resume", help="checkpoint file to resume from")
    p.add_argument("--checkpoint", help="checkpoint file to write")
    p.add_argument("--progress-every", type=int,
                   help="emit a progress record every N vectors (exhaustive mode)")
    common(p)
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("hunt", help="random falsification sweep of a predicate")
    p.add_argument("--predicate", required=True, choices=["tomaszewski", "pairing", "delta"])
    p.add_argument("--n", required=True, help='dimension range, e.g. "2..9" or "7"')
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--entry-bound", type=int, default=20)
    common(p)
    p.set_defaults(fn=cmd_hunt)

    p = sub.add_parser("verify-paper", help="run the full claim suite")
    p.add_argument("--full", action="store_true", help="acceptance-scale budgets (minutes)")
    p.add_argument("--seed", type=int, default=7)
    common(p)
    p.set_defaults(fn=cmd_verify_paper)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConjectureFalsified as exc:
        print(json.dumps({"kind": "falsified", "detail": exc.args[0]}), file=sys.stderr)
        return EXIT_VIOLATION
    except RadlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
