"""Extremal search over canonical integer coefficient vectors and the
falsification harness.

Search spaces are always canonical: non-increasing, gcd-reduced, bounded
entry sum (exhaustive) or bounded entries (random).  Results report "best
value found plus witness"; no global optimality is claimed outside
exhausted regions.  Random modes draw each trial from a counter-derived
substream, so results are reproducible and independent of how trials are
partitioned across workers.
"""

from __future__ import annotations

import enum
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .conjectures import (
    CheckReport,
    HK_BOUND,
    HK_MAX_N,
    T_FLOOR,
    T_FLOOR_MAX_N,
    check_pairing,
    check_tomaszewski,
    delta_sweep,
)
from .core import CoeffVec, DyadicProb, canonicalize
from .counting import TailCounts, tail_counts
from .errors import BudgetExceeded, ConjectureFalsified, NonPositiveEntry, ZeroNorm

DEFAULT_ENTRY_BOUND = 20
DEFAULT_MAX_VECTORS = 5_000_000


class SearchTarget(enum.Enum):
    """Which tail probability is being minimized."""

    T = "T"
    G = "G"
    GPRIME = "Gprime"

    @property
    def min_entry(self) -> int:
        # the strict-tail constant is only defined over nonzero entries
        return 1 if self is SearchTarget.GPRIME else 0

    def probability(self, counts: TailCounts) -> DyadicProb:
        if self is SearchTarget.T:
            return counts.p_le
        if self is SearchTarget.G:
            return counts.p_ge
        return counts.p_gt

    @classmethod
    def parse(cls, text: str) -> "SearchTarget":
        for member in cls:
            if member.value.lower() == text.lower():
                return member
        raise ValueError(f"unknown target {text!r}")


@dataclass
class SearchRecord:
    """Result of one search run.  ``bound`` holds the mode's budget
    parameter: entry-sum bound (exhaustive), entry bound (random) or step
    budget (descent)."""

    target: SearchTarget
    n: int
    best_value: DyadicProb
    witness: CoeffVec
    vectors_examined: int
    mode: str
    seed: int | None = None
    bound: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "target": self.target.value,
            "n": self.n,
            "best_value": str(self.best_value),
            "witness": str(self.witness),
            "vectors_examined": self.vectors_examined,
            "mode": self.mode,
            "seed": self.seed,
            "bound": self.bound,
        }


@dataclass
class SearchState:
    """Resumable cursor state of an exhaustive sweep."""

    target: SearchTarget
    n: int
    bound: int
    cursor: tuple[int, ...] | None
    best_count: int | None
    witness: tuple[int, ...] | None
    examined: int

    def to_json_dict(self) -> dict:
        return {
            "target": self.target.value,
            "n": self.n,
            "bound": self.bound,
            "cursor": list(self.cursor) if self.cursor else None,
            "best_value": str(DyadicProb(self.best_count, self.n)) if self.best_count is not None else None,
            "witness": ",".join(str(x) for x in self.witness) if self.witness else None,
            "examined": self.examined,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "SearchState":
        best_count = None
        if d.get("best_value") is not None:
            best_count = int(Fraction(d["best_value"]) * (1 << d["n"]))
        witness = None
        if d.get("witness"):
            witness = tuple(int(x) for x in d["witness"].split(","))
        cursor = tuple(d["cursor"]) if d.get("cursor") else None
        return cls(
            target=SearchTarget.parse(d["target"]),
            n=d["n"],
            bound=d["bound"],
            cursor=cursor,
            best_count=best_count,
            witness=witness,
            examined=d["examined"],
        )


def evaluate_target(a: CoeffVec, target: SearchTarget) -> DyadicProb:
    if a.norm_sq == 0:
        raise ZeroNorm("cannot evaluate the zero vector")
    return target.probability(tail_counts(a))


def _check_floor(target: SearchTarget, a: CoeffVec, value: Fraction) -> None:
    """Proven floors: any value below them means the build (or mathematics)
    is broken, so the run aborts with a falsification report."""
    if target is SearchTarget.T and a.n <= T_FLOOR_MAX_N and value < T_FLOOR:
        raise ConjectureFalsified(
            {"target": "T", "vector": str(a), "value": str(value), "floor": str(T_FLOOR)}
        )
    if target is SearchTarget.G and a.n <= HK_MAX_N and value < HK_BOUND:
        raise ConjectureFalsified(
            {"target": "G", "vector": str(a), "value": str(value), "floor": str(HK_BOUND)}
        )


def canonical_vectors(n: int, bound: int, min_entry: int = 0) -> Iterator[CoeffVec]:
    """All canonical vectors of dimension n with entry sum <= bound, in
    ascending lexicographic order of their entry tuples."""
    from math import gcd

    def rec(prefix: list[int], slots: int, max_val: int, budget: int) -> Iterator[tuple[int, ...]]:
        if slots == 0:
            yield tuple(prefix)
            return
        hi = min(max_val, budget - (slots - 1) * min_entry)
        for v in range(min_entry, hi + 1):
            prefix.append(v)
            yield from rec(prefix, slots - 1, v, budget - v)
            prefix.pop()

    lead_lo = max(min_entry, 1)
    for first in range(lead_lo, bound - (n - 1) * min_entry + 1):
        for tail in rec([first], n - 1, first, bound - first):
            g = 0
            for x in tail:
                g = gcd(g, x)
            if g == 1:
                yield CoeffVec(tail)


@lru_cache(maxsize=None)
def _count_sequences(slots: int, max_val: int, budget: int, min_entry: int) -> int:
    if slots == 0:
        return 1
    total = 0
    hi = min(max_val, budget - (slots - 1) * min_entry)
    for v in range(min_entry, hi + 1):
        total += _count_sequences(slots - 1, v, budget - v, min_entry)
    return total


def estimate_search_size(n: int, bound: int, min_entry: int = 0) -> int:
    """Upper bound on the canonical-vector count (gcd filter ignored)."""
    total = _count_sequences(n, bound, bound, min_entry)
    return total - 1 if min_entry == 0 else total


def exhaustive_integer_search(
    n: int,
    target: SearchTarget,
    bound: int,
    *,
    max_vectors: int = DEFAULT_MAX_VECTORS,
    resume: SearchState | None = None,
    checkpoint_every: int = 0,
    on_checkpoint: Callable[[SearchState], None] | None = None,
) -> SearchRecord:
    """Evaluate the target on every canonical vector with entry sum <= bound.

    Enumeration order is fixed, so a run interrupted at a checkpoint and
    resumed from it produces the identical final record.
    """
    estimate = estimate_search_size(n, bound, target.min_entry)
    if estimate > max_vectors:
        raise BudgetExceeded(
            f"region holds an estimated {estimate} canonical vectors (cap {max_vectors})"
        )
    best: tuple[Fraction, tuple[int, ...]] | None = None
    examined = 0
    cursor: tuple[int, ...] | None = None
    if resume is not None:
        if (resume.target, resume.n, resume.bound) != (target, n, bound):
            raise ValueError("resume state does not match this search")
        examined = resume.examined
        cursor = resume.cursor
        if resume.best_count is not None and resume.witness is not None:
            best = (Fraction(resume.best_count, 1 << n), resume.witness)

    def snapshot(last: tuple[int, ...] | None) -> SearchState:
        return SearchState(
            target=target,
            n=n,
            bound=bound,
            cursor=last,
            best_count=int(best[0] * (1 << n)) if best else None,
            witness=best[1] if best else None,
            examined=examined,
        )

    skipping = cursor is not None
    last = cursor
    try:
        for vec in canonical_vectors(n, bound, target.min_entry):
            if skipping:
                if vec.entries <= cursor:
                    continue
                skipping = False
            value = target.probability(tail_counts(vec)).fraction
            _check_floor(target, vec, value)
            examined += 1
            last = vec.entries
            cand = (value, vec.entries)
            if best is None or cand < best:
                best = cand
            if checkpoint_every and on_checkpoint and examined % checkpoint_every == 0:
                on_checkpoint(snapshot(last))
    except KeyboardInterrupt:
        if on_checkpoint:
            on_checkpoint(snapshot(last))
        raise
    if best is None:
        raise ValueError("empty search region")
    return SearchRecord(
        target=target,
        n=n,
        best_value=DyadicProb(int(best[0] * (1 << n)), n),
        witness=CoeffVec(best[1]),
        vectors_examined=examined,
        mode="exhaustive",
        bound=bound,
    )


def _trial_rng(seed: int, trial: int) -> random.Random:
    # string seeding is stable across runs and hash randomization
    return random.Random(f"{seed}:{trial}")


def _random_chunk(args: tuple) -> tuple[int | None, tuple[int, ...] | None, int]:
    n, target_name, lo, hi, seed, entry_bound = args
    target = SearchTarget.parse(target_name)
    best: tuple[Fraction, tuple[int, ...]] | None = None
    examined = 0
    for i in range(lo, hi):
        rng = _trial_rng(seed, i)
        entries = [rng.randint(target.min_entry, entry_bound) for _ in range(n)]
        if not any(entries):
            continue
        vec = canonicalize(entries)
        value = target.probability(tail_counts(vec)).fraction
        _check_floor(target, vec, value)
        examined += 1
        cand = (value, vec.entries)
        if best is None or cand < best:
            best = cand
    if best is None:
        return None, None, examined
    return int(best[0] * (1 << n)), best[1], examined


def _resolve_workers(workers: int | None) -> int:
    cpus = os.cpu_count() or 1
    cap = os.environ.get("RADLAB_THREADS")
    limit = min(cpus, int(cap)) if cap else cpus
    if workers is None:
        workers = limit
    return max(1, min(workers, limit))


def random_search(
    n: int,
    target: SearchTarget,
    trials: int,
    seed: int,
    entry_bound: int = DEFAULT_ENTRY_BOUND,
    workers: int | None = None,
) -> SearchRecord:
    """Sample integer vectors with i.i.d. entries and track the minimum.

    Trial i draws from the substream (seed, i); the merge is an
    associative min with a lexicographic tie-break, so the outcome does
    not depend on the number of workers or the chunking.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    workers = _resolve_workers(workers)
    chunks = []
    if workers == 1 or trials < 4 * workers:
        chunks.append((n, target.value, 0, trials, seed, entry_bound))
    else:
        step = (trials + workers - 1) // workers
        for lo in range(0, trials, step):
            chunks.append((n, target.value, lo, min(lo + step, trials), seed, entry_bound))
    if len(chunks) == 1:
        results = [_random_chunk(chunks[0])]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_random_chunk, chunks))
    best: tuple[Fraction, tuple[int, ...]] | None = None
    examined = 0
    for count, witness, seen in results:
        examined += seen
        if count is None:
            continue
        cand = (Fraction(count, 1 << n), witness)
        if best is None or cand < best:
            best = cand
    if best is None:
        raise ValueError("no nonzero vector sampled; increase trials")
    return SearchRecord(
        target=target,
        n=n,
        best_value=DyadicProb(int(best[0] * (1 << n)), n),
        witness=CoeffVec(best[1]),
        vectors_examined=examined,
        mode="random",
        seed=seed,
        bound=entry_bound,
    )


def local_descent(start: CoeffVec, target: SearchTarget, steps: int) -> SearchRecord:
    """Greedy descent over single-entry +-1 perturbations.

    Moves only on strict improvement; equal-value neighbors never cause a
    move, and among improving neighbors the lexicographically smallest
    canonical vector wins, so the walk is deterministic.
    """
    if start.norm_sq == 0:
        raise ZeroNorm("descent needs a nonzero start")
    if target.min_entry == 1 and any(x == 0 for x in start.entries):
        raise NonPositiveEntry("this target requires strictly positive entries")
    current = start
    cur_value = evaluate_target(current, target).fraction
    _check_floor(target, current, cur_value)
    examined = 1
    for _ in range(steps):
        neighbors: set[tuple[int, ...]] = set()
        for idx in range(current.n):
            for d in (1, -1):
                e = list(current.entries)
                e[idx] += d
                if e[idx] < target.min_entry or not any(e):
                    continue
                neighbors.add(canonicalize(e).entries)
        neighbors.discard(current.entries)
        best_move: tuple[Fraction, tuple[int, ...]] | None = None
        for entries in sorted(neighbors):
            vec = CoeffVec(entries)
            value = target.probability(tail_counts(vec)).fraction
            _check_floor(target, vec, value)
            examined += 1
            cand = (value, entries)
            if best_move is None or cand < best_move:
                best_move = cand
        if best_move is None or best_move[0] >= cur_value:
            break
        cur_value = best_move[0]
        current = CoeffVec(best_move[1])
    return SearchRecord(
        target=target,
        n=current.n,
        best_value=DyadicProb(int(cur_value * (1 << current.n)), current.n),
        witness=current,
        vectors_examined=examined,
        mode="descent",
        bound=steps,
    )


_HUNT_CHECKERS = {
    "tomaszewski": check_tomaszewski,
    "pairing": check_pairing,
    "delta": delta_sweep,
}


def hunt(
    predicate: str,
    n_values: Sequence[int],
    budget: int,
    seed: int,
    entry_bound: int = DEFAULT_ENTRY_BOUND,
) -> list[CheckReport]:
    """Drive random vectors through a checker; return every violation.

    The budget is the total number of vectors, split evenly across the
    dimensions (earlier dimensions absorb the remainder).  An empty result
    is the expected outcome; any violation is independently re-checkable
    from its report.
    """
    if predicate not in _HUNT_CHECKERS:
        raise ValueError(f"unknown predicate {predicate!r}")
    checker = _HUNT_CHECKERS[predicate]
    n_values = list(n_values)
    base, rem = divmod(budget, len(n_values))
    violations: list[CheckReport] = []
    for pos, n in enumerate(n_values):
        trials = base + (1 if pos < rem else 0)
        for i in range(trials):
            rng = random.Random(f"{seed}:{n}:{i}")
            entries = [rng.randint(0, entry_bound) for _ in range(n)]
            if not any(entries):
                continue
            report = checker(canonicalize(entries))
            if report.violated:
                violations.append(report)
    return violations
