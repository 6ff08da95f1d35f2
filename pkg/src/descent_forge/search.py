"""Bounded exhaustive searches over the catalog and the resolvents.

Quartic searches walk the coprime grid 0 <= x, y <= bound and ask for
exact z values; resolvent searches walk coprime (x, y) pairs and
enumerate coprime factorizations of x*y for the primed side. Reports list
canonical (componentwise nonnegative) representatives sorted
lexicographically, plus the total number of signed solutions their
orbits contain, so results are bit-stable across runs and partitionings.

The work is split into fixed-size row chunks merged in chunk order. The
DESCENT_FORGE_THREADS environment variable (default 1) caps how many
chunks are processed concurrently; the chunk layout does not depend on
it, so reports are identical at any thread count.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product as iter_product

from .equations import (
    QuarticEquation,
    ResolventSystem,
    eval_quartic,
    list_catalog,
    resolvent_by_id,
)
from .errors import (
    BoundExceeded,
    NotPrimitive,
    StageFailure,
    TrivialInput,
)
from . import reduction

QUARTIC_BOUND_LIMIT = 10**4
RESOLVENT_BOUND_LIMIT = 2000
DEFAULT_QUARTIC_BOUND = 100
DEFAULT_RESOLVENT_BOUND = 60
THREADS_ENV_VAR = "DESCENT_FORGE_THREADS"

_CHUNK_ROWS = 128

VERDICT_CONSISTENT = "CONSISTENT"
VERDICT_COUNTEREXAMPLE = "COUNTEREXAMPLE"


def thread_count(explicit: int | None = None) -> int:
    """Resolve the worker cap: explicit argument, else env var, else 1."""
    if explicit is not None:
        value = explicit
    else:
        raw = os.environ.get(THREADS_ENV_VAR)
        if raw is None:
            return 1
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(
                f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}"
            ) from None
    if value < 1:
        raise ValueError(f"thread count must be >= 1, got {value}")
    return value


@dataclass(frozen=True)
class SearchReport:
    """Canonical outcome of one bounded search."""

    target_id: str
    bound: int
    require_coprime: bool
    include_trivial: bool
    solutions: tuple[tuple[int, ...], ...]
    orbit_count: int
    partitions: int
    elapsed_ms: float

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "target": self.target_id,
            "bound": self.bound,
            "options": {
                "require_coprime": self.require_coprime,
                "include_trivial": self.include_trivial,
            },
            "solutions": [list(sol) for sol in self.solutions],
            "orbit_count": self.orbit_count,
            "partitions": self.partitions,
        }
        if include_timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def _chunks(bound: int) -> list[range]:
    return [
        range(start, min(start + _CHUNK_ROWS, bound + 1))
        for start in range(0, bound + 1, _CHUNK_ROWS)
    ]


def _run_chunks(worker, chunks: list[range], threads: int):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(worker, chunks))
    return [worker(chunk) for chunk in chunks]


def _quartic_orbit_size(x: int, y: int, z: int) -> int:
    size = 1
    for coord in (x, y, z):
        if coord != 0:
            size *= 2
    return size


def search_quartic(
    eq: QuarticEquation,
    bound: int = DEFAULT_QUARTIC_BOUND,
    require_coprime: bool = True,
    include_trivial: bool = False,
    threads: int | None = None,
) -> SearchReport:
    """Exhaustive scan of 0 <= x, y <= bound for solutions of eq.

    The solutions list honors the coprimality and triviality options; the
    orbit count tallies every signed solution the scan saw (subject only
    to the coprimality option), so a scan that finds nothing but trivial
    orbits still reports their total size.
    """
    if not 1 <= bound <= QUARTIC_BOUND_LIMIT:
        raise BoundExceeded(f"quartic bound {bound} outside [1, {QUARTIC_BOUND_LIMIT}]")
    workers = thread_count(threads)
    start = time.perf_counter()

    def scan(rows: range) -> tuple[list[tuple[int, int, int]], int]:
        found: list[tuple[int, int, int]] = []
        orbits = 0
        for x in rows:
            for y in range(bound + 1):
                if require_coprime and math.gcd(x, y) != 1:
                    continue
                for sol in eval_quartic(eq, x, y):
                    if sol.z < 0:
                        continue
                    orbits += _quartic_orbit_size(sol.x, sol.y, sol.z)
                    if sol.trivial and not include_trivial:
                        continue
                    found.append((sol.x, sol.y, sol.z))
        return found, orbits

    chunks = _chunks(bound)
    parts = _run_chunks(scan, chunks, workers)
    solutions: list[tuple[int, int, int]] = []
    orbit_count = 0
    for found, orbits in parts:
        solutions.extend(found)
        orbit_count += orbits
    elapsed = (time.perf_counter() - start) * 1000.0
    return SearchReport(
        target_id=eq.id,
        bound=bound,
        require_coprime=require_coprime,
        include_trivial=include_trivial,
        solutions=tuple(sorted(solutions)),
        orbit_count=orbit_count,
        partitions=len(chunks),
        elapsed_ms=elapsed,
    )


def _unitary_divisor_pairs(n: int) -> list[tuple[int, int]]:
    """All (d, n // d) with gcd(d, n // d) = 1, for n >= 1."""
    factors: list[int] = []
    rest = n
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            power = 1
            while rest % d == 0:
                rest //= d
                power *= d
            factors.append(power)
        d += 1 if d == 2 else 2
    if rest > 1:
        factors.append(rest)
    pairs = []
    for mask in range(1 << len(factors)):
        first = 1
        for index, power in enumerate(factors):
            if mask >> index & 1:
                first *= power
        pairs.append((first, n // first))
    return sorted(pairs)


def _resolvent_orbit_size(quad: tuple[int, int, int, int]) -> int:
    seen = set()
    for signs in iter_product((1, -1), repeat=4):
        candidate = tuple(s * v for s, v in zip(signs, quad))
        if candidate[0] * candidate[1] == candidate[2] * candidate[3]:
            seen.add(candidate)
    return len(seen)


def search_resolvent(
    system: ResolventSystem,
    bound: int = DEFAULT_RESOLVENT_BOUND,
    include_trivial: bool = False,
    threads: int | None = None,
) -> SearchReport:
    """Exhaustive scan for solutions of a resolvent system.

    For each coprime (x, y) with 0 <= x, y <= bound the primed side is
    enumerated through the coprime factorizations of x*y (the product
    equality makes that exhaustive) and checked against the quadratic
    equality exactly. Coprimality is part of solution-hood here, so there
    is no coprimality option.
    """
    if not 1 <= bound <= RESOLVENT_BOUND_LIMIT:
        raise BoundExceeded(
            f"resolvent bound {bound} outside [1, {RESOLVENT_BOUND_LIMIT}]"
        )
    workers = thread_count(threads)
    start = time.perf_counter()

    def scan(rows: range) -> tuple[list[tuple[int, int, int, int]], int]:
        found: list[tuple[int, int, int, int]] = []
        orbits = 0
        for x in rows:
            for y in range(bound + 1):
                if math.gcd(x, y) != 1:
                    continue
                lhs = system.m * x * x + system.n * y * y
                if x * y == 0:
                    # Coprimality pins the primed side to (1, 0) or (0, 1).
                    candidates = []
                    if system.k == lhs:
                        candidates.append((1, 0))
                    if system.l == lhs:
                        candidates.append((0, 1))
                else:
                    candidates = [
                        pair
                        for pair in _unitary_divisor_pairs(x * y)
                        if system.k * pair[0] ** 2 + system.l * pair[1] ** 2 == lhs
                    ]
                for xp, yp in candidates:
                    quad = (x, y, xp, yp)
                    orbits += _resolvent_orbit_size(quad)
                    if x * y == 0 and not include_trivial:
                        continue
                    found.append(quad)
        return found, orbits

    chunks = _chunks(bound)
    parts = _run_chunks(scan, chunks, workers)
    solutions: list[tuple[int, int, int, int]] = []
    orbit_count = 0
    for found, orbits in parts:
        solutions.extend(found)
        orbit_count += orbits
    elapsed = (time.perf_counter() - start) * 1000.0
    return SearchReport(
        target_id=system.id,
        bound=bound,
        require_coprime=True,
        include_trivial=include_trivial,
        solutions=tuple(sorted(solutions)),
        orbit_count=orbit_count,
        partitions=len(chunks),
        elapsed_ms=elapsed,
    )


@dataclass(frozen=True)
class VerifyOutcome:
    """Verdict for one verify-table target."""

    target_id: str
    report: SearchReport
    verdict: str
    cross_checks: tuple[dict, ...] = ()

    def to_dict(self, include_timing: bool = False) -> dict:
        return {
            "target": self.target_id,
            "report": self.report.to_dict(include_timing),
            "verdict": self.verdict,
            "cross_checks": [dict(check) for check in self.cross_checks],
        }


def _expected_biquadratic_behavior(x: int, y: int, z: int) -> str:
    if x * y == 0:
        return "TrivialInput"
    if math.gcd(x, 2 * y) != 1:
        return "NotPrimitive"
    return "ok"


def _expected_symmetric_behavior(x: int, y: int, z: int) -> str:
    if math.gcd(x, y) != 1:
        return "NotPrimitive"
    return "ok"


def _actual_reduction_behavior(eq_id: str, x: int, y: int, z: int) -> str:
    try:
        if eq_id == "E2":
            reduction.forward_reduce_biquadratic(x, y, z)
        else:
            result, trace = reduction.sextic_to_resolvent(x, y, z)
            reduction.replay_trace(trace)
            lifted, lift_trace = reduction.resolvent_to_sextic(*result.as_tuple())
            reduction.replay_trace(lift_trace)
        return "ok"
    except TrivialInput:
        return "TrivialInput"
    except NotPrimitive:
        return "NotPrimitive"
    except StageFailure as failure:
        return f"StageFailure:{failure.stage}"


def _reduction_cross_checks(eq: QuarticEquation, bound: int, threads: int) -> tuple[dict, ...]:
    """Re-run the search with trivial solutions included and check that the
    reduction maps accept or reject each one exactly as their domains say."""
    expected_of = (
        _expected_biquadratic_behavior if eq.id == "E2" else _expected_symmetric_behavior
    )
    trivial_report = search_quartic(
        eq, bound, require_coprime=True, include_trivial=True, threads=threads
    )
    checks = []
    for x, y, z in trivial_report.solutions:
        expected = expected_of(x, y, z)
        actual = _actual_reduction_behavior(eq.id, x, y, z)
        checks.append(
            {
                "solution": [x, y, z],
                "expected": expected,
                "actual": actual,
                "ok": expected == actual,
            }
        )
    return tuple(checks)


def _quartic_outcome(
    eq: QuarticEquation, bound: int, include_trivial: bool, threads: int
) -> VerifyOutcome:
    report = search_quartic(
        eq, bound, require_coprime=True, include_trivial=include_trivial, threads=threads
    )
    cross_checks: tuple[dict, ...] = ()
    if eq.id in ("E2", "E4"):
        cross_checks = _reduction_cross_checks(eq, bound, threads)
    consistent = not report.solutions and all(check["ok"] for check in cross_checks)
    return VerifyOutcome(
        target_id=eq.id,
        report=report,
        verdict=VERDICT_CONSISTENT if consistent else VERDICT_COUNTEREXAMPLE,
        cross_checks=cross_checks,
    )


def verify_table(
    quartic_bound: int = DEFAULT_QUARTIC_BOUND,
    resolvent_bound: int = DEFAULT_RESOLVENT_BOUND,
    threads: int | None = None,
) -> list[VerifyOutcome]:
    """Scan every catalog target and judge it CONSISTENT or COUNTEREXAMPLE.

    A quartic target is consistent when the nontrivial coprime scan comes
    back empty and (for E2 and E4) every found trivial solution drives the
    reduction maps exactly as their contracts dictate. A resolvent target
    is consistent when its nontrivial scan comes back empty.
    """
    workers = thread_count(threads)
    outcomes = [
        _quartic_outcome(entry.equation, quartic_bound, False, workers)
        for entry in list_catalog()
    ]
    for sys_id in ("R1", "R2"):
        report = search_resolvent(
            resolvent_by_id(sys_id), resolvent_bound, include_trivial=False, threads=workers
        )
        outcomes.append(
            VerifyOutcome(
                target_id=sys_id,
                report=report,
                verdict=VERDICT_CONSISTENT if not report.solutions else VERDICT_COUNTEREXAMPLE,
            )
        )
    return outcomes


def all_consistent(outcomes: list[VerifyOutcome]) -> bool:
    return all(outcome.verdict == VERDICT_CONSISTENT for outcome in outcomes)
