"""Per-prime census records, ranged census runs with checkpoint/resume,
invariant verification reports, and DOT export for tiny graphs.

A census row aggregates, for one prime: vertex count, component sizes, the
connectivity verdict, whether every component size is divisible by p, the
half-coordinate sum identity verdict, and per-move self-loop counts.  Runs
stream records in ascending prime order regardless of worker scheduling and
append each completed record to a JSON-lines checkpoint so an interrupted
run resumes without recomputation.
"""

from __future__ import annotations

import csv
import json
import multiprocessing
import os
import time
from dataclasses import dataclass, field

import numpy as np

from .core import decode_coords, enumerate_bruteforce
from .graph import InvariantViolationError, MarkoffGraph
from .prime_field import primes_in_range, require_prime

__all__ = [
    "CSV_COLUMNS",
    "ExportGuardError",
    "CensusRecord",
    "CensusConfig",
    "census_prime",
    "run_census",
    "write_csv",
    "write_json",
    "read_csv",
    "read_json",
    "load_checkpoint",
    "CheckResult",
    "VerificationReport",
    "verify_prime",
    "export_dot",
    "DOT_SIZE_GUARD",
]

CSV_COLUMNS = (
    "p",
    "vertex_count",
    "component_count",
    "component_sizes",
    "connected",
    "chen_ok_all",
    "penner_ok_all",
    "selfloops_1",
    "selfloops_2",
    "selfloops_3",
    "runtime_ms",
)

DOT_SIZE_GUARD = 13


class ExportGuardError(RuntimeError):
    """DOT export refused: the graph is too large for a readable drawing."""


def _bool_str(v: bool) -> str:
    return "true" if v else "false"


def _parse_bool(s: str) -> bool:
    if s == "true":
        return True
    if s == "false":
        return False
    raise ValueError(f"expected 'true' or 'false', got {s!r}")


@dataclass(frozen=True)
class CensusRecord:
    """One census row; component_sizes is sorted descending."""

    p: int
    vertex_count: int
    component_sizes: tuple[int, ...]
    connected: bool
    chen_ok_all: bool
    penner_ok_all: bool | None
    selfloop_counts: tuple[int, int, int]
    runtime_ms: int

    @property
    def component_count(self) -> int:
        return len(self.component_sizes)

    @property
    def theorem_applies(self) -> bool:
        """The divisibility theorem is proved for p > 3 only."""
        return self.p > 3

    def to_row(self) -> list[str]:
        return [
            str(self.p),
            str(self.vertex_count),
            str(self.component_count),
            ";".join(str(s) for s in self.component_sizes),
            _bool_str(self.connected),
            _bool_str(self.chen_ok_all),
            "" if self.penner_ok_all is None else _bool_str(self.penner_ok_all),
            str(self.selfloop_counts[0]),
            str(self.selfloop_counts[1]),
            str(self.selfloop_counts[2]),
            str(self.runtime_ms),
        ]

    @classmethod
    def from_row(cls, row: list[str]) -> "CensusRecord":
        if len(row) != len(CSV_COLUMNS):
            raise ValueError(f"expected {len(CSV_COLUMNS)} columns, got {len(row)}")
        return cls(
            p=int(row[0]),
            vertex_count=int(row[1]),
            component_sizes=tuple(int(s) for s in row[3].split(";") if s),
            connected=_parse_bool(row[4]),
            chen_ok_all=_parse_bool(row[5]),
            penner_ok_all=None if row[6] == "" else _parse_bool(row[6]),
            selfloop_counts=(int(row[7]), int(row[8]), int(row[9])),
            runtime_ms=int(row[10]),
        )

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "vertex_count": self.vertex_count,
            "component_count": self.component_count,
            "component_sizes": list(self.component_sizes),
            "connected": self.connected,
            "chen_ok_all": self.chen_ok_all,
            "penner_ok_all": self.penner_ok_all,
            "selfloops_1": self.selfloop_counts[0],
            "selfloops_2": self.selfloop_counts[1],
            "selfloops_3": self.selfloop_counts[2],
            "runtime_ms": self.runtime_ms,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "CensusRecord":
        return cls(
            p=int(d["p"]),
            vertex_count=int(d["vertex_count"]),
            component_sizes=tuple(int(s) for s in d["component_sizes"]),
            connected=bool(d["connected"]),
            chen_ok_all=bool(d["chen_ok_all"]),
            penner_ok_all=(
                None if d["penner_ok_all"] is None else bool(d["penner_ok_all"])
            ),
            selfloop_counts=(
                int(d["selfloops_1"]),
                int(d["selfloops_2"]),
                int(d["selfloops_3"]),
            ),
            runtime_ms=int(d["runtime_ms"]),
        )


@dataclass
class CensusConfig:
    """Parameters for a ranged census run."""

    min_p: int
    max_p: int
    workers: int = 1
    output_format: str = "csv"
    output_path: str | None = None
    checkpoint_path: str | None = None
    oracle_bound: int = 101
    penner_checks: bool = True

    def __post_init__(self):
        if not 2 <= self.min_p <= self.max_p:
            raise ValueError(
                f"need 2 <= min_p <= max_p, got [{self.min_p}, {self.max_p}]"
            )
        if self.workers < 1:
            raise ValueError("worker count must be positive")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")


def census_prime(p: int, penner: bool = True) -> CensusRecord:
    """Compute one census record.  Half-coordinate sums are attached for p > 3."""
    p = require_prime(p)
    t0 = time.perf_counter()
    g = MarkoffGraph(p)
    do_penner = penner and p > 3
    summaries = g.component_summaries(penner=do_penner)
    selfloops = g.selfloop_counts()
    sizes = tuple(sorted((s.size for s in summaries), reverse=True))
    record = CensusRecord(
        p=p,
        vertex_count=g.n,
        component_sizes=sizes,
        connected=len(sizes) == 1,
        chen_ok_all=all(s.chen_ok for s in summaries),
        penner_ok_all=(
            all(s.penner_sums.ok for s in summaries) if do_penner else None
        ),
        selfloop_counts=selfloops,
        runtime_ms=int((time.perf_counter() - t0) * 1000),
    )
    return record


def _census_worker(args: tuple[int, bool]) -> CensusRecord:
    p, penner = args
    return census_prime(p, penner=penner)


def load_checkpoint(path: str) -> dict[int, CensusRecord]:
    """Parse a JSON-lines checkpoint; a torn final line (killed run) is ignored."""
    done: dict[int, CensusRecord] = {}
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    for i, line in enumerate(lines):
        if not line.strip():
            continue
        try:
            rec = CensusRecord.from_json_dict(json.loads(line))
        except (json.JSONDecodeError, KeyError, ValueError):
            if i == len(lines) - 1:
                break  # partial trailing write from an interrupted run
            raise ValueError(f"corrupt checkpoint line {i + 1} in {path}")
        done[rec.p] = rec
    return done


def run_census(config: CensusConfig):
    """Yield census records for every prime in range, in ascending order.

    Previously checkpointed primes are reused, newly computed ones appended
    to the checkpoint as they are emitted (one JSON line per record, flushed).
    With several workers, primes are farmed out one per task and results are
    buffered back into ascending order.
    """
    primes = primes_in_range(config.min_p, config.max_p)
    done: dict[int, CensusRecord] = {}
    if config.checkpoint_path and os.path.exists(config.checkpoint_path):
        done = load_checkpoint(config.checkpoint_path)
    todo = [p for p in primes if p not in done]
    ckpt = (
        open(config.checkpoint_path, "a", encoding="utf-8")
        if config.checkpoint_path
        else None
    )
    pool = None
    try:
        if config.workers > 1 and len(todo) > 1:
            pool = multiprocessing.get_context().Pool(
                min(config.workers, len(todo))
            )
            results = pool.imap(
                _census_worker,
                [(p, config.penner_checks) for p in todo],
                chunksize=1,
            )
        else:
            results = (census_prime(p, penner=config.penner_checks) for p in todo)
        for p in primes:
            if p in done:
                yield done[p]
                continue
            record = next(results)
            if record.p != p:
                raise RuntimeError(f"worker returned p={record.p}, expected {p}")
            if ckpt is not None:
                ckpt.write(json.dumps(record.to_json_dict()) + "\n")
                ckpt.flush()
            yield record
    finally:
        if pool is not None:
            pool.terminate()
            pool.join()
        if ckpt is not None:
            ckpt.close()


def write_csv(records, fh) -> None:
    """UTF-8 CSV with a header row and LF line endings."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.to_row())


def write_json(records, fh) -> None:
    """JSON array, one object per record, fields named as the CSV columns."""
    json.dump([rec.to_json_dict() for rec in records], fh, indent=2)
    fh.write("\n")


def read_csv(path: str) -> list[CensusRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header in {path}")
        return [CensusRecord.from_row(row) for row in reader]


def read_json(path: str) -> list[CensusRecord]:
    with open(path, encoding="utf-8") as fh:
        return [CensusRecord.from_json_dict(d) for d in json.load(fh)]


# -- verification -----------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass", "fail", or "skip"
    detail: str = ""


@dataclass
class VerificationReport:
    p: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def lines(self) -> list[str]:
        out = [f"verify p={self.p}"]
        for c in self.checks:
            detail = f": {c.detail}" if c.detail else ""
            out.append(f"  [{c.status:>4}] {c.name}{detail}")
        out.append(f"overall: {'PASS' if self.ok else 'FAIL'}")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


def _witness(graph: MarkoffGraph, mask: np.ndarray) -> str:
    i = int(np.argmax(mask))
    return f"counterexample vertex {decode_coords(int(graph.codes[i]), graph.p)}"


def verify_prime(p: int, oracle_bound: int = 101) -> VerificationReport:
    """Run the full invariant suite at one prime.

    Graph-level checks always run; half-coordinate checks need p > 3 and are
    reported as skipped below that; the brute-force oracle comparison is
    skipped (with a notice) above oracle_bound.
    """
    p = require_prime(p)
    report = VerificationReport(p)
    add = report.checks.append
    g = MarkoffGraph(p)
    n = g.n

    if p <= oracle_bound:
        brute = enumerate_bruteforce(p, bound=oracle_bound)
        if np.array_equal(g.codes, brute):
            add(CheckResult("oracle-equivalence", "pass", f"{n} vertices match the O(p^3) scan"))
        else:
            add(CheckResult("oracle-equivalence", "fail", f"fast enumerator disagrees with brute force ({n} vs {brute.size} vertices)"))
    else:
        add(CheckResult("oracle-equivalence", "skip", f"p > oracle bound {oracle_bound}"))

    x1, x2, x3 = g.coords64()
    eq_bad = (x1 * x1 + x2 * x2 + x3 * x3) % p != 3 * ((x1 * x2) % p) * x3 % p
    zeros = (x1 == 0).astype(np.int8) + (x2 == 0) + (x3 == 0)
    bad = eq_bad | (zeros > 1) | (g.codes == 0)
    if bad.any():
        add(CheckResult("vertex-predicate", "fail", _witness(g, bad)))
    else:
        add(CheckResult("vertex-predicate", "pass", f"{n} vertices solve the equation, none with two zeros"))

    try:
        nbr = g.neighbor_positions()
        add(CheckResult("move-closure", "pass", "all move images are vertices"))
    except InvariantViolationError as e:
        add(CheckResult("move-closure", "fail", str(e)))
        return report

    idx = np.arange(n)
    for m in range(3):
        twice = nbr[m][nbr[m]]
        if not np.array_equal(twice, idx):
            add(CheckResult("involution", "fail", f"move {m + 1}: " + _witness(g, twice != idx)))
            break
    else:
        add(CheckResult("involution", "pass", "each move applied twice is the identity"))

    coords = (x1, x2, x3)
    for m in range(3):
        xm = coords[m]
        za, zb = (coords[i] for i in range(3) if i != m)
        bad = (xm + xm[nbr[m]] - 3 * (za * zb % p)) % p != 0
        if bad.any():
            add(CheckResult("root-sums", "fail", f"move {m + 1}: " + _witness(g, bad)))
            break
    else:
        add(CheckResult("root-sums", "pass", "fiber roots sum to 3 * (fixed-pair product)"))

    try:
        counts = g.selfloop_counts()
        add(CheckResult("selfloop-cross-check", "pass", f"fixed vertices per move: {counts}"))
    except InvariantViolationError as e:
        add(CheckResult("selfloop-cross-check", "fail", str(e)))

    sizes = g.component_sizes()
    size_list = sorted((int(s) for s in sizes), reverse=True)
    if p > 3:
        divisible = all(s % p == 0 for s in size_list)
        add(CheckResult(
            "component-divisibility",
            "pass" if divisible else "fail",
            f"component sizes {size_list}" + ("" if divisible else f" not all divisible by {p}"),
        ))
    else:
        verdicts = {s: s % p == 0 for s in size_list}
        add(CheckResult(
            "component-divisibility",
            "skip",
            f"theorem scope is p > 3; observed sizes {size_list}, divisible: {verdicts}",
        ))

    if p <= 3:
        for name in ("affine-sum", "edge-identity", "half-size-sums"):
            add(CheckResult(name, "skip", "half-coordinates need p > 3"))
        return report

    y = g.penner_values()
    bad = (y[0] + y[1] + y[2]) % p != 1
    if bad.any():
        add(CheckResult("affine-sum", "fail", _witness(g, bad)))
    else:
        add(CheckResult("affine-sum", "pass", f"y1+y2+y3 = 1 on all {n} vertices"))

    for m in range(3):
        bad = (y[m] + y[m][nbr[m]]) % p != 1
        if bad.any():
            add(CheckResult("edge-identity", "fail", f"move {m + 1}: " + _witness(g, bad)))
            break
    else:
        add(CheckResult("edge-identity", "pass", f"y_m + y'_m = 1 across all {3 * n} edge ends"))

    sums = g.component_penner_sums()
    bad_comps = [i for i, s in enumerate(sums) if not s.ok]
    if bad_comps:
        rep = int(g.component_representatives()[bad_comps[0]])
        add(CheckResult("half-size-sums", "fail", f"component at representative {decode_coords(rep, p)}"))
    else:
        add(CheckResult("half-size-sums", "pass", f"{len(sums)} component(s) sum to half their size"))
    return report


# -- DOT export --------------------------------------------------------------


def export_dot(p: int, force: bool = False, size_guard: int = DOT_SIZE_GUARD) -> str:
    """Undirected DOT text for the move graph at a small prime.

    One node per vertex labeled "x1,x2,x3"; one edge per unordered vertex
    pair per connecting move, labeled with the move index; self-loops
    included.  Refuses p above the size guard unless forced.
    """
    p = require_prime(p)
    if p > size_guard and not force:
        raise ExportGuardError(
            f"p = {p} exceeds the export size guard {size_guard}; "
            "pass force=True (--force) to render anyway"
        )
    g = MarkoffGraph(p)
    nbr = g.neighbor_positions()

    def node(i: int) -> str:
        return '"%d,%d,%d"' % (int(g.x1[i]), int(g.x2[i]), int(g.x3[i]))

    lines = [f"graph markoff_mod_{p} {{"]
    for i in range(g.n):
        lines.append(f"  {node(i)};")
    for i in range(g.n):
        for m in range(3):
            j = int(nbr[m][i])
            if j >= i:  # j < i was already emitted from the other endpoint
                lines.append(f"  {node(i)} -- {node(j)} [label={m + 1}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
