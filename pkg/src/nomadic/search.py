"""Backtracking engines for questions the explicit constructions leave open.

Three searches live here:

* :func:`find_roots` -- given a valid decomposition, look for a root
  assignment that makes it nomadic.  For cycles of equal length a collision
  between two nomads depends only on the difference of their roots, so the
  allowed differences are precomputed per cycle pair and the roots are found
  by backtracking with forward checking.
* :func:`search_rs_cycle` -- look for a single cycle through vertex 0 whose
  edge lengths are pairwise distinct (the seed of a rotationally symmetric
  decomposition).  Pure exhaustive search over length orderings, pruned only
  on revisited vertices, so absence results are discovered rather than argued.
* :func:`search_nomadic_decomposition` -- decide (desk scale) whether K*_n
  has a nomadic near-Hamiltonian decomposition at all, by filling a
  time-expanded position matrix.  Row i is nomad i's periodic trajectory,
  column t the occupancy at time t; every column must be a permutation of the
  vertices, rows must not revisit, and the traversed edges must be pairwise
  distinct (n(n-1) slots for n(n-1) edges, so distinct means exhaustive).

The matrix search quotients two symmetries.  Nomad reindexing is spent by
fixing column 0 to the identity.  Vertex relabeling conjugates the column-1
permutation (a fixed-point-free permutation), and each conjugacy class --
i.e. each cycle type with all parts >= 2 -- contains exactly one
"blocks-ascending" representative; restricting column 1 to those
representatives therefore loses no solution class, and exhausting them proves
absence outright.  The column-1 representatives double as independent work
units for multi-process search and as the checkpoint/resume frontier.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator, Sequence

from .core import (
    CycleKind,
    Decomposition,
    DirectedCycle,
    NomadicError,
    NomadSchedule,
    check_order,
)
from .verify import full_verify, verify_cycle_kind, verify_edge_partition

TIME_MAJOR = "time-major"
ROW_MAJOR = "row-major"

_CLOCK_CHECK_MASK = 0x3FF  # consult the wall clock every 1024 attempts


class InvalidDecompositionError(NomadicError):
    """find_roots needs a structurally valid decomposition to schedule."""


class SearchStatus(enum.Enum):
    FOUND = "found"
    EXHAUSTED_NO_SOLUTION = "exhausted-no-solution"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a decomposition search.

    `nodes_explored` counts candidate placements examined (search tree arcs).
    `frontier` lists the column-1 branches still pending when the budget ran
    out; feeding it back via `resume` continues the same search.
    """

    status: SearchStatus
    certificate: tuple[Decomposition, NomadSchedule] | None
    nodes_explored: int
    elapsed: float
    frontier: tuple[tuple[int, ...], ...] = ()


@dataclass
class PositionMatrix:
    """Time-expanded occupancy: n rows (nomads) by n-1 columns (times).

    In a completed matrix every column is a permutation of the n vertices,
    every row lists n-1 distinct vertices, and the n(n-1) traversed edges
    (consecutive row entries, wraparound included) exhaust E(K*_n).
    """

    n: int
    entries: list[list[int | None]]

    @classmethod
    def empty(cls, n: int) -> PositionMatrix:
        check_order(n)
        return cls(n, [[None] * (n - 1) for _ in range(n)])

    @property
    def columns(self) -> int:
        return self.n - 1

    def is_complete(self) -> bool:
        return all(all(v is not None for v in row) for row in self.entries)

    def to_decomposition(self) -> tuple[Decomposition, NomadSchedule]:
        """Read each row as a cycle rooted at its first entry."""
        if not self.is_complete():
            raise ValueError("matrix still has unassigned entries")
        cycles = tuple(DirectedCycle(tuple(row), self.n) for row in self.entries)
        decomposition = Decomposition(self.n, CycleKind.NEAR_HAMILTONIAN, cycles)
        return decomposition, NomadSchedule((0,) * self.n)


# ---------------------------------------------------------------------------
# Root assignment for a given decomposition


def find_roots(decomposition: Decomposition) -> NomadSchedule | None:
    """A schedule making the decomposition nomadic, or None if none exists.

    Uniform cycle length L makes the collision condition between cycles i and
    j depend only on (root_i - root_j) mod L, so the unsafe differences are
    read off the shared vertices in one pass per pair, and the search runs
    over root values with forward checking.  A global shift of all roots only
    shifts time, so root 0 is pinned to 0 without loss.
    """
    if not verify_edge_partition(decomposition).passed:
        raise InvalidDecompositionError("edge partition check fails; nothing to schedule")
    if not verify_cycle_kind(decomposition).passed:
        raise InvalidDecompositionError("cycle kind check fails; nothing to schedule")
    cycles = decomposition.cycles
    m = len(cycles)
    if m == 1:
        return NomadSchedule((0,))
    length = cycles[0].length
    index_of = [{v: idx for idx, v in enumerate(c.values)} for c in cycles]

    # safe[i][j] = allowed values of (root_i - root_j) mod L
    all_diffs = frozenset(range(length))
    safe: list[list[frozenset[int] | None]] = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            unsafe = {
                (index_of[i][v] - index_of[j][v]) % length
                for v in index_of[i].keys() & index_of[j].keys()
            }
            allowed = all_diffs - unsafe
            if not allowed:
                return None
            safe[i][j] = allowed
            safe[j][i] = frozenset((-d) % length for d in allowed)

    roots: list[int | None] = [None] * m
    roots[0] = 0
    domains: list[set[int] | None] = [None] + [
        set(safe[j][0]) for j in range(1, m)  # root_j - 0 must be allowed
    ]

    def assign(remaining: list[int]) -> bool:
        if not remaining:
            return True
        j = min(remaining, key=lambda idx: len(domains[idx]))
        rest = [idx for idx in remaining if idx != j]
        for value in sorted(domains[j]):
            roots[j] = value
            trimmed: list[tuple[int, set[int]]] = []
            feasible = True
            for other in rest:
                allowed = safe[other][j]
                dom = domains[other]
                removed = {r for r in dom if (r - value) % length not in allowed}
                if removed:
                    trimmed.append((other, removed))
                    dom -= removed
                    if not dom:
                        feasible = False
                        break
            if feasible and assign(rest):
                return True
            for other, removed in trimmed:
                domains[other] |= removed
            roots[j] = None
        return False

    if assign(list(range(1, m))):
        return NomadSchedule(tuple(roots))  # type: ignore[arg-type]
    return None


# ---------------------------------------------------------------------------
# Single rotationally-symmetric seed cycle


def search_rs_cycle(
    n: int, kind: CycleKind = CycleKind.NEAR_HAMILTONIAN
) -> DirectedCycle | None:
    """First cycle through vertex 0 (in lexicographic length order) whose edge
    lengths are pairwise distinct, or None once every ordering is exhausted.

    The near-Hamiltonian target has n-1 edges, so it must use every one of
    the n-1 lengths exactly once; the only pruning is on revisited vertices,
    so an empty answer is a genuine enumeration result.
    """
    check_order(n)
    target = kind.expected_cycle_length(n)
    path = [0]
    visited = {0}
    used = [False] * n

    def extend(current: int, edges_done: int) -> bool:
        closing = edges_done == target - 1
        for residue in range(1, n):
            if used[residue]:
                continue
            nxt = (current + residue) % n
            if closing:
                if nxt == 0:
                    return True
            elif nxt not in visited:
                used[residue] = True
                visited.add(nxt)
                path.append(nxt)
                if extend(nxt, edges_done + 1):
                    return True
                path.pop()
                visited.remove(nxt)
                used[residue] = False
        return False

    if extend(0, 0):
        return DirectedCycle(tuple(path), n)
    return None


# ---------------------------------------------------------------------------
# Full nomadic near-Hamiltonian decomposition search


def _ascending_partitions(total: int, minimum: int = 2) -> Iterator[tuple[int, ...]]:
    for part in range(minimum, total + 1):
        rest = total - part
        if rest == 0:
            yield (part,)
        elif rest >= part:
            for tail in _ascending_partitions(rest, part):
                yield (part,) + tail


def canonical_column_branches(n: int) -> tuple[tuple[int, ...], ...]:
    """Lex-least conjugacy representatives of the fixed-point-free
    permutations of 0..n-1: consecutive blocks, cycle lengths ascending.

    These are the admissible column-1 assignments after vertex relabeling is
    quotiented out; one per cycle type with all parts >= 2.
    """
    check_order(n)
    branches = []
    for parts in _ascending_partitions(n):
        perm: list[int] = []
        start = 0
        for size in parts:
            perm.extend(range(start + 1, start + size))
            perm.append(start)
            start += size
        branches.append(tuple(perm))
    return tuple(sorted(branches))


class _Expired(Exception):
    """Internal unwind when the wall-clock deadline passes."""


class _MatrixSearch:
    """Depth-first fill of one region of the position-matrix space.

    Column 0 is fixed to the identity.  With a `forced_column1`, column 1 is
    pinned to that assignment (one work branch); otherwise column 1 is
    searched like any other.  Cell order is time-major by default (strongest
    pruning from the column-permutation constraint) or row-major for
    benchmarking.
    """

    def __init__(
        self,
        n: int,
        forced_column1: Sequence[int] | None,
        deadline: float | None,
        order: str = TIME_MAJOR,
        progress: Callable[[dict], None] | None = None,
        progress_interval: float = 0.5,
        nodes_offset: int = 0,
        branch_index: int | None = None,
    ):
        self.n = n
        self.L = n - 1
        self.grid = [[-1] * self.L for _ in range(n)]
        for i in range(n):
            self.grid[i][0] = i
        self.row_used = [1 << i for i in range(n)]
        self.col_used = [0] * self.L
        self.col_used[0] = (1 << n) - 1
        self.edge_used = bytearray(n * n)
        self.forced = None if forced_column1 is None else tuple(forced_column1)
        if order == TIME_MAJOR:
            self.cells = [(i, t) for t in range(1, self.L) for i in range(n)]
        elif order == ROW_MAJOR:
            self.cells = [(i, t) for i in range(n) for t in range(1, self.L)]
        else:
            raise ValueError(f"unknown cell order {order!r}")
        self.deadline = deadline
        self.nodes = 0
        self.depth_hist = [0] * max(1, len(self.cells))
        self.progress = progress
        self.progress_interval = progress_interval
        self.nodes_offset = nodes_offset
        self.branch_index = branch_index
        self._started = time.perf_counter()
        self._last_emit = self._started
        self._last_emit_nodes = 0

    def run(self) -> tuple[str, list[list[int]] | None]:
        try:
            found = self._fill(0)
        except _Expired:
            return "budget", None
        return ("found", self.grid) if found else ("exhausted", None)

    def _tick(self) -> None:
        if self.deadline is not None and time.time() > self.deadline:
            raise _Expired
        if self.progress is not None:
            now = time.perf_counter()
            if now - self._last_emit >= self.progress_interval:
                rate = (self.nodes - self._last_emit_nodes) / (now - self._last_emit)
                self._last_emit = now
                self._last_emit_nodes = self.nodes
                self.progress(
                    {
                        "nodes": self.nodes + self.nodes_offset,
                        "nodes_per_sec": round(rate, 1),
                        "depth_hist": list(self.depth_hist),
                        "branch": self.branch_index,
                    }
                )

    def _fill(self, depth: int) -> bool:
        if depth == len(self.cells):
            return True
        i, t = self.cells[depth]
        n = self.n
        row = self.grid[i]
        base = row[t - 1] * n
        blocked = self.row_used[i] | self.col_used[t]
        closing = t == self.L - 1
        wrap_target = row[0]
        edge_used = self.edge_used
        hist = self.depth_hist
        if self.forced is not None and t == 1:
            candidates: Sequence[int] = (self.forced[i],)
        else:
            candidates = range(n)
        for v in candidates:
            self.nodes += 1
            hist[depth] += 1
            if (self.nodes & _CLOCK_CHECK_MASK) == 0:
                self._tick()
            if blocked >> v & 1:
                continue
            if edge_used[base + v]:
                continue
            if closing and edge_used[v * n + wrap_target]:
                continue
            bit = 1 << v
            row[t] = v
            self.row_used[i] |= bit
            self.col_used[t] |= bit
            edge_used[base + v] = 1
            if closing:
                edge_used[v * n + wrap_target] = 1
            if self._fill(depth + 1):
                return True
            edge_used[base + v] = 0
            if closing:
                edge_used[v * n + wrap_target] = 0
            self.row_used[i] ^= bit
            self.col_used[t] ^= bit
            row[t] = -1
        return False


def _certificate_from_grid(
    n: int, grid: Sequence[Sequence[int]]
) -> tuple[Decomposition, NomadSchedule]:
    matrix = PositionMatrix(n, [list(row) for row in grid])
    decomposition, schedule = matrix.to_decomposition()
    report = full_verify(decomposition, schedule)
    if not report.passed:
        raise RuntimeError(f"search produced an invalid certificate:\n{report}")
    return decomposition, schedule


def _branch_worker(
    args: tuple[int, int, tuple[int, ...], float | None]
) -> tuple[int, str, tuple[tuple[int, ...], ...] | None, int]:
    branch_index, n, branch, deadline = args
    engine = _MatrixSearch(n, branch, deadline, branch_index=branch_index)
    status, grid = engine.run()
    packed = None if grid is None else tuple(tuple(row) for row in grid)
    return branch_index, status, packed, engine.nodes


def validate_branch(branch: Sequence[int], n: int, where: str = "branch") -> tuple[int, ...]:
    """A usable column-1 assignment is a fixed-point-free permutation."""
    values = tuple(int(v) for v in branch)
    if len(values) != n:
        raise ValueError(f"{where}: {len(values)} entries, expected {n}")
    if sorted(values) != list(range(n)):
        raise ValueError(f"{where}: not a permutation of 0..{n - 1}")
    for i, v in enumerate(values):
        if v == i:
            raise ValueError(f"{where}: nomad {i} would stand still at time 1")
    return values


def search_nomadic_decomposition(
    n: int,
    budget: float | None = None,
    workers: int = 1,
    order: str = TIME_MAJOR,
    resume: Sequence[Sequence[int]] | None = None,
    progress: Callable[[dict], None] | None = None,
) -> SearchOutcome:
    """Search for a nomadic near-Hamiltonian decomposition of K*_n.

    `budget` is wall-clock seconds (None = unlimited); on expiry the current
    node finishes and the outcome carries the unfinished column-1 branches as
    a resumable frontier.  `workers` > 1 farms branches out to separate
    processes; results merge first-found-wins with the branch index as the
    deterministic tie-break.  `resume` replaces the canonical branch list
    with a previously saved frontier.  Any Found certificate has already
    passed full verification.
    """
    check_order(n)
    if budget is not None and budget <= 0:
        raise ValueError(f"budget must be positive, got {budget}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if order not in (TIME_MAJOR, ROW_MAJOR):
        raise ValueError(f"order must be {TIME_MAJOR!r} or {ROW_MAJOR!r}")
    started = time.perf_counter()
    deadline = None if budget is None else time.time() + budget

    if order == ROW_MAJOR:
        # benchmarking mode: single region, no column-1 quotient, no frontier
        engine = _MatrixSearch(n, None, deadline, order=ROW_MAJOR, progress=progress)
        status, grid = engine.run()
        elapsed = time.perf_counter() - started
        if status == "found":
            return SearchOutcome(
                SearchStatus.FOUND, _certificate_from_grid(n, grid), engine.nodes, elapsed
            )
        if status == "budget":
            return SearchOutcome(SearchStatus.BUDGET_EXCEEDED, None, engine.nodes, elapsed)
        return SearchOutcome(SearchStatus.EXHAUSTED_NO_SOLUTION, None, engine.nodes, elapsed)

    if resume is None:
        branches = canonical_column_branches(n)
    else:
        branches = tuple(
            validate_branch(b, n, where=f"resume branch {idx}")
            for idx, b in enumerate(resume)
        )

    if workers == 1:
        total_nodes = 0
        for index, branch in enumerate(branches):
            hook = None
            if progress is not None:
                hook = progress
            engine = _MatrixSearch(
                n,
                branch,
                deadline,
                progress=hook,
                nodes_offset=total_nodes,
                branch_index=index,
            )
            status, grid = engine.run()
            total_nodes += engine.nodes
            elapsed = time.perf_counter() - started
            if status == "found":
                return SearchOutcome(
                    SearchStatus.FOUND,
                    _certificate_from_grid(n, grid),
                    total_nodes,
                    elapsed,
                )
            if status == "budget":
                return SearchOutcome(
                    SearchStatus.BUDGET_EXCEEDED,
                    None,
                    total_nodes,
                    elapsed,
                    frontier=tuple(branches[index:]),
                )
        return SearchOutcome(
            SearchStatus.EXHAUSTED_NO_SOLUTION,
            None,
            total_nodes,
            time.perf_counter() - started,
        )

    # Multi-process: one task per branch, no shared mutable state, results
    # collected in branch order so the merge is reproducible.
    total_nodes = 0
    found_grid: tuple[tuple[int, ...], ...] | None = None
    pending: list[tuple[int, ...]] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_branch_worker, (index, n, branch, deadline))
            for index, branch in enumerate(branches)
        ]
        for index, future in enumerate(futures):
            _, status, grid, nodes = future.result()
            total_nodes += nodes
            if status == "found" and found_grid is None:
                found_grid = grid
            elif status == "budget":
                pending.append(branches[index])
    elapsed = time.perf_counter() - started
    if found_grid is not None:
        return SearchOutcome(
            SearchStatus.FOUND,
            _certificate_from_grid(n, found_grid),
            total_nodes,
            elapsed,
        )
    if pending:
        return SearchOutcome(
            SearchStatus.BUDGET_EXCEEDED, None, total_nodes, elapsed, tuple(pending)
        )
    return SearchOutcome(SearchStatus.EXHAUSTED_NO_SOLUTION, None, total_nodes, elapsed)


# ---------------------------------------------------------------------------
# Frontier checkpoints


def save_frontier(path: str | Path, frontier: Sequence[Sequence[int]]) -> None:
    """One pending branch per line, comma-separated vertex values."""
    text = "".join(",".join(str(v) for v in branch) + "\n" for branch in frontier)
    Path(path).write_text(text, encoding="utf-8")


def load_frontier(path: str | Path, n: int) -> tuple[tuple[int, ...], ...]:
    """Parse a frontier file back into branches, validating each line."""
    branches = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            values = tuple(int(field) for field in line.split(","))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: not a comma-separated vertex list") from exc
        branches.append(validate_branch(values, n, where=f"line {lineno}"))
    return tuple(branches)
