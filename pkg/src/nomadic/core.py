"""Core vocabulary for cycle decompositions of the bidirected complete graph K*_n.

K*_n is the digraph on n vertices with both directed edges between every pair
of distinct vertices.  Vertices are stored as canonical residues 0..n-1; the
signed labels used in circular drawings (0 at the top, positives clockwise)
are a display view derived on demand.  Every value here is immutable and every
operation is a pure function, so unrestricted concurrent use is safe.

A "nomad" is a token that walks its cycle one vertex per time step, forever.
A decomposition plus one root index per cycle is *nomadic* when no two nomads
ever occupy the same vertex at the same integer time.  Nomads exchanging
positions across an edge in a single step do not count as colliding.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Iterator

MIN_ORDER = 3


class NomadicError(Exception):
    """Base class for domain errors raised by this package."""


class OrderMismatchError(NomadicError):
    """Operands belong to K*_n for different n."""


class LoopEdgeError(NomadicError):
    """K*_n has no loops; an edge needs two distinct endpoints."""


class UnsupportedOrderError(NomadicError):
    """The requested order n is outside what the operation supports."""


class PrematureRevisitError(NomadicError):
    """A walk returned to an earlier vertex before its final step."""

    def __init__(self, time_step: int, vertex: int):
        super().__init__(f"walk revisits vertex {vertex} at step {time_step}")
        self.time_step = time_step
        self.vertex = vertex


class OpenWalkError(NomadicError):
    """The lengths do not sum to 0 mod n, so the walk never closes."""


class ScheduleMismatchError(NomadicError):
    """A schedule does not fit the decomposition it was paired with."""


def check_order(n: int) -> None:
    """Reject orders below 3; K*_n needs cycles of length at least 2."""
    if not isinstance(n, int) or n < MIN_ORDER:
        raise UnsupportedOrderError(f"order must be an integer >= {MIN_ORDER}, got {n!r}")


def to_signed(value: int, n: int) -> int:
    """Signed display label of a residue: the representative in (-n/2, n/2]."""
    return value if value <= n // 2 else value - n


def to_canonical(label: int, n: int) -> int:
    """Canonical residue of a signed label (inverse of :func:`to_signed`)."""
    low, high = -((n - 1) // 2), n // 2
    if not low <= label <= high:
        raise ValueError(f"signed label {label} outside [{low}, {high}] for n={n}")
    return label % n


@dataclass(frozen=True, slots=True)
class Vertex:
    """A vertex of K*_n, held as a canonical residue in [0, n)."""

    value: int
    n: int

    def __post_init__(self) -> None:
        check_order(self.n)
        if not 0 <= self.value < self.n:
            raise ValueError(f"vertex value {self.value} outside [0, {self.n})")

    @classmethod
    def from_signed(cls, label: int, n: int) -> Vertex:
        check_order(n)
        return cls(to_canonical(label, n), n)

    @property
    def signed(self) -> int:
        return to_signed(self.value, self.n)

    def shift(self, offset: int) -> Vertex:
        return Vertex((self.value + offset) % self.n, self.n)

    def __str__(self) -> str:
        return str(self.signed)


@dataclass(frozen=True, slots=True)
class EdgeLength:
    """Length of an edge of K*_n: (head - tail) mod n, never 0.

    The signed representative lives in the symmetric window around 0; for even
    n the residue n/2 is its own negation.
    """

    residue: int
    n: int

    def __post_init__(self) -> None:
        check_order(self.n)
        if not 1 <= self.residue < self.n:
            raise ValueError(
                f"edge length residue {self.residue} outside [1, {self.n}); "
                "there are no edges of length 0"
            )

    @classmethod
    def from_signed(cls, label: int, n: int) -> EdgeLength:
        check_order(n)
        if label % n == 0:
            raise ValueError(f"signed length {label} is 0 mod {n}")
        return cls(label % n, n)

    @property
    def signed(self) -> int:
        return to_signed(self.residue, self.n)

    def negate(self) -> EdgeLength:
        return EdgeLength(self.n - self.residue, self.n)

    def __str__(self) -> str:
        s = self.signed
        return f"+{s}" if s > 0 else str(s)


def edge_length(u: Vertex, v: Vertex) -> EdgeLength:
    """Length of the edge u -> v, i.e. (v - u) mod n."""
    if u.n != v.n:
        raise OrderMismatchError(f"vertices from K*_{u.n} and K*_{v.n}")
    if u.value == v.value:
        raise LoopEdgeError(f"no edge from vertex {u.value} to itself")
    return EdgeLength((v.value - u.value) % u.n, u.n)


@dataclass(frozen=True)
class LengthSequence:
    """An ordered run of edge lengths; the t-th partial sum is the walker's
    displacement after t steps, and the walk closes iff the total is 0 mod n."""

    lengths: tuple[EdgeLength, ...]
    n: int

    def __post_init__(self) -> None:
        check_order(self.n)
        object.__setattr__(self, "lengths", tuple(self.lengths))
        if not self.lengths:
            raise ValueError("a length sequence needs at least one term")
        for term in self.lengths:
            if term.n != self.n:
                raise OrderMismatchError(f"length {term!r} is not mod {self.n}")

    @classmethod
    def from_signed(cls, labels: Iterable[int], n: int) -> LengthSequence:
        return cls(tuple(EdgeLength.from_signed(s, n) for s in labels), n)

    @classmethod
    def from_residues(cls, residues: Iterable[int], n: int) -> LengthSequence:
        return cls(tuple(EdgeLength(r, n) for r in residues), n)

    def __len__(self) -> int:
        return len(self.lengths)

    def __iter__(self) -> Iterator[EdgeLength]:
        return iter(self.lengths)

    def residues(self) -> tuple[int, ...]:
        return tuple(term.residue for term in self.lengths)

    def signed(self) -> tuple[int, ...]:
        return tuple(term.signed for term in self.lengths)

    def partial_sums(self) -> tuple[int, ...]:
        """Displacements after 1, 2, ... steps, reduced mod n."""
        sums = []
        acc = 0
        for term in self.lengths:
            acc = (acc + term.residue) % self.n
            sums.append(acc)
        return tuple(sums)

    def total(self) -> int:
        return sum(self.residues()) % self.n

    def closes(self) -> bool:
        return self.total() == 0

    def negated(self) -> LengthSequence:
        return LengthSequence(tuple(term.negate() for term in self.lengths), self.n)


@dataclass(frozen=True)
class DirectedCycle:
    """A directed cycle given by its vertex values in visiting order.

    The walk returns from the last vertex to the first.  Construction only
    enforces what makes the edge list well defined: at least two vertices and
    no two consecutive entries equal (wraparound included).  Full vertex
    distinctness is a validity question left to the verifier, so hand-written
    (possibly broken) cycles remain representable.
    """

    values: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        check_order(self.n)
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) < 2:
            raise ValueError("a cycle visits at least two vertices")
        for v in self.values:
            if not 0 <= v < self.n:
                raise ValueError(f"vertex value {v} outside [0, {self.n})")
        for i, v in enumerate(self.values):
            if v == self.values[i - 1]:
                raise LoopEdgeError(
                    f"consecutive repeat of vertex {v} at position {i} makes a loop edge"
                )

    @classmethod
    def from_vertices(cls, vertices: Iterable[Vertex]) -> DirectedCycle:
        vertices = tuple(vertices)
        if not vertices:
            raise ValueError("a cycle visits at least two vertices")
        n = vertices[0].n
        for v in vertices:
            if v.n != n:
                raise OrderMismatchError(f"mixed orders {n} and {v.n} in one cycle")
        return cls(tuple(v.value for v in vertices), n)

    @property
    def length(self) -> int:
        return len(self.values)

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return tuple(Vertex(v, self.n) for v in self.values)

    def signed_values(self) -> tuple[int, ...]:
        return tuple(to_signed(v, self.n) for v in self.values)

    def vertex(self, index: int) -> Vertex:
        return Vertex(self.values[index % self.length], self.n)

    def index_of(self, v: Vertex | int) -> int:
        value = v.value if isinstance(v, Vertex) else v
        return self.values.index(value)

    def successor(self, v: Vertex | int, k: int = 1) -> Vertex:
        """The vertex reached from v by following the cycle for k steps."""
        return self.vertex(self.index_of(v) + k)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Ordered vertex-value pairs of the cycle's edges, wraparound included."""
        for i, v in enumerate(self.values):
            yield v, self.values[(i + 1) % self.length]

    def lengths(self) -> LengthSequence:
        """The cycle's successive edge lengths (the derived view; the vertex
        list is ground truth)."""
        return LengthSequence.from_residues(
            ((v2 - v1) % self.n for v1, v2 in self.edges()), self.n
        )


def cycle_from_lengths(start: Vertex, seq: LengthSequence) -> DirectedCycle:
    """Walk from `start` following `seq`; return the resulting closed cycle.

    Raises PrematureRevisitError (with the first repeated time step) if a
    partial sum repeats, and OpenWalkError if the total is nonzero mod n.
    """
    if start.n != seq.n:
        raise OrderMismatchError(f"start vertex mod {start.n} but lengths mod {seq.n}")
    n = seq.n
    positions = [start.value]
    seen = {start.value}
    cur = start.value
    last = len(seq)
    for t, term in enumerate(seq.lengths, start=1):
        cur = (cur + term.residue) % n
        if t == last:
            if cur != start.value:
                raise OpenWalkError(
                    f"lengths sum to {seq.total()} mod {n}; walk ends at {cur}, not {start.value}"
                )
        elif cur in seen:
            raise PrematureRevisitError(t, cur)
        else:
            seen.add(cur)
            positions.append(cur)
    return DirectedCycle(tuple(positions), n)


def rotate_cycle(cycle: DirectedCycle, offset: int) -> DirectedCycle:
    """Shift every vertex value by `offset` mod n; edge lengths are unchanged."""
    n = cycle.n
    return DirectedCycle(tuple((v + offset) % n for v in cycle.values), n)


class CycleKind(enum.Enum):
    """Which decomposition shape is claimed: n-1 cycles of length n, or n
    cycles of length n-1 (each missing exactly one vertex)."""

    NEAR_HAMILTONIAN = "near-hamiltonian"
    HAMILTONIAN = "hamiltonian"

    def expected_cycle_count(self, n: int) -> int:
        return n if self is CycleKind.NEAR_HAMILTONIAN else n - 1

    def expected_cycle_length(self, n: int) -> int:
        return n - 1 if self is CycleKind.NEAR_HAMILTONIAN else n


@dataclass(frozen=True)
class Decomposition:
    """A claimed partition of E(K*_n) into directed cycles.

    Deliberately loose: it carries whatever cycles it was given, valid or not,
    so the verifier can judge arbitrary candidates.
    """

    n: int
    kind: CycleKind
    cycles: tuple[DirectedCycle, ...]

    def __post_init__(self) -> None:
        check_order(self.n)
        object.__setattr__(self, "cycles", tuple(self.cycles))
        for i, cycle in enumerate(self.cycles):
            if cycle.n != self.n:
                raise OrderMismatchError(f"cycle {i} is mod {cycle.n}, decomposition mod {self.n}")

    def edge_count(self) -> int:
        return sum(c.length for c in self.cycles)


@dataclass(frozen=True)
class NomadSchedule:
    """One root index per cycle: nomad i stands on cycle i's root vertex at
    time 0 and advances one step per time unit."""

    roots: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "roots", tuple(self.roots))


def validate_schedule(decomposition: Decomposition, schedule: NomadSchedule) -> None:
    """Raise ScheduleMismatchError unless the schedule fits the decomposition."""
    if len(schedule.roots) != len(decomposition.cycles):
        raise ScheduleMismatchError(
            f"{len(schedule.roots)} roots for {len(decomposition.cycles)} cycles"
        )
    for i, (root, cycle) in enumerate(zip(schedule.roots, decomposition.cycles)):
        if not 0 <= root < cycle.length:
            raise ScheduleMismatchError(
                f"root {root} of cycle {i} outside [0, {cycle.length})"
            )


def positions_at(
    decomposition: Decomposition, schedule: NomadSchedule, t: int
) -> list[Vertex]:
    """Where every nomad stands at time t (periodic in the cycle lengths)."""
    validate_schedule(decomposition, schedule)
    n = decomposition.n
    return [
        Vertex(cycle.values[(root + t) % cycle.length], n)
        for cycle, root in zip(decomposition.cycles, schedule.roots)
    ]


def period(decomposition: Decomposition) -> int:
    """lcm of the cycle lengths: after this many steps all nomads repeat."""
    return lcm(*(c.length for c in decomposition.cycles))


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verifier check; `witness` pins the first violation."""

    name: str
    passed: bool
    witness: dict | None = None

    def __str__(self) -> str:
        if self.passed:
            return f"PASS {self.name}"
        return f"FAIL {self.name}: {self.witness}"


@dataclass(frozen=True)
class VerificationReport:
    """A bundle of named pass/fail checks with first-violation witnesses."""

    checks: tuple[CheckResult, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "checks", tuple(self.checks))

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed(self) -> tuple[CheckResult, ...]:
        return tuple(check for check in self.checks if not check.passed)

    def check(self, name: str) -> CheckResult:
        for result in self.checks:
            if result.name == name:
                return result
        raise KeyError(name)

    def merge(self, other: VerificationReport) -> VerificationReport:
        return VerificationReport(self.checks + other.checks)

    def __str__(self) -> str:
        return "\n".join(str(check) for check in self.checks)
