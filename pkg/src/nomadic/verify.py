"""Checks that decide whether a candidate decomposition-plus-schedule is a
valid nomadic (near-)Hamiltonian decomposition.

The checks are decomposition-agnostic: they accept anything structurally
representable (including hand-written files) and report failures as witness
records rather than exceptions.  Each report keeps every failed check but
only the first witness per check, so output stays small and deterministic.
"""

from __future__ import annotations

from .core import (
    CheckResult,
    CycleKind,
    Decomposition,
    DirectedCycle,
    NomadSchedule,
    OrderMismatchError,
    VerificationReport,
    period,
    to_signed,
    validate_schedule,
)

EDGE_PARTITION = "edge-partition"
CYCLE_KIND = "cycle-kind"
COLLISION_FREE = "collision-free"
COLUMN_PERMUTATION = "column-permutation"


def verify_edge_partition(decomposition: Decomposition) -> VerificationReport:
    """Pass iff every ordered pair (u, v), u != v, is an edge of exactly one
    cycle; the witness names the first duplicated or missing edge."""
    n = decomposition.n
    seen: dict[tuple[int, int], int] = {}
    witness: dict | None = None
    for i, cycle in enumerate(decomposition.cycles):
        for edge in cycle.edges():
            if edge in seen:
                witness = {
                    "kind": "duplicate",
                    "edge": list(edge),
                    "cycles": [seen[edge], i],
                }
                break
            seen[edge] = i
        if witness:
            break
    if witness is None:
        for u in range(n):
            for v in range(n):
                if u != v and (u, v) not in seen:
                    witness = {"kind": "missing", "edge": [u, v]}
                    break
            if witness:
                break
    return VerificationReport((CheckResult(EDGE_PARTITION, witness is None, witness),))


def verify_cycle_kind(decomposition: Decomposition) -> VerificationReport:
    """Pass iff the cycle count and every cycle length match the claimed kind
    and no cycle revisits a vertex."""
    n = decomposition.n
    kind = decomposition.kind
    witness: dict | None = None
    expected_count = kind.expected_cycle_count(n)
    expected_length = kind.expected_cycle_length(n)
    if len(decomposition.cycles) != expected_count:
        witness = {
            "kind": "cycle-count",
            "expected": expected_count,
            "actual": len(decomposition.cycles),
        }
    else:
        for i, cycle in enumerate(decomposition.cycles):
            if cycle.length != expected_length:
                witness = {
                    "kind": "cycle-length",
                    "cycle": i,
                    "expected": expected_length,
                    "actual": cycle.length,
                }
                break
            repeated = _first_repeat(cycle)
            if repeated is not None:
                witness = {"kind": "repeated-vertex", "cycle": i, "vertex": repeated}
                break
    return VerificationReport((CheckResult(CYCLE_KIND, witness is None, witness),))


def _first_repeat(cycle: DirectedCycle) -> int | None:
    seen: set[int] = set()
    for v in cycle.values:
        if v in seen:
            return v
        seen.add(v)
    return None


def verify_collision_free(
    decomposition: Decomposition, schedule: NomadSchedule
) -> VerificationReport:
    """Simulate one full period (lcm of cycle lengths) and pass iff no two
    nomads ever share a vertex; the witness is the first collision."""
    validate_schedule(decomposition, schedule)
    cycles = [cycle.values for cycle in decomposition.cycles]
    lengths = [len(values) for values in cycles]
    roots = schedule.roots
    horizon = period(decomposition)
    witness: dict | None = None
    occupant: dict[int, int] = {}
    for t in range(horizon):
        occupant.clear()
        for i, values in enumerate(cycles):
            v = values[(roots[i] + t) % lengths[i]]
            if v in occupant:
                witness = {"time": t, "nomads": [occupant[v], i], "vertex": v}
                break
            occupant[v] = i
        if witness:
            break
    return VerificationReport((CheckResult(COLLISION_FREE, witness is None, witness),))


def verify_column_permutation(
    decomposition: Decomposition, schedule: NomadSchedule
) -> VerificationReport:
    """For n nomads on n vertices: pass iff at every time step the positions
    are a permutation of the whole vertex set (stronger phrasing of
    collision-freeness, asserted explicitly)."""
    validate_schedule(decomposition, schedule)
    n = decomposition.n
    cycles = [cycle.values for cycle in decomposition.cycles]
    lengths = [len(values) for values in cycles]
    roots = schedule.roots
    witness: dict | None = None
    if len(cycles) != n:
        witness = {"kind": "nomad-count", "expected": n, "actual": len(cycles)}
    else:
        all_vertices = frozenset(range(n))
        for t in range(period(decomposition)):
            column = {
                values[(roots[i] + t) % lengths[i]] for i, values in enumerate(cycles)
            }
            if column != all_vertices:
                missing = min(all_vertices - column)
                witness = {"time": t, "missing-vertex": missing}
                break
    return VerificationReport(
        (CheckResult(COLUMN_PERMUTATION, witness is None, witness),)
    )


def verify_rotational_symmetry(
    c1: DirectedCycle, c2: DirectedCycle, r1: int, r2: int
) -> int | None:
    """The constant c with g(t) - h(t) = c mod n for nomads rooted at r1 on c1
    and r2 on c2, or None if their difference is not constant.

    Returns 0 when the trajectories coincide; callers applying the nomadic
    reading ("rotationally symmetric" means c != 0) filter that out.
    """
    if c1.n != c2.n:
        raise OrderMismatchError(f"cycles from K*_{c1.n} and K*_{c2.n}")
    if c1.length != c2.length:
        raise ValueError(
            f"rotational symmetry needs equal lengths, got {c1.length} and {c2.length}"
        )
    n = c1.n
    length = c1.length
    diff = (c1.values[r1 % length] - c2.values[r2 % length]) % n
    for t in range(1, length):
        g = c1.values[(r1 + t) % length]
        h = c2.values[(r2 + t) % length]
        if (g - h) % n != diff:
            return None
    return diff


def full_verify(
    decomposition: Decomposition, schedule: NomadSchedule
) -> VerificationReport:
    """Partition, kind, and collision checks together; near-Hamiltonian
    candidates with a full set of nomads also get the column-permutation
    check."""
    report = verify_edge_partition(decomposition)
    report = report.merge(verify_cycle_kind(decomposition))
    report = report.merge(verify_collision_free(decomposition, schedule))
    if (
        decomposition.kind is CycleKind.NEAR_HAMILTONIAN
        and len(decomposition.cycles) == decomposition.n
    ):
        report = report.merge(verify_column_permutation(decomposition, schedule))
    return report


def describe_positions(
    decomposition: Decomposition, schedule: NomadSchedule, t: int
) -> list[int]:
    """Signed labels of all nomad positions at time t (debug/display helper)."""
    validate_schedule(decomposition, schedule)
    n = decomposition.n
    return [
        to_signed(cycle.values[(root + t) % cycle.length], n)
        for cycle, root in zip(decomposition.cycles, schedule.roots)
    ]
