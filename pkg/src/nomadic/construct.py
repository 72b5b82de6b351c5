"""Explicit rotationally symmetric constructions of nomadic decompositions.

Two families are built here, both as rotations of a single base cycle (or of
one base cycle per parity group):

* odd n: one near-Hamiltonian cycle whose n-1 edges use every length exactly
  once, copied around by every rotation.  Because all nomads ride rotations of
  the same cycle, their pairwise position difference is a nonzero constant, so
  they can never collide.
* n divisible by 4: two groups ("climbers" A and their mirror image B) of n/2
  rotationally symmetric nomads each.  At every time step the A edge length is
  the negative of the B edge length, so the two groups alternate strictly
  between the odd- and even-label vertex classes and never meet.

No construction exists here for n congruent to 2 mod 4; that case is handled
only by the exhaustive search engine.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import (
    CycleKind,
    Decomposition,
    DirectedCycle,
    LengthSequence,
    NomadSchedule,
    UnsupportedOrderError,
    Vertex,
    cycle_from_lengths,
    rotate_cycle,
    to_canonical,
)


class BlockKind(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"


@dataclass(frozen=True)
class Block:
    """A four-term run of the mod-4 construction.

    Increasing block i contributes signed lengths (-4i, 4i+1, -4i, 4i+1);
    decreasing block j contributes (4j-1, -4j+2, 4j-1, -4j+2).  Either kind
    moves the walker two vertices counterclockwise net.
    """

    kind: BlockKind
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"block index must be >= 1, got {self.index}")

    def signed_lengths(self) -> tuple[int, int, int, int]:
        i = self.index
        if self.kind is BlockKind.INCREASING:
            return (-4 * i, 4 * i + 1, -4 * i, 4 * i + 1)
        return (4 * i - 1, -4 * i + 2, 4 * i - 1, -4 * i + 2)


def odd_length_sequence(n: int) -> LengthSequence:
    """The alternating length sequence 1, -2, 3, -4, ... for odd n.

    With k = (n-1)/2 the first half runs 1, -2, ..., +-k; the second half
    walks the magnitudes k-1 down to 1 with the signs arranged to end
    ..., -3, 2, -1, and the final term is k with the sign opposite to its
    first-half appearance.  All 2k terms are distinct signed lengths, the
    partial sums never repeat, and the total is 0 mod n.
    """
    if n % 2 == 0 or n < 3:
        raise UnsupportedOrderError(f"odd construction needs odd n >= 3, got {n}")
    k = (n - 1) // 2
    terms = [(-1) ** (i + 1) * i for i in range(1, k + 1)]
    for j in range(k - 1, 0, -1):
        sign = (-1) ** (k + 1) * (-1) ** (k - 1 - j)
        terms.append(sign * j)
    terms.append((-1) ** k * k)
    return LengthSequence.from_signed(terms, n)


def skipped_vertex_odd(n: int) -> Vertex:
    """The unique vertex the odd base cycle never visits.

    The base walk alternates sides of the circle and hops over exactly one
    vertex when the two largest magnitudes are traversed back to back; that
    vertex has signed label (-1)^((n-1)/2) * ceil((n+1)/4).
    """
    if n % 2 == 0 or n < 3:
        raise UnsupportedOrderError(f"odd construction needs odd n >= 3, got {n}")
    label = (-1) ** ((n - 1) // 2) * -(-(n + 1) // 4)
    return Vertex(to_canonical(label, n), n)


def build_odd_decomposition(n: int) -> tuple[Decomposition, NomadSchedule]:
    """n rotated copies of the odd base cycle, every nomad rooted at its
    rotated start; passes every verifier check for odd n."""
    base = cycle_from_lengths(Vertex(0, n), odd_length_sequence(n))
    cycles = tuple(rotate_cycle(base, offset) for offset in range(n))
    decomposition = Decomposition(n, CycleKind.NEAR_HAMILTONIAN, cycles)
    return decomposition, NomadSchedule((0,) * n)


def _mod4_block_counts(n: int) -> tuple[int, int]:
    increasing = (n - 4) // 8
    decreasing = -(-(n - 4) // 8)
    return increasing, decreasing


def mod4_blocks(n: int) -> tuple[Block, ...]:
    """Block layout of the group-A cycle: increasing blocks with index rising
    from 1, then decreasing blocks with index falling back to 1."""
    _check_mod4(n)
    increasing, decreasing = _mod4_block_counts(n)
    blocks = [Block(BlockKind.INCREASING, i) for i in range(1, increasing + 1)]
    blocks += [Block(BlockKind.DECREASING, j) for j in range(decreasing, 0, -1)]
    return tuple(blocks)


def _check_mod4(n: int) -> None:
    if n < 4 or n % 4 != 0:
        raise UnsupportedOrderError(f"mod-4 construction needs n divisible by 4, got {n}")


def mod4_A_length_sequence(n: int) -> LengthSequence:
    """Group-A length list: k, 1, 1, then the increasing and decreasing blocks.

    The opener k, 1, 1 carries the walker across the circle; each block then
    nudges it two vertices back, and after all (n-4)/4 blocks the walk closes
    through n-1 distinct vertices.
    """
    _check_mod4(n)
    k = n // 2
    terms: list[int] = [k, 1, 1]
    for block in mod4_blocks(n):
        terms.extend(block.signed_lengths())
    return LengthSequence.from_signed(terms, n)


def mod4_B_length_sequence(n: int) -> LengthSequence:
    """Group-B length list: the A list negated term by term (k stays k,
    being its own negation mod n)."""
    return mod4_A_length_sequence(n).negated()


def build_mod4_decomposition(n: int) -> tuple[Decomposition, NomadSchedule]:
    """Even rotations of the A base cycle (started on the odd-label side) plus
    even rotations of the B base cycle (started on vertex 0).

    Group A occupies one parity class of signed labels and group B the other
    at every time step, so the two rotation families never collide.
    """
    a_base = cycle_from_lengths(Vertex.from_signed(1, n), mod4_A_length_sequence(n))
    b_base = cycle_from_lengths(Vertex(0, n), mod4_B_length_sequence(n))
    even_offsets = range(0, n, 2)
    cycles = tuple(rotate_cycle(a_base, offset) for offset in even_offsets)
    cycles += tuple(rotate_cycle(b_base, offset) for offset in even_offsets)
    decomposition = Decomposition(n, CycleKind.NEAR_HAMILTONIAN, cycles)
    return decomposition, NomadSchedule((0,) * n)


def build_decomposition(n: int) -> tuple[Decomposition, NomadSchedule]:
    """Dispatch to whichever construction covers n; n = 2 mod 4 has none."""
    if n % 2 == 1:
        return build_odd_decomposition(n)
    if n % 4 == 0:
        return build_mod4_decomposition(n)
    raise UnsupportedOrderError(
        f"no construction is known for n = {n} (n congruent to 2 mod 4 is unresolved); "
        "the search engine can explore it"
    )
