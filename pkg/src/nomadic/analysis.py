"""Executable forms of the two non-constructive arguments.

* Even-order closure obstruction: a walk using one edge of each length covers
  total displacement 1 + 2 + ... + (n-1) = n(n-1)/2, which is n/2 mod n for
  even n -- the walker cannot end where it started, so no single cycle with
  all-distinct lengths exists and the rotation trick from the odd case dies.
* Prime uniform-length counterexample: K*_p (p prime) splits into p-1
  Hamiltonian cycles where cycle l repeatedly steps +l.  Any two nomads on
  different cycles collide no matter where they start, because
  t*(l2 - l1) = v1 - v2 mod p always has a solution; so not every Hamiltonian
  decomposition can be made nomadic.

The counterexample claim is deliberately checked two independent ways (solve
the congruence, then re-simulate step by step); a mismatch between the two
raises instead of returning, since it would mean the implementation is broken.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    CycleKind,
    Decomposition,
    DirectedCycle,
    NomadicError,
)


@dataclass(frozen=True)
class ClosureObstruction:
    """Whether one-edge-of-each-length walks fail to close for this n."""

    holds: bool
    residue: int


def even_closure_obstruction(n: int) -> ClosureObstruction:
    """residue = n(n-1)/2 mod n; the obstruction holds iff n is even (the
    residue is then n/2, never 0)."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    residue = (n * (n - 1) // 2) % n
    return ClosureObstruction(holds=(n % 2 == 0 and residue != 0), residue=residue)


def is_prime(p: int) -> bool:
    """Trial division; inputs here are desk-scale."""
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _check_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise ValueError(
            f"need an odd prime (composite n leaves lengths with gcd(l, n) > 1 "
            f"that do not generate Hamiltonian cycles), got {p}"
        )


def prime_uniform_decomposition(p: int) -> Decomposition:
    """The p-1 uniform-length Hamiltonian cycles of K*_p: cycle l visits
    0, l, 2l, ..., (p-1)l mod p."""
    _check_prime(p)
    cycles = tuple(
        DirectedCycle(tuple((step * l) % p for step in range(p)), p)
        for l in range(1, p)
    )
    return Decomposition(p, CycleKind.HAMILTONIAN, cycles)


class DegeneratePairError(NomadicError):
    """Same-length nomads never meet (unless they started together); the
    collision congruence degenerates."""


def prime_collision_time(p: int, l1: int, v1: int, l2: int, v2: int) -> int:
    """The unique t in [0, p) with t*(l2 - l1) = v1 - v2 mod p, i.e. the time
    the two uniform-length nomads co-occupy a vertex."""
    _check_prime(p)
    l1, v1, l2, v2 = l1 % p, v1 % p, l2 % p, v2 % p
    if l1 == l2:
        raise DegeneratePairError(
            f"lengths {l1} and {l2} are equal mod {p}; the pair never converges"
        )
    t = ((v1 - v2) * pow(l2 - l1, -1, p)) % p
    if (v1 + t * l1) % p != (v2 + t * l2) % p:
        raise AssertionError("collision congruence solved incorrectly")
    return t


def _simulated_collision(p: int, l1: int, v1: int, l2: int, v2: int) -> int | None:
    """First meeting time of the two nomads found by stepping, not algebra."""
    a, b = v1 % p, v2 % p
    for t in range(p):
        if a == b:
            return t
        a = (a + l1) % p
        b = (b + l2) % p
    return None


def verify_never_nomadic(p: int) -> bool:
    """True iff every pair of distinct uniform-length cycles collides for
    every pair of starting vertices.

    Collisions are pairwise, so checking all cycle pairs over all root pairs
    decides the whole decomposition.  Each pair is decided twice -- by the
    congruence and by step simulation -- and any disagreement raises.
    """
    _check_prime(p)
    for l1 in range(1, p):
        for l2 in range(l1 + 1, p):
            for v1 in range(p):
                for v2 in range(p):
                    t_algebraic = prime_collision_time(p, l1, v1, l2, v2)
                    t_simulated = _simulated_collision(p, l1, v1, l2, v2)
                    if t_simulated is None:
                        return False
                    if t_simulated != t_algebraic:
                        raise AssertionError(
                            f"routes disagree for p={p}, lengths ({l1}, {l2}), "
                            f"starts ({v1}, {v2}): congruence gives {t_algebraic}, "
                            f"simulation gives {t_simulated}"
                        )
    return True
