"""Figure export: DOT for the whole decomposition, SVG for a single cycle.

The SVG reproduces the usual circular drawing: vertices on a circle labeled
with their signed labels, 0 at the top and positive labels running clockwise
(a flag flips the orientation), the chosen cycle drawn as chords, and an
arrowhead on the root's first step.
"""

from __future__ import annotations

import math

from .core import Decomposition, NomadSchedule, to_signed, validate_schedule


def _signed_str(residue: int, n: int) -> str:
    s = to_signed(residue, n)
    return f"+{s}" if s > 0 else str(s)


def to_dot(decomposition: Decomposition, schedule: NomadSchedule | None = None) -> str:
    """One digraph; every edge annotated with its cycle index and signed length."""
    n = decomposition.n
    lines = [f"digraph knstar_{n} {{"]
    for i, cycle in enumerate(decomposition.cycles):
        root = "" if schedule is None else f" root={schedule.roots[i]}"
        lines.append(f"  // cycle {i}{root}")
        for u, v in cycle.edges():
            length = _signed_str((v - u) % n, n)
            lines.append(f'  {u} -> {v} [cycle={i}, label="{length}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _circle_point(
    signed_label: int, n: int, cx: float, cy: float, radius: float, clockwise: bool
) -> tuple[float, float]:
    theta = 2.0 * math.pi * signed_label / n
    if not clockwise:
        theta = -theta
    return cx + radius * math.sin(theta), cy - radius * math.cos(theta)


def to_svg(
    decomposition: Decomposition,
    schedule: NomadSchedule,
    cycle_index: int,
    clockwise: bool = True,
    size: int = 480,
) -> str:
    """Circular layout of K*_n with one cycle drawn as chords.

    There is deliberately no default cycle: the caller selects which nomad's
    route to draw.  The arrowhead marks the root's first step.
    """
    validate_schedule(decomposition, schedule)
    if not 0 <= cycle_index < len(decomposition.cycles):
        raise ValueError(
            f"cycle index {cycle_index} out of range; decomposition has "
            f"{len(decomposition.cycles)} cycles"
        )
    n = decomposition.n
    cycle = decomposition.cycles[cycle_index]
    root = schedule.roots[cycle_index]  # arrowhead goes on the root's first step
    cx = cy = size / 2.0
    radius = size * 0.40
    label_radius = size * 0.46

    def point(value: int) -> tuple[float, float]:
        return _circle_point(to_signed(value, n), n, cx, cy, radius, clockwise)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        "  <defs>",
        '    <marker id="step" markerWidth="10" markerHeight="8" refX="9" refY="4" orient="auto">',
        '      <path d="M0,0 L10,4 L0,8 z" fill="black"/>',
        "    </marker>",
        "  </defs>",
        f'  <!-- cycle {cycle_index} of a decomposition of K*_{n} -->',
    ]
    for i, (u, v) in enumerate(cycle.edges()):
        x1, y1 = point(u)
        x2, y2 = point(v)
        marker = ' marker-end="url(#step)"' if i == root else ""
        parts.append(
            f'  <line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="black" stroke-width="1.5"{marker}/>'
        )
    for value in range(n):
        x, y = point(value)
        lx, ly = _circle_point(to_signed(value, n), n, cx, cy, label_radius, clockwise)
        parts.append(f'  <circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="black"/>')
        parts.append(
            f'  <text x="{lx:.2f}" y="{ly:.2f}" font-size="14" '
            f'text-anchor="middle" dominant-baseline="middle">{to_signed(value, n)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
