"""Graphviz DOT text for AR quivers and polygon sketches."""
from __future__ import annotations

import math
from typing import Iterable

from .diagcat import ArQuiver, support
from .polygon import Triangulation
from .quiver import sort_labels
from .repcat import ModArQuiver


def _q(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def _diag_name(d) -> str:
    return f"{d[0]},{d[1]}"


def _support_text(s) -> str:
    return "{" + ",".join(str(x) for x in sort_labels(s)) + "}"


def ar_quiver_dot(A: ArQuiver, T: Triangulation, name: str = "AR") -> str:
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;", "  node [shape=box, fontsize=10];"]
    for v in A.vertices:
        label = f"({_diag_name(v)})\\n{_support_text(support(v, T))}"
        lines.append(f"  {_q(_diag_name(v))} [label={_q(label)}];")
    for a, b in A.arrows:
        lines.append(f"  {_q(_diag_name(a))} -> {_q(_diag_name(b))};")
    for end, start in sorted(A.translation.items()):
        lines.append(f"  {_q(_diag_name(end))} -> {_q(_diag_name(start))} "
                     "[style=dashed, arrowhead=none, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def modsp_dot(A: ModArQuiver, name: str = "modsp") -> str:
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;", "  node [shape=box, fontsize=10];"]
    for v in A.vertices:
        lines.append(f"  {_q(_support_text(v))};")
    for a, b in A.arrows:
        lines.append(f"  {_q(_support_text(a))} -> {_q(_support_text(b))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def polygon_dot(T: Triangulation, highlight: Iterable = (), name: str = "polygon") -> str:
    """Polygon with pinned vertex positions, T in black and highlighted
    diagonals in red (render with ``neato -n``)."""
    N = T.N
    lines = [f"graph {_q(name)} {{", "  node [shape=circle, fontsize=10, width=0.3, fixedsize=true];"]
    for v in range(N):
        ang = 2 * math.pi * v / N - math.pi / 2
        lines.append(f'  {v} [pos="{100 * math.cos(ang):.1f},{100 * math.sin(ang):.1f}!"];')
    for v in range(N):
        lines.append(f"  {v} -- {(v + 1) % N} [color=gray];")
    for l, d in T.items():
        lines.append(f"  {d.a} -- {d.b} [label={_q(str(l))}, penwidth=2];")
    for d in sorted(highlight):
        lines.append(f"  {d[0]} -- {d[1]} [color=red];")
    lines.append("}")
    return "\n".join(lines) + "\n"
