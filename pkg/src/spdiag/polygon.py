"""Diagonals, triangulations and fans of the regular (n+3)-gon.

Polygon vertices are ``0..n+2`` numbered counter-clockwise, so every
orientation rule reduces to comparing vertex indices cyclically. The
diagonals of a triangulation carry labels (by default ``1..n``) which are the
vertices of the associated quiver.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, NamedTuple, Sequence

from .errors import InvalidInput, NotTypeA
from .quiver import Quiver, label_key, sort_labels


class Diagonal(NamedTuple):
    a: int
    b: int

    def __repr__(self):
        return f"D({self.a},{self.b})"


class BoundaryEdge(NamedTuple):
    a: int
    b: int

    def __repr__(self):
        return f"B({self.a},{self.b})"


class PivotMove(NamedTuple):
    source: Diagonal
    target: Diagonal | BoundaryEdge
    pivot: int


def diagonal(v: int, w: int) -> Diagonal:
    if v == w:
        raise InvalidInput("a diagonal needs two distinct endpoints")
    return Diagonal(min(v, w), max(v, w))


def is_boundary_pair(v: int, w: int, N: int) -> bool:
    return (v - w) % N in (1, N - 1)


def edge(v: int, w: int, N: int) -> Diagonal | BoundaryEdge:
    """The side or diagonal of the N-gon joining v and w."""
    v, w = v % N, w % N
    if v == w:
        raise InvalidInput("an edge needs two distinct endpoints")
    if is_boundary_pair(v, w, N):
        return BoundaryEdge(min(v, w), max(v, w))
    return Diagonal(min(v, w), max(v, w))


def check_diagonal(d: Sequence[int], n: int) -> Diagonal:
    N = n + 3
    v, w = int(d[0]), int(d[1])
    if not (0 <= v < N and 0 <= w < N):
        raise InvalidInput(f"{d} has an endpoint outside 0..{N - 1}")
    if v == w or is_boundary_pair(v, w, N):
        raise InvalidInput(f"{d} is not a diagonal of the {N}-gon")
    return diagonal(v, w)


def all_diagonals(n: int) -> list[Diagonal]:
    N = n + 3
    return [Diagonal(v, w) for v, w in combinations(range(N), 2) if not is_boundary_pair(v, w, N)]


def crosses(d: Sequence[int], e: Sequence[int]) -> bool:
    """True iff the open segments meet, i.e. the endpoints strictly interleave."""
    a, b = min(d), max(d)
    c, f = min(e), max(e)
    return (a < c < b < f) or (c < a < f < b)


def is_triangulation(diagonals: Iterable[Sequence[int]], n: int) -> bool:
    ds = [check_diagonal(d, n) for d in diagonals]
    if len(set(ds)) != len(ds) or len(ds) != n:
        return False
    return not any(crosses(d, e) for d, e in combinations(ds, 2))


@dataclass(frozen=True)
class Triangulation:
    """A triangulation of the (n+3)-gon whose diagonals are labelled.

    ``diagonals[i]`` is the diagonal labelled ``labels[i]``; labels default to
    ``1..n`` and are kept sorted.
    """

    n: int
    diagonals: tuple[Diagonal, ...]
    labels: tuple = None

    def __post_init__(self):
        ds = tuple(check_diagonal(d, self.n) for d in self.diagonals)
        labels = tuple(range(1, self.n + 1)) if self.labels is None else tuple(self.labels)
        if len(labels) != len(ds) or len(set(labels)) != len(labels):
            raise InvalidInput("labels must be distinct and match the diagonals")
        if not is_triangulation(ds, self.n):
            raise InvalidInput("diagonals do not form a triangulation")
        pairs = sorted(zip(labels, ds), key=lambda p: label_key(p[0]))
        object.__setattr__(self, "labels", tuple(p[0] for p in pairs))
        object.__setattr__(self, "diagonals", tuple(p[1] for p in pairs))
        object.__setattr__(self, "_by_label", dict(pairs))
        object.__setattr__(self, "_by_diag", {d: l for l, d in pairs})

    @property
    def N(self) -> int:
        return self.n + 3

    def tau(self, label) -> Diagonal:
        return self._by_label[label]

    def label_of(self, d) -> Hashable | None:
        return self._by_diag.get(tuple(d) if not isinstance(d, Diagonal) else d)

    def __contains__(self, d) -> bool:
        return isinstance(d, tuple) and Diagonal(min(d), max(d)) in self._by_diag

    def items(self):
        return zip(self.labels, self.diagonals)

    def to_json(self) -> dict:
        return {"n": self.n, "diagonals": [[d.a, d.b] for d in self.diagonals]}

    @classmethod
    def from_json(cls, data: dict) -> "Triangulation":
        return cls(int(data["n"]), tuple(tuple(d) for d in data["diagonals"]), data.get("labels"))


def triangles(T: Triangulation) -> list[tuple[int, int, int]]:
    """The n+1 triangles of T, each as an increasing vertex triple."""
    N = T.N
    sides = set(T.diagonals) | {edge(v, v + 1, N) for v in range(N)}
    out = []
    for i, j, k in combinations(range(N), 3):
        if edge(i, j, N) in sides and edge(j, k, N) in sides and edge(i, k, N) in sides:
            out.append((i, j, k))
    return out


def quiver_from_triangulation(T: Triangulation) -> Quiver:
    """Quiver Q_T: an arrow x -> y whenever tau_x, tau_y bound a triangle and
    tau_y follows tau_x in the counter-clockwise traversal of its boundary."""
    N = T.N
    arrows = []
    for i, j, k in triangles(T):
        # counter-clockwise boundary of the triangle: ij, jk, ki
        sides = [edge(i, j, N), edge(j, k, N), edge(k, i, N)]
        labels = [T.label_of(s) if isinstance(s, Diagonal) else None for s in sides]
        for m in range(3):
            x, y = labels[m], labels[(m + 1) % 3]
            if x is not None and y is not None:
                arrows.append((x, y))
    return Quiver(T.labels, tuple(arrows))


def triangulation_from_quiver(Q: Quiver) -> Triangulation:
    """A snake triangulation without internal triangles realising Q.

    The first diagonal cuts off the ear at vertex 1; each following diagonal
    pivots about one endpoint of the previous one, the side being fixed by the
    orientation of the arrow between them. Raises NotTypeA unless Q is a
    Dynkin quiver of type A.
    """
    order = Q.path_order()
    n = Q.n
    N = n + 3
    a, b = 0, 2
    diags = [diagonal(a, b)]
    arrows = set(Q.arrows)
    for u, v in zip(order, order[1:]):
        if (u, v) in arrows:
            a = (a - 1) % N
        else:
            b = (b + 1) % N
        diags.append(diagonal(a, b))
    T = Triangulation(n, tuple(diags), order)
    if quiver_from_triangulation(T) != Q:
        raise NotTypeA("snake construction does not reproduce the quiver")
    return T


def rotate(d: Sequence[int], direction: int, n: int) -> Diagonal:
    """Elementary rotation: +1 is counter-clockwise (r+), -1 clockwise (r-)."""
    N = n + 3
    return diagonal((d[0] + direction) % N, (d[1] + direction) % N)


def rotate_triangulation(T: Triangulation, k: int) -> Triangulation:
    return Triangulation(T.n, tuple(rotate(d, k, T.n) for d in T.diagonals), T.labels)


@dataclass(frozen=True)
class Fan:
    """A maximal set of at least two T-diagonals through ``pivot``.

    ``members`` are labels ordered by clockwise rotation about the pivot, so
    the last member is the geometric peak.
    """

    pivot: int
    members: tuple
    diagonals: tuple[Diagonal, ...]


def fans(T: Triangulation) -> list[Fan]:
    N = T.N
    out = []
    for v in range(N):
        through = [(l, d) for l, d in T.items() if v in d]
        if len(through) < 2:
            continue
        # offset of the far endpoint measured counter-clockwise from v
        through.sort(key=lambda p: -((p[1].a + p[1].b - v - v) % N))
        out.append(Fan(v, tuple(l for l, _ in through), tuple(d for _, d in through)))
    return out


def peak_label(f: Fan, Q: Quiver) -> Hashable:
    """Member of the fan reachable in Q from every other member."""
    hits = [m for m in f.members if all(m in Q.reachable_from(o) for o in f.members)]
    if len(hits) != 1:
        raise InvalidInput(f"fan at {f.pivot} has no unique peak in the quiver")
    return hits[0]


def peak_diagonal(f: Fan, Q: Quiver) -> Diagonal:
    return f.diagonals[f.members.index(peak_label(f, Q))]


def fans_of(T: Triangulation, Q: Quiver | None = None) -> dict:
    """Map each T-label to the peak labels of the fans containing it.

    For n = 1 the single diagonal is its own peak. For n >= 2 every diagonal
    lies in one or two fans.
    """
    if T.n == 1:
        return {T.labels[0]: (T.labels[0],)}
    Q = quiver_from_triangulation(T) if Q is None else Q
    peaks: dict = {l: [] for l in T.labels}
    for f in fans(T):
        p = peak_label(f, Q)
        for m in f.members:
            peaks[m].append(p)
    for l, ps in peaks.items():
        if not 1 <= len(ps) <= 2:
            raise InvalidInput(f"diagonal {l} lies in {len(ps)} fans")
    return {l: sort_labels(set(ps)) for l, ps in peaks.items()}


def elementary_moves(g: Sequence[int], n: int) -> list[PivotMove]:
    """The two pivoting elementary moves out of g, one per endpoint.

    The pivot stays fixed and the other endpoint advances one step
    counter-clockwise; the target may be a boundary edge.
    """
    N = n + 3
    g = diagonal(*g)
    moves = []
    for pivot, other in ((g.a, g.b), (g.b, g.a)):
        moves.append(PivotMove(g, edge(pivot, other + 1, N), pivot))
    return moves
