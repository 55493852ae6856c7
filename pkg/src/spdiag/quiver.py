"""Finite quivers with hashable vertex labels."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable

from .errors import CyclicQuiver, InvalidInput, NotTypeA

Arrow = tuple[Hashable, Hashable]


def label_key(x):
    # ints before strings, so mixed label sets still sort deterministically
    if isinstance(x, bool) or not isinstance(x, int):
        return (1, str(x))
    return (0, x)


def sort_labels(xs: Iterable) -> tuple:
    return tuple(sorted(xs, key=label_key))


def sort_arrows(arrows: Iterable[Arrow]) -> tuple[Arrow, ...]:
    return tuple(sorted(((s, t) for s, t in arrows), key=lambda a: (label_key(a[0]), label_key(a[1]))))


@dataclass(frozen=True)
class Quiver:
    """A quiver given by its vertex labels and a multiset of arrows ``(source, target)``.

    Arrows are stored sorted, so two quivers compare equal when they have the
    same vertices and the same arrow multiset.
    """

    vertices: tuple
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        vs = sort_labels(self.vertices)
        if len(set(vs)) != len(vs):
            raise InvalidInput("duplicate quiver vertices")
        vset = set(vs)
        for s, t in self.arrows:
            if s not in vset or t not in vset:
                raise InvalidInput(f"arrow {s}->{t} uses an unknown vertex")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "arrows", sort_arrows(self.arrows))

    @classmethod
    def on(cls, n: int, arrows: Iterable[Arrow] = ()) -> "Quiver":
        """Quiver on the vertices ``1..n``."""
        return cls(tuple(range(1, n + 1)), tuple(arrows))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def successors(self, v) -> list:
        return [t for s, t in self.arrows if s == v]

    def predecessors(self, v) -> list:
        return [s for s, t in self.arrows if t == v]

    def sinks(self) -> tuple:
        return tuple(v for v in self.vertices if not self.successors(v))

    def sources(self) -> tuple:
        return tuple(v for v in self.vertices if not self.predecessors(v))

    def add_arrows(self, arrows: Iterable[Arrow]) -> "Quiver":
        return Quiver(self.vertices, self.arrows + tuple(arrows))

    def full_subquiver(self, vertices: Iterable) -> "Quiver":
        vs = set(vertices)
        return Quiver(tuple(vs), tuple(a for a in self.arrows if a[0] in vs and a[1] in vs))

    def topological_order(self) -> tuple:
        """Kahn's algorithm with smallest-label tie breaking; raises CyclicQuiver."""
        indeg = {v: 0 for v in self.vertices}
        for _, t in self.arrows:
            indeg[t] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        order = []
        while ready:
            ready.sort(key=label_key)
            v = ready.pop(0)
            order.append(v)
            for t in self.successors(v):
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
        if len(order) != self.n:
            raise CyclicQuiver("quiver has an oriented cycle")
        return tuple(order)

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
        except CyclicQuiver:
            return False
        return True

    def reachable_from(self, v) -> frozenset:
        """Vertices w admitting a path v -> ... -> w (including v)."""
        seen = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in self.successors(u):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return frozenset(seen)

    def reaching(self, v) -> frozenset:
        """Vertices w admitting a path w -> ... -> v (including v)."""
        seen = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in self.predecessors(u):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return frozenset(seen)

    def count_simple_paths(self, s, t, limit: int = 2) -> int:
        """Number of simple directed paths from s to t, counted up to ``limit``."""
        count = 0
        stack = [(s, frozenset([s]), iter(self.successors(s)))]
        while stack:
            node, visited, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                continue
            if nxt == t:
                count += 1
                if count >= limit:
                    return count
            elif nxt not in visited:
                stack.append((nxt, visited | {nxt}, iter(self.successors(nxt))))
        return count

    def neighbors(self, v) -> list:
        return self.successors(v) + self.predecessors(v)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        queue = deque(seen)
        while queue:
            u = queue.popleft()
            for w in self.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.n

    def path_order(self) -> tuple:
        """Vertices listed along the underlying path graph.

        The walk starts at the end vertex with the smaller label. Raises NotTypeA
        unless the underlying graph is a path without parallel arrows or loops.
        """
        return _path_order(self)

    def is_type_a(self) -> bool:
        try:
            self.path_order()
        except NotTypeA:
            return False
        return True

    def is_extremal(self, v) -> bool:
        """True for the end vertices of a type-A quiver (degree at most one)."""
        return len(self.neighbors(v)) <= 1


@lru_cache(maxsize=4096)
def _path_order(q: Quiver) -> tuple:
    if q.n == 0:
        raise NotTypeA("empty quiver")
    pairs = [frozenset(a) for a in q.arrows]
    if any(len(p) == 1 for p in pairs):
        raise NotTypeA("loop")
    if len(set(pairs)) != len(pairs):
        raise NotTypeA("parallel or antiparallel arrows")
    if len(pairs) != q.n - 1 or not q.is_connected():
        raise NotTypeA("underlying graph is not a tree on all vertices")
    degree = {v: len(q.neighbors(v)) for v in q.vertices}
    if any(d > 2 for d in degree.values()):
        raise NotTypeA("vertex of degree > 2")
    ends = [v for v in q.vertices if degree[v] <= 1]
    start = ends[0]
    order = [start]
    prev = None
    while len(order) < q.n:
        cur = order[-1]
        nxt = [w for w in q.neighbors(cur) if w != prev]
        prev = cur
        order.append(nxt[0])
    return tuple(order)


def path_quiver(orientation: str, labels: Iterable | None = None) -> Quiver:
    """Type-A quiver from a string of ``'>'``/``'<'`` characters.

    ``path_quiver('><')`` is ``1 -> 2 <- 3``.
    """
    n = len(orientation) + 1
    labels = tuple(labels) if labels is not None else tuple(range(1, n + 1))
    if len(labels) != n:
        raise InvalidInput("need len(orientation) + 1 labels")
    arrows = []
    for i, c in enumerate(orientation):
        a, b = labels[i], labels[i + 1]
        if c == ">":
            arrows.append((a, b))
        elif c == "<":
            arrows.append((b, a))
        else:
            raise InvalidInput(f"bad orientation character {c!r}")
    return Quiver(labels, tuple(arrows))
