"""Finite posets, peak-subposet tests and the poset <-> (Q, F) dictionary."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, NamedTuple

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import DiGraphMatcher

from .errors import CyclicQuiver, InvalidInput, NotSink, NotTypeA
from .quiver import Quiver, label_key, sort_labels


class Poset:
    """A finite poset stored as a boolean order matrix plus its cover relations.

    ``leq[i, j]`` is true iff ``elements[i] <= elements[j]``. Elements are kept
    in sorted label order.
    """

    __slots__ = ("elements", "index", "leq", "covers", "_hash")

    def __init__(self, elements: Iterable, leq: np.ndarray):
        self.elements = sort_labels(elements)
        if len(set(self.elements)) != len(self.elements):
            raise InvalidInput("duplicate poset elements")
        self.index = {x: i for i, x in enumerate(self.elements)}
        leq = np.asarray(leq, dtype=bool)
        n = len(self.elements)
        if leq.shape != (n, n):
            raise InvalidInput("order matrix has the wrong shape")
        if not leq.diagonal().all():
            raise InvalidInput("relation is not reflexive")
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            raise InvalidInput("relation is not antisymmetric")
        if n and ((leq.astype(np.int64) @ leq.astype(np.int64) > 0) & ~leq).any():
            raise InvalidInput("relation is not transitive")
        leq.setflags(write=False)
        self.leq = leq
        strict = leq & ~np.eye(n, dtype=bool)
        # y covers x iff x < y with nothing strictly between
        between = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
        cov = strict & ~between
        self.covers = tuple(
            (self.elements[i], self.elements[j]) for i, j in zip(*np.nonzero(cov))
        )
        self._hash = None

    @classmethod
    def from_covers(cls, elements: Iterable, covers: Iterable[tuple]) -> "Poset":
        """Poset generated by relations ``x < y`` (need not be a transitive reduction)."""
        elements = sort_labels(elements)
        q = Quiver(elements, tuple(covers))
        return poset_from_quiver(q)

    # -- relations -------------------------------------------------------
    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.index

    def le(self, x, y) -> bool:
        return bool(self.leq[self.index[x], self.index[y]])

    def lt(self, x, y) -> bool:
        return x != y and self.le(x, y)

    def comparable(self, x, y) -> bool:
        return self.le(x, y) or self.le(y, x)

    def maxima(self) -> tuple:
        return tuple(x for i, x in enumerate(self.elements) if self.leq[i].sum() == 1)

    def minima(self) -> tuple:
        return tuple(x for i, x in enumerate(self.elements) if self.leq[:, i].sum() == 1)

    def up_cone(self, a) -> frozenset:
        return frozenset(self.elements[j] for j in np.nonzero(self.leq[self.index[a]])[0])

    def down_cone(self, a) -> frozenset:
        return frozenset(self.elements[i] for i in np.nonzero(self.leq[:, self.index[a]])[0])

    def down_set(self, xs: Iterable) -> frozenset:
        out = set()
        for x in xs:
            out |= self.down_cone(x)
        return frozenset(out)

    def subposet(self, xs: Iterable) -> "Poset":
        xs = sort_labels(set(xs))
        idx = [self.index[x] for x in xs]
        return Poset(xs, self.leq[np.ix_(idx, idx)])

    def is_connected(self) -> bool:
        if len(self) <= 1:
            return True
        g = nx.Graph()
        g.add_nodes_from(self.elements)
        g.add_edges_from(self.covers)
        return nx.is_connected(g)

    def is_convex(self, xs: Iterable) -> bool:
        s = set(xs)
        for x, w in combinations(s, 2):
            if self.lt(w, x):
                x, w = w, x
            if self.lt(x, w):
                between = self.up_cone(x) & self.down_cone(w)
                if not between <= s:
                    return False
        return True

    def relabel(self, mapping: dict) -> "Poset":
        return Poset.from_covers([mapping[x] for x in self.elements],
                                 [(mapping[x], mapping[y]) for x, y in self.covers])

    def hasse_digraph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.elements)
        g.add_edges_from(self.covers)
        return g

    def is_isomorphic(self, other: "Poset") -> bool:
        if len(self) != len(other) or len(self.covers) != len(other.covers):
            return False
        return DiGraphMatcher(self.hasse_digraph(), other.hasse_digraph()).is_isomorphic()

    # -- value semantics -------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and bool((self.leq == other.leq).all())

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.elements, self.covers))
        return self._hash

    def __repr__(self) -> str:
        return f"Poset({list(self.elements)}, covers={list(self.covers)})"

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "covers": [list(c) for c in self.covers]}

    @classmethod
    def from_json(cls, data: dict) -> "Poset":
        try:
            elements = data["elements"]
            covers = [tuple(c) for c in data["covers"]]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"bad poset JSON: {exc}") from exc
        try:
            return cls.from_covers(elements, covers)
        except CyclicQuiver as exc:
            raise InvalidInput("cover relations contain a cycle") from exc


def poset_from_quiver(Q: Quiver) -> Poset:
    """Reachability order: x <= y iff there is a path x -> ... -> y."""
    order = Q.topological_order()
    vs = Q.vertices
    idx = {v: i for i, v in enumerate(vs)}
    n = len(vs)
    leq = np.eye(n, dtype=bool)
    # sweep in reverse topological order so successors are complete
    for v in reversed(order):
        i = idx[v]
        for w in Q.successors(v):
            leq[i] |= leq[idx[w]]
    return Poset(vs, leq)


def hasse_quiver(P: Poset) -> Quiver:
    return Quiver(P.elements, P.covers)


def up_cone(P: Poset, a) -> frozenset:
    return P.up_cone(a)


def down_cone(P: Poset, a) -> frozenset:
    return P.down_cone(a)


# -- width and chains ----------------------------------------------------

def chain_decomposition(P: Poset) -> list[tuple]:
    """Minimum chain cover (Dilworth) from a maximum matching x -> y, x < y.

    Chains are listed bottom-up and ordered by their smallest label.
    """
    g = nx.Graph()
    left = [("L", x) for x in P.elements]
    g.add_nodes_from(left)
    g.add_nodes_from(("R", x) for x in P.elements)
    for x in P.elements:
        for y in P.elements:
            if P.lt(x, y):
                g.add_edge(("L", x), ("R", y))
    matching = nx.bipartite.hopcroft_karp_matching(g, top_nodes=left)
    nxt = {x: matching[("L", x)][1] for x in P.elements if ("L", x) in matching}
    has_prev = set(nxt.values())
    chains = []
    for x in P.elements:
        if x in has_prev:
            continue
        chain = [x]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
        chains.append(tuple(chain))
    chains.sort(key=lambda c: label_key(min(c, key=label_key)))
    return chains


def width(P: Poset) -> int:
    return len(chain_decomposition(P)) if len(P) else 0


# -- forbidden peak-subposets -------------------------------------------

class ForbiddenWitness(NamedTuple):
    family: str  # "R1", "R2", "R3" or "R4n"
    elements: tuple


def _antichain3(P: Poset, xs: Iterable):
    for trio in combinations(sort_labels(xs), 3):
        if not any(P.comparable(a, b) for a, b in combinations(trio, 2)):
            return trio
    return None


def _crown(P: Poset, maxes: tuple):
    """A crown among ``maxes`` and non-maximal elements, found as a chordless
    cycle of the bipartite "x below z" graph."""
    lower = [x for x in P.elements if x not in set(maxes)]
    g = nx.Graph()
    for z in maxes:
        for x in lower:
            if P.lt(x, z):
                g.add_edge(("z", z), ("x", x))
    for cycle in nx.chordless_cycles(g):
        if len(cycle) < 4:
            continue
        xs = [v for k, v in cycle if k == "x"]
        if any(P.comparable(a, b) for a, b in combinations(xs, 2)):
            continue
        return tuple(v for _, v in cycle)
    return None


def find_forbidden_peak_subposet(P: Poset) -> ForbiddenWitness | None:
    """Search for R1, R2, R3 and the crowns R4,n as peak-subposets."""
    maxes = P.maxima()
    for z in maxes:
        trio = _antichain3(P, P.down_cone(z) - {z})
        if trio:
            return ForbiddenWitness("R1", sort_labels((z,) + trio))
    for z1, z2 in combinations(maxes, 2):
        common = P.down_cone(z1) & P.down_cone(z2)
        for x in sort_labels(common):
            below = sort_labels(P.down_cone(x) - {x})
            if below:
                return ForbiddenWitness("R2", sort_labels((z1, z2, x, below[0])))
    for z1, z2, z3 in combinations(maxes, 3):
        common = P.down_cone(z1) & P.down_cone(z2) & P.down_cone(z3)
        if common:
            return ForbiddenWitness("R3", sort_labels((z1, z2, z3, min(common, key=label_key))))
    crown = _crown(P, maxes)
    if crown:
        return ForbiddenWitness("R4n", sort_labels(crown))
    return None


def witness_is_valid(P: Poset, w: ForbiddenWitness) -> bool:
    """The witness is a full subposet isomorphic to its family template whose
    maxima are maximal in P."""
    S = P.subposet(w.elements)
    if not set(S.maxima()) <= set(P.maxima()):
        return False
    m = len(w.elements) // 2 - 2 if w.family == "R4n" else 0
    if w.family == "R4n" and (len(w.elements) % 2 or m < 0):
        return False
    return S.is_isomorphic(forbidden_template(w.family, m))


def is_type_A(P: Poset) -> bool:
    return len(P) > 0 and P.is_connected() and find_forbidden_peak_subposet(P) is None


def forbidden_template(family: str, m: int = 0) -> Poset:
    """The forbidden posets with fresh string labels; ``m`` indexes R4,m."""
    if family == "R1":
        return Poset.from_covers("zabc", [("a", "z"), ("b", "z"), ("c", "z")])
    if family == "R2":
        return Poset.from_covers(["z1", "z2", "x", "y"], [("x", "z1"), ("x", "z2"), ("y", "x")])
    if family == "R3":
        return Poset.from_covers(["z1", "z2", "z3", "x"], [("x", "z1"), ("x", "z2"), ("x", "z3")])
    if family == "R4n":
        k = m + 2
        zs = [f"z{i}" for i in range(k)]
        xs = [f"x{i}" for i in range(k)]
        covers = [(xs[i], zs[i]) for i in range(k)] + [(xs[i], zs[(i + 1) % k]) for i in range(k)]
        return Poset.from_covers(zs + xs, covers)
    raise InvalidInput(f"unknown family {family!r}")


# -- neighbors -------------------------------------------------------------

class Neighbors(NamedTuple):
    z: Hashable
    z2: Hashable
    witness: Hashable


def neighbors(P: Poset) -> list[Neighbors]:
    out = []
    for z1, z2 in combinations(P.maxima(), 2):
        common = P.down_cone(z1) & P.down_cone(z2)
        if not common:
            continue
        if len(common) != 1:
            raise NotTypeA(f"maxima {z1}, {z2} share {len(common)} elements")
        (x,) = common
        out.append(Neighbors(z1, z2, x))
    return out


# -- alien sets ----------------------------------------------------------

@dataclass(frozen=True)
class AlienCheck:
    ok: bool
    clause: str | None = None
    arrow: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_alien_set(Q: Quiver, F: Iterable[tuple]) -> AlienCheck:
    """Check the four alien-set clauses in order and report the first failure."""
    Q.path_order()
    F = tuple(tuple(a) for a in F)
    supports = [Q.reaching(z) for z in Q.sinks()]
    sources = set(Q.sources())
    for a in F:
        s, t = a
        if s not in Q.vertices or t not in Q.vertices:
            raise InvalidInput(f"alien arrow {a} uses an unknown vertex")
        if not any(s in sup and t in sup for sup in supports):
            return AlienCheck(False, "a", a)
    for a in F:
        t = a[1]
        if t in sources and not Q.is_extremal(t):
            return AlienCheck(False, "b", a)
    QF = Q.add_arrows(F)
    for a in F:
        if a[0] == a[1] or QF.count_simple_paths(a[0], a[1], limit=2) != 1:
            return AlienCheck(False, "c", a)
    if not QF.is_acyclic():
        return AlienCheck(False, "d", None)
    return AlienCheck(True)


def z_subquiver(Q: Quiver, z) -> Quiver:
    if z not in Q.vertices or Q.successors(z):
        raise NotSink(f"{z} is not a sink")
    return Q.full_subquiver(Q.reaching(z))


# -- decomposition ---------------------------------------------------------

def _decompose_one_peak(P: Poset) -> tuple[Quiver, tuple]:
    (z,) = P.maxima()
    rest = P.subposet(set(P.elements) - {z})
    chains = chain_decomposition(rest) if len(rest) else []
    if len(chains) > 2:
        raise NotTypeA("one-peak poset of width > 2 below its peak")
    c1 = chains[0] if chains else ()
    c2 = chains[1] if len(chains) > 1 else ()
    arrows = list(zip(c1, c1[1:])) + list(zip(c2, c2[1:]))
    if c1:
        arrows.append((c1[-1], z))
    if c2:
        arrows.append((c2[-1], z))
    Q = Quiver(P.elements, tuple(arrows))
    in1, in2 = set(c1), set(c2)
    F = tuple(
        (x, y) for x, y in P.covers
        if (x in in1 and y in in2) or (x in in2 and y in in1)
    )
    return Q, F


def decompose_type_A(P: Poset) -> tuple[Quiver, tuple]:
    """A type-A quiver Q and alien set F with poset_from_quiver(Q + F) == P.

    One peak: split the rest into two Dilworth chains flanking the peak and
    turn the covers between the chains into alien arrows. Several peaks: peel
    off a peak with a unique neighbour, decompose both parts and glue them at
    the shared minimal element.
    """
    if not is_type_A(P):
        raise NotTypeA("poset is not of type A")
    Q, F = _decompose(P)
    check = validate_alien_set(Q, F)
    if not check:
        raise AssertionError(f"decomposition gives an invalid alien set: {check}")
    if poset_from_quiver(Q.add_arrows(F)) != P:
        raise AssertionError("decomposition does not reproduce the poset")
    return Q, F


def _decompose(P: Poset) -> tuple[Quiver, tuple]:
    maxes = P.maxima()
    if len(maxes) == 1:
        return _decompose_one_peak(P)
    nb = neighbors(P)
    count = {z: 0 for z in maxes}
    for p in nb:
        count[p.z] += 1
        count[p.z2] += 1
    z = next(m for m in maxes if count[m] == 1)
    others = [m for m in maxes if m != z]
    Q1, F1 = _decompose(P.subposet(P.down_set(others)))
    Q2, F2 = _decompose(P.subposet(P.down_cone(z)))
    shared = set(Q1.vertices) & set(Q2.vertices)
    if len(shared) != 1:
        raise NotTypeA("peeled peak shares more than one element")
    Q = Quiver(P.elements, Q1.arrows + Q2.arrows)
    return Q, tuple(F1) + tuple(F2)


def quiver_to_json(Q: Quiver, F: Iterable[tuple] = ()) -> dict:
    vs = Q.vertices
    vertices = Q.n if vs == tuple(range(1, Q.n + 1)) else list(vs)
    return {"vertices": vertices, "arrows": [list(a) for a in Q.arrows],
            "alien": [list(a) for a in sort_labels_pairs(F)]}


def sort_labels_pairs(F: Iterable[tuple]) -> list[tuple]:
    return sorted((tuple(a) for a in F), key=lambda a: (label_key(a[0]), label_key(a[1])))


def quiver_from_json(data: dict) -> tuple[Quiver, tuple]:
    try:
        vs = data["vertices"]
        vertices = tuple(range(1, vs + 1)) if isinstance(vs, int) else tuple(vs)
        arrows = tuple(tuple(a) for a in data.get("arrows", ()))
        alien = tuple(tuple(a) for a in data.get("alien", ()))
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"bad quiver JSON: {exc}") from exc
    if any(len(a) != 2 for a in arrows + alien):
        raise InvalidInput("arrows must be [source, target] pairs")
    return Quiver(vertices, arrows), alien


# -- sincere posets ----------------------------------------------------------

def sincere_template(family: str, r: int) -> Poset:
    """Zigzag templates: r maxima joined by r-1 shared minima, plus a tail
    below the last maximum (S2) or below both end maxima (S3)."""
    if r < 1 or family not in ("S1", "S2", "S3"):
        raise InvalidInput(f"no template {family}^({r})")
    zs = [f"z{i}" for i in range(1, r + 1)]
    xs = [f"x{i}" for i in range(1, r)]
    covers = [(xs[i], zs[i]) for i in range(r - 1)] + [(xs[i], zs[i + 1]) for i in range(r - 1)]
    extra = []
    if family in ("S2", "S3"):
        extra.append("tr")
        covers.append(("tr", zs[-1]))
    if family == "S3":
        extra.append("tl")
        covers.append(("tl", zs[0]))
    return Poset.from_covers(zs + xs + extra, covers)


def classify_sincere(P: Poset) -> tuple[str, int] | None:
    r = len(P.maxima())
    if r == 0:
        return None
    for family in ("S1", "S2", "S3"):
        if sincere_template(family, r).is_isomorphic(P):
            return family, r
    return None
