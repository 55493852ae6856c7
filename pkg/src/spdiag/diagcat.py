"""The categories of diagonals C_T and C_(T,F).

Objects are diagonals outside T. Hom spaces are at most one-dimensional, so
morphisms are represented by their dimension only; a witness T-diagonal
certifies a nonzero map.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .errors import DiagonalInT, InvalidInput, NotSpDiagonal
from .polygon import (
    BoundaryEdge,
    Diagonal,
    PivotMove,
    Triangulation,
    all_diagonals,
    crosses,
    diagonal,
    edge,
    elementary_moves,
    fans_of,
    quiver_from_triangulation,
    rotate,
)
from .quiver import Quiver, sort_arrows, sort_labels


class DiagObject(NamedTuple):
    diagonal: Diagonal
    support: frozenset

    def to_json(self, T: Triangulation | None = None, F: Iterable = ()) -> dict:
        out = {"diagonal": list(self.diagonal), "support": list(sort_labels(self.support))}
        if T is not None:
            out["star"] = is_star_diagonal(self.diagonal, T)
            out["frozen_by"] = [list(a) for a in frozen_by(self.diagonal, T, F)]
        return out


@dataclass(frozen=True)
class SpMove:
    """A chain of elementary moves about one pivot."""

    chain: tuple[PivotMove, ...]

    @property
    def source(self) -> Diagonal:
        return self.chain[0].source

    @property
    def target(self) -> Diagonal | BoundaryEdge:
        return self.chain[-1].target

    @property
    def pivot(self) -> int:
        return self.chain[0].pivot


@dataclass(frozen=True)
class Mesh:
    """An almost split sequence ``start -> middle -> end``; tau(end) = start."""

    start: Diagonal
    middle: tuple[Diagonal, ...]
    end: Diagonal


@dataclass(frozen=True)
class ArQuiver:
    vertices: tuple
    arrows: tuple
    translation: dict = field(default_factory=dict)
    meshes: tuple[Mesh, ...] = ()
    projectives: tuple = ()
    injectives: tuple = ()


def _check_not_in_T(g, T: Triangulation) -> Diagonal:
    g = diagonal(*g)
    if g in T:
        raise DiagonalInT(f"{g} belongs to the triangulation")
    return g


@lru_cache(maxsize=65536)
def _support(g: Diagonal, T: Triangulation) -> frozenset:
    return frozenset(l for l, t in T.items() if crosses(t, g))


def support(g: Sequence[int], T: Triangulation) -> frozenset:
    """Labels of the T-diagonals crossed by g."""
    g = _check_not_in_T(g, T)
    s = _support(g, T)
    Q = quiver_from_triangulation(T)
    if not s or not Q.full_subquiver(s).is_connected():
        raise AssertionError(f"support of {g} is not a nonempty connected set")
    return s


def is_star_diagonal(g: Sequence[int], T: Triangulation) -> bool:
    """Every crossed T-diagonal lies in a fan whose peak is crossed too."""
    s = support(g, T)
    peaks = _fan_peaks(T)
    return all(any(p in s for p in peaks[x]) for x in s)


@lru_cache(maxsize=1024)
def _fan_peaks(T: Triangulation) -> dict:
    return fans_of(T)


def _alien_sink(Q: Quiver, a: tuple):
    s, t = a
    for z in Q.sinks():
        sup = Q.reaching(z)
        if s in sup and t in sup:
            return z
    raise InvalidInput(f"alien arrow {a} is not inside one injective support")


def frozen_by(g: Sequence[int], T: Triangulation, F: Iterable[tuple]) -> list[tuple]:
    """Alien arrows s -> t with s and the sink both crossed but t not."""
    s_ = support(g, T)
    Q = quiver_from_triangulation(T)
    out = []
    for a in F:
        a = tuple(a)
        z = _alien_sink(Q, a)
        if a[0] in s_ and z in s_ and a[1] not in s_:
            out.append(a)
    return list(sort_arrows(out))


def is_nonfrozen(g: Sequence[int], T: Triangulation, F: Iterable[tuple]) -> bool:
    return not frozen_by(g, T, F)


def is_sp_diagonal(g: Sequence[int], T: Triangulation, F: Iterable[tuple]) -> bool:
    return is_star_diagonal(g, T) and is_nonfrozen(g, T, F)


def non_t_diagonals(T: Triangulation) -> list[Diagonal]:
    return [d for d in all_diagonals(T.n) if d not in T]


def sp_diagonals(T: Triangulation, F: Iterable[tuple] = ()) -> list[DiagObject]:
    F = tuple(tuple(a) for a in F)
    return [DiagObject(g, support(g, T)) for g in non_t_diagonals(T) if is_sp_diagonal(g, T, F)]


# -- Hom --------------------------------------------------------------------

def _witness(g: Diagonal, h: Diagonal, t: Diagonal, N: int) -> bool:
    """True if t crosses g and h in the relative position of a nonzero map g -> h.

    With t = (v1, v2) and positions measured counter-clockwise from v1, both
    diagonals need one endpoint u on the arc (v1, v2) and one endpoint w on
    the arc (v2, v1), with u_g <= u_h and w_g <= w_h.
    """
    for v1, v2 in ((t.a, t.b), (t.b, t.a)):
        m = (v2 - v1) % N
        pos_g = sorted((x - v1) % N for x in g)
        pos_h = sorted((x - v1) % N for x in h)
        if not (0 < pos_g[0] < m < pos_g[1]) or not (0 < pos_h[0] < m < pos_h[1]):
            continue
        if pos_g[0] <= pos_h[0] and pos_g[1] <= pos_h[1]:
            return True
    return False


def hom_witnesses(g: Sequence[int], h: Sequence[int], T: Triangulation) -> tuple:
    g, h = diagonal(*g), diagonal(*h)
    return tuple(l for l, t in T.items() if _witness(g, h, t, T.N))


def hom_dim(g: Sequence[int], h: Sequence[int], T: Triangulation) -> int:
    return 1 if hom_witnesses(g, h, T) else 0


def composite_nonzero(g1, g2, g3, T: Triangulation) -> bool:
    """Whether the composite of the nonzero maps g1 -> g2 -> g3 is nonzero:
    some T-diagonal must witness both factors at once."""
    a = set(hom_witnesses(g1, g2, T))
    return bool(a & set(hom_witnesses(g2, g3, T)))


# -- moves and AR quivers ------------------------------------------------------

def _is_absorbing(e, T: Triangulation, sp: frozenset) -> bool:
    return isinstance(e, BoundaryEdge) or e in T or e in sp


def sp_moves(g: Sequence[int], T: Triangulation, F: Iterable[tuple] = (),
             sp: Iterable[Diagonal] | None = None) -> list[SpMove]:
    """One chain of elementary moves per pivot, stopped at the first boundary
    edge, T-diagonal or sp-diagonal."""
    g = diagonal(*g)
    sp = frozenset(o.diagonal for o in sp_diagonals(T, F)) if sp is None else frozenset(sp)
    if g not in sp:
        raise NotSpDiagonal(f"{g} is not an sp-diagonal")
    out = []
    for first in elementary_moves(g, T.n):
        chain = [first]
        while not _is_absorbing(chain[-1].target, T, sp):
            cur = chain[-1].target
            nxt = [m for m in elementary_moves(cur, T.n) if m.pivot == first.pivot][0]
            chain.append(nxt)
        out.append(SpMove(tuple(chain)))
    return out


def ar_quiver_ct(T: Triangulation) -> ArQuiver:
    verts = tuple(non_t_diagonals(T))
    vset = set(verts)
    arrows = []
    for g in verts:
        for m in elementary_moves(g, T.n):
            if m.target in vset:
                arrows.append((g, m.target))
    translation = {}
    meshes = []
    for g in verts:
        t = rotate(g, -1, T.n)
        if t in vset:
            translation[g] = t
            middle = tuple(m.target for m in elementary_moves(t, T.n) if m.target in vset)
            meshes.append(Mesh(t, middle, g))
    projectives = tuple(sorted(rotate(t, 1, T.n) for t in T.diagonals))
    injectives = tuple(sorted(rotate(t, -1, T.n) for t in T.diagonals))
    return ArQuiver(verts, tuple(sorted(arrows)), translation, tuple(meshes),
                    projectives, injectives)


def ar_quiver_sp(T: Triangulation, F: Iterable[tuple] = ()) -> ArQuiver:
    """AR quiver of the sp-diagonals.

    Arrows are the sp-moves between sp-diagonals. For an sp-diagonal g = (a, b)
    the two sp-moves end at (a, b') and (a', b); when (a', b') is again an
    sp-diagonal it is the end of an almost split sequence starting at g whose
    middle term collects the sp-diagonals among the two move targets.
    """
    F = tuple(tuple(a) for a in F)
    objs = sp_diagonals(T, F)
    sp = frozenset(o.diagonal for o in objs)
    arrows, meshes, translation = [], [], {}
    for o in objs:
        g = o.diagonal
        moves = sp_moves(g, T, F, sp)
        for m in moves:
            if m.target in sp:
                arrows.append((g, m.target))
        ends = {}
        for m in moves:
            e = m.target
            ends[m.pivot] = e.b if e.a == m.pivot else e.a
        a, b = g
        a2, b2 = ends[b], ends[a]
        if a2 == b2:
            continue
        end = edge(a2, b2, T.N)
        middle = tuple(sorted(m.target for m in moves if m.target in sp))
        # both moves absorbed outside the category: g is injective
        if end in sp and middle:
            meshes.append(Mesh(g, middle, end))
            translation[end] = g
    projectives = tuple(v for v in sorted(sp) if v not in translation)
    injectives = tuple(v for v in sorted(sp) if v not in set(translation.values()))
    return ArQuiver(tuple(sorted(sp)), tuple(sorted(arrows)), translation,
                    tuple(meshes), projectives, injectives)


def theta_module(g: Sequence[int], T: Triangulation):
    """Thin module over the reachability poset of Q_T supported on supp(g)."""
    from .poset import poset_from_quiver
    from .repcat import ThinModule

    P = poset_from_quiver(quiver_from_triangulation(T))
    return ThinModule(P, support(g, T))
