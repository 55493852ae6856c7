"""Socle-projective modules over the incidence algebra of a poset.

Indecomposables over posets of type A are thin: one-dimensional on a convex
support with identity structure maps. They are handled combinatorially; a
general module type with exact rational matrices backs the socle-projectivity
test and cross-checks the thin Hom computation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .errors import NotAModule, NotConvex, NotTypeA
from .poset import Poset
from .quiver import Quiver, label_key, sort_labels


# -- exact linear algebra -------------------------------------------------

def _dm(rows: list[list], ncols: int):
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix

    return DomainMatrix([[QQ(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in rows],
                        (len(rows), ncols), QQ)


def rank(rows: list[list], ncols: int) -> int:
    if not rows or not ncols:
        return 0
    return _dm(rows, ncols).rank()


def nullity(rows: list[list], ncols: int) -> int:
    return ncols - rank(rows, ncols)


def matmul(a: list[list], b: list[list], inner: int) -> list[list]:
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0))
             for j in range(len(b[0]) if b else 0)] for i in range(len(a))]


def identity(d: int) -> list[list]:
    return [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]


# -- modules ----------------------------------------------------------------

@dataclass(frozen=True)
class ThinModule:
    """Thin module: k on ``support`` and identity maps between support points."""

    poset: Poset
    support: frozenset

    def __post_init__(self):
        s = frozenset(self.support)
        object.__setattr__(self, "support", s)
        if not s <= set(self.poset.elements):
            raise NotAModule("support leaves the poset")
        if not self.poset.is_convex(s):
            raise NotConvex(f"support {sort_labels(s)} is not convex")

    def dim_vector(self) -> dict:
        return {x: int(x in self.support) for x in self.poset.elements}

    def to_gen(self) -> "GenModule":
        dims = self.dim_vector()
        maps = {}
        for x, y in self.poset.covers:
            maps[(x, y)] = [[Fraction(1)]] if dims[x] and dims[y] else \
                [[Fraction(0)] * dims[x] for _ in range(dims[y])]
        return GenModule(self.poset, dims, maps)

    def to_json(self) -> dict:
        return {"support": list(sort_labels(self.support))}


@dataclass(frozen=True)
class GenModule:
    """Module given by a vector space dimension per element and a matrix per
    cover relation ``(x, y)`` of shape ``dims[y] x dims[x]``."""

    poset: Poset
    dims: Mapping
    maps: Mapping = field(default_factory=dict)

    def __post_init__(self):
        dims = {x: int(self.dims.get(x, 0)) for x in self.poset.elements}
        maps = {}
        for x, y in self.poset.covers:
            m = self.maps.get((x, y))
            if m is None:
                m = [[Fraction(0)] * dims[x] for _ in range(dims[y])]
            m = [[Fraction(v) for v in row] for row in m]
            if len(m) != dims[y] or any(len(r) != dims[x] for r in m):
                raise NotAModule(f"matrix on {x}->{y} has the wrong shape")
            maps[(x, y)] = m
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", maps)
        object.__setattr__(self, "_composite", self._composites())

    def _composites(self) -> dict:
        """Maps h[x, w] for x <= w; raises NotAModule if two cover paths disagree."""
        P = self.poset
        order = sorted(P.elements, key=lambda x: len(P.down_cone(x)))
        h = {}
        for x in P.elements:
            h[(x, x)] = identity(self.dims[x])
        for w in order:
            below = [y for y, t in P.covers if t == w]
            for x in P.down_cone(w) - {w}:
                cands = [matmul(self.maps[(y, w)], h[(x, y)], self.dims[y])
                         for y in below if P.le(x, y)]
                first = cands[0]
                if any(c != first for c in cands[1:]):
                    raise NotAModule(f"paths from {x} to {w} do not commute")
                h[(x, w)] = first
        return h

    def composite(self, x, w) -> list[list]:
        return self._composite[(x, w)]


def is_socle_projective(M: GenModule) -> bool:
    """For every non-maximal x the maps to the maxima above x have no common kernel."""
    P = M.poset
    maxes = P.maxima()
    for x in P.elements:
        if x in maxes or not M.dims[x]:
            continue
        rows = []
        for z in maxes:
            if P.le(x, z):
                rows.extend(M.composite(x, z))
        if rank(rows, M.dims[x]) < M.dims[x]:
            return False
    return True


def thin_is_sp(S: Iterable, P: Poset) -> bool:
    """Each support point lies below a maximal point of P inside the support."""
    S = frozenset(S)
    if not P.is_convex(S):
        raise NotConvex(f"support {sort_labels(S)} is not convex")
    maxes = [z for z in P.maxima() if z in S]
    return all(any(P.le(x, z) for z in maxes) for x in S)


def path_intervals(Q: Quiver) -> list[frozenset]:
    order = Q.path_order()
    n = len(order)
    return [frozenset(order[i:j]) for i in range(n) for j in range(i + 1, n + 1)]


def _support_key(s: Iterable) -> tuple:
    return tuple(label_key(x) for x in sort_labels(s))


def enumerate_indecomposable_sp(P: Poset, Q: Quiver) -> list[ThinModule]:
    """Thin modules on Q-intervals that are convex in P and socle-projective."""
    if not Q.is_type_a():
        raise NotTypeA("Q is not a type-A quiver")
    out = []
    for s in path_intervals(Q):
        if P.is_convex(s) and thin_is_sp(s, P):
            out.append(ThinModule(P, s))
    out.sort(key=lambda m: (len(m.support), _support_key(m.support)))
    return out


# -- Hom -------------------------------------------------------------------------

class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)


def thin_hom_basis(M: ThinModule, N: ThinModule) -> list[frozenset]:
    """Basis of Hom(M, N): each basis map is the identity on one returned set
    of points and zero elsewhere.

    The unknowns are scalars f_x on the common support. A cover x -> y inside
    both supports forces f_x = f_y; a cover leaving M's support but staying
    in N's forces f_x = 0, and one entering N's support inside M's forces
    f_y = 0.
    """
    P = M.poset
    common = M.support & N.support
    uf = _UnionFind(common)
    zero = set()
    for x, y in P.covers:
        mx, my, nx_, ny = x in M.support, y in M.support, x in N.support, y in N.support
        if mx and my and nx_ and ny:
            uf.union(x, y)
        elif mx and my and ny and not nx_:
            zero.add(y)
        elif mx and not my and nx_ and ny:
            zero.add(x)
    dead = {uf.find(x) for x in zero}
    comps: dict = {}
    for x in common:
        r = uf.find(x)
        if r not in dead:
            comps.setdefault(r, set()).add(x)
    return sorted((frozenset(c) for c in comps.values()), key=_support_key)


def hom_dim_modules(M, N) -> int:
    if isinstance(M, ThinModule) and isinstance(N, ThinModule):
        return len(thin_hom_basis(M, N))
    return hom_dim_general(M, N)


def hom_dim_general(M: GenModule | ThinModule, N: GenModule | ThinModule) -> int:
    """Dimension of the space of families (f_x) commuting with all cover maps,
    by exact rational linear algebra."""
    M = M.to_gen() if isinstance(M, ThinModule) else M
    N = N.to_gen() if isinstance(N, ThinModule) else N
    P = M.poset
    offset, ncols = {}, 0
    for x in P.elements:
        offset[x] = ncols
        ncols += N.dims[x] * M.dims[x]
    if ncols == 0:
        return 0

    def var(x, i, j):  # entry (i, j) of f_x: M_x -> N_x
        return offset[x] + i * M.dims[x] + j

    rows = []
    for x, y in P.covers:
        hm, hn = M.maps[(x, y)], N.maps[(x, y)]
        # (f_y hm - hn f_x)[i, j] = 0
        for i in range(N.dims[y]):
            for j in range(M.dims[x]):
                row = [Fraction(0)] * ncols
                for k in range(M.dims[y]):
                    if hm[k][j]:
                        row[var(y, i, k)] += hm[k][j]
                for k in range(N.dims[x]):
                    if hn[i][k]:
                        row[var(x, k, j)] -= hn[i][k]
                if any(row):
                    rows.append(row)
    return nullity(rows, ncols)


def composite_nonzero_modules(L: ThinModule, M: ThinModule, N: ThinModule) -> bool:
    """Whether basis maps L -> M -> N compose to a nonzero map (1-dim Homs)."""
    a, b = thin_hom_basis(L, M), thin_hom_basis(M, N)
    if len(a) != 1 or len(b) != 1:
        raise ValueError("composition test needs one-dimensional Hom spaces")
    return bool(a[0] & b[0])


@dataclass(frozen=True)
class ModArQuiver:
    vertices: tuple
    arrows: tuple


def ar_quiver_modsp(mods: list[ThinModule]) -> ModArQuiver:
    """Irreducible maps among indecomposables with one-dimensional Homs: a
    nonzero map is irreducible unless it factors through a third object."""
    supports = [m.support for m in mods]
    basis = {}
    for i, j in ((i, j) for i in range(len(mods)) for j in range(len(mods)) if i != j):
        b = thin_hom_basis(mods[i], mods[j])
        if len(b) > 1:
            raise ValueError("Hom of dimension > 1 between thin modules")
        if b:
            basis[(i, j)] = b[0]
    arrows = []
    for (i, j), d in basis.items():
        factors = any(
            (i, k) in basis and (k, j) in basis and basis[(i, k)] & basis[(k, j)] & d
            for k in range(len(mods)) if k not in (i, j)
        )
        if not factors:
            arrows.append((supports[i], supports[j]))
    arrows.sort(key=lambda a: (len(a[0]), _support_key(a[0]), len(a[1]), _support_key(a[1])))
    return ModArQuiver(tuple(supports), tuple(arrows))
