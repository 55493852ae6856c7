"""Cluster algebras of type A with trivial coefficients.

Seeds carry exact Laurent polynomials in the initial cluster and a
skew-symmetric exchange matrix. Cluster variables are matched with polygon
diagonals through their denominator vectors.
"""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .diagcat import non_t_diagonals, sp_diagonals, support
from .errors import IdentityFailed, InvalidInput
from .laurent import LaurentPoly
from .polygon import Diagonal, Triangulation, triangulation_from_quiver
from .quiver import Quiver

PRIME = 2_147_483_647  # 2^31 - 1: products of residues fit in int64


# -- seeds -------------------------------------------------------------------

def exchange_matrix(Q: Quiver) -> tuple[tuple[int, ...], ...]:
    """b[i][j] = #(i -> j) - #(j -> i), indexed by sorted vertex labels."""
    idx = {v: i for i, v in enumerate(Q.vertices)}
    n = Q.n
    b = [[0] * n for _ in range(n)]
    for s, t in Q.arrows:
        if s == t:
            raise InvalidInput("loops are not allowed in a seed quiver")
        b[idx[s]][idx[t]] += 1
        b[idx[t]][idx[s]] -= 1
    return tuple(tuple(r) for r in b)


@dataclass(frozen=True)
class Seed:
    labels: tuple
    variables: tuple[LaurentPoly, ...]
    B: tuple[tuple[int, ...], ...]

    @classmethod
    def initial(cls, Q: Quiver) -> "Seed":
        n = Q.n
        xs = tuple(LaurentPoly.var(i, n) for i in range(n))
        return cls(Q.vertices, xs, exchange_matrix(Q))

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, k) -> int:
        try:
            return self.labels.index(k)
        except ValueError as exc:
            raise InvalidInput(f"{k} is not a seed vertex") from exc

    def quiver(self) -> Quiver:
        arrows = []
        for i in range(self.n):
            for j in range(self.n):
                arrows.extend([(self.labels[i], self.labels[j])] * max(self.B[i][j], 0))
        return Quiver(self.labels, tuple(arrows))

    def exchange_terms(self, k) -> tuple[LaurentPoly, LaurentPoly]:
        """(p-, p+): products over arrows into and out of k."""
        i = self.index(k)
        one = LaurentPoly.const(1, self.n)
        pm, pp = one, one
        for j in range(self.n):
            b = self.B[j][i]
            if b > 0:
                pm = pm * self.variables[j] ** b
            elif b < 0:
                pp = pp * self.variables[j] ** (-b)
        return pm, pp

    def cluster(self) -> frozenset:
        return frozenset(self.variables)


def mutate(s: Seed, k) -> Seed:
    """Exchange x_k for (p- + p+) / x_k and mutate the exchange matrix at k."""
    i = s.index(k)
    pm, pp = s.exchange_terms(k)
    new = (pm + pp).exact_div(s.variables[i])
    B = s.B
    n = s.n
    nb = [[0] * n for _ in range(n)]
    for a in range(n):
        for c in range(n):
            if a == i or c == i:
                nb[a][c] = -B[a][c]
            else:
                nb[a][c] = B[a][c] + (abs(B[a][i]) * B[i][c] + B[a][i] * abs(B[i][c])) // 2
    xs = list(s.variables)
    xs[i] = new
    return Seed(s.labels, tuple(xs), tuple(tuple(r) for r in nb))


# -- cluster variables ---------------------------------------------------

class ClusterVariable(NamedTuple):
    poly: LaurentPoly
    d_vector: tuple[int, ...]
    diagonal: Diagonal


@dataclass(frozen=True)
class ClusterVariableTable:
    quiver: Quiver
    triangulation: Triangulation
    entries: tuple[ClusterVariable, ...]

    def by_diagonal(self) -> dict:
        return {e.diagonal: e.poly for e in self.entries}

    def by_d_vector(self) -> dict:
        return {e.d_vector: e for e in self.entries}

    def to_json(self) -> list[dict]:
        return [{"d_vector": list(e.d_vector), "diagonal": list(e.diagonal),
                 "num_terms": e.poly.num_terms(), "laurent": str(e.poly)} for e in self.entries]


def crossing_vector(g, T: Triangulation) -> tuple[int, ...]:
    s = support(g, T)
    return tuple(int(l in s) for l in T.labels)


def all_cluster_variables(Q: Quiver, max_n: int = 9) -> ClusterVariableTable:
    """Breadth-first search over seeds, identified by their unordered clusters."""
    if Q.n > max_n:
        raise InvalidInput(f"n = {Q.n} exceeds the limit {max_n}")
    T = triangulation_from_quiver(Q)
    start = Seed.initial(Q)
    seen = {start.cluster()}
    queue = deque([start])
    variables = set(start.variables)
    while queue:
        s = queue.popleft()
        for k in s.labels:
            t = mutate(s, k)
            c = t.cluster()
            if c not in seen:
                seen.add(c)
                variables.update(t.variables)
                queue.append(t)
    by_vec = {}
    for i, l in enumerate(T.labels):
        e = [0] * Q.n
        e[i] = -1
        by_vec[tuple(e)] = T.tau(l)
    for g in non_t_diagonals(T):
        v = crossing_vector(g, T)
        if v in by_vec:
            raise AssertionError("two diagonals share a crossing vector")
        by_vec[v] = g
    entries = []
    for x in variables:
        d = x.d_vector()
        if d not in by_vec:
            raise AssertionError(f"no diagonal with crossing vector {d}")
        entries.append(ClusterVariable(x, d, by_vec[d]))
    entries.sort(key=lambda e: e.d_vector)
    if len({e.d_vector for e in entries}) != len(entries):
        raise AssertionError("two cluster variables share a d-vector")
    return ClusterVariableTable(Q, T, tuple(entries))


def projective_variables(Q: Quiver, table: ClusterVariableTable | None = None) -> dict:
    """Variables x_P attached to the indecomposable projectives P_i.

    x_P_i is the variable whose d-vector is the indicator of the vertices
    reachable from i. The knitting identity
    ``x_P_t * x_t = 1 + p-_t * prod_{t -> r} x_P_r`` is checked for every
    non-sink t, and x_P_z is checked against the one-step mutation at each
    sink z.
    """
    table = all_cluster_variables(Q) if table is None else table
    vecs = table.by_d_vector()
    labels = Q.vertices
    xp = {}
    for v in labels:
        reach = Q.reachable_from(v)
        xp[v] = vecs[tuple(int(l in reach) for l in labels)].poly
    seed = Seed.initial(Q)
    for t in labels:
        succ = Q.successors(t)
        if not succ:
            if mutate(seed, t).variables[seed.index(t)] != xp[t]:
                raise IdentityFailed("sink projective differs from the mutated variable", t)
            continue
        if not knitting_identity_holds(Q, xp, t):
            raise IdentityFailed("knitting identity fails", t)
    return xp


def knitting_identity_holds(Q: Quiver, xp: Mapping, t) -> bool:
    seed = Seed.initial(Q)
    pm, _ = seed.exchange_terms(t)
    rhs = pm
    for r in Q.successors(t):
        rhs = rhs * xp[r]
    return xp[t] * seed.variables[seed.index(t)] == 1 + rhs


def leaf_identity_holds(Q: Quiver, xp: Mapping, w) -> bool:
    """x_w * x_P_w == 1 + x_P_t for a source w of degree one with arrow w -> t."""
    (t,) = Q.successors(w)
    x_w = Seed.initial(Q).variables[Q.vertices.index(w)]
    return x_w * xp[w] == 1 + xp[t]


def leaf_sources(Q: Quiver) -> list:
    return [w for w in Q.vertices if not Q.predecessors(w) and len(Q.successors(w)) == 1]


# -- the subalgebra and membership --------------------------------------------

def subalgebra_generators(T: Triangulation, F: Iterable[tuple], table: ClusterVariableTable) -> dict:
    """Initial variables plus the variables of all sp-diagonals, keyed by name."""
    gens = {}
    n = T.n
    for i, l in enumerate(T.labels):
        gens[f"x{l}"] = LaurentPoly.var(i, n)
    by_diag = table.by_diagonal()
    for o in sp_diagonals(T, F):
        gens[f"x{tuple(o.diagonal)}".replace(" ", "")] = by_diag[o.diagonal]
    return gens


@dataclass(frozen=True)
class Certificate:
    """f = sum of coeff * prod gens[name]^k over ``terms``."""

    terms: tuple[tuple[Fraction, tuple[tuple[str, int], ...]], ...]
    degree: int

    def denominator(self) -> int:
        return math.lcm(*(c.denominator for c, _ in self.terms)) if self.terms else 1

    def scaled_value(self, gens: Mapping[str, LaurentPoly], n: int) -> LaurentPoly:
        """The expression multiplied by the lcm of its coefficient denominators."""
        D = self.denominator()
        total = LaurentPoly(n)
        for coeff, mono in self.terms:
            term = LaurentPoly.const(int(coeff * D), n)
            for name, k in mono:
                term = term * gens[name] ** k
            total = total + term
        return total

    def holds_for(self, f: LaurentPoly, gens: Mapping[str, LaurentPoly]) -> bool:
        return self.scaled_value(gens, f.n) == self.denominator() * f

    def __str__(self) -> str:
        parts = []
        for c, mono in self.terms:
            m = "*".join(name if k == 1 else f"{name}^{k}" for name, k in mono)
            if not m:
                parts.append(str(c))
            elif c in (1, -1):
                parts.append(m if c == 1 else "-" + m)
            else:
                parts.append(f"{c}*{m}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_json(self) -> dict:
        return {"degree": self.degree, "expression": str(self)}


def _solve_mod_p(A: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of A c = rhs over GF(p) with free variables zero, or None."""
    M = np.concatenate([A % p, (rhs % p)[:, None]], axis=1).astype(np.int64)
    rows, cols = M.shape[0], M.shape[1] - 1
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if not len(nz):
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = M[r] * pow(int(M[r, c]), -1, p) % p
        col = M[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if len(nzr):
            M[nzr] = (M[nzr] - (col[nzr, None] * M[r][None, :]) % p) % p
        pivots.append(c)
        r += 1
    if np.any(M[r:, cols] != 0):
        return None
    sol = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        sol[c] = M[i, cols]
    return sol


def rational_reconstruction(a: int, p: int) -> Fraction | None:
    """Fraction u/v with |u|, v <= sqrt(p/2) and u = a v mod p, if one exists."""
    bound = int((p // 2) ** 0.5)
    r0, r1 = p, a % p
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def _monomials(k: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for d in range(degree + 1):
        out.extend(combinations_with_replacement(range(k), d))
    return out


def membership_check(f: LaurentPoly, gens: Mapping[str, LaurentPoly], degree_bound: int,
                     seed: int = 0, p: int = PRIME) -> Certificate | None:
    """Search a polynomial expression of f in the generators of total degree
    at most ``degree_bound``.

    Products of generators are evaluated at random points modulo p; a
    solution of the linear system is lifted to rationals and then checked as
    an exact Laurent identity. Degrees are tried in increasing order and the
    first verified expression is returned. None means inconclusive.
    """
    if degree_bound < 1:
        raise InvalidInput("degree bound must be at least 1")
    names = sorted(gens)
    polys = [gens[k] for k in names]
    rng = random.Random(seed)
    n = f.n
    for degree in range(1, degree_bound + 1):
        monos = _monomials(len(names), degree)
        npts = len(monos) + 16
        pts = [[rng.randrange(1, p) for _ in range(n)] for _ in range(npts)]
        gvals = np.array([[g.evaluate_mod(pt, p) for g in polys] for pt in pts], dtype=np.int64)
        A = np.empty((npts, len(monos)), dtype=np.int64)
        for j, mono in enumerate(monos):
            col = np.ones(npts, dtype=np.int64)
            for g in mono:
                col = col * gvals[:, g] % p
            A[:, j] = col
        rhs = np.array([f.evaluate_mod(pt, p) for pt in pts], dtype=np.int64)
        sol = _solve_mod_p(A, rhs, p)
        if sol is None:
            continue
        terms = []
        for j in np.nonzero(sol)[0]:
            c = rational_reconstruction(int(sol[j]), p)
            if c is None:
                terms = None
                break
            mono = monos[j]
            counts = tuple((names[g], mono.count(g)) for g in sorted(set(mono)))
            terms.append((c, counts))
        if terms is None:
            continue
        cert = Certificate(tuple(terms), degree)
        if cert.holds_for(f, gens):
            return cert
    return None


def verify_generation(Q: Quiver, F: Iterable[tuple] = (), degree_bound: int = 6,
                      seed: int = 0) -> dict:
    """Certify that every one-step mutation x'_k of the initial cluster lies in
    the subalgebra generated by the initial variables and the sp-diagonal
    variables."""
    F = tuple(tuple(a) for a in F)
    table = all_cluster_variables(Q)
    T = table.triangulation
    gens = subalgebra_generators(T, F, table)
    report = {"quiver": [list(a) for a in Q.arrows], "alien": [list(a) for a in F],
              "num_generators": len(gens), "identities": {}, "mutations": []}
    if not F:
        xp = projective_variables(Q, table)
        report["identities"] = {
            "knitting": {str(t): knitting_identity_holds(Q, xp, t) for t in Q.vertices if Q.successors(t)},
            "leaf": {str(w): leaf_identity_holds(Q, xp, w) for w in leaf_sources(Q)},
        }
    s0 = Seed.initial(Q)
    for k in Q.vertices:
        xk = mutate(s0, k).variables[s0.index(k)]
        cert = membership_check(xk, gens, degree_bound, seed=seed)
        report["mutations"].append({
            "vertex": k,
            "certified": cert is not None,
            "degree": cert.degree if cert else None,
            "certificate": str(cert) if cert else f"inconclusive at bound {degree_bound}",
        })
    report["all_certified"] = all(m["certified"] for m in report["mutations"])
    return report
