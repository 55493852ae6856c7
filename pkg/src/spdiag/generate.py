"""Instance generators for sweeps: orientations, alien sets and host posets."""
from __future__ import annotations

import random
from itertools import product
from typing import Iterator

from .poset import Poset, forbidden_template, validate_alien_set
from .quiver import Quiver, path_quiver


def orientations(n: int) -> Iterator[Quiver]:
    """Every orientation of the path 1 - 2 - ... - n."""
    for o in product("><", repeat=n - 1):
        yield path_quiver("".join(o))


def alien_candidates(Q: Quiver) -> list[tuple]:
    """Arrows s -> t (s != t, not already in Q) inside one injective support
    whose target is allowed by the source clause."""
    arrows = set(Q.arrows)
    sources = set(Q.sources())
    out = set()
    for z in Q.sinks():
        sup = Q.reaching(z)
        for s in sup:
            for t in sup:
                if s == t or (s, t) in arrows or (t, s) in arrows:
                    continue
                if t in sources and not Q.is_extremal(t):
                    continue
                out.add((s, t))
    return sorted(out)


def all_alien_sets(Q: Quiver) -> Iterator[tuple]:
    """Every alien set for Q, by backtracking over candidate arrows.

    Adding arrows never removes paths or cycles, so an invalid partial set
    can be discarded together with all its supersets.
    """
    cands = alien_candidates(Q)

    def extend(start: int, chosen: tuple):
        yield chosen
        for i in range(start, len(cands)):
            nxt = chosen + (cands[i],)
            if validate_alien_set(Q, nxt):
                yield from extend(i + 1, nxt)

    yield from extend(0, ())


def random_alien_set(Q: Quiver, rng: random.Random) -> tuple:
    cands = alien_candidates(Q)
    rng.shuffle(cands)
    keep = rng.randint(0, len(cands))
    chosen: tuple = ()
    for a in cands[:keep]:
        if validate_alien_set(Q, chosen + (a,)):
            chosen += (a,)
    return chosen


def random_instance(rng: random.Random, max_n: int = 7) -> tuple[Quiver, tuple]:
    n = rng.randint(1, max_n)
    Q = path_quiver("".join(rng.choice("><") for _ in range(n - 1)))
    return Q, random_alien_set(Q, rng)


def sweep_instances(exhaustive_n: int = 5, random_cases: int = 200, random_max_n: int = 7,
                    seed: int = 0) -> list[tuple[Quiver, tuple]]:
    """All (Q, F) for n <= exhaustive_n plus seeded random ones up to random_max_n."""
    out = []
    for n in range(1, exhaustive_n + 1):
        for Q in orientations(n):
            for F in all_alien_sets(Q):
                out.append((Q, F))
    rng = random.Random(seed)
    for _ in range(random_cases):
        out.append(random_instance(rng, random_max_n))
    return out


def random_poset(rng: random.Random, size: int, density: float = 0.3, prefix: str = "h") -> Poset:
    labels = [f"{prefix}{i}" for i in range(size)]
    rels = [(labels[i], labels[j]) for i in range(size) for j in range(i + 1, size)
            if rng.random() < density]
    return Poset.from_covers(labels, rels)


def embed_as_peak_subposet(template: Poset, rng: random.Random, host_size: int = 6) -> Poset:
    """A connected poset containing ``template`` as a peak-subposet.

    Host elements are only ever placed below template elements, so the order
    among template elements and the maximality of its maxima are unchanged.
    """
    host = random_poset(rng, host_size)
    covers = list(host.covers) + list(template.covers)
    t_elems = list(template.elements)
    for comp in _components(host):
        h = rng.choice(sorted(comp))
        covers.append((h, rng.choice(t_elems)))
    for h in host.elements:
        if rng.random() < 0.3:
            covers.append((h, rng.choice(t_elems)))
    return Poset.from_covers(list(host.elements) + t_elems, covers)


def _components(P: Poset) -> list[set]:
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(P.elements)
    g.add_edges_from(P.covers)
    return [set(c) for c in nx.connected_components(g)]


def template_hosts(family: str, m: int, count: int, seed: int = 0) -> list[Poset]:
    rng = random.Random(f"{family}-{m}-{seed}")
    t = forbidden_template(family, m)
    return [embed_as_peak_subposet(t, rng, rng.randint(1, 8)) for _ in range(count)]
