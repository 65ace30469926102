"""Random planar networks and weightings for property tests and the CLI."""

from __future__ import annotations

import random
from fractions import Fraction

from .network import (
    Edge,
    PlanarNetwork,
    Vertex,
    Weighting,
    build_network,
)
from .tropical import NEG_INF


def _orient(p, q, r) -> int:
    det = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (det > 0) - (det < 0)


def _blocked(p, q, placed, points) -> bool:
    """Would segment pq touch a placed segment or a vertex anywhere but a shared end?

    Coordinates are integers here, so every predicate is exact and cheap.
    """
    for a, b in placed:
        if max(p[0], a[0]) > min(q[0], b[0]):
            continue
        o1, o2 = _orient(p, q, a), _orient(p, q, b)
        o3, o4 = _orient(a, b, p), _orient(a, b, q)
        if o1 == o2 == o3 == o4 == 0:
            if max(p[0], a[0]) < min(q[0], b[0]):
                return True
            continue
        if {p, q} & {a, b}:
            continue
        if o1 * o2 <= 0 and o3 * o4 <= 0:
            return True
    for r in points:
        if r in (p, q) or not (p[0] < r[0] < q[0]):
            continue
        if _orient(p, q, r) == 0:
            return True
    return False


def random_network(rng: random.Random, rank: int = 3, max_edges: int = 14,
                   internal: int = 5, width: int = 6) -> PlanarNetwork:
    """A rank-``rank`` network with at most ``max_edges`` edges on ``[0, width]``."""
    verts = [Vertex(j - 1, Fraction(0), Fraction(j)) for j in range(1, rank + 1)]
    verts += [Vertex(rank + j - 1, Fraction(width), Fraction(j)) for j in range(1, rank + 1)]
    taken = {v.point for v in verts}
    for _ in range(internal):
        for _attempt in range(20):
            pt = (Fraction(rng.randint(1, width - 1)),
                  Fraction(rng.randint(2, 2 * rank)) / 2)
            if pt not in taken:
                taken.add(pt)
                verts.append(Vertex(len(verts), *pt))
                break
    # doubled coordinates are integers
    pos = {v.id: (int(2 * v.x), int(2 * v.y)) for v in verts}
    cands = [(u.id, v.id) for u in verts for v in verts
             if u.x < v.x and u.x != width and v.x != 0]
    rng.shuffle(cands)
    placed, edges = [], []
    points = list(pos.values())
    for u, v in cands:
        if len(edges) >= max_edges:
            break
        if _blocked(pos[u], pos[v], placed, points):
            continue
        placed.append((pos[u], pos[v]))
        edges.append(Edge(len(edges), u, v))
    return build_network(0, width, verts, edges, rank=rank, validate=False)


def random_weighting(net: PlanarNetwork, rng: random.Random, lo: int = -9, hi: int = 9,
                     denominators=(1, 2, 3), neg_inf: float = 0.0) -> Weighting:
    w = {}
    for e in net.edge_ids:
        if neg_inf and rng.random() < neg_inf:
            w[e] = NEG_INF
        else:
            w[e] = Fraction(rng.randint(lo, hi), rng.choice(denominators))
    return Weighting(w)


def subdivide(net: PlanarNetwork, w, rng: random.Random, max_cuts: int = 2):
    """Insert degree-(1,1) vertices on random edges, splitting weights at random.

    A cut point is placed strictly inside an edge; weights of the two pieces add
    up to the original weight.
    """
    verts = list(net.vertices)
    edges = []
    weights = {}
    next_v = max((v.id for v in verts), default=-1) + 1
    next_e = max(net.edge_ids, default=-1) + 1
    for e in net.edges:
        cuts = rng.randint(0, max_cuts)
        p, q = net.vertex(e.tail).point, net.vertex(e.head).point
        ts = sorted({Fraction(rng.randint(1, 99), 100) for _ in range(cuts)})
        chain = [e.tail]
        for t in ts:
            verts.append(Vertex(next_v, p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
            chain.append(next_v)
            next_v += 1
        chain.append(e.head)
        total = w[e.id]
        pieces = len(chain) - 1
        for j, (u, v) in enumerate(zip(chain, chain[1:])):
            eid = e.id if j == 0 else next_e
            if j:
                next_e += 1
            edges.append(Edge(eid, u, v))
            if total == NEG_INF:
                weights[eid] = NEG_INF if j == 0 else Fraction(0)
            elif j < pieces - 1:
                weights[eid] = Fraction(rng.randint(-5, 5))
            else:
                weights[eid] = total - sum(weights[x.id] for x in edges[-pieces:-1])
    return build_network(net.a, net.b, verts, edges, middle=net.middle), Weighting(weights)
