"""Planar networks embedded in a vertical strip.

A network is a finite graph drawn in ``a <= x <= b`` with straight,
never-vertical edges, oriented left to right.  Vertices on ``x = a`` are
sources, vertices on ``x = b`` are sinks.  Edges produced by contracting
degree-(1,1) vertices keep the removed points as ``via`` bends, so every
network in this package remains a genuine embedding.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Optional

from .errors import (
    CrossingEdges,
    DuplicateId,
    IncompleteWeighting,
    InvalidRank,
    KOutOfRange,
    NetworkError,
    NotComposable,
    NOutOfRange,
    RankMissing,
    VertexOutsideStrip,
    VerticalEdge,
)
from .tropical import Weight, to_weight

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Vertex:
    id: int
    x: Fraction
    y: Fraction

    @property
    def point(self) -> Point:
        return (self.x, self.y)


@dataclass(frozen=True)
class Edge:
    id: int
    tail: int
    head: int
    multiplicity: int = 1
    via: tuple[Point, ...] = ()


@dataclass(frozen=True)
class PlanarNetwork:
    a: Fraction
    b: Fraction
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    rank: Optional[int] = None
    middle: Optional[Fraction] = None

    # -- lookups -----------------------------------------------------------
    @cached_property
    def _vertex_map(self) -> dict[int, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def _edge_map(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _out(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            out[e.tail].append(e.id)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def _in(self) -> dict[int, tuple[int, ...]]:
        inc: dict[int, list[int]] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            inc[e.head].append(e.id)
        return {k: tuple(v) for k, v in inc.items()}

    def vertex(self, vid: int) -> Vertex:
        return self._vertex_map[vid]

    def edge(self, eid: int) -> Edge:
        return self._edge_map[eid]

    def has_edge(self, eid: int) -> bool:
        return eid in self._edge_map

    def out_edges(self, vid: int) -> tuple[int, ...]:
        return self._out[vid]

    def in_edges(self, vid: int) -> tuple[int, ...]:
        return self._in[vid]

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e.id for e in self.edges)

    @cached_property
    def sources(self) -> tuple[Vertex, ...]:
        """Vertices on ``x = a``, bottom to top."""
        return tuple(sorted((v for v in self.vertices if v.x == self.a), key=lambda v: v.y))

    @cached_property
    def sinks(self) -> tuple[Vertex, ...]:
        return tuple(sorted((v for v in self.vertices if v.x == self.b), key=lambda v: v.y))

    @cached_property
    def middle_vertices(self) -> tuple[Vertex, ...]:
        if self.middle is None:
            return ()
        return tuple(sorted((v for v in self.vertices if v.x == self.middle), key=lambda v: v.y))

    def source_at(self, y) -> Vertex:
        for v in self.sources:
            if v.y == y:
                return v
        raise KeyError(f"no source at height {y}")

    def sink_at(self, y) -> Vertex:
        for v in self.sinks:
            if v.y == y:
                return v
        raise KeyError(f"no sink at height {y}")

    def is_boundary(self, vid: int) -> bool:
        x = self.vertex(vid).x
        return x == self.a or x == self.b

    def edge_points(self, eid: int) -> tuple[Point, ...]:
        """Polyline of the embedded edge, tail first."""
        e = self.edge(eid)
        return (self.vertex(e.tail).point, *e.via, self.vertex(e.head).point)

    def __repr__(self) -> str:
        return (f"PlanarNetwork(strip=[{self.a}, {self.b}], |V|={len(self.vertices)}, "
                f"|E|={len(self.edges)}, rank={self.rank})")


class Weighting(Mapping):
    """Immutable map edge id -> tropical number."""

    def __init__(self, weights: Mapping | Iterable = ()):
        items = weights.items() if isinstance(weights, Mapping) else weights
        self._w = {int(k): to_weight(v) for k, v in items}

    def __getitem__(self, eid: int) -> Weight:
        return self._w[eid]

    def __iter__(self) -> Iterator[int]:
        return iter(self._w)

    def __len__(self) -> int:
        return len(self._w)

    def __eq__(self, other) -> bool:
        if isinstance(other, Weighting):
            return self._w == other._w
        if isinstance(other, Mapping):
            return self._w == dict(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._w.items()))

    def __repr__(self) -> str:
        return f"Weighting({self._w!r})"

    def check_total(self, net: PlanarNetwork) -> None:
        missing = [e for e in net.edge_ids if e not in self._w]
        if missing:
            raise IncompleteWeighting(f"weighting misses edges {missing[:10]}")

    def replace(self, updates: Mapping) -> "Weighting":
        merged = dict(self._w)
        merged.update({int(k): to_weight(v) for k, v in updates.items()})
        return Weighting(merged)


def zero_weighting(net: PlanarNetwork) -> Weighting:
    return Weighting({e: Fraction(0) for e in net.edge_ids})


# -- geometry ----------------------------------------------------------------

def _orient(p: Point, q: Point, r: Point) -> int:
    det = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (det > 0) - (det < 0)


def _on_segment(p: Point, q: Point, r: Point) -> bool:
    """r lies on the closed segment pq (assuming collinearity)."""
    return (min(p[0], q[0]) <= r[0] <= max(p[0], q[0])
            and min(p[1], q[1]) <= r[1] <= max(p[1], q[1]))


def segment_intersection(p1: Point, p2: Point, q1: Point, q2: Point) -> Optional[list[Point]]:
    """Intersection of two closed segments: None, one point, or two points (overlap)."""
    if (max(p1[0], p2[0]) < min(q1[0], q2[0]) or max(q1[0], q2[0]) < min(p1[0], p2[0])
            or max(p1[1], p2[1]) < min(q1[1], q2[1]) or max(q1[1], q2[1]) < min(p1[1], p2[1])):
        return None
    o1, o2 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    o3, o4 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    if o1 == o2 == o3 == o4 == 0:
        pts = sorted({pt for pt in (p1, p2, q1, q2)
                      if _on_segment(p1, p2, pt) and _on_segment(q1, q2, pt)})
        if not pts:
            return None
        return [pts[0], pts[-1]] if len(pts) > 1 else pts
    if o1 != o2 and o3 != o4:
        # unique point; solve p1 + t (p2 - p1) on line q
        dx1, dy1 = p2[0] - p1[0], p2[1] - p1[1]
        dx2, dy2 = q2[0] - q1[0], q2[1] - q1[1]
        den = dx1 * dy2 - dy1 * dx2
        t = ((q1[0] - p1[0]) * dy2 - (q1[1] - p1[1]) * dx2) / den
        return [(p1[0] + t * dx1, p1[1] + t * dy1)]
    for r, (s, e) in ((q1, (p1, p2)), (q2, (p1, p2)), (p1, (q1, q2)), (p2, (q1, q2))):
        if _orient(s, e, r) == 0 and _on_segment(s, e, r):
            return [r]
    return None


def _check_embedding(net: PlanarNetwork) -> None:
    segs = []  # (edge id, p, q)
    for e in net.edges:
        pts = net.edge_points(e.id)
        for p, q in zip(pts, pts[1:]):
            if p[0] == q[0]:
                raise VerticalEdge(f"edge {e.id} has a vertical segment at x={p[0]}")
            if p[0] > q[0]:
                raise VerticalEdge(f"edge {e.id} bends backwards at x={p[0]}")
            segs.append((e.id, p, q))
    # vertices must not sit inside foreign edges
    for v in net.vertices:
        for eid, p, q in segs:
            e = net.edge(eid)
            if v.id in (e.tail, e.head):
                continue
            if not (min(p[0], q[0]) <= v.x <= max(p[0], q[0])):
                continue
            if _orient(p, q, v.point) == 0 and _on_segment(p, q, v.point):
                raise CrossingEdges(eid, f"vertex {v.id}", "vertex lies on edge interior")
    segs.sort(key=lambda s: s[1][0])
    for idx, (e1, p1, q1) in enumerate(segs):
        for e2, p2, q2 in segs[idx + 1:]:
            if p2[0] > q1[0]:
                break
            if e1 == e2:
                continue
            hit = segment_intersection(p1, q1, p2, q2)
            if hit is None:
                continue
            a, b = net.edge(e1), net.edge(e2)
            shared = {net.vertex(x).point for x in {a.tail, a.head} & {b.tail, b.head}}
            if len(hit) > 1 or hit[0] not in shared:
                raise CrossingEdges(e1, e2)


def _infer_rank(net: PlanarNetwork) -> Optional[int]:
    ys_src = [v.y for v in net.sources]
    ys_snk = [v.y for v in net.sinks]
    n = len(ys_src)
    if n == 0 or len(ys_snk) != n:
        return None
    expect = [Fraction(j) for j in range(1, n + 1)]
    if ys_src == expect and ys_snk == expect:
        return n
    return None


def build_network(a, b, vertices, edges, rank: Optional[int] = None,
                  middle=None, validate: bool = True) -> PlanarNetwork:
    """Validate raw vertex/edge data and return a :class:`PlanarNetwork`.

    ``vertices`` holds ``(id, x, y)`` triples or :class:`Vertex` objects and
    ``edges`` holds ``(id, u, v)`` triples or :class:`Edge` objects.  Edge
    orientation is taken from the embedding, so ``u``/``v`` may come in either
    order.  The rank is inferred when the boundary heights are ``1..n``.
    """
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise NetworkError(f"strip bounds must satisfy a < b, got [{a}, {b}]")
    vs: list[Vertex] = []
    for v in vertices:
        if not isinstance(v, Vertex):
            vid, x, y = v
            v = Vertex(int(vid), Fraction(x), Fraction(y))
        vs.append(v)
    ids = [v.id for v in vs]
    if len(set(ids)) != len(ids):
        raise DuplicateId("duplicate vertex id")
    if len({v.point for v in vs}) != len(vs):
        raise DuplicateId("two vertices share a position")
    for v in vs:
        if not a <= v.x <= b:
            raise VertexOutsideStrip(f"vertex {v.id} at x={v.x} outside [{a}, {b}]")
    pos = {v.id: v for v in vs}

    es: list[Edge] = []
    for e in edges:
        if not isinstance(e, Edge):
            eid, u, w = e[:3]
            e = Edge(int(eid), int(u), int(w))
        if e.tail not in pos or e.head not in pos:
            raise NetworkError(f"edge {e.id} references an unknown vertex")
        if e.multiplicity < 1:
            raise NetworkError(f"edge {e.id} has multiplicity {e.multiplicity}")
        tx, hx = pos[e.tail].x, pos[e.head].x
        if tx == hx and not e.via:
            raise VerticalEdge(f"edge {e.id} is parallel to the y-axis")
        if tx > hx:
            e = Edge(e.id, e.head, e.tail, e.multiplicity, tuple(reversed(e.via)))
        es.append(e)
    eids = [e.id for e in es]
    if len(set(eids)) != len(eids):
        raise DuplicateId("duplicate edge id")

    vs.sort(key=lambda v: v.id)
    es.sort(key=lambda e: e.id)
    middle = None if middle is None else Fraction(middle)
    net = PlanarNetwork(a, b, tuple(vs), tuple(es), None, middle)
    if validate:
        _check_embedding(net)
    inferred = _infer_rank(net)
    if rank is not None and rank != inferred:
        raise InvalidRank(f"boundary heights do not match rank {rank}")
    return PlanarNetwork(a, b, net.vertices, net.edges, inferred, middle)


def _rebuild(net: PlanarNetwork, vertices, edges, a=None, b=None, middle="keep",
             validate=False) -> PlanarNetwork:
    mid = net.middle if middle == "keep" else middle
    return build_network(net.a if a is None else a, net.b if b is None else b,
                         vertices, edges, middle=mid, validate=validate)


def subnetwork(net: PlanarNetwork, edge_ids: Iterable[int], keep_all_vertices=True) -> PlanarNetwork:
    """Subgraph with the given edges (ids preserved) and the same strip."""
    keep = set(edge_ids)
    edges = [e for e in net.edges if e.id in keep]
    if keep_all_vertices:
        verts = net.vertices
    else:
        used = {e.tail for e in edges} | {e.head for e in edges}
        verts = [v for v in net.vertices if v.id in used]
    return _rebuild(net, verts, edges)


def truncate(net: PlanarNetwork, k: int) -> PlanarNetwork:
    """The subnetwork forgetting sources and sinks above height ``k``."""
    if net.rank is None:
        raise RankMissing("truncation needs a network of known rank")
    if not 0 <= k <= net.rank:
        raise KOutOfRange(f"k={k} outside 0..{net.rank}")
    drop = {v.id for v in net.vertices if (v.x == net.a or v.x == net.b) and v.y > k}
    verts = [v for v in net.vertices if v.id not in drop]
    edges = [e for e in net.edges if e.tail not in drop and e.head not in drop]
    out = _rebuild(net, verts, edges)
    if k > 0 and out.rank != k:  # pragma: no cover - guarded by construction
        raise InvalidRank("truncation lost boundary vertices")
    return out


def edge_offset(net: PlanarNetwork) -> int:
    """Shift applied to the right factor's edge ids by :func:`concatenate`."""
    return max(net.edge_ids, default=-1) + 1


def vertex_offset(net: PlanarNetwork) -> int:
    return max((v.id for v in net.vertices), default=-1) + 1


def concatenate(g: PlanarNetwork, d: PlanarNetwork) -> PlanarNetwork:
    """Glue ``d`` to the right of ``g`` along the line ``x = b(g)``.

    Edge ids of ``g`` are kept; those of ``d`` are shifted by
    :func:`edge_offset` of ``g``.  Each source of ``d`` is merged into the sink
    of ``g`` at the same height.
    """
    if g.b != d.a:
        raise NotComposable(f"strip end {g.b} of the left factor differs from start {d.a}")
    sink_by_y = {v.y: v.id for v in g.sinks}
    voff, eoff = vertex_offset(g), edge_offset(g)
    remap: dict[int, int] = {}
    for v in d.sources:
        if v.y not in sink_by_y:
            raise NotComposable(f"source of the right factor at height {v.y} is not a sink")
        remap[v.id] = sink_by_y[v.y]
    verts = list(g.vertices)
    for v in d.vertices:
        if v.id in remap:
            continue
        remap[v.id] = v.id + voff
        verts.append(Vertex(v.id + voff, v.x, v.y))
    edges = list(g.edges)
    for e in d.edges:
        edges.append(Edge(e.id + eoff, remap[e.tail], remap[e.head], e.multiplicity, e.via))
    return build_network(g.a, d.b, verts, edges, middle=g.b, validate=False)


def split_concatenation(gd: PlanarNetwork) -> tuple[PlanarNetwork, PlanarNetwork]:
    """Left and right factors of a concatenated network (ids preserved)."""
    if gd.middle is None:
        raise NotComposable("network does not record a middle line")
    m = gd.middle
    gv = [v for v in gd.vertices if v.x <= m]
    dv = [v for v in gd.vertices if v.x >= m]
    ge = [e for e in gd.edges if gd.vertex(e.head).x <= m]
    de = [e for e in gd.edges if gd.vertex(e.tail).x >= m]
    g = build_network(gd.a, m, gv, ge, validate=False)
    d = build_network(m, gd.b, dv, de, validate=False)
    return g, d


def shift(net: PlanarNetwork, dx) -> PlanarNetwork:
    dx = Fraction(dx)
    verts = [Vertex(v.id, v.x + dx, v.y) for v in net.vertices]
    edges = [Edge(e.id, e.tail, e.head, e.multiplicity,
                  tuple((p[0] + dx, p[1]) for p in e.via)) for e in net.edges]
    mid = None if net.middle is None else net.middle + dx
    return build_network(net.a + dx, net.b + dx, verts, edges, middle=mid, validate=False)


def reachable_from_sources(net: PlanarNetwork) -> set[int]:
    seen = {v.id for v in net.sources}
    stack = list(seen)
    while stack:
        u = stack.pop()
        for eid in net.out_edges(u):
            h = net.edge(eid).head
            if h not in seen:
                seen.add(h)
                stack.append(h)
    return seen


def simplify(net: PlanarNetwork, w: Optional[Mapping] = None):
    """Drop unreachable internal vertices and contract internal (1,1) vertices.

    A contracted pair of edges keeps the id of the incoming edge and receives
    the sum of the two weights.  Boundary vertices and vertices on a recorded
    middle line are never removed.  Returns ``(network, weighting_or_None)``.
    """
    reach = reachable_from_sources(net)
    protected = {v.id for v in net.vertices
                 if v.x in (net.a, net.b) or (net.middle is not None and v.x == net.middle)}
    keep_v = {v.id for v in net.vertices if v.id in reach or v.id in protected}
    edges = {e.id: e for e in net.edges if e.tail in keep_v and e.tail in reach}
    weights = None if w is None else {eid: w[eid] for eid in edges}

    out_of: dict[int, list[int]] = {v: [] for v in keep_v}
    in_of: dict[int, list[int]] = {v: [] for v in keep_v}
    for e in edges.values():
        out_of[e.tail].append(e.id)
        in_of[e.head].append(e.id)

    for vid in sorted(keep_v):
        if vid in protected or len(in_of[vid]) != 1 or len(out_of[vid]) != 1:
            continue
        e1, e2 = edges[in_of[vid][0]], edges[out_of[vid][0]]
        if e1.id == e2.id:  # pragma: no cover - impossible in a DAG
            continue
        merged = Edge(e1.id, e1.tail, e2.head, e1.multiplicity,
                      e1.via + (net.vertex(vid).point,) + e2.via)
        del edges[e2.id]
        edges[e1.id] = merged
        out_of[e1.tail] = [x for x in out_of[e1.tail]]  # e1 id unchanged
        in_of[e2.head] = [e1.id if x == e2.id else x for x in in_of[e2.head]]
        in_of[vid], out_of[vid] = [], []
        keep_v.discard(vid)
        if weights is not None:
            weights[e1.id] = weights[e1.id] + weights.pop(e2.id)

    verts = [v for v in net.vertices if v.id in keep_v]
    out = _rebuild(net, verts, list(edges.values()))
    return out, (None if weights is None else Weighting(weights))


# -- canonical networks -------------------------------------------------------

def gamma0_slant_x(n: int, r: int, s: int) -> Fraction:
    """x-coordinate where the slant a_{r,s} of Gamma0[n] leaves line r+1."""
    return Fraction(2 * (n - 1 - r) + 3 * (s - 1) + 1)


def gamma0_width(n: int) -> Fraction:
    return Fraction(1) if n == 1 else Fraction(3 * n - 3)


def gamma0(n: int) -> PlanarNetwork:
    """The staircase network: n horizontal lines and slants a_{r,s}, 1 <= s <= r < n.

    The slant a_{r,s} runs from (u, r+1) to (u+1, r) with
    ``u = 2(n-1-r) + 3(s-1) + 1`` on the strip ``[0, 3n-3]``.  Vertex ids follow
    (height, x) order; edge ids list horizontal pieces line by line from left to
    right, then the slants in (r, s) order.
    """
    if n < 1:
        raise NOutOfRange(f"n must be >= 1, got {n}")
    width = gamma0_width(n)
    xs: dict[int, set[Fraction]] = {y: {Fraction(0), width} for y in range(1, n + 1)}
    slants = []
    for r in range(1, n):
        for s in range(1, r + 1):
            u = gamma0_slant_x(n, r, s)
            xs[r + 1].add(u)
            xs[r].add(u + 1)
            slants.append((r, s, u))
    vid: dict[tuple[Fraction, int], int] = {}
    verts = []
    for y in range(1, n + 1):
        for x in sorted(xs[y]):
            vid[(x, y)] = len(verts)
            verts.append(Vertex(len(verts), x, Fraction(y)))
    edges = []
    for y in range(1, n + 1):
        row = sorted(xs[y])
        for x0, x1 in zip(row, row[1:]):
            edges.append(Edge(len(edges), vid[(x0, y)], vid[(x1, y)]))
    for r, s, u in slants:
        edges.append(Edge(len(edges), vid[(u, r + 1)], vid[(u + 1, r)]))
    return build_network(0, width, verts, edges, rank=n, validate=False)


def delta0(n: int, a=0, b=1) -> PlanarNetwork:
    """n straight lines, edge id j-1 on height j."""
    if n < 1:
        raise NOutOfRange(f"n must be >= 1, got {n}")
    a, b = Fraction(a), Fraction(b)
    verts = [Vertex(2 * (j - 1), a, Fraction(j)) for j in range(1, n + 1)]
    verts += [Vertex(2 * (j - 1) + 1, b, Fraction(j)) for j in range(1, n + 1)]
    edges = [Edge(j - 1, 2 * (j - 1), 2 * (j - 1) + 1) for j in range(1, n + 1)]
    return build_network(a, b, verts, edges, rank=n, validate=False)


def gamma0_delta0(n: int) -> PlanarNetwork:
    """Gamma0[n] followed by Delta0[n] on [3n-3, 3n-2]."""
    g = gamma0(n)
    return concatenate(g, delta0(n, g.b, g.b + 1))


def tau_line(net: PlanarNetwork, j) -> frozenset[int]:
    """Ids of the straight edges lying on the horizontal line ``y = j``."""
    j = Fraction(j)
    return frozenset(
        e.id for e in net.edges
        if all(p[1] == j for p in net.edge_points(e.id))
    )


def validate_embedding(net: PlanarNetwork) -> None:
    _check_embedding(net)


def combinatorial_signature(net: PlanarNetwork):
    """Edge list up to x-reparametrisation: vertices named by (height, order on that height)."""
    by_y: dict[Fraction, list[Vertex]] = {}
    for v in net.vertices:
        by_y.setdefault(v.y, []).append(v)
    name = {}
    for y, vs in by_y.items():
        for idx, v in enumerate(sorted(vs, key=lambda v: v.x)):
            name[v.id] = (y, idx)
    return sorted((name[e.tail], name[e.head]) for e in net.edges)
