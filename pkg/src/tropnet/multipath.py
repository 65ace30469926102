"""Vertex-disjoint path systems and their maximal weights.

``l_k`` is the largest weight of ``k`` disjoint source-to-sink paths and
``m^k_i`` the analogous quantity for a concatenated network where only ``i``
of the ``k`` left paths continue through the right factor.  Both are computed
with a node-split min-cost flow; exhaustive enumeration is kept alongside as an
oracle and as a fallback.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ExplosionGuard, InvalidMultipath, KOutOfRange, NotComposable
from .flow import FlowGraph
from .network import PlanarNetwork, concatenate, shift, split_concatenation, truncate
from .tropical import NEG_INF, Weight, tsum

DEFAULT_CAP = 10**6


# -- data types --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Multipath:
    """k vertex-disjoint source-to-sink paths, listed top source first."""

    net: PlanarNetwork = field(repr=False)
    paths: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.paths)

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(e for p in self.paths for e in p)

    def sorted_edges(self) -> tuple[int, ...]:
        return tuple(sorted(self.edges))

    @property
    def source_ids(self) -> tuple[int, ...]:
        return tuple(self.net.edge(p[0]).tail for p in self.paths)

    @property
    def sink_ids(self) -> tuple[int, ...]:
        return tuple(self.net.edge(p[-1]).head for p in self.paths)

    @property
    def sources(self) -> tuple[Fraction, ...]:
        """Source heights, decreasing."""
        return tuple(self.net.vertex(v).y for v in self.source_ids)

    @property
    def sinks(self) -> tuple[Fraction, ...]:
        """Sink heights, increasing."""
        return tuple(sorted(self.net.vertex(v).y for v in self.sink_ids))

    @property
    def type(self):
        return (self.sources, self.sinks)

    def weight(self, w: Mapping[int, Weight]) -> Weight:
        return tsum(w[e] for e in self.edges)

    def vertices(self) -> set[int]:
        out = set()
        for p in self.paths:
            out.add(self.net.edge(p[0]).tail)
            out.update(self.net.edge(e).head for e in p)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multipath):
            return NotImplemented
        return self.edges == other.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def __repr__(self) -> str:
        return f"Multipath({[list(p) for p in self.paths]})"


def make_multipath(net: PlanarNetwork, paths: Iterable[Sequence[int]]) -> Multipath:
    """Validate and normalise a list of edge sequences into a :class:`Multipath`."""
    paths = [tuple(p) for p in paths]
    seen: set[int] = set()
    for p in paths:
        if not p:
            raise InvalidMultipath("empty path")
        for e in p:
            if not net.has_edge(e):
                raise InvalidMultipath(f"unknown edge {e}")
        first, last = net.edge(p[0]), net.edge(p[-1])
        if net.vertex(first.tail).x != net.a:
            raise InvalidMultipath(f"path {p} does not start at a source")
        if net.vertex(last.head).x != net.b:
            raise InvalidMultipath(f"path {p} does not end at a sink")
        verts = [first.tail]
        for e1, e2 in zip(p, p[1:]):
            if net.edge(e1).head != net.edge(e2).tail:
                raise InvalidMultipath(f"edges {e1}, {e2} are not consecutive")
        verts += [net.edge(e).head for e in p]
        if seen.intersection(verts):
            raise InvalidMultipath("paths share a vertex")
        seen.update(verts)
    paths.sort(key=lambda p: net.vertex(net.edge(p[0]).tail).y, reverse=True)
    return Multipath(net, tuple(paths))


def empty_multipath(net: PlanarNetwork) -> Multipath:
    return Multipath(net, ())


@dataclass(frozen=True, eq=False)
class GammaDeltaPath:
    """A k-path of the left factor together with an i-path of the right factor."""

    gamma_part: Multipath
    delta_part: Multipath

    def __post_init__(self):
        gs = set(self.gamma_part.sink_ids)
        if not set(self.delta_part.source_ids) <= gs:
            raise InvalidMultipath("right part starts outside the sinks of the left part")

    @property
    def k(self) -> int:
        return self.gamma_part.k

    @property
    def i(self) -> int:
        return self.delta_part.k

    @property
    def edges(self) -> frozenset[int]:
        return self.gamma_part.edges | self.delta_part.edges

    def sorted_edges(self) -> tuple[int, ...]:
        return tuple(sorted(self.edges))

    def weight(self, w: Mapping[int, Weight]) -> Weight:
        return tsum(w[e] for e in self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GammaDeltaPath):
            return NotImplemented
        return self.gamma_part == other.gamma_part and self.delta_part == other.delta_part

    def __hash__(self) -> int:
        return hash((self.gamma_part, self.delta_part))

    def __repr__(self) -> str:
        return f"GammaDeltaPath(gamma={self.gamma_part!r}, delta={self.delta_part!r})"


def make_gd_path(gd: PlanarNetwork, gamma_paths, delta_paths) -> GammaDeltaPath:
    g, d = split_concatenation(gd)
    return GammaDeltaPath(make_multipath(g, gamma_paths), make_multipath(d, delta_paths))


class Tableau:
    """Triangular array ``t[k, i]`` for ``0 <= i <= k <= n``."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != n + 1 or any(len(r) != k + 1 for k, r in enumerate(rows)):
            raise ValueError(f"rows do not form a triangle of size {n}")
        self.n = n
        self.rows = rows

    @classmethod
    def from_function(cls, n: int, fn) -> "Tableau":
        return cls(n, [[fn(k, i) for i in range(k + 1)] for k in range(n + 1)])

    @classmethod
    def zeros(cls, n: int) -> "Tableau":
        return cls.from_function(n, lambda k, i: Fraction(0))

    def __getitem__(self, ki) -> Weight:
        k, i = ki
        if not 0 <= i <= k <= self.n:
            raise KeyError(ki)
        return self.rows[k][i]

    def items(self):
        for k, row in enumerate(self.rows):
            for i, v in enumerate(row):
                yield (k, i), v

    def map(self, fn) -> "Tableau":
        return Tableau(self.n, [[fn(v) for v in row] for row in self.rows])

    def __add__(self, c) -> "Tableau":
        return self.map(lambda v: v + c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tableau):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def is_finite(self) -> bool:
        return all(v != NEG_INF for _, v in self.items())

    def __repr__(self) -> str:
        return f"Tableau(n={self.n}, rows={[list(map(str, r)) for r in self.rows]})"


# -- enumeration ---------------------------------------------------------------

def enumerate_paths(net: PlanarNetwork, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """All source-to-sink paths as edge sequences."""
    out: list[tuple[int, ...]] = []
    memo: dict[int, list[tuple[int, ...]]] = {}

    def tails(v: int) -> list[tuple[int, ...]]:
        if v in memo:
            return memo[v]
        if net.vertex(v).x == net.b:
            res = [()]
        else:
            res = []
            for e in net.out_edges(v):
                for rest in tails(net.edge(e).head):
                    res.append((e,) + rest)
                    if len(res) > cap:
                        raise ExplosionGuard(f"more than {cap} paths")
        memo[v] = res
        return res

    for s in net.sources:
        out.extend(p for p in tails(s.id) if p)
        if len(out) > cap:
            raise ExplosionGuard(f"more than {cap} paths")
    return out


def enumerate_kpaths(net: PlanarNetwork, k: int, cap: int = DEFAULT_CAP) -> list[Multipath]:
    if k < 0:
        raise KOutOfRange(f"k={k} must be non-negative")
    if k == 0:
        return [empty_multipath(net)]
    paths = enumerate_paths(net, cap)
    vsets = []
    for p in paths:
        vs = {net.edge(p[0]).tail}
        vs.update(net.edge(e).head for e in p)
        vsets.append(frozenset(vs))
    # paths ordered by source so that each source is used once per system
    order = sorted(range(len(paths)), key=lambda j: net.vertex(net.edge(paths[j][0]).tail).y)
    result: list[Multipath] = []

    def extend(start: int, chosen: list[int], used: frozenset):
        if len(chosen) == k:
            result.append(make_multipath(net, [paths[j] for j in chosen]))
            if len(result) > cap:
                raise ExplosionGuard(f"more than {cap} multipaths")
            return
        for pos in range(start, len(order)):
            j = order[pos]
            if used.isdisjoint(vsets[j]):
                chosen.append(j)
                extend(pos + 1, chosen, used | vsets[j])
                chosen.pop()

    extend(0, [], frozenset())
    return result


def _best(items, w):
    """Maximum weight, ties broken by the lexicographically smallest edge-id sequence."""
    best, best_key = None, None
    for m in items:
        val = m.weight(w)
        if val == NEG_INF:
            continue
        key = (-val, m.sorted_edges())
        if best_key is None or key < best_key:
            best, best_key = m, key
    if best is None:
        return NEG_INF, None
    return -best_key[0], best


def brute_max_kpath_weight(net, w, k, cap: int = DEFAULT_CAP):
    if k == 0:
        return Fraction(0), empty_multipath(net)
    return _best(enumerate_kpaths(net, k, cap), w)


# -- flow solver ---------------------------------------------------------------

def _tie_bonus(edge_ids: Iterable[int]) -> dict[int, int]:
    ordered = sorted(edge_ids)
    m = len(ordered)
    return {e: 1 << (m - r) for r, e in enumerate(ordered)}


class _SplitGraph:
    """Node-split flow network; every vertex of ``net`` gets capacity 1."""

    def __init__(self, net: PlanarNetwork, w: Mapping[int, Weight]):
        self.net = net
        self.g = FlowGraph(0)
        self.v_in, self.v_out = {}, {}
        for v in net.vertices:
            self.v_in[v.id] = self.g.add_node()
            self.v_out[v.id] = self.g.add_node()
            self.g.add_arc(self.v_in[v.id], self.v_out[v.id], 1)
        bonus = _tie_bonus(net.edge_ids)
        self.edge_arc: dict[int, int] = {}
        for e in net.edges:
            we = w[e.id]
            if we == NEG_INF:
                continue
            self.edge_arc[e.id] = self.g.add_arc(
                self.v_out[e.tail], self.v_in[e.head], 1, (-we, -bonus[e.id]))
        self.s = self.g.add_node()
        for v in net.sources:
            self.g.add_arc(self.s, self.v_in[v.id], 1)

    def used_edges(self) -> set[int]:
        return {e for e, a in self.edge_arc.items() if self.g.flow_on(a) > 0}

    def trace_paths(self, used: set[int]) -> list[tuple[int, ...]]:
        """Follow used edges from each source until they run out."""
        out_used = {self.net.edge(e).tail: e for e in used}
        paths = []
        for v in self.net.sources:
            cur, path = v.id, []
            while cur in out_used:
                e = out_used[cur]
                path.append(e)
                cur = self.net.edge(e).head
            if path:
                paths.append(tuple(path))
        return paths


def max_kpath_weight(net: PlanarNetwork, w: Mapping[int, Weight], k: int):
    """``(l_k, witness)``; ``(NEG_INF, None)`` when no finite k-path exists."""
    if k < 0:
        raise KOutOfRange(f"k={k} must be non-negative")
    if k == 0:
        return Fraction(0), empty_multipath(net)
    if k > min(len(net.sources), len(net.sinks)):
        return NEG_INF, None
    sg = _SplitGraph(net, w)
    t = sg.g.add_node()
    for v in net.sinks:
        sg.g.add_arc(sg.v_out[v.id], t, 1)
    flow, cost = sg.g.min_cost_flow(sg.s, t, k)
    if flow < k:
        return NEG_INF, None
    mp = make_multipath(net, sg.trace_paths(sg.used_edges()))
    return -cost[0], mp


def l_vector(net: PlanarNetwork, w: Mapping[int, Weight], n: Optional[int] = None) -> list[Weight]:
    if n is None:
        n = net.rank if net.rank is not None else min(len(net.sources), len(net.sinks))
    return [max_kpath_weight(net, w, k)[0] for k in range(n + 1)]


def eigenvalue_vector(net: PlanarNetwork, w: Mapping[int, Weight]):
    """``(l, lam)`` with ``lam[i-1] = l_i - l_{i-1}`` or ``None`` when undefined."""
    l = l_vector(net, w)
    lam = [l[i] - l[i - 1] if NEG_INF not in (l[i], l[i - 1]) else None
           for i in range(1, len(l))]
    return l, lam


# -- concatenated networks -----------------------------------------------------

def _factors(gd: PlanarNetwork):
    if gd.middle is None:
        raise NotComposable("expected a concatenated network")
    return split_concatenation(gd)


def enumerate_gd_paths(gd: PlanarNetwork, k: int, i: int, cap: int = DEFAULT_CAP) -> list[GammaDeltaPath]:
    if not 0 <= i <= k:
        raise KOutOfRange(f"need 0 <= i <= k, got k={k}, i={i}")
    g, d = _factors(gd)
    gammas = enumerate_kpaths(g, k, cap)
    deltas = enumerate_kpaths(d, i, cap)
    out = []
    for gm in gammas:
        ends = set(gm.sink_ids)
        for dm in deltas:
            if set(dm.source_ids) <= ends:
                out.append(GammaDeltaPath(gm, dm))
                if len(out) > cap:
                    raise ExplosionGuard(f"more than {cap} composable pairs")
    return out


def _max_gd_flow(gd: PlanarNetwork, w, k: int, i: int):
    g, d = _factors(gd)
    sg = _SplitGraph(gd, w)
    G = sg.g
    t_mid, t_end, t = G.add_node(), G.add_node(), G.add_node()
    for v in gd.middle_vertices:
        G.add_arc(sg.v_out[v.id], t_mid, 1)
    for v in gd.sinks:
        G.add_arc(sg.v_out[v.id], t_end, 1)
    G.add_arc(t_mid, t, k - i)
    G.add_arc(t_end, t, i)
    flow, cost = G.min_cost_flow(sg.s, t, k)
    if flow < k:
        return NEG_INF, None
    used = sg.used_edges()
    g_used = {e for e in used if g.has_edge(e)}
    d_used = used - g_used
    g_paths = sg.trace_paths(g_used)
    d_out = {}
    for e in d_used:
        d_out.setdefault(gd.edge(e).tail, []).append(e)
    d_paths = []
    for v in gd.middle_vertices:
        cur, path = v.id, []
        while cur in d_out:
            (e,) = d_out[cur]
            path.append(e)
            cur = gd.edge(e).head
        if path:
            d_paths.append(path)
    return -cost[0], GammaDeltaPath(make_multipath(g, g_paths), make_multipath(d, d_paths))


def max_gd_weight(gd: PlanarNetwork, w: Mapping[int, Weight], k: int, i: int,
                  method: str = "flow", cap: int = DEFAULT_CAP):
    """``(m^k_i, witness)`` on a concatenated network."""
    if not 0 <= i <= k:
        raise KOutOfRange(f"need 0 <= i <= k, got k={k}, i={i}")
    if method == "enumerate":
        return _best(enumerate_gd_paths(gd, k, i, cap), w)
    if method != "flow":
        raise ValueError(f"unknown method {method!r}")
    if k == 0:
        g, d = _factors(gd)
        return Fraction(0), GammaDeltaPath(empty_multipath(g), empty_multipath(d))
    if k > len(gd.sources):
        return NEG_INF, None
    return _max_gd_flow(gd, w, k, i)


# -- tableau maps ----------------------------------------------------------------

def L_map(net: PlanarNetwork, w: Mapping[int, Weight]) -> Tableau:
    """``t[k, i] = l_i`` of the truncation to height ``k``."""
    if net.rank is None:
        from .errors import RankMissing
        raise RankMissing("L_map needs a network of known rank")
    n = net.rank
    rows = []
    for k in range(n + 1):
        sub = truncate(net, k)
        rows.append([max_kpath_weight(sub, w, i)[0] for i in range(k + 1)])
    return Tableau(n, rows)


def compose(g: PlanarNetwork, d: PlanarNetwork) -> PlanarNetwork:
    """Concatenate, translating ``d`` first when its strip starts elsewhere."""
    if d.a != g.b:
        d = shift(d, g.b - d.a)
    return concatenate(g, d)


def M_map(g: PlanarNetwork, d: Optional[PlanarNetwork], w: Mapping[int, Weight],
          method: str = "flow") -> Tableau:
    """``t[k, i] = m^k_i``.  Pass ``d=None`` when ``g`` is already concatenated."""
    gd = g if d is None else compose(g, d)
    if gd.middle is None:
        raise NotComposable("expected a composable pair")
    n = gd.rank if gd.rank is not None else len(gd.sources)
    return Tableau.from_function(n, lambda k, i: max_gd_weight(gd, w, k, i, method)[0])
