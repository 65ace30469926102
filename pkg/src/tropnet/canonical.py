"""Distinguished multipath families on the staircase network and its Horn extension.

Free edges of the staircase are the sink-adjacent horizontal pieces ``h_k`` and
the slants ``a_{r,s}``; on the extended network the straight lines ``d_j`` of the
right factor are free as well.  All other edges carry weight zero when a
tableau is inverted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import (
    NonFiniteEntry,
    NonZeroFirstColumn,
    NOutOfRange,
    SingularSystem,
    UnknownCell,
    UnknownRegion,
)
from .multipath import GammaDeltaPath, Multipath, Tableau, make_multipath
from .network import (
    PlanarNetwork,
    Weighting,
    gamma0,
    gamma0_delta0,
    gamma0_slant_x,
    split_concatenation,
    tau_line,
    truncate,
)
from .tropical import Weight, tsum

GZ, HORN = "GZ", "HORN"


@dataclass(frozen=True)
class FreeEdgeLabels:
    h: dict
    a: dict
    d: dict
    zero_edges: frozenset

    def free(self) -> list[tuple[str, tuple, int]]:
        """Free labels in solving order: d_n..d_1, then h_k and a_{k-1,i} by k."""
        out = [("d", (j,), self.d[j]) for j in sorted(self.d, reverse=True)]
        n = len(self.h)
        for k in range(1, n + 1):
            out += [("a", (k - 1, i), self.a[k - 1, i]) for i in range(1, k)]
            out.append(("h", (k,), self.h[k]))
        return out


def _horizontal_out(net: PlanarNetwork, vid: int):
    y = net.vertex(vid).y
    for e in net.out_edges(vid):
        if net.vertex(net.edge(e).head).y == y:
            return e
    return None


@lru_cache(maxsize=None)
def _gamma0_index(n: int):
    net = gamma0(n)
    slant = {}
    for r in range(1, n):
        for s in range(1, r + 1):
            u = gamma0_slant_x(n, r, s)
            tail = next(v for v in net.vertices if v.x == u and v.y == r + 1)
            (eid,) = [e for e in net.out_edges(tail.id)
                      if net.vertex(net.edge(e).head).y == r]
            slant[r, s] = eid
    h = {k: net.in_edges(net.sink_at(k).id)[0] for k in range(1, n + 1)}
    return net, h, slant


def gamma0_labels(n: int, horn: bool = False) -> FreeEdgeLabels:
    if n < 1:
        raise NOutOfRange(f"n must be >= 1, got {n}")
    net, h, a = _gamma0_index(n)
    d = {}
    total = set(net.edge_ids)
    if horn:
        off = max(net.edge_ids) + 1
        d = {j: off + j - 1 for j in range(1, n + 1)}
        total |= set(d.values())
    zero = frozenset(total - set(h.values()) - set(a.values()) - set(d.values()))
    return FreeEdgeLabels(dict(h), dict(a), d, zero)


def _walk(net: PlanarNetwork, start: int, slants: list[int]) -> tuple[int, ...]:
    """From ``start`` go right, taking the listed slants in order when reached."""
    path, cur, todo = [], start, list(slants)
    while net.vertex(cur).x != net.b:
        if todo and net.edge(todo[0]).tail == cur:
            e = todo.pop(0)
        else:
            e = _horizontal_out(net, cur)
        path.append(e)
        cur = net.edge(e).head
    if todo:  # pragma: no cover - guarded by uniqueness tests
        raise RuntimeError("slant schedule not realised")
    return tuple(path)


def alpha_paths(n: int, k: int, i: int) -> list[tuple[int, ...]]:
    """Edge sequences of alpha(k, i) on the staircase of size n."""
    net, _, a = _gamma0_index(n)
    paths = []
    for j in range(1, i + 1):
        slants = [a[r, i - j + 1] for r in range(k - j, i - j, -1)]
        paths.append(_walk(net, net.source_at(k - j + 1).id, slants))
    return paths


def alpha(n: int, k: int, i: int) -> Multipath:
    if not 0 <= i <= k <= n:
        raise NOutOfRange(f"need 0 <= i <= k <= n, got ({k}, {i}) for n={n}")
    return make_multipath(truncate(gamma0(n), k), alpha_paths(n, k, i))


def beta(n: int, k: int, i: int, gd: PlanarNetwork | None = None) -> GammaDeltaPath:
    if not 0 <= i <= k <= n:
        raise NOutOfRange(f"need 0 <= i <= k <= n, got ({k}, {i}) for n={n}")
    gd = gd if gd is not None else gamma0_delta0(n)
    g, d = split_concatenation(gd)
    gamma_paths = list(alpha_paths(n, n - i, k - i))
    delta_paths = []
    for j in range(n - i + 1, n + 1):
        line = tau_line(gd, j)
        gamma_paths.append(tuple(sorted((e for e in line if g.has_edge(e)),
                                        key=lambda e: gd.vertex(gd.edge(e).tail).x)))
        delta_paths.append(tuple(e for e in line if d.has_edge(e)))
    return GammaDeltaPath(make_multipath(g, gamma_paths), make_multipath(d, delta_paths))


@dataclass(frozen=True)
class Collection:
    n: int
    kind: str
    members: dict
    network: PlanarNetwork

    def __getitem__(self, ki):
        return self.members[ki]


def collection_A(n: int) -> Collection:
    members = {(k, i): alpha(n, k, i) for k in range(1, n + 1) for i in range(1, k + 1)}
    return Collection(n, GZ, members, gamma0(n))


def collection_B(n: int) -> Collection:
    gd = gamma0_delta0(n)
    members = {(k, i): beta(n, k, i, gd) for k in range(n + 1) for i in range(k + 1)}
    return Collection(n, HORN, members, gd)


def w_collection(c: Collection, w: Mapping[int, Weight]) -> Tableau:
    def entry(k, i):
        if (k, i) in c.members:
            return c.members[k, i].weight(w)
        return Fraction(0)
    return Tableau.from_function(c.n, entry)


def _require_finite(t: Tableau):
    if not t.is_finite():
        raise NonFiniteEntry("tableau has -inf entries")


def invert_gz(t: Tableau) -> Weighting:
    """Weighting on the staircase whose alpha-weights reproduce ``t``."""
    _require_finite(t)
    if any(t[k, 0] != 0 for k in range(t.n + 1)):
        raise NonZeroFirstColumn("expected t[k, 0] = 0 for every k")
    n = t.n
    net, h, a = _gamma0_index(n)
    w = {e: Fraction(0) for e in net.edge_ids}

    def current(k, i):
        return tsum(w[e] for p in alpha_paths(n, k, i) for e in p)

    for k in range(1, n + 1):
        for i in range(1, k):
            w[a[k - 1, i]] = t[k, i] - current(k, i)
        w[h[k]] = t[k, k] - current(k, k)
    return Weighting(w)


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination over the rationals for a square system."""
    m = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(m):
        piv = next((r for r in range(col, m) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularSystem(f"no pivot in column {col}")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(m):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][m] for r in range(m)]


@lru_cache(maxsize=None)
def _horn_matrix(n: int):
    labels = gamma0_labels(n, horn=True)
    free = labels.free()
    col = {eid: j for j, (_, _, eid) in enumerate(free)}
    coll = collection_B(n)
    keys = [(k, i) for k in range(1, n + 1) for i in range(k + 1)]
    rows = []
    for ki in keys:
        row = [Fraction(0)] * len(free)
        for e in coll[ki].edges:
            if e in col:
                row[col[e]] += 1
        rows.append(row)
    return labels, free, keys, rows


def invert_horn(t: Tableau) -> Weighting:
    """Weighting on the extended staircase whose beta-weights reproduce ``t``."""
    _require_finite(t)
    if t[0, 0] != 0:
        raise NonZeroFirstColumn("expected t[0, 0] = 0")
    labels, free, keys, rows = _horn_matrix(t.n)
    sol = _solve_exact(rows, [Fraction(t[ki]) for ki in keys])
    w = {e: Fraction(0) for e in labels.zero_edges}
    for (_, _, eid), v in zip(free, sol):
        w[eid] = v
    return Weighting(w)


# -- cells and regions ----------------------------------------------------------

def _line_edges(net: PlanarNetwork, y, x0, x1) -> list[int]:
    """Straight edges on height y inside [x0, x1] (left of the middle line if any)."""
    out = []
    for e in tau_line(net, y):
        tx, hx = net.vertex(net.edge(e).tail).x, net.vertex(net.edge(e).head).x
        if x0 <= tx and hx <= x1:
            out.append(e)
    return out


@lru_cache(maxsize=None)
def _cell_terms(n: int, horn: bool, cell) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(plus, minus) edge ids of a cell's clockwise boundary."""
    net = gamma0_delta0(n) if horn else gamma0(n)
    _, _, a = _gamma0_index(n)
    width = gamma0(n).b
    if len(cell) == 3 and cell[0] == "delta":
        if not horn:
            raise UnknownCell(f"{cell} needs the extended network")
        j = cell[1]
        if not 0 <= j <= n or cell[2] != j + 1:
            raise UnknownCell(f"no cell {cell}")
        labels = gamma0_labels(n, horn=True)
        plus = [labels.d[j + 1]] if j + 1 <= n else []
        minus = [labels.d[j]] if j >= 1 else []
        return tuple(plus), tuple(minus)
    k, i = cell
    if not 0 <= i <= k <= n - 1:
        raise UnknownCell(f"no cell [{k},{i}] for n={n}")
    if k == 0:
        return tuple(_line_edges(net, 1, 0, width)), ()
    top_l = gamma0_slant_x(n, k, i) if i > 0 else Fraction(0)
    top_r = gamma0_slant_x(n, k, i + 1) if i < k else width
    bot_l = top_l + 1 if i > 0 else Fraction(0)
    bot_r = top_r + 1 if i < k else width
    plus = _line_edges(net, k + 1, top_l, top_r)
    minus = _line_edges(net, k, bot_l, bot_r)
    if i < k:
        plus.append(a[k, i + 1])
    if i > 0:
        minus.append(a[k, i])
    return tuple(plus), tuple(minus)


def _is_horn(net: PlanarNetwork) -> bool:
    return net.middle is not None


def cell_functional(net: PlanarNetwork, cell, w: Mapping[int, Weight]) -> Weight:
    """Signed clockwise boundary sum of a cell.

    ``cell`` is ``(k, i)`` for a staircase cell or ``("delta", j, j + 1)`` for a
    cell of the straight-line factor.
    """
    n = net.rank
    plus, minus = _cell_terms(n, _is_horn(net), tuple(cell))
    return tsum(w[e] for e in plus) - tsum(w[e] for e in minus)


NE, SE, E = "NE", "SE", "E"


def region_cells(n: int, kind: str, k: int, i: int, horn: bool = False) -> list:
    if not 0 <= i <= k <= n - 1:
        raise UnknownRegion(f"no region [{k},{i}] for n={n}")
    if kind == NE:
        return [(k - j, i - j) for j in range(i + 1)]
    if kind == SE:
        return [(m, i) for m in range(i, k + 1)]
    if kind == E:
        if not horn:
            raise UnknownRegion("eastern regions live on the extended network")
        return [(k, m) for m in range(i, k + 1)] + [("delta", k, k + 1)]
    raise UnknownRegion(f"unknown region kind {kind!r}")


def region_functional(net: PlanarNetwork, kind: str, k: int, i: int, w: Mapping[int, Weight]) -> Weight:
    cells = region_cells(net.rank, kind, k, i, _is_horn(net))
    return tsum(cell_functional(net, c, w) for c in cells)


def rhombus_region(horn: bool, family: int, k: int, i: int, n: int):
    """Region ``(kind, K, I, sign)`` whose functional equals the rhombus combination.

    The combination is ``plus - minus`` of the rhombus inequality of ``family``
    at ``(k, i)`` evaluated on the collection weights.
    """
    if not 0 < i <= k < n:
        raise UnknownRegion(f"no rhombus ({k}, {i}) for n={n}")
    if not horn:
        if family == 1:
            return NE, k, i - 1, 1
        if family == 2:
            return SE, k, i, -1
    else:
        if family == 1:
            return SE, n - i, k - i + 1, -1
        if family == 2:
            return E, n - i, k - i + 1, 1
        if family == 3:
            return NE, n - i, k - i, 1
    raise UnknownRegion(f"no family {family} for {'HORN' if horn else 'GZ'}")
