"""Min-cost flow by successive shortest paths with vertex potentials.

Costs are pairs ``(primary, secondary)`` compared lexicographically; the
secondary component is used for deterministic tie-breaking.  Any totally
ordered abelian group works for the algorithm, so pairs add componentwise.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

Cost = tuple


def _add(p: Cost, q: Cost) -> Cost:
    return (p[0] + q[0], p[1] + q[1])


def _sub(p: Cost, q: Cost) -> Cost:
    return (p[0] - q[0], p[1] - q[1])


ZERO: Cost = (Fraction(0), 0)


class FlowGraph:
    def __init__(self, n: int):
        self.n = n
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.cost: list[Cost] = []

    def add_node(self) -> int:
        self.adj.append([])
        self.n += 1
        return self.n - 1

    def add_arc(self, u: int, v: int, cap: int, cost: Cost = ZERO) -> int:
        """Add arc u->v; returns its index (the reverse arc is index + 1)."""
        idx = len(self.to)
        self.to += [v, u]
        self.cap += [cap, 0]
        self.cost += [cost, (-cost[0], -cost[1])]
        self.adj[u].append(idx)
        self.adj[v].append(idx + 1)
        return idx

    def flow_on(self, arc: int) -> int:
        return self.cap[arc ^ 1]

    def _initial_potentials(self, s: int) -> list:
        # Bellman-Ford over arcs with residual capacity; the input graph is acyclic
        pot: list = [None] * self.n
        pot[s] = ZERO
        for _ in range(self.n):
            changed = False
            for u in range(self.n):
                if pot[u] is None:
                    continue
                for a in self.adj[u]:
                    if self.cap[a] <= 0:
                        continue
                    v = self.to[a]
                    cand = _add(pot[u], self.cost[a])
                    if pot[v] is None or cand < pot[v]:
                        pot[v] = cand
                        changed = True
            if not changed:
                return pot
        raise RuntimeError("negative cycle in flow graph")

    def min_cost_flow(self, s: int, t: int, amount: int) -> tuple[int, Cost]:
        """Push up to ``amount`` unit augmentations from s to t; returns (flow, cost)."""
        pot = self._initial_potentials(s)
        flow, total = 0, ZERO
        while flow < amount:
            dist: list = [None] * self.n
            prev = [-1] * self.n
            dist[s] = ZERO
            heap = [(ZERO, s)]
            done = [False] * self.n
            while heap:
                d, u = heapq.heappop(heap)
                if done[u]:
                    continue
                done[u] = True
                for a in self.adj[u]:
                    if self.cap[a] <= 0:
                        continue
                    v = self.to[a]
                    if pot[v] is None:
                        continue
                    nd = _add(d, _sub(_add(self.cost[a], pot[u]), pot[v]))
                    if dist[v] is None or nd < dist[v]:
                        dist[v] = nd
                        prev[v] = a
                        heapq.heappush(heap, (nd, v))
            if dist[t] is None:
                break
            for v in range(self.n):
                if dist[v] is not None:
                    pot[v] = _add(pot[v], dist[v])
                else:
                    pot[v] = None  # unreachable now, stays unreachable
            push = amount - flow
            v = t
            while v != s:
                a = prev[v]
                push = min(push, self.cap[a])
                v = self.to[a ^ 1]
            v = t
            while v != s:
                a = prev[v]
                self.cap[a] -= push
                self.cap[a ^ 1] += push
                total = _add(total, (self.cost[a][0] * push, self.cost[a][1] * push))
                v = self.to[a ^ 1]
            flow += push
        return flow, total
