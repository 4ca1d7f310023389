"""Exact maximum flow on networks with rational capacities.

Capacities are scaled by their common denominator to integers, so the
augmenting-path search (Dinic: BFS level graph + blocking flow) terminates
and every intermediate quantity stays exact. Flows are scaled back to
Fractions on the way out.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Hashable

from .rationals import as_rational


@dataclass
class FlowNetwork:
    """Directed capacitated network with designated source and sink."""

    source: Hashable
    sink: Hashable
    _ids: dict = field(default_factory=dict)
    _edges: list = field(default_factory=list)   # (u_id, v_id, capacity)

    def __post_init__(self):
        self._node_id(self.source)
        self._node_id(self.sink)

    def _node_id(self, node) -> int:
        if node not in self._ids:
            self._ids[node] = len(self._ids)
        return self._ids[node]

    def add_edge(self, u, v, capacity) -> None:
        cap = as_rational(capacity)
        if cap < 0:
            raise ValueError(f"capacity {cap} on edge {u!r}->{v!r} is negative")
        self._edges.append((self._node_id(u), self._node_id(v), cap))

    @property
    def nodes(self):
        return tuple(self._ids)


@dataclass(frozen=True)
class MaxFlowResult:
    value: Fraction
    flows: dict             # (u, v) -> Fraction, summed over parallel edges
    source_side: frozenset  # nodes reachable from the source in the residual


def max_flow(net: FlowNetwork) -> MaxFlowResult:
    """Exact maximum flow value, a maximizing flow, and the min-cut side."""
    n = len(net._ids)
    scale = lcm(*(c.denominator for _, _, c in net._edges)) if net._edges else 1

    # paired residual slots: edge 2k forward, 2k^1 its reverse
    to: list[int] = []
    residual: list[int] = []
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v, cap in net._edges:
        adj[u].append(len(to))
        to.append(v)
        residual.append(int(cap * scale))
        adj[v].append(len(to))
        to.append(u)
        residual.append(0)

    src = net._ids[net.source]
    dst = net._ids[net.sink]
    level = [-1] * n
    it = [0] * n

    def bfs() -> bool:
        for i in range(n):
            level[i] = -1
        level[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for e in adj[u]:
                v = to[e]
                if residual[e] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level[dst] >= 0

    def augment_once() -> int:
        """One admissible path in the level graph, with current-arc pruning."""
        path: list[int] = []
        u = src
        while True:
            if u == dst:
                bottleneck = min(residual[e] for e in path)
                for e in path:
                    residual[e] -= bottleneck
                    residual[e ^ 1] += bottleneck
                return bottleneck
            advanced = False
            while it[u] < len(adj[u]):
                e = adj[u][it[u]]
                v = to[e]
                if residual[e] > 0 and level[v] == level[u] + 1:
                    path.append(e)
                    u = v
                    advanced = True
                    break
                it[u] += 1
            if not advanced:
                if not path:
                    return 0
                level[u] = -1       # dead end in this phase
                e = path.pop()
                u = to[e ^ 1]
                it[u] += 1

    total = 0
    while bfs():
        it = [0] * n
        while True:
            pushed = augment_once()
            if pushed == 0:
                break
            total += pushed

    # residual reachability gives the min cut
    seen = [False] * n
    seen[src] = True
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for e in adj[u]:
            if residual[e] > 0 and not seen[to[e]]:
                seen[to[e]] = True
                queue.append(to[e])

    names = list(net._ids)
    flows: dict = {}
    for k, (u, v, cap) in enumerate(net._edges):
        sent = int(cap * scale) - residual[2 * k]
        if sent:
            key = (names[u], names[v])
            flows[key] = flows.get(key, Fraction(0)) + Fraction(sent, scale)
    return MaxFlowResult(
        value=Fraction(total, scale),
        flows=flows,
        source_side=frozenset(name for name, i in net._ids.items() if seen[i]),
    )
