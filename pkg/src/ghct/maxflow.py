"""Exact minimum S-T cut engine with minimal-side extraction.

A Dinic-style augmenting-path solver over exact integer capacities.  Every
higher-level routine funnels through the three entry points here, each of
which records the size of the graph it was handed in a WorkCounter.

Multi-node terminals are handled by merging each side into a single
super-terminal while building the flow network (no infinite-capacity arcs,
so all arithmetic stays bounded).  Tie-breaking is deterministic: residual
reachability decides which side is returned, and no randomness is used.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import Cut, Graph


@dataclass
class WorkCounter:
    """Accumulated sizes of graphs passed to the min-cut engine.

    Merging is associative and commutative, so shards from concurrent
    branches can be combined in any order.
    """

    calls: int = 0
    nodes_total: int = 0
    edges_total: int = 0

    def record(self, nodes: int, edges: int) -> None:
        self.calls += 1
        self.nodes_total += nodes
        self.edges_total += edges

    def merge(self, other: "WorkCounter") -> None:
        self.calls += other.calls
        self.nodes_total += other.nodes_total
        self.edges_total += other.edges_total

    def snapshot(self) -> dict:
        return {
            "maxflow_calls": self.calls,
            "nodes_total": self.nodes_total,
            "edges_total": self.edges_total,
        }


@dataclass(frozen=True)
class MinCutResult:
    cost: int
    sink_side: frozenset


def _max_flow(adj, to, cap, src, snk):
    """Dinic blocking-flow loop; mutates cap in place, returns flow value."""
    n = len(adj)
    flow = 0
    while True:
        level = [-1] * n
        level[src] = 0
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for e in adj[x]:
                y = to[e]
                if cap[e] > 0 and level[y] < 0:
                    level[y] = level[x] + 1
                    queue.append(y)
        if level[snk] < 0:
            return flow
        it = [0] * n
        path_nodes = [src]
        path_arcs = []
        while path_nodes:
            x = path_nodes[-1]
            if x == snk:
                aug = min(cap[e] for e in path_arcs)
                flow += aug
                cutoff = 0
                for k, e in enumerate(path_arcs):
                    cap[e] -= aug
                    cap[e ^ 1] += aug
                    if cap[e] == 0 and cutoff == 0:
                        cutoff = k + 1
                del path_arcs[cutoff - 1:]
                del path_nodes[cutoff:]
                continue
            arcs = adj[x]
            advanced = False
            while it[x] < len(arcs):
                e = arcs[it[x]]
                y = to[e]
                if cap[e] > 0 and level[y] == level[x] + 1:
                    path_arcs.append(e)
                    path_nodes.append(y)
                    advanced = True
                    break
                it[x] += 1
            if not advanced:
                level[x] = -1
                path_nodes.pop()
                if path_arcs:
                    path_arcs.pop()


class _Network:
    """Flow network for one engine call, terminals merged to ids 0 and 1."""

    __slots__ = ("g", "source_ids", "sink_ids", "node_of", "adj", "to", "cap", "flow")

    def __init__(self, g: Graph, s_side, t_side):
        s_idx = g.indices(s_side)
        t_idx = g.indices(t_side)
        if not s_idx or not t_idx:
            raise ValueError("terminal sides must be non-empty")
        if s_idx & t_idx:
            raise ValueError("terminal sides must be disjoint")
        node_of = [0] * g.num_nodes
        free = []
        for i in range(g.num_nodes):
            if i in s_idx:
                node_of[i] = 0
            elif i in t_idx:
                node_of[i] = 1
            else:
                node_of[i] = 2 + len(free)
                free.append(i)
        n = 2 + len(free)
        adj = [[] for _ in range(n)]
        to = []
        cap = []
        for iu, iv, w in g.edges:
            cu, cv = node_of[iu], node_of[iv]
            if cu == cv:
                continue
            adj[cu].append(len(to))
            to.append(cv)
            cap.append(w)
            adj[cv].append(len(to))
            to.append(cu)
            cap.append(w)
        self.g = g
        self.source_ids = s_idx
        self.sink_ids = t_idx
        self.node_of = node_of
        self.adj = adj
        self.to = to
        self.cap = cap
        self.flow = _max_flow(adj, to, cap, 0, 1)

    def _reach_from_source(self) -> set:
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for e in self.adj[x]:
                y = self.to[e]
                if self.cap[e] > 0 and y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def _reach_to_sink(self) -> set:
        # y can step to x along arc e=(x,y)'s twin whenever cap[e^1] > 0.
        seen = {1}
        queue = deque([1])
        while queue:
            x = queue.popleft()
            for e in self.adj[x]:
                y = self.to[e]
                if self.cap[e ^ 1] > 0 and y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def max_sink_side(self) -> frozenset:
        reach = self._reach_from_source()
        labels = self.g.labels
        return frozenset(
            labels[i] for i in range(len(labels)) if self.node_of[i] not in reach
        )

    def min_sink_side(self) -> frozenset:
        reach = self._reach_to_sink()
        labels = self.g.labels
        return frozenset(
            labels[i] for i in range(len(labels)) if self.node_of[i] in reach
        )


def min_cut(g: Graph, s_side, t_side, counter: WorkCounter) -> MinCutResult:
    """An exact minimum S-T cut; deterministic for a fixed graph.

    The returned sink side is the inclusion-maximal one (complement of the
    residual source component).
    """
    counter.record(g.num_nodes, g.num_edges)
    net = _Network(g, s_side, t_side)
    return MinCutResult(net.flow, net.max_sink_side())


def min_cut_minimal_sink(g: Graph, s_side, t_side, counter: WorkCounter) -> MinCutResult:
    """Among all minimum S-T cuts, the one with inclusion-minimal sink side."""
    counter.record(g.num_nodes, g.num_edges)
    net = _Network(g, s_side, t_side)
    return MinCutResult(net.flow, net.min_sink_side())


def latest_min_cut(g: Graph, u, v, counter: WorkCounter) -> Cut:
    """The unique inclusion-minimal minimum u-v cut containing v.

    Extracted as the set of nodes that can still reach v in the residual
    network after the flow is maximal.
    """
    if u == v:
        raise ValueError("terminals must be distinct")
    counter.record(g.num_nodes, g.num_edges)
    net = _Network(g, {u}, {v})
    return Cut(net.min_sink_side(), net.flow)
