"""Small exact max-flow (Dinic) on integer capacities.

Backs the bipartite MWIS base case and the disjoint-path checks.  Node names
are arbitrary hashables; adjacency is kept in insertion order so runs are
deterministic for a fixed construction order.
"""

from collections import deque

INF = float("inf")


class Dinic:
    def __init__(self):
        self.adj = {}  # node -> list of edge indices
        self.edges = []  # flat list: [to, capacity_remaining]; i^1 is the reverse

    def _node(self, v):
        if v not in self.adj:
            self.adj[v] = []
        return v

    def add_edge(self, u, v, cap):
        self._node(u)
        self._node(v)
        self.adj[u].append(len(self.edges))
        self.edges.append([v, cap])
        self.adj[v].append(len(self.edges))
        self.edges.append([u, 0])

    def _bfs(self, s, t):
        level = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for ei in self.adj[v]:
                to, cap = self.edges[ei]
                if cap > 0 and to not in level:
                    level[to] = level[v] + 1
                    queue.append(to)
        return level if t in level else None

    def _dfs(self, v, t, pushed, level, it):
        if v == t:
            return pushed
        while it[v] < len(self.adj[v]):
            ei = self.adj[v][it[v]]
            to, cap = self.edges[ei]
            if cap > 0 and level.get(to, -1) == level[v] + 1:
                got = self._dfs(to, t, min(pushed, cap), level, it)
                if got > 0:
                    self.edges[ei][1] -= got
                    self.edges[ei ^ 1][1] += got
                    return got
            it[v] += 1
        return 0

    def max_flow(self, s, t):
        self._node(s)
        self._node(t)
        total = 0
        while True:
            level = self._bfs(s, t)
            if level is None:
                return total
            it = {v: 0 for v in self.adj}
            while True:
                pushed = self._dfs(s, t, INF, level, it)
                if pushed == 0:
                    break
                total += pushed

    def flow_on(self, ei):
        """Flow currently routed through forward edge index ei."""
        return self.edges[ei ^ 1][1]

    def min_cut_source_side(self, s):
        """Nodes reachable from s in the residual network after max_flow."""
        seen = {s}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for ei in self.adj[v]:
                to, cap = self.edges[ei]
                if cap > 0 and to not in seen:
                    seen.add(to)
                    queue.append(to)
        return seen

    def trace_unit_path(self, s, t, first):
        """Follow one unit of flow from `first` to t, consuming it.

        Requires that a unit of flow actually passes through `first` (e.g. in
        a unit-capacity network after max_flow).  Returns the node sequence
        from `first` up to but excluding t.
        """
        path = []
        cur = first
        while cur != t:
            path.append(cur)
            advanced = False
            for ei in self.adj[cur]:
                if ei % 2 == 0 and self.flow_on(ei) > 0:
                    self.edges[ei ^ 1][1] -= 1
                    self.edges[ei][1] += 1
                    cur = self.edges[ei][0]
                    advanced = True
                    break
            if not advanced:
                raise RuntimeError("no flow to follow; trace_unit_path misused")
        return path
