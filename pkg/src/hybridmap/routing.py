"""Architecture graphs and Steiner trees for interaction qubit counts.

Executing a Pauli string on hardware with limited connectivity needs SWAPs
that touch every vertex of a tree connecting its support.  The number of
qubits involved is modelled as the vertex count of a minimum Steiner tree
(unit edge lengths) over the support.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import CapacityError, ConfigurationError, InfeasibleError
from .lattice import MappingLayout
from .pauli import PauliOperator

EXACT_LIMIT = 8


class ArchitectureGraph:
    """Undirected simple graph on qubits ``0..n_vertices-1``.

    Args:
        n_vertices: Number of qubits.
        edges: Iterable of vertex pairs; duplicates and orientation are ignored.
        name: Label used in reports.
        grid_shape: ``(rows, cols)`` when the graph is a plain grid whose vertex
            ``r * cols + c`` sits at ``(r, c)``; enables translation caching.
        all_to_all: Marks the complete graph (Steiner trees are trivial).
    """

    def __init__(
        self,
        n_vertices: int,
        edges: Iterable[tuple[int, int]],
        name: str = "custom",
        grid_shape: tuple[int, int] | None = None,
        all_to_all: bool = False,
    ):
        self.n_vertices = n_vertices
        self.name = name
        self.grid_shape = grid_shape
        self.all_to_all = all_to_all
        self._edge_input = edges
        self._cache: dict = {}
        if not all_to_all:
            _ = self.edges  # validate eagerly

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        if self.all_to_all:
            return tuple(combinations(range(self.n_vertices), 2))
        clean = set()
        for a, b in self._edge_input:
            if a == b:
                raise ConfigurationError("routing: self-loops are not allowed")
            if not (0 <= a < self.n_vertices and 0 <= b < self.n_vertices):
                raise ConfigurationError(f"routing: edge ({a}, {b}) outside the vertex set")
            clean.add((min(a, b), max(a, b)))
        self._edge_input = None
        return tuple(sorted(clean))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(sorted(x)) for x in adj)

    def __repr__(self) -> str:
        return f"ArchitectureGraph({self.name!r}, vertices={self.n_vertices})"

    @cached_property
    def csr(self) -> csr_matrix:
        if not self.edges:
            return csr_matrix((self.n_vertices, self.n_vertices))
        a, b = np.array(self.edges).T
        data = np.ones(2 * len(a))
        return csr_matrix(
            (data, (np.concatenate([a, b]), np.concatenate([b, a]))),
            shape=(self.n_vertices, self.n_vertices),
        )

    def bfs(self, sources: Iterable[int]) -> np.ndarray:
        """Hop distances from the nearest source (``-1`` when unreachable)."""
        dist = np.full(self.n_vertices, -1, dtype=np.int64)
        queue = deque()
        for s in sources:
            if dist[s] < 0:
                dist[s] = 0
                queue.append(s)
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def is_connected(self) -> bool:
        return self.n_vertices == 0 or bool((self.bfs([0]) >= 0).all())

    def induced_connected(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        if not vs:
            return True
        start = min(vs)
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in self.adjacency[u]:
                if w in vs and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(vs)


def grid_graph(rows: int, cols: int | None = None) -> ArchitectureGraph:
    """Rectangular grid; vertex ``r * cols + c``."""
    cols = rows if cols is None else cols
    edges = [(r * cols + c, r * cols + c + 1) for r in range(rows) for c in range(cols - 1)]
    edges += [(r * cols + c, (r + 1) * cols + c) for r in range(rows - 1) for c in range(cols)]
    return ArchitectureGraph(rows * cols, edges, f"grid{rows}x{cols}", grid_shape=(rows, cols))


def square_lattice_graph(layout: MappingLayout) -> ArchitectureGraph:
    """Data qubits on the lattice sites of their modes, nearest neighbours coupled.

    When the layout has ancillas they are added as a second layer: each
    ancilla couples to its cell root and to the ancillas of the
    horizontally and vertically neighbouring cells.
    """
    m = layout.mode_at
    N = layout.N
    edges = [(int(m[r, c]), int(m[r, c + 1])) for r in range(N) for c in range(N - 1)]
    edges += [(int(m[r, c]), int(m[r + 1, c])) for r in range(N - 1) for c in range(N)]
    identity = bool((m.ravel() == np.arange(N * N)).all())
    if not layout.n_ancillas:
        return ArchitectureGraph(
            layout.total_qubits, edges, f"lattice{N}",
            grid_shape=(N, N) if identity else None,
        )
    for cell in range(layout.spec.n_cells):
        a = layout.ancilla_of(cell)
        edges.append((a, layout.cell_root(cell)))
        for nb in layout.cell_neighbours(cell):
            edges.append((a, layout.ancilla_of(nb)))
    return ArchitectureGraph(layout.total_qubits, edges, f"lattice{N}+ancillas")


def all_to_all_graph(n_vertices: int) -> ArchitectureGraph:
    """Complete graph; its edge list is only built if someone asks for it."""
    return ArchitectureGraph(n_vertices, (), f"complete{n_vertices}", all_to_all=True)


def architecture_for(layout: MappingLayout, connectivity: str) -> ArchitectureGraph:
    """``connectivity`` is ``"lattice"`` or ``"all"``."""
    if connectivity in ("lattice", "square_lattice"):
        return square_lattice_graph(layout)
    if connectivity in ("all", "all_to_all"):
        return all_to_all_graph(layout.total_qubits)
    raise ConfigurationError(f"routing: unknown connectivity {connectivity!r}")


@dataclass(frozen=True)
class SteinerResult:
    """A Steiner tree: its edges, vertex and edge counts and the solver used."""

    edges: tuple[tuple[int, int], ...]
    vertex_count: int
    method: str

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def cost(self) -> int:
        return len(self.edges)

    def vertices(self) -> set[int]:
        vs = {v for e in self.edges for v in e}
        return vs


def _result(edges, terminals, method) -> SteinerResult:
    edges = tuple(sorted((min(a, b), max(a, b)) for a, b in edges))
    vs = {v for e in edges for v in e} | set(terminals)
    return SteinerResult(edges, len(vs), method)


def _spanning_tree(g: ArchitectureGraph, vertices: set[int]) -> list[tuple[int, int]]:
    # BFS tree of the induced subgraph, lowest index first (unit weights: any spanning tree is an MST)
    start = min(vertices)
    seen = {start}
    queue = deque([start])
    edges = []
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w in vertices and w not in seen:
                seen.add(w)
                edges.append((u, w))
                queue.append(w)
    if len(seen) != len(vertices):
        raise InfeasibleError("routing: tree vertices are not connected")
    return edges


def _prune(edges: list[tuple[int, int]], terminals: set[int]) -> list[tuple[int, int]]:
    """Repeatedly drop non-terminal leaves."""
    adj: dict[int, set[int]] = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    leaves = [v for v, nb in adj.items() if len(nb) == 1 and v not in terminals]
    while leaves:
        v = leaves.pop()
        if v not in adj or len(adj[v]) != 1:
            continue
        (u,) = adj.pop(v)
        adj[u].discard(v)
        if len(adj[u]) == 1 and u not in terminals:
            leaves.append(u)
        elif not adj[u]:
            del adj[u]
    return [(a, b) for a, nb in adj.items() for b in nb if a < b]


def _normalise(g: ArchitectureGraph, terminals: tuple[int, ...]):
    """Translation-invariant cache key on grids, plus the offset to undo it."""
    if g.grid_shape is None:
        return ("abs", terminals), 0
    cols = g.grid_shape[1]
    r0 = min(t // cols for t in terminals)
    c0 = min(t % cols for t in terminals)
    offset = r0 * cols + c0
    return ("grid", tuple(t - offset for t in terminals)), offset


def _cached(g, kind, terminals, compute):
    key, offset = _normalise(g, terminals)
    key = (kind,) + key
    hit = g._cache.get(key)
    if hit is None:
        hit = compute()
        base = [(a - offset, b - offset) for a, b in hit.edges]
        g._cache[key] = SteinerResult(tuple(base), hit.vertex_count, hit.method)
        return hit
    if offset:
        edges = tuple((a + offset, b + offset) for a, b in hit.edges)
        return SteinerResult(edges, hit.vertex_count, hit.method)
    return hit


def _check_terminals(g: ArchitectureGraph, terminals) -> tuple[int, ...]:
    ts = tuple(sorted(set(int(t) for t in terminals)))
    if not ts:
        raise ConfigurationError("routing: at least one terminal is required")
    if ts[0] < 0 or ts[-1] >= g.n_vertices:
        raise ConfigurationError("routing: terminal outside the graph")
    return ts


def _trivial(g: ArchitectureGraph, ts: tuple[int, ...], method: str) -> SteinerResult | None:
    if len(ts) == 1:
        return SteinerResult((), 1, method)
    if g.all_to_all:
        return _result([(ts[0], t) for t in ts[1:]], ts, method)
    if g.induced_connected(ts):
        return _result(_spanning_tree(g, set(ts)), ts, method)
    return None


# heuristic --------------------------------------------------------------


def _repetitive_shortest_path(g: ArchitectureGraph, ts: tuple[int, ...], start: int) -> list:
    n = g.n_vertices
    INF = n + 1
    dist = [INF] * n
    pred = [-1] * n
    tree = {start}
    dist[start] = 0
    heap = [(0, start)]
    remaining = set(ts) - tree

    def relax():
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for w in g.adjacency[u]:
                if d + 1 < dist[w]:
                    dist[w] = d + 1
                    pred[w] = u
                    heapq.heappush(heap, (d + 1, w))

    while remaining:
        relax()
        target = min(remaining, key=lambda t: (dist[t], t))
        if dist[target] >= INF:
            raise InfeasibleError("routing: terminals lie in different components")
        path = []
        v = target
        while v not in tree:
            path.append(v)
            v = pred[v]
        # tentative distances are carried over; new tree vertices become sources
        for v in path:
            tree.add(v)
            dist[v] = 0
            pred[v] = -1
            heapq.heappush(heap, (0, v))
        remaining -= tree
    return _prune(_spanning_tree(g, tree), set(ts))


def steiner_heuristic(g: ArchitectureGraph, terminals, starts: int | None = 4) -> SteinerResult:
    """Repetitive shortest-path heuristic followed by MST and leaf pruning.

    Args:
        g: Architecture graph.
        terminals: Vertices to connect.
        starts: Number of start terminals tried (lowest indices first);
            ``None`` tries every terminal.  The cheapest tree is kept.
    """
    ts = _check_terminals(g, terminals)
    trivial = _trivial(g, ts, "heuristic")
    if trivial is not None:
        return trivial

    def compute():
        cand = ts if starts is None else ts[:starts]
        best = None
        for s in cand:
            edges = _repetitive_shortest_path(g, ts, s)
            if best is None or len(edges) < len(best):
                best = edges
        return _result(best, ts, "heuristic")

    return _cached(g, ("heuristic", starts), ts, compute)


# exact ------------------------------------------------------------------


def _dreyfus_wagner(g: ArchitectureGraph, ts: tuple[int, ...], upper: int) -> list:
    # restrict to vertices that can lie on a tree of cost <= upper
    dt = np.stack([g.bfs([t]) for t in ts])
    if (dt < 0).any():
        raise InfeasibleError("routing: terminals lie in different components")
    two = np.sort(dt, axis=0)[:2].sum(axis=0)
    keep = np.flatnonzero(two <= upper)
    index = {int(v): i for i, v in enumerate(keep)}
    sub = g.csr[keep][:, keep]
    D, P = shortest_path(sub, method="D", unweighted=True, return_predecessors=True)
    V = len(keep)
    k = len(ts)
    root = index[ts[-1]]
    tl = [index[t] for t in ts[:-1]]
    full = (1 << (k - 1)) - 1
    dp = np.full((full + 1, V), np.inf)
    split = np.full((full + 1, V), -1, dtype=np.int64)
    via = np.full((full + 1, V), -1, dtype=np.int64)
    for i, t in enumerate(tl):
        dp[1 << i] = D[t]
        via[1 << i] = t
    for mask in range(1, full + 1):
        if mask & (mask - 1) == 0:
            continue
        low = mask & -mask
        base = np.full(V, np.inf)
        arg = np.full(V, -1, dtype=np.int64)
        sub_m = (mask - 1) & mask
        while sub_m:
            if sub_m & low:
                cand = dp[sub_m] + dp[mask ^ sub_m]
                better = cand < base
                base[better] = cand[better]
                arg[better] = sub_m
            sub_m = (sub_m - 1) & mask
        total = base[:, None] + D
        u = np.argmin(total, axis=0)
        dp[mask] = total[u, np.arange(V)]
        via[mask] = u
        split[mask] = arg[u]

    edges: set[tuple[int, int]] = set()

    def add_path(u: int, v: int):
        while v != u:
            p = P[u, v]
            edges.add((min(p, v), max(p, v)))
            v = p

    def build(mask: int, v: int):
        u = int(via[mask, v])
        add_path(u, v)
        if mask & (mask - 1) == 0:
            return
        s = int(split[mask, v])
        build(s, u)
        build(mask ^ s, u)

    build(full, root)
    return [(int(keep[a]), int(keep[b])) for a, b in edges]


def steiner_exact(g: ArchitectureGraph, terminals, limit: int = EXACT_LIMIT) -> SteinerResult:
    """Minimum Steiner tree (edge count) by Dreyfus-Wagner dynamic programming.

    Raises:
        CapacityError: More than ``limit`` terminals; use the heuristic.
        InfeasibleError: Terminals in different components.
    """
    ts = _check_terminals(g, terminals)
    if len(ts) > limit:
        raise CapacityError(
            f"routing: {len(ts)} terminals exceed the exact limit {limit}; use steiner_heuristic"
        )
    trivial = _trivial(g, ts, "exact")
    if trivial is not None:
        return trivial

    def compute():
        upper = steiner_heuristic(g, ts).cost
        edges = _dreyfus_wagner(g, ts, upper)
        return _result(_prune(edges, set(ts)), ts, "exact")

    return _cached(g, "exact", ts, compute)


def steiner_tree(g: ArchitectureGraph, terminals, exact_limit: int = EXACT_LIMIT) -> SteinerResult:
    """Exact tree when at most ``exact_limit`` terminals, heuristic otherwise."""
    ts = _check_terminals(g, terminals)
    if len(ts) <= exact_limit:
        return steiner_exact(g, ts, exact_limit)
    return steiner_heuristic(g, ts)


def interaction_qubit_count(op: PauliOperator, g: ArchitectureGraph, exact_limit: int = EXACT_LIMIT) -> int:
    """Qubits touched when executing ``op``: Steiner vertex count over its support."""
    return route_operator(op, g, exact_limit).vertex_count


def route_operator(op: PauliOperator, g: ArchitectureGraph, exact_limit: int = EXACT_LIMIT) -> SteinerResult:
    support = sorted(op.support())
    if not support:
        raise ConfigurationError("routing: operator has empty support")
    if support[-1] >= g.n_vertices:
        raise ConfigurationError("routing: operator acts outside the architecture graph")
    return steiner_tree(g, support, exact_limit)
