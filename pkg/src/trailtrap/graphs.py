"""Immutable undirected simple graphs and the metrics the solver relies on.

Everything downstream (game engine, solvers, strategy verifiers, gadget
builders) shares this vertex/edge-indexed representation:

- vertices are ``0..n-1``;
- edges carry stable integer indices ``0..m-1`` in construction order, so a
  game state can track used edges as a single bitmask;
- ``m`` is capped at 128 bits to keep solver masks compact.

Besides construction and the standard generators, the module provides the
graph machinery with actual content: BFS distances and centers, exact
longest-trail search (branch and bound), fixed-edge-free involutive
automorphism search, and a canonical labeling used to deduplicate
isomorphism classes in the census.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

MAX_EDGES = 128

INFINITE = math.inf


class GraphError(ValueError):
    """Raised for malformed graph input (self-loops, duplicates, bounds)."""


class BudgetExceededError(RuntimeError):
    """Raised when a search exceeds its configured node budget."""

    def __init__(self, nodes: int, message: str = "node budget exceeded"):
        super().__init__(f"{message} (nodes={nodes})")
        self.nodes = nodes


class Graph:
    """Undirected simple graph with stable vertex and edge indices.

    Attributes:
        n: vertex count.
        edges: tuple of ``(u, v)`` pairs with ``u < v``, indexed 0..m-1.
        adj: per-vertex tuple of ``(neighbor, edge_index)`` pairs, sorted by
            neighbor.

    Instances are immutable after construction and safe to share.
    """

    __slots__ = ("n", "edges", "adj", "_index")

    def __init__(self, n: int, edge_list: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        edges: list[tuple[int, int]] = []
        index: dict[tuple[int, int], int] = {}
        for u, v in edge_list:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"vertex out of range in edge ({u}, {v})")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in index:
                raise GraphError(f"duplicate edge {key}")
            index[key] = len(edges)
            edges.append(key)
        if len(edges) > MAX_EDGES:
            raise GraphError(f"too many edges ({len(edges)} > {MAX_EDGES})")
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for e, (u, v) in enumerate(edges):
            adj[u].append((v, e))
            adj[v].append((u, e))
        for lst in adj:
            lst.sort()
        self.n = n
        self.edges = tuple(edges)
        self.adj = tuple(tuple(lst) for lst in adj)
        self._index = index

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self._index

    def edge_index(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._index[key]
        except KeyError:
            raise GraphError(f"no edge between {u} and {v}") from None

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(w for w, _ in self.adj[v])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``i`` renamed to ``perm[i]``."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Validate and build a graph from an explicit edge list."""
    return Graph(n, edge_list)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("need n >= 1")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(p: int, q: int) -> Graph:
    """K_{p,q}: left part 0..p-1, right part p..p+q-1."""
    if p < 1 or q < 1:
        raise GraphError("need p, q >= 1")
    return Graph(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("need n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product; vertex ``(a, b)`` is numbered ``a * h.n + b``."""
    edges = []
    for a in range(g.n):
        for b1, b2 in h.edges:
            edges.append((a * h.n + b1, a * h.n + b2))
    for a1, a2 in g.edges:
        for b in range(h.n):
            edges.append((a1 * h.n + b, a2 * h.n + b))
    return Graph(g.n * h.n, edges)


def grid(m: int, n: int) -> Graph:
    """m x n grid (product of two paths); vertex ``(i, j)`` is ``i * n + j``."""
    return cartesian_product(path(m), path(n))


def prism(n: int) -> Graph:
    """n-gonal prism: two n-cycles 0..n-1 and n..2n-1 joined by rungs i--(n+i)."""
    if n < 3:
        raise GraphError("prism needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    return Graph(2 * n, edges)


def tree_from_parents(parents: Sequence[int]) -> Graph:
    """Tree on ``len(parents) + 1`` vertices; ``parents[i]`` is the parent of
    vertex ``i + 1`` and must be an earlier vertex."""
    n = len(parents) + 1
    edges = []
    for i, p in enumerate(parents, start=1):
        if not 0 <= p < i:
            raise GraphError(f"parent of vertex {i} must be in 0..{i - 1}")
        edges.append((p, i))
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# Distances, centers, connectivity
# ---------------------------------------------------------------------------


def bfs_distances(g: Graph, source: int) -> list[float]:
    """BFS distances from ``source``; unreachable vertices get ``INFINITE``."""
    dist: list[float] = [INFINITE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w, _ in g.adj[u]:
            if dist[w] == INFINITE:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance(g: Graph, u: int, v: int) -> float:
    return bfs_distances(g, u)[v]


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by least vertex."""
    seen = [False] * g.n
    out = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w, _ in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``vertices``; returns (subgraph, old-id list) where
    new vertex ``i`` corresponds to ``old[i]``."""
    old = sorted(vertices)
    new_id = {v: i for i, v in enumerate(old)}
    edges = [
        (new_id[u], new_id[v])
        for u, v in g.edges
        if u in new_id and v in new_id
    ]
    return Graph(len(old), edges), old


def eccentricities(g: Graph) -> list[int]:
    if not is_connected(g):
        raise GraphError("eccentricity needs a connected graph")
    out = []
    for v in range(g.n):
        dist = bfs_distances(g, v)
        out.append(int(max(dist)) if g.n > 1 else 0)
    return out


def radius(g: Graph) -> int:
    return min(eccentricities(g))


def diameter(g: Graph) -> int:
    return max(eccentricities(g))


def center(g: Graph) -> list[int]:
    ecc = eccentricities(g)
    r = min(ecc)
    return [v for v in range(g.n) if ecc[v] == r]


def is_bipartite(g: Graph) -> Optional[list[int]]:
    """Two-color the graph; returns the color list or None if impossible."""
    color: list[int] = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w, _ in g.adj[u]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


# ---------------------------------------------------------------------------
# Longest trails (exact, branch and bound)
# ---------------------------------------------------------------------------


def _reachable_trail_bound(g: Graph, start: int, used: int) -> int:
    """Upper bound on the length of a trail from ``start`` over unused edges.

    Counts unused edges reachable from ``start`` and subtracts the shortfall
    forced by odd-degree vertices: a subgraph with k odd-degree vertices needs
    max(1, k/2) edge-disjoint trails to cover it, so one trail misses at least
    k/2 - 1 of them.
    """
    seen = 1 << start
    stack = [start]
    edges_reach = 0
    odd = 0
    while stack:
        u = stack.pop()
        deg_u = 0
        for w, e in g.adj[u]:
            if used >> e & 1:
                continue
            deg_u += 1
            edges_reach += 1
            if not seen >> w & 1:
                seen |= 1 << w
                stack.append(w)
        if deg_u % 2 == 1:
            odd += 1
    edges_reach //= 2
    if edges_reach == 0:
        return 0
    return edges_reach - max(0, odd // 2 - 1)


def longest_trail_from(
    g: Graph,
    start: int,
    used: int = 0,
    budget: Optional[int] = None,
) -> int:
    """Exact maximum length of a trail starting at ``start``.

    ``used`` marks edges already unavailable. ``budget`` caps the number of
    search nodes; exceeding it raises BudgetExceededError. Worst case is
    exponential; the reachability/parity bound prunes hard in practice.
    """
    best = 0
    nodes = 0

    def rec(v: int, mask: int, length: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceededError(nodes, "trail search budget exceeded")
        if length > best:
            best = length
        if length + _reachable_trail_bound(g, v, mask) <= best:
            return
        for w, e in g.adj[v]:
            if not mask >> e & 1:
                rec(w, mask | (1 << e), length + 1)

    rec(start, used, 0)
    return best


def longest_trail(g: Graph, budget: Optional[int] = None) -> int:
    """Exact maximum trail length over all starting vertices."""
    best = 0
    for v in range(g.n):
        # Only start vertices can beat the bound.
        if _reachable_trail_bound(g, v, 0) > best:
            best = max(best, longest_trail_from(g, v, budget=budget))
    return best


def has_hamiltonian_path(g: Graph, s: int, t: int) -> bool:
    """Backtracking test for a spanning path from s to t."""
    if g.n == 1:
        return s == t
    if s == t:
        return False
    visited = [False] * g.n

    def rec(v: int, remaining: int) -> bool:
        if remaining == 0:
            return v == t
        visited[v] = True
        for w, _ in g.adj[v]:
            if not visited[w] and (w != t or remaining == 1):
                if rec(w, remaining - 1):
                    visited[v] = False
                    return True
        visited[v] = False
        return False

    return rec(s, g.n - 1)


def has_hamiltonian_cycle_through(g: Graph, u: int, v: int) -> bool:
    """Does some Hamiltonian cycle use the edge uv?"""
    e = g.edge_index(u, v)
    rest = Graph(g.n, [pair for i, pair in enumerate(g.edges) if i != e])
    return has_hamiltonian_path(rest, u, v)


# ---------------------------------------------------------------------------
# Involutive automorphisms with no fixed edges
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Involution:
    """A self-inverse, edge-preserving vertex permutation that maps every
    edge to a different edge. Certifies a second-player win via mirroring."""

    perm: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.perm[v]


def check_involution(g: Graph, perm: Sequence[int]) -> None:
    """Raise GraphError unless ``perm`` is a fixed-edge-free involutive
    automorphism of ``g``."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError("not a permutation")
    for v in range(g.n):
        if perm[perm[v]] != v:
            raise GraphError("not an involution")
    mapped = set()
    for u, v in g.edges:
        pu, pv = perm[u], perm[v]
        if not g.has_edge(pu, pv):
            raise GraphError("not edge-preserving")
        if {pu, pv} == {u, v}:
            raise GraphError(f"fixed edge ({u}, {v})")
        mapped.add((min(pu, pv), max(pu, pv)))
    if len(mapped) != g.m:
        raise GraphError("not edge-preserving")


def find_involution_no_fixed_edges(g: Graph) -> Optional[Involution]:
    """Search for an involutive automorphism with no fixed edges.

    Backtracks over vertex pairings: each vertex is either matched with a
    non-adjacent vertex of equal degree or fixed, with incremental
    edge-preservation checks. Fixed points must form an independent set
    (an edge between two fixed points would be a fixed edge), and a matched
    pair must be non-adjacent (the edge between them would map to itself).
    Exhaustive, so a None result means no such automorphism exists.
    """
    n = g.n
    deg = [g.degree(v) for v in range(n)]
    phi: list[int] = [-1] * n

    def consistent(v: int, image: int) -> bool:
        for u in range(n):
            pu = phi[u]
            if pu == -1 or u == v:
                continue
            if g.has_edge(v, u) != g.has_edge(image, pu):
                return False
        return True

    def rec(v: int) -> bool:
        while v < n and phi[v] != -1:
            v += 1
        if v == n:
            return True
        for w in range(v + 1, n):
            if phi[w] != -1 or deg[w] != deg[v] or g.has_edge(v, w):
                continue
            if consistent(v, w) and consistent(w, v):
                phi[v], phi[w] = w, v
                if rec(v + 1):
                    return True
                phi[v] = phi[w] = -1
        # Fixed point: no neighbor may already be fixed.
        if all(phi[w] != w for w, _ in g.adj[v]) and consistent(v, v):
            phi[v] = v
            if rec(v + 1):
                return True
            phi[v] = -1
        return False

    if rec(0):
        inv = Involution(tuple(phi))
        check_involution(g, inv.perm)
        return inv
    return None


# ---------------------------------------------------------------------------
# Canonical labeling (for isomorphism tests and census dedup)
# ---------------------------------------------------------------------------

CANONICAL_MAX_N = 10


def _refine_partition(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement: split cells by neighbor counts into every cell,
    keeping a deterministic, label-independent cell order."""
    while True:
        signatures = {}
        for ci, cell in enumerate(cells):
            for v in cell:
                counts = [0] * len(cells)
                for w, _ in g.adj[v]:
                    for cj, other in enumerate(cells):
                        if w in other:
                            counts[cj] += 1
                            break
                signatures[v] = (ci, tuple(counts))
        new_cells: dict[tuple, list[int]] = {}
        for v in sorted(signatures):
            new_cells.setdefault(signatures[v], []).append(v)
        result = [new_cells[key] for key in sorted(new_cells)]
        if len(result) == len(cells):
            return result
        cells = result


def _canonical_search(
    g: Graph, colors: Optional[Sequence[int]]
) -> tuple[list[int], list[int]]:
    """Shared minimizer: returns (best column list, minimizing vertex order).

    Minimizes the upper-triangle adjacency bitstring (read column by column)
    over all vertex orders consistent with the refined color/degree
    partition. Cells of the refined partition are label-independent, so
    restricting to cell-respecting orders preserves canonicity while cutting
    the search from n! to a product of cell factorials.

    Branch and bound: ``best`` always holds an achievable-or-looser bound
    (columns fixed so far, all-ones sentinels below); a branch is cut as soon
    as its column exceeds best, and best is overwritten in place whenever a
    column improves on it.
    """
    n = g.n
    if colors is None:
        start = [list(range(n))]
    else:
        by_color: dict[int, list[int]] = {}
        for v in range(n):
            by_color.setdefault(colors[v], []).append(v)
        start = [by_color[c] for c in sorted(by_color)]
    cells = _refine_partition(g, start)

    cell_of_position: list[int] = []
    for ci, cell in enumerate(cells):
        cell_of_position.extend([ci] * len(cell))

    sentinel = (1 << n) - 1
    best = [sentinel] * n
    best_order = [0] * n
    order: list[int] = []
    used = [False] * n
    adj_bits = [0] * n
    for u, v in g.edges:
        adj_bits[u] |= 1 << v
        adj_bits[v] |= 1 << u

    def rec(pos: int) -> None:
        if pos == n:
            best_order[:] = order
            return
        for v in cells[cell_of_position[pos]]:
            if used[v]:
                continue
            col = 0
            bits = adj_bits[v]
            for i in range(pos):
                col = (col << 1) | (bits >> order[i] & 1)
            if col > best[pos]:
                continue
            if col < best[pos]:
                best[pos] = col
                for k in range(pos + 1, n):
                    best[k] = sentinel
            used[v] = True
            order.append(v)
            rec(pos + 1)
            order.pop()
            used[v] = False

    rec(0)
    return best, best_order


def canonical_form(g: Graph, colors: Optional[Sequence[int]] = None) -> bytes:
    """Canonical byte string: equal iff the (colored) graphs are isomorphic."""
    n = g.n
    if n > CANONICAL_MAX_N:
        raise GraphError(f"canonical_form supports n <= {CANONICAL_MAX_N}")
    if n == 0:
        return b"\x00"
    best, _ = _canonical_search(g, colors)
    return bytes([n]) + b"".join(col.to_bytes((n + 7) // 8, "big") for col in best)


def canonical_relabel(g: Graph) -> Graph:
    """Relabel ``g`` into its canonical vertex order (no colors)."""
    if g.n == 0:
        return g
    _, order = _canonical_search(g, None)
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return g.relabel(perm)


# ---------------------------------------------------------------------------
# Directed-edge orbits (root symmetry reduction for the solver)
# ---------------------------------------------------------------------------


def directed_edge_orbits(g: Graph) -> list[tuple[int, int, int]]:
    """One representative ``(edge_index, tail, head)`` per orbit of directed
    edges under the automorphism group.

    Two directed edges are equivalent iff the canonical forms of the graph
    with (tail, head) marked by colors agree. Representatives are the
    lowest (edge_index, orientation) in each class, in that order.
    """
    seen: dict[bytes, tuple[int, int, int]] = {}
    out = []
    for e, (u, v) in enumerate(g.edges):
        for tail, head in ((u, v), (v, u)):
            colors = [0] * g.n
            colors[tail] = 1
            colors[head] = 2
            key = canonical_form(g, colors)
            if key not in seen:
                seen[key] = (e, tail, head)
                out.append((e, tail, head))
    return out


# ---------------------------------------------------------------------------
# Text formats: edge lists and graph6
# ---------------------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the plain text format: first line ``n m``, then m lines ``u v``."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise GraphError("empty edge-list input")
    try:
        n, m = map(int, lines[0].split())
        pairs = [tuple(map(int, ln.split())) for ln in lines[1 : m + 1]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(pairs) != m:
        raise GraphError(f"expected {m} edges, found {len(pairs)}")
    return Graph(n, pairs)  # type: ignore[arg-type]


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def graph6_decode(text: str) -> Graph:
    """Decode one graph6 string (n <= 62; the standard 6-bit encoding of the
    upper triangle of the adjacency matrix, bytes offset by 63)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise GraphError("empty graph6 string")
    data = [ord(ch) - 63 for ch in s]
    if any(b < 0 or b > 63 for b in data):
        raise GraphError("graph6 byte out of range")
    n = data[0]
    if n == 63:
        raise GraphError("graph6 with n > 62 not supported")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - 1 != need:
        raise GraphError(f"graph6 length mismatch for n={n}")
    bits = []
    for b in data[1:]:
        bits.extend((b >> shift) & 1 for shift in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def graph6_encode(g: Graph) -> str:
    if g.n > 62:
        raise GraphError("graph6 with n > 62 not supported")
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)
