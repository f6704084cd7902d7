"""Specialized winner computation for trees.

On a tree every trail is a path, so the longest trail from a vertex is its
eccentricity and the game is governed by distances to the center:

- a winning first move must end at a central vertex, and with two centers it
  must be the move between them;
- the entered center must have degree exactly 3 (and with two centers the
  tail must have degree 2);
- structural screens on the branches at the center (diameter of the branch
  entered, and whether removing it shifts the center) are necessary but not
  sufficient for a first-player win.

What survives the screens is decided exactly by fixing both opening moves
and searching the remainder (the rooted game where both tokens start on
known vertices). That keeps the outer loop at "few openings x O(n) replies"
even though the per-reply subroutine here is a memoized search rather than
a linear-time procedure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import graphs
from .engine import Move, P1, P2, replay
from .graphs import Graph, GraphError
from .solver import (
    DEFAULT_TT_BITS,
    Outcome,
    _p1_wins_with,
    make_searcher,
    solve_partial,
)


def is_tree(g: Graph) -> bool:
    return g.m == g.n - 1 and graphs.is_connected(g)


def tree_centers(g: Graph) -> list[int]:
    """Centers by iterative leaf stripping (linear time)."""
    if not is_tree(g):
        raise GraphError("tree_centers needs a tree")
    n = g.n
    if n <= 2:
        return list(range(n))
    deg = [g.degree(v) for v in range(n)]
    removed = [False] * n
    layer = [v for v in range(n) if deg[v] == 1]
    alive = n
    while alive > 2:
        for v in layer:
            removed[v] = True
        nxt = []
        for v in layer:
            for w, _ in g.adj[v]:
                if not removed[w]:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        alive -= len(layer)
        layer = nxt
    return sorted(layer)


def _component_with(g: Graph, v: int, banned_mask: int) -> list[int]:
    """Vertices reachable from v without crossing banned edges."""
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for w, e in g.adj[u]:
            if not banned_mask >> e & 1 and w not in seen:
                seen.add(w)
                stack.append(w)
    return sorted(seen)


def cut_edge_criterion(g: Graph, uv: Move, xy: int) -> bool:
    """Two-edge-deletion refutation of the opening ``uv``.

    True iff for some endpoint y of edge ``xy``, deleting both edges leaves
    the opening's head v and y in different components with the longest
    trail from y at least as long as the longest trail from v. In that case
    the second player answers x -> y and simply out-walks the first player:
    the components cannot interfere, the first player makes at most
    1 + trail(v) moves, the second makes at least trail(y) >= trail(v).

    Holds on arbitrary graphs, not only trees.
    """
    if xy == uv.edge:
        raise GraphError("cut_edge_criterion needs two distinct edges")
    banned = (1 << uv.edge) | (1 << xy)
    v = uv.head
    side_v = set(_component_with(g, v, banned))
    trail_v: Optional[int] = None
    for y in g.edges[xy]:
        if y in side_v:
            continue
        if trail_v is None:
            trail_v = graphs.longest_trail_from(g, v, used=banned)
        if graphs.longest_trail_from(g, y, used=banned) >= trail_v:
            return True
    return False


def tree_candidate_openings(g: Graph) -> list[Move]:
    """First moves that can possibly win on a tree (degree/center screen).

    Single center c: the three moves into c when deg(c) == 3, else nothing.
    Two centers: the single move from the degree-2 center into the degree-3
    center when the degrees are exactly (3, 2), else nothing. Trees with at
    most one edge are handled by the callers.
    """
    if not is_tree(g):
        raise GraphError("tree_candidate_openings needs a tree")
    if g.m == 0:
        return []
    if g.m == 1:
        u, v = g.edges[0]
        return [Move(0, u, v), Move(0, v, u)]
    centers = tree_centers(g)
    if len(centers) == 1:
        c = centers[0]
        if g.degree(c) != 3:
            return []
        return [Move(e, w, c) for w, e in g.adj[c]]
    c1, c2 = centers
    if g.degree(c1) < g.degree(c2):
        c1, c2 = c2, c1
    if g.degree(c1) != 3 or g.degree(c2) != 2:
        return []
    return [Move(g.edge_index(c2, c1), c2, c1)]


@dataclass(frozen=True)
class TreeAnalysis:
    """Everything the tree algorithm derives before any game search."""

    centers: tuple[int, ...]
    radius: int
    diameter: int
    candidate_first_moves: tuple[Move, ...]
    viable_first_moves: tuple[Move, ...]
    conditions_met: bool
    failed_clause: Optional[str]


def _subtree_metrics(g: Graph, verts: list[int]) -> tuple[Graph, list[int]]:
    return graphs.induced_subgraph(g, verts)


def _passes_opening_screens(g: Graph, tail: int, c: int, r: int) -> tuple[bool, str]:
    """Screens for the opening tail -> c on a single-center tree of radius r:
    the branch entered from must have diameter <= r, and removing that branch
    must leave c as the unique center of what remains."""
    e = g.edge_index(tail, c)
    banned = 1 << e
    branch, _ = _subtree_metrics(g, _component_with(g, tail, banned))
    if graphs.diameter(branch) > r:
        return False, "branch-diameter"
    rest_vertices = _component_with(g, c, banned)
    rest, old = _subtree_metrics(g, rest_vertices)
    rest_centers = [old[v] for v in graphs.center(rest)]
    if rest_centers != [c]:
        return False, "recentering"
    return True, ""


def analyze_tree(g: Graph) -> TreeAnalysis:
    """Centers, radii, candidate openings, and the structural screens.

    ``conditions_met`` False certifies a second-player win; True only means
    the screens cannot decide (the game search must finish the job).
    """
    if not is_tree(g):
        raise GraphError("analyze_tree needs a tree")
    centers = tuple(tree_centers(g))
    r = graphs.radius(g)
    d = graphs.diameter(g)
    if g.m == 0:
        return TreeAnalysis(centers, r, d, (), (), False, "edgeless")
    if g.m == 1:
        moves = tuple(tree_candidate_openings(g))
        return TreeAnalysis(centers, r, d, moves, moves, True, None)
    candidates = tuple(tree_candidate_openings(g))
    if not candidates:
        return TreeAnalysis(centers, r, d, (), (), False, "center-degree")
    if len(centers) == 1:
        c = centers[0]
        viable = []
        failures = set()
        for mv in candidates:
            ok, why = _passes_opening_screens(g, mv.tail, c, r)
            if ok:
                viable.append(mv)
            else:
                failures.add(why)
        if viable:
            return TreeAnalysis(centers, r, d, candidates, tuple(viable), True, None)
        return TreeAnalysis(
            centers, r, d, candidates, (), False, "+".join(sorted(failures))
        )
    # Two centers: the lone candidate move is c2 -> c1; the screens apply to
    # the two sides of the central edge, with the diameter bound r - 1 on
    # the tail side.
    mv = candidates[0]
    c2, c1 = mv.tail, mv.head
    banned = 1 << mv.edge
    tail_side, _ = _subtree_metrics(g, _component_with(g, c2, banned))
    if graphs.diameter(tail_side) > r - 1:
        return TreeAnalysis(centers, r, d, candidates, (), False, "branch-diameter")
    head_side, old = _subtree_metrics(g, _component_with(g, c1, banned))
    head_centers = [old[v] for v in graphs.center(head_side)]
    if head_centers != [c1]:
        return TreeAnalysis(centers, r, d, candidates, (), False, "recentering")
    return TreeAnalysis(centers, r, d, candidates, candidates, True, None)


def rpeg_tree(
    g: Graph,
    m1: Move,
    m2: Move,
    *,
    budget: Optional[int] = None,
    tt_bits: int = DEFAULT_TT_BITS,
    kernel=None,
) -> int:
    """Exact winner of the rooted continuation after both opening moves.

    Both tokens are placed and every later move is forced to extend a trail,
    so this is the rooted two-token edge game on the remaining graph.
    """
    if not is_tree(g):
        raise GraphError("rpeg_tree needs a tree")
    if m1.edge == m2.edge:
        raise GraphError("opening moves must use distinct edges")
    game = replay(g, [m1, m2])
    p1_wins = solve_partial(game, budget=budget, tt_bits=tt_bits, kernel=kernel)
    return P1 if p1_wins else P2


def solve_tree(
    g: Graph,
    *,
    budget: Optional[int] = None,
    tt_bits: int = DEFAULT_TT_BITS,
    kernel=None,
) -> Outcome:
    """Tree winner: structural screens first, then the rooted game for each
    surviving opening against all of the opponent's O(n) replies.

    Agrees with the exhaustive solver on every tree (checked wholesale in
    the test suite).
    """
    if not is_tree(g):
        raise GraphError("solve_tree needs a tree")
    if g.m == 0:
        return Outcome(P2, None, 0)
    if g.m == 1:
        u, v = g.edges[0]
        return Outcome(P1, Move(0, u, v), 0)
    analysis = analyze_tree(g)
    if not analysis.conditions_met:
        return Outcome(P2, None, 0)
    searcher = make_searcher(g, tt_bits, budget, kernel)
    for m1 in analysis.viable_first_moves:
        if _p1_wins_with(searcher, g, m1):
            return Outcome(P1, m1, searcher.nodes)
    return Outcome(P2, None, searcher.nodes)
