"""Exact outcome computation by memoized AND/OR game-tree search.

The driver owns the opening phase, where one or both tokens are still
unplaced: the first player's candidate openings are screened (a winning
first move must end on a vertex of degree at least three once the graph has
two or more edges; on trees only moves into the center survive; optionally
one representative per automorphism orbit), and the second player's
placement replies are enumerated directly. States with both tokens placed
are handed to a search kernel that memoizes on (used-edge mask, positions,
turn).

Two interchangeable kernels exist: a compiled Cython extension and a pure
Python fallback. The compiled one is picked automatically when importable;
set TRAILTRAP_KERNEL=pure or =compiled to force a choice, and see
``trailtrap.bench`` for a side-by-side timing.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Optional

from . import graphs
from .engine import Move, P1, P2, PartialGame, new_game
from .graphs import (
    BudgetExceededError,
    Graph,
    GraphError,
    Involution,
    directed_edge_orbits,
    find_involution_no_fixed_edges,
)

DEFAULT_TT_BITS = 20
UNLIMITED = 1 << 62

from . import _pykernel

try:
    from . import _kernel  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on build environment
    _kernel = None


def available_kernels() -> dict:
    out = {"pure": _pykernel}
    if _kernel is not None:
        out["compiled"] = _kernel
    return out


def active_kernel():
    """Kernel module selected by TRAILTRAP_KERNEL, default compiled if built."""
    forced = os.environ.get("TRAILTRAP_KERNEL")
    kernels = available_kernels()
    if forced:
        try:
            return kernels[forced]
        except KeyError:
            raise RuntimeError(f"kernel {forced!r} not available") from None
    return kernels.get("compiled", _pykernel)


@dataclass(frozen=True)
class Outcome:
    """Game value of a graph: the winner and, for first-player wins, a
    winning first move (the lowest-indexed one unless orbit reduction is on)."""

    winner: int
    witness_first_move: Optional[Move]
    nodes: int

    def as_dict(self) -> dict:
        return {
            "winner": f"P{self.winner}",
            "witness": (
                self.witness_first_move.as_record()
                if self.witness_first_move
                else None
            ),
            "nodes": self.nodes,
        }


def _search_adjacency(g: Graph):
    """Flattened adjacency in move order: higher-degree heads first (they
    keep more continuations open), edge index as tiebreak."""
    return tuple(
        tuple(
            sorted(
                ((e, w) for w, e in g.adj[v]),
                key=lambda p: (-len(g.adj[p[1]]), p[0]),
            )
        )
        for v in range(g.n)
    )


def _auto_tt_bits(g: Graph, tt_bits: int) -> int:
    """Cap the table at the trivial state-count bound so small graphs do
    not pay for a table sized for big ones."""
    positions_bits = 2 * max(1, (max(g.n, 2) - 1).bit_length()) + 1
    return max(10, min(tt_bits, g.m + positions_bits))


def make_searcher(
    g: Graph,
    tt_bits: int = DEFAULT_TT_BITS,
    budget: Optional[int] = None,
    kernel=None,
):
    mod = kernel if kernel is not None else active_kernel()
    limit = UNLIMITED if budget is None else budget
    return mod.Searcher(_search_adjacency(g), _auto_tt_bits(g, tt_bits), limit)


def _directed_moves(g: Graph, skip_mask: int = 0) -> Iterator[Move]:
    for e, (u, v) in enumerate(g.edges):
        if not skip_mask >> e & 1:
            yield Move(e, u, v)
            yield Move(e, v, u)


def _reply_order(g: Graph, moves) -> list[Move]:
    return sorted(moves, key=lambda m: (-g.degree(m.head), m.edge, m.tail))


def prune_first_moves(g: Graph, symmetry: bool = False) -> list[Move]:
    """First moves for player one that are guaranteed to contain a winning
    move iff one exists.

    - one or zero edges: trivial lists;
    - trees: only moves into the center, with the degree pattern a winning
      opening must have (degree-3 head; with two centers, the move between
      them from the degree-2 one);
    - otherwise: discard moves whose head has degree < 3 (such a move cannot
      start a winning strategy when the graph has at least two edges), and
      optionally reduce to one representative per automorphism orbit.
    """
    if g.m == 0:
        return []
    if g.m == 1:
        u, v = g.edges[0]
        return [Move(0, u, v), Move(0, v, u)]
    if g.m == g.n - 1 and graphs.is_connected(g):
        from .trees import tree_candidate_openings

        return tree_candidate_openings(g)
    if symmetry:
        candidates = [Move(e, t, h) for e, t, h in directed_edge_orbits(g)]
    else:
        candidates = list(_directed_moves(g))
    return [m for m in candidates if g.degree(m.head) >= 3]


def _first_move_refuted_by_cut_edge(g: Graph, m1: Move) -> bool:
    from .trees import cut_edge_criterion

    return any(
        cut_edge_criterion(g, m1, e) for e in range(g.m) if e != m1.edge
    )


def solve(
    g: Graph,
    *,
    budget: Optional[int] = None,
    tt_bits: int = DEFAULT_TT_BITS,
    symmetry: bool = False,
    cut_edge_prune: bool = False,
    kernel=None,
) -> Outcome:
    """Winner of the game on ``g`` under optimal play.

    ``symmetry`` restricts the first player's openings to automorphism-orbit
    representatives (answer-preserving; the witness becomes the lowest
    representative rather than the globally lowest winning move).
    ``cut_edge_prune`` additionally discards openings refuted by the
    two-edge-deletion trail comparison; it trades longest-trail computations
    for game search and pays off on sparse graphs with long corridors.
    Raises BudgetExceededError rather than guessing when the node budget is
    hit.
    """
    if g.m == 0:
        return Outcome(P2, None, 0)
    if g.m == 1:
        u, v = g.edges[0]
        return Outcome(P1, Move(0, u, v), 0)
    searcher = make_searcher(g, tt_bits, budget, kernel)
    for m1 in prune_first_moves(g, symmetry=symmetry):
        if cut_edge_prune and _first_move_refuted_by_cut_edge(g, m1):
            continue
        if _p1_wins_with(searcher, g, m1):
            return Outcome(P1, m1, searcher.nodes)
    return Outcome(P2, None, searcher.nodes)


def _p1_wins_with(searcher, g: Graph, m1: Move) -> bool:
    """Does the first player win after opening with ``m1``, against every
    placement reply?"""
    base = 1 << m1.edge
    replies = _reply_order(g, _directed_moves(g, skip_mask=base))
    for m2 in replies:
        result = searcher.search_root(
            base | (1 << m2.edge), m1.head, m2.head, 0
        )
        if result < 0:
            raise BudgetExceededError(searcher.nodes)
        if result == 0:
            return False
    return True


def solve_partial(
    game: PartialGame,
    *,
    budget: Optional[int] = None,
    tt_bits: int = DEFAULT_TT_BITS,
    kernel=None,
) -> bool:
    """True iff the player to move wins the continuation with optimal play."""
    win, _ = _solve_partial_counted(
        game, budget=budget, tt_bits=tt_bits, kernel=kernel
    )
    return win


def _solve_partial_counted(
    game: PartialGame,
    *,
    budget: Optional[int] = None,
    tt_bits: int = DEFAULT_TT_BITS,
    kernel=None,
) -> tuple[bool, int]:
    g = game.graph
    r = len(game.moves)
    if r == 0:
        outcome = solve(g, budget=budget, tt_bits=tt_bits, kernel=kernel)
        return outcome.winner == P1, outcome.nodes
    searcher = make_searcher(g, tt_bits, budget, kernel)
    if r == 1:
        # Second player still places freely; placement states are not
        # memoized (no position for them yet), so enumerate here.
        assert game.pos1 is not None
        replies = _reply_order(g, _directed_moves(g, skip_mask=game.used))
        for m2 in replies:
            result = searcher.search_root(
                game.used | (1 << m2.edge), game.pos1, m2.head, 0
            )
            if result < 0:
                raise BudgetExceededError(searcher.nodes)
            if result == 0:
                return True, searcher.nodes
        return False, searcher.nodes
    turn = 0 if game.turn == P1 else 1
    result = searcher.search_root(game.used, game.pos1, game.pos2, turn)
    if result < 0:
        raise BudgetExceededError(searcher.nodes)
    return bool(result), searcher.nodes


def involution_verdict(g: Graph) -> Optional[Involution]:
    """Second-player-win certificate, or None for "unknown".

    A fixed-edge-free involutive automorphism lets the second player mirror
    every move, so finding one settles the game without search. A None
    result asserts nothing (the graph may still be a second-player win).
    """
    return find_involution_no_fixed_edges(g)


def analyze_disconnected(
    g: Graph,
    *,
    budget: Optional[int] = None,
    tt_bits: int = DEFAULT_TT_BITS,
    kernel=None,
) -> Outcome:
    """Winner of a disconnected graph from per-component analysis.

    The first player wins iff some component H admits a winning strategy
    whose first move also starts a trail in H strictly longer than the best
    trail of every other component: the opening must both win the local
    fight and out-last an opponent who decamps to another component.
    Cross-checked against direct ``solve`` in the test suite.
    """
    comps = graphs.components(g)
    if len(comps) < 2:
        raise GraphError("analyze_disconnected needs a disconnected graph")
    subs = [graphs.induced_subgraph(g, comp) for comp in comps]
    trail_best = [graphs.longest_trail(sub) for sub, _ in subs]
    total_nodes = 0
    for ci, (sub, old) in enumerate(subs):
        rival = max(trail_best[cj] for cj in range(len(subs)) if cj != ci)
        for m1 in prune_first_moves(sub):
            reach = 1 + graphs.longest_trail_from(
                sub, m1.head, used=1 << m1.edge
            )
            if reach <= rival:
                continue
            game = new_game(sub).apply(m1)
            p2_wins, nodes = _solve_partial_counted(
                game, budget=budget, tt_bits=tt_bits, kernel=kernel
            )
            total_nodes += nodes
            if not p2_wins:
                witness = Move(
                    g.edge_index(old[m1.tail], old[m1.head]),
                    old[m1.tail],
                    old[m1.head],
                )
                return Outcome(P1, witness, total_nodes)
    return Outcome(P2, None, total_nodes)
