"""Shared fixtures: reference graphs and the independent plain-minimax oracle."""

import random

import pytest

from trailtrap import graphs as G
from trailtrap.engine import P1, P2, new_game


def diamond() -> G.Graph:
    """The four-vertex, five-edge graph of the worked example (a=0, b=1,
    c=2, d=3; the missing edge is a-d)."""
    return G.build_graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def fig2_disconnected() -> G.Graph:
    """Spider with three length-3 legs plus a disjoint 5-vertex path."""
    return G.build_graph(
        15,
        [
            (11, 2), (2, 1), (1, 0), (0, 5), (5, 6), (6, 13),
            (0, 3), (3, 4), (4, 12),
            (7, 8), (8, 9), (9, 10), (10, 14),
        ],
    )


def fig8_spider() -> G.Graph:
    """Single degree-3 center where every branch splits in two and reaches
    depth 3: each branch component has diameter 4 > radius 3."""
    edges = []
    c = 0
    nxt = 1
    for _ in range(3):
        a = nxt
        edges.append((c, a))
        b1, b2 = nxt + 1, nxt + 2
        edges += [(a, b1), (a, b2)]
        edges += [(b1, nxt + 3), (b2, nxt + 4)]
        nxt += 5
    return G.build_graph(16, edges)


def fig9a_tree() -> G.Graph:
    """The first-player-win example tree: center 0 with a leaf branch, a
    split depth-3 branch, and a path branch of depth 3."""
    return G.build_graph(
        10,
        [
            (0, 1),              # leaf branch
            (0, 2), (2, 3), (3, 4),          # path branch 0-2-3-4
            (2, 5), (5, 6),                  # split inside branch 2
            (0, 7), (7, 8), (8, 9),          # path branch 0-7-8-9
        ],
    )


def fig9b_tree() -> G.Graph:
    """The second-player-win example tree: like fig9a but both long
    branches stretched to depth 5 (parity flips the rooted fight)."""
    return G.build_graph(
        14,
        [
            (0, 1),
            (0, 2), (2, 3), (3, 4), (4, 5), (5, 6),
            (2, 7), (7, 8),
            (0, 9), (9, 10), (10, 11), (11, 12), (12, 13),
        ],
    )


def plain_minimax(game) -> bool:
    """Independent oracle: does the player to move win? No memoization, no
    pruning, nothing shared with the solver's search path."""
    moves = game.legal_moves()
    if not moves:
        return False
    for mv in moves:
        game.apply(mv)
        try:
            opponent_wins = plain_minimax(game)
        finally:
            game.undo()
        if not opponent_wins:
            return True
    return False


def plain_winner(g: G.Graph) -> int:
    return P1 if plain_minimax(new_game(g)) else P2


def connected_graphs_up_to(n_max: int):
    """All connected graphs with 2..n_max vertices, one per class (slow
    beyond 6)."""
    out = []
    for n in range(2, n_max + 1):
        seen = set()
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            g = G.Graph(n, edges)
            if not G.is_connected(g):
                continue
            key = G.canonical_form(g)
            if key not in seen:
                seen.add(key)
                out.append(g)
    return out


def random_connected_graph(rng: random.Random, n: int) -> G.Graph:
    """Random connected graph: random spanning tree plus random extras."""
    edges = set()
    for i in range(1, n):
        p = rng.randrange(i)
        edges.add((p, i))
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in edges and rng.random() < 0.3:
                edges.add((i, j))
    return G.Graph(n, sorted(edges))


@pytest.fixture(scope="session")
def small_census():
    """Connected graphs on up to 5 vertices (2 + 6 + 21 classes plus K2)."""
    return connected_graphs_up_to(5)
