"""Pure-Python game-tree search kernel.

Same contract as the compiled kernel in ``_kernel.pyx``: exact win/loss
search over states (used-edge mask, both positions, turn), memoized on that
tuple, with a node budget. Selected at import time by ``solver`` when the
compiled extension is unavailable (or forced via TRAILTRAP_KERNEL=pure).
"""

from __future__ import annotations

KERNEL_NAME = "pure"


class _Abort(Exception):
    pass


class Searcher:
    """Win/loss searcher over one fixed graph.

    ``adj`` is the flattened adjacency: for vertex v, ``adj[v]`` is a tuple
    of (edge_index, neighbor) pairs in the move-ordering the driver chose.
    """

    __slots__ = ("adj", "table", "cap", "budget", "nodes")

    def __init__(self, adj, tt_bits: int, budget: int):
        self.adj = adj
        self.table: dict = {}
        self.cap = 1 << tt_bits
        self.budget = budget
        self.nodes = 0

    def search_root(self, mask: int, p1: int, p2: int, turn: int) -> int:
        """1 if the player to move wins, 0 if they lose, -1 on budget blow."""
        try:
            return 1 if self._win(mask, p1, p2, turn) else 0
        except _Abort:
            return -1

    def _win(self, mask: int, p1: int, p2: int, turn: int) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _Abort
        key = (mask, p1, p2, turn)
        table = self.table
        cached = table.get(key)
        if cached is not None:
            return cached
        result = False
        if turn == 0:
            for e, nb in self.adj[p1]:
                if not mask >> e & 1:
                    if not self._win(mask | (1 << e), nb, p2, 1):
                        result = True
                        break
        else:
            for e, nb in self.adj[p2]:
                if not mask >> e & 1:
                    if not self._win(mask | (1 << e), p1, nb, 0):
                        result = True
                        break
        if len(table) >= self.cap:
            table.clear()
        table[key] = result
        return result
