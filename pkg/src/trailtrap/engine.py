"""Rules of Trail Trap: moves, partial games, legality, termination.

Two players grow edge-disjoint trails with separate tokens. On the first
move a player places their token on any vertex and immediately traverses an
unused incident edge; afterwards each move extends that player's trail from
its current endpoint along an unused edge. Edges are consumed globally (a
move by either player retires the edge for both), vertices are never
blocked, and tokens may share a vertex. The first player unable to move
loses, so the game cannot draw.

A r-move prefix is represented by ``PartialGame``: the ordered move list,
a used-edge bitmask, both token positions, and whose turn it is (player one
moves on odd turns, counting from one). ``apply``/``undo`` are exact
inverses so search code can walk the game tree in place.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .graphs import Graph

P1 = 1
P2 = 2


class IllegalMoveError(ValueError):
    """Raised when a move violates the rules at the current state."""


@dataclass(frozen=True)
class Move:
    """Directed traversal of one edge: tail -> head."""

    edge: int
    tail: int
    head: int

    def inverse(self) -> "Move":
        return Move(self.edge, self.head, self.tail)

    def as_record(self) -> dict:
        return {"edge": self.edge, "tail": self.tail, "head": self.head}

    def __str__(self) -> str:
        return f"{self.tail}->{self.head}"


def move_between(g: Graph, tail: int, head: int) -> Move:
    """Build the move along the edge joining ``tail`` and ``head``."""
    return Move(g.edge_index(tail, head), tail, head)


class PartialGame:
    """Mutable prefix of a game on a fixed graph.

    Invariants maintained by ``apply``/``undo``:
    - each edge occurs at most once in ``moves`` (mirrored in ``used``);
    - the head of move i equals the tail of move i+2 (each player's moves
      chain into a trail);
    - ``pos1``/``pos2`` are the heads of each player's latest move, or None
      before that player has placed.
    """

    __slots__ = ("graph", "moves", "used", "pos1", "pos2")

    def __init__(self, graph: Graph):
        self.graph = graph
        self.moves: list[Move] = []
        self.used: int = 0
        self.pos1: Optional[int] = None
        self.pos2: Optional[int] = None

    @property
    def turn(self) -> int:
        """Player to move: P1 iff an even number of moves have been made."""
        return P1 if len(self.moves) % 2 == 0 else P2

    def position_of(self, player: int) -> Optional[int]:
        return self.pos1 if player == P1 else self.pos2

    def legal_moves(self) -> list[Move]:
        """All legal moves for the player to move, in deterministic order.

        A player who has not moved yet may start anywhere: both orientations
        of every unused edge. Otherwise only unused edges incident to the
        player's position, oriented outward.
        """
        g = self.graph
        pos = self.position_of(self.turn)
        out: list[Move] = []
        if pos is None:
            for e, (u, v) in enumerate(g.edges):
                if not self.used >> e & 1:
                    out.append(Move(e, u, v))
                    out.append(Move(e, v, u))
            return out
        for w, e in g.adj[pos]:
            if not self.used >> e & 1:
                out.append(Move(e, pos, w))
        return out

    def is_legal(self, move: Move) -> bool:
        g = self.graph
        if not 0 <= move.edge < g.m:
            return False
        if g.edges[move.edge] != (min(move.tail, move.head), max(move.tail, move.head)):
            return False
        if self.used >> move.edge & 1:
            return False
        pos = self.position_of(self.turn)
        return pos is None or move.tail == pos

    def apply(self, move: Move) -> "PartialGame":
        """Play ``move`` for the player to move. Returns self."""
        if not self.is_legal(move):
            raise IllegalMoveError(
                f"illegal move {move} at turn {len(self.moves) + 1}"
            )
        if self.turn == P1:
            self.pos1 = move.head
        else:
            self.pos2 = move.head
        self.used |= 1 << move.edge
        self.moves.append(move)
        return self

    def undo(self) -> "PartialGame":
        """Retract the latest move exactly. Returns self."""
        if not self.moves:
            raise IllegalMoveError("nothing to undo")
        move = self.moves.pop()
        self.used &= ~(1 << move.edge)
        # The mover's position reverts to the head of their previous move.
        r = len(self.moves)
        prev = self.moves[r - 2].head if r >= 2 else None
        if self.turn == P1:
            self.pos1 = prev
        else:
            self.pos2 = prev
        return self

    def is_terminal(self) -> bool:
        return not self.legal_moves()

    def loser(self) -> int:
        """The player to move at a terminal state (they cannot move)."""
        if not self.is_terminal():
            raise IllegalMoveError("loser is defined only at terminal states")
        return self.turn

    def winner(self) -> int:
        return P2 if self.loser() == P1 else P1

    def trail_of(self, player: int) -> list[Move]:
        """The given player's move subsequence (their trail)."""
        start = 0 if player == P1 else 1
        return self.moves[start::2]

    def copy(self) -> "PartialGame":
        clone = PartialGame(self.graph)
        clone.moves = list(self.moves)
        clone.used = self.used
        clone.pos1 = self.pos1
        clone.pos2 = self.pos2
        return clone

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PartialGame)
            and self.graph == other.graph
            and self.moves == other.moves
            and self.used == other.used
            and self.pos1 == other.pos1
            and self.pos2 == other.pos2
        )

    def __repr__(self) -> str:
        seq = ", ".join(str(m) for m in self.moves)
        return f"PartialGame([{seq}], turn=P{self.turn})"


def new_game(graph: Graph) -> PartialGame:
    """Empty 0-move game, player one to move."""
    return PartialGame(graph)


def replay(graph: Graph, moves: Iterable[Move]) -> PartialGame:
    """Apply a move sequence from the empty game, validating each step."""
    game = new_game(graph)
    for move in moves:
        game.apply(move)
    return game


# ---------------------------------------------------------------------------
# Transcript serialization (JSON array of {edge, tail, head})
# ---------------------------------------------------------------------------


def transcript_dumps(moves: Iterable[Move]) -> str:
    return json.dumps([m.as_record() for m in moves])


def transcript_loads(text: str) -> list[Move]:
    records = json.loads(text)
    return [Move(r["edge"], r["tail"], r["head"]) for r in records]
