"""Trail Trap: exact solving, verified strategies, and reduction gadgets.

Subpackage map:

- ``graphs``: graph type, generators, metrics, involutions, canonical forms
- ``engine``: game rules (moves, partial games, apply/undo, termination)
- ``solver``: exhaustive memoized search with opening pruning
- ``trees``: the quadratic-time tree algorithm and its screens
- ``strategies``: constructive strategies plus exhaustive verification
- ``census``: enumerate-and-solve over all small connected graphs
- ``hardness``: the edge-replacement gadget and pendant/path reductions
- ``cli``: command line front end (``trailtrap --help``)
"""

from .engine import Move, PartialGame, new_game, P1, P2
from .graphs import Graph, GraphError, BudgetExceededError, build_graph
from .solver import Outcome, solve, solve_partial

__all__ = [
    "Move",
    "PartialGame",
    "new_game",
    "P1",
    "P2",
    "Graph",
    "GraphError",
    "BudgetExceededError",
    "build_graph",
    "Outcome",
    "solve",
    "solve_partial",
]

__version__ = "0.1.0"
