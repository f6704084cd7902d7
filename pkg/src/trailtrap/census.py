"""Solve every connected graph on up to 7 vertices and tabulate the winners.

Enumeration is exact up to isomorphism:

- n <= 6: iterate all edge subsets of the complete graph, keep the
  connected ones, and deduplicate by canonical form (at most 2^15 subsets);
- n == 7: 2^21 subsets times canonicalization is long-running, so the
  default ingests a graph6 file with the 853 connected 7-vertex graphs.
  A copy generated by this package ships as package data
  (``trailtrap/data/graph7c.g6``; see scripts/make_graph7c.py), and the
  subset enumerator remains available behind ``long_running=True``.

The census is embarrassingly parallel over graphs; ``jobs > 1`` fans out
to a process pool, and results are reassembled in input order so counts
and listings never depend on worker count.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations
from multiprocessing import Pool
from typing import Iterable, Iterator, Optional

from . import graphs
from .graphs import Graph, GraphError
from .solver import DEFAULT_TT_BITS, solve

CENSUS_MAX_N = 7
GRAPH7_RESOURCE = "graph7c.g6"


def _connected_edge_subset_graphs(n: int) -> Iterator[Graph]:
    """All connected graphs on n vertices, one per isomorphism class, by
    brute-force edge-subset enumeration with canonical deduplication."""
    all_pairs = list(combinations(range(n), 2))
    seen: set[bytes] = set()
    for mask in range(1 << len(all_pairs)):
        edges = [all_pairs[i] for i in range(len(all_pairs)) if mask >> i & 1]
        if len(edges) < n - 1:
            continue
        g = Graph(n, edges)
        if not graphs.is_connected(g):
            continue
        key = graphs.canonical_form(g)
        if key not in seen:
            seen.add(key)
            yield g


def load_graph6_file(path_or_text: str, is_text: bool = False) -> list[Graph]:
    if is_text:
        text = path_or_text
    else:
        with open(path_or_text, "r", encoding="ascii") as fh:
            text = fh.read()
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line:
            out.append(graphs.graph6_decode(line))
    return out


def packaged_graph7() -> list[Graph]:
    text = (
        resources.files("trailtrap")
        .joinpath("data", GRAPH7_RESOURCE)
        .read_text(encoding="ascii")
    )
    return load_graph6_file(text, is_text=True)


def enumerate_connected(
    n: int,
    graph6_file: Optional[str] = None,
    long_running: bool = False,
) -> list[Graph]:
    """Every connected graph on n vertices, exactly once up to isomorphism.

    ``graph6_file`` overrides the source for any n. For n == 7 without a
    file, the packaged graph6 data is used unless ``long_running`` asks for
    the built-in subset enumerator.
    """
    if not 1 <= n <= CENSUS_MAX_N:
        raise GraphError(f"census enumeration supports 1 <= n <= {CENSUS_MAX_N}")
    if graph6_file is not None:
        out = load_graph6_file(graph6_file)
        bad = [g for g in out if g.n != n or not graphs.is_connected(g)]
        if bad:
            raise GraphError(
                f"graph6 file contains {len(bad)} entries that are not "
                f"connected {n}-vertex graphs"
            )
        return out
    if n < 7 or long_running:
        return list(_connected_edge_subset_graphs(n))
    return packaged_graph7()


@dataclass(frozen=True)
class CensusEntry:
    graph6: str
    winner: int
    nodes: int
    millis: float


@dataclass(frozen=True)
class CensusReport:
    n: int
    total_connected: int
    p2_win: int
    p1_win_graph6: tuple[str, ...]
    entries: tuple[CensusEntry, ...] = field(repr=False)

    @property
    def p1_win(self) -> int:
        return self.total_connected - self.p2_win

    def as_dict(self, include_entries: bool = False) -> dict:
        out = {
            "n": self.n,
            "total_connected": self.total_connected,
            "p2_win": self.p2_win,
            "p1_win": self.p1_win,
            "p1_win_graph6": list(self.p1_win_graph6),
        }
        if include_entries:
            out["per_graph"] = [
                {
                    "graph6": e.graph6,
                    "winner": f"P{e.winner}",
                    "nodes": e.nodes,
                    "millis": round(e.millis, 3),
                }
                for e in self.entries
            ]
        return out


def _solve_one(args: tuple[str, Optional[int], int]) -> CensusEntry:
    g6, budget, tt_bits = args
    g = graphs.graph6_decode(g6)
    t0 = time.perf_counter()
    outcome = solve(g, budget=budget, tt_bits=tt_bits)
    millis = (time.perf_counter() - t0) * 1000
    return CensusEntry(g6, outcome.winner, outcome.nodes, millis)


def run_census(
    n: int,
    graph6_file: Optional[str] = None,
    long_running: bool = False,
    jobs: int = 1,
    budget: Optional[int] = None,
    tt_bits: int = DEFAULT_TT_BITS,
) -> CensusReport:
    """Solve every connected n-vertex graph and count second-player wins.

    A budget blow on any graph aborts the whole report (the per-graph
    exception carries the offending graph6 string), so a completed census
    is always exact.
    """
    gs = enumerate_connected(n, graph6_file=graph6_file, long_running=long_running)
    # Canonical graph6 of the canonical relabeling keeps listings stable
    # regardless of the enumeration source.
    g6s = [graphs.graph6_encode(graphs.canonical_relabel(g)) for g in gs]
    tasks = [(g6, budget, tt_bits) for g6 in sorted(g6s)]
    if jobs > 1:
        with Pool(jobs) as pool:
            entries = pool.map(_solve_one, tasks, chunksize=8)
    else:
        entries = [_solve_one(t) for t in tasks]
    p2 = sum(1 for e in entries if e.winner == 2)
    p1_list = tuple(e.graph6 for e in entries if e.winner == 1)
    return CensusReport(n, len(entries), p2, p1_list, tuple(entries))


def format_report(report: CensusReport) -> str:
    """Human-readable mirror of the published winners-per-order table.

    The published table rounds the percentage column; the exact fraction is
    reported alongside it.
    """
    frac = report.p2_win / report.total_connected if report.total_connected else 0.0
    lines = [
        "n  connected  P2-win  percent-P2-win",
        f"{report.n}  {report.total_connected:9d}  {report.p2_win:6d}  "
        f"{100 * frac:.1f}% ({report.p2_win}/{report.total_connected})",
    ]
    if report.p1_win_graph6:
        lines.append("P1-win graphs (canonical graph6): " + " ".join(report.p1_win_graph6))
    return "\n".join(lines)
