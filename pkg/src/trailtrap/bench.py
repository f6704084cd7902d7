"""Benchmark the compiled search kernel against the pure-Python fallback.

Run as ``python -m trailtrap.bench [--heavy]``. Both kernels must return
identical winners (their transposition tables retain differently, so node
counts may differ); the table reports the speedup of the compiled path.
"""

from __future__ import annotations

import argparse
import time

from . import _pykernel
from . import graphs
from .solver import available_kernels, solve

CASES = [
    ("diamond", graphs.Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])),
    ("k_n:5", graphs.complete(5)),
    ("k_pq:3,3", graphs.complete_bipartite(3, 3)),
    ("grid:2,5", graphs.grid(2, 5)),
    ("prism:4", graphs.prism(4)),
]

HEAVY_CASES = [
    ("k_n:6", graphs.complete(6)),
    ("k_pq:3,5", graphs.complete_bipartite(3, 5)),
    ("grid:2,7", graphs.grid(2, 7)),
    ("prism:5", graphs.prism(5)),
]


def run(heavy: bool = False) -> list[dict]:
    kernels = available_kernels()
    cases = CASES + (HEAVY_CASES if heavy else [])
    rows = []
    for name, g in cases:
        row = {"case": name, "m": g.m}
        winners = set()
        for kname, kernel in kernels.items():
            t0 = time.perf_counter()
            outcome = solve(g, kernel=kernel, tt_bits=20)
            dt = time.perf_counter() - t0
            row[f"{kname}_ms"] = dt * 1000
            row[f"{kname}_nodes"] = outcome.nodes
            winners.add(outcome.winner)
        if len(winners) != 1:
            raise AssertionError(f"kernels disagree on {name}: {winners}")
        row["winner"] = f"P{winners.pop()}"
        rows.append(row)
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--heavy", action="store_true", help="include slower cases")
    args = parser.parse_args()
    kernels = available_kernels()
    print(f"kernels available: {', '.join(kernels)}")
    rows = run(heavy=args.heavy)
    have_compiled = "compiled" in kernels
    header = f"{'case':12s} {'m':>3s} {'winner':6s} {'pure ms':>10s}"
    if have_compiled:
        header += f" {'compiled ms':>12s} {'speedup':>8s}"
    print(header)
    for row in rows:
        line = (
            f"{row['case']:12s} {row['m']:3d} {row['winner']:6s} "
            f"{row['pure_ms']:10.2f}"
        )
        if have_compiled:
            speed = row["pure_ms"] / max(row["compiled_ms"], 1e-9)
            line += f" {row['compiled_ms']:12.2f} {speed:7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
