#!/usr/bin/env python3
"""Regenerate the packaged list of connected 7-vertex graphs (graph6).

Builds all graphs up to isomorphism level by level: every (k+1)-vertex
graph arises from a k-vertex graph by adding one vertex with some
neighborhood, so extending all k-vertex representatives by all 2^k
neighborhoods and deduplicating canonically is exhaustive. This is
independent of the census module's edge-subset enumerator, which makes the
shipped file a cross-check of that code path (and vice versa).

Writes src/trailtrap/data/graph7c.g6 (853 lines) and prints the per-level
class counts, which must match the known sequences 1,2,4,11,34,156,1044
(all graphs) and 1,1,2,6,21,112,853 (connected).
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from trailtrap import graphs  # noqa: E402

TARGET = Path(__file__).resolve().parent.parent / "src" / "trailtrap" / "data" / "graph7c.g6"


def extend_all(level: list[graphs.Graph]) -> list[graphs.Graph]:
    seen: dict[bytes, graphs.Graph] = {}
    for g in level:
        k = g.n
        for mask in range(1 << k):
            edges = list(g.edges) + [(i, k) for i in range(k) if mask >> i & 1]
            candidate = graphs.Graph(k + 1, edges)
            key = graphs.canonical_form(candidate)
            if key not in seen:
                seen[key] = candidate
    return [seen[k] for k in sorted(seen)]


def main() -> None:
    level = [graphs.Graph(1, [])]
    print("n=1: all=1 connected=1")
    for n in range(2, 8):
        level = extend_all(level)
        connected = [g for g in level if graphs.is_connected(g)]
        print(f"n={n}: all={len(level)} connected={len(connected)}")
    lines = sorted(
        graphs.graph6_encode(graphs.canonical_relabel(g)) for g in connected
    )
    TARGET.parent.mkdir(parents=True, exist_ok=True)
    TARGET.write_text("\n".join(lines) + "\n", encoding="ascii")
    print(f"wrote {len(lines)} graphs to {TARGET}")


if __name__ == "__main__":
    main()
