"""Census of cluster-tilting sets and exchange graphs over Dynkin quivers."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from tiltkit import dynkin as dk
from tiltkit import graph as gr
from tiltkit import rigid as rg


@dataclass(frozen=True)
class CensusConfig:
    quivers: tuple[str, ...] = ("A2", "A3", "A4", "D4")
    check_regularity: bool = True


def diameter(g: gr.ExchangeGraph) -> int:
    """Longest shortest path, by breadth-first search from every node."""
    best = 0
    for root in g.nodes:
        dist = {root: 0}
        queue = [root]
        qi = 0
        while qi < len(queue):
            k = queue[qi]
            qi += 1
            for nk in g.neighbors(k):
                if nk not in dist:
                    dist[nk] = dist[k] + 1
                    queue.append(nk)
        best = max(best, max(dist.values()))
    return best


def census_row(name: str, check_regularity: bool) -> dict:
    q = dk.parse_quiver(name)
    backend = rg.DynkinBackend(q)
    direct = rg.all_cluster_tilting(backend)
    g = gr.explore(rg.canonical_tilting(backend), budget=None)
    assert len(g.nodes) == len(direct), "breadth-first census disagrees with direct"
    assert g.is_connected()
    if check_regularity:
        n = backend.rank
        assert all(g.degree(k) == n for k in g.nodes), "graph is not n-regular"
    return {
        "quiver": name,
        "rank": backend.rank,
        "indecomposables": len(dk.indecomposables_c(q)),
        "tilting_sets": len(g.nodes),
        "edges": len(g.edges),
        "diameter": diameter(g),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("quivers", nargs="*", default=None)
    args = parser.parse_args()
    cfg = CensusConfig(quivers=tuple(args.quivers) or CensusConfig.quivers)

    header = f"{'quiver':<8}{'rank':>6}{'indec':>7}{'sets':>7}{'edges':>7}{'diam':>6}"
    print(header)
    print("-" * len(header))
    for name in cfg.quivers:
        row = census_row(name, cfg.check_regularity)
        print(
            f"{row['quiver']:<8}{row['rank']:>6}{row['indecomposables']:>7}"
            f"{row['tilting_sets']:>7}{row['edges']:>7}{row['diameter']:>6}"
        )


if __name__ == "__main__":
    main()
