#!/usr/bin/env python3
"""Writes stand-in edge lists for the four real networks used in the sweeps.

Each file holds a connected, heavy-tailed graph with the published node and
edge counts of its largest connected component, plus a small detached
component, a repeated edge and a self-loop so that ingestion has to drop them.
"""

import pathlib
import random

NETWORKS = {
    # name: (nodes, edges) of the largest connected component
    "pira": (391, 864),
    "asg": (207, 2550),
    "ns": (379, 914),
    "ht": (113, 2196),
}


def connected_graph(n, m, rng):
    edges = set()
    weight = [1] * n
    for v in range(1, n):
        u = rng.choices(range(v), weights=weight[:v])[0]
        edges.add((u, v))
        weight[u] += 1
        weight[v] += 1
    while len(edges) < m:
        a, b = rng.choices(range(n), weights=weight, k=2)
        e = (min(a, b), max(a, b))
        if a == b or e in edges:
            continue
        edges.add(e)
        weight[a] += 1
        weight[b] += 1
    return sorted(edges)


def main():
    out_dir = pathlib.Path(__file__).resolve().parent.parent / "data" / "networks"
    out_dir.mkdir(parents=True, exist_ok=True)
    for i, (name, (n, m)) in enumerate(NETWORKS.items()):
        rng = random.Random(1000 + i)
        perm = list(range(n))
        rng.shuffle(perm)
        label = lambda v: f"{name}{perm[v]:03d}"
        edges = connected_graph(n, m, rng)
        lines = [f"{label(u)} {label(v)}" for u, v in edges]
        rng.shuffle(lines)
        lines.insert(len(lines) // 2, lines[0].split()[1] + " " + lines[0].split()[0])
        lines.insert(len(lines) // 3, f"{label(0)} {label(0)}")
        lines += [f"{name}_x1 {name}_x2", f"{name}_x2 {name}_x3"]
        header = [
            f"# stand-in for the {name.upper()} network: LCC has {n} nodes and {m} edges",
            "# generated by tools/make_fixtures.py",
        ]
        (out_dir / f"{name}.edges").write_text("\n".join(header + lines) + "\n")


if __name__ == "__main__":
    main()
