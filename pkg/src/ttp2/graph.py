"""Graph primitives: minimum spanning tree, perfect matching, Christofides tour."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .instances import DistanceMatrix
from .matching import min_weight_perfect_matching_dense

Pair = tuple[int, int]


@dataclass(frozen=True)
class Matching:
    """Perfect matching of a vertex subset; ``pairs`` sorted, ``weight`` = sum of pair distances."""

    pairs: tuple[Pair, ...]
    weight: float


@dataclass(frozen=True)
class SpanningTree:
    edges: tuple[Pair, ...]
    weight: float


@dataclass(frozen=True)
class Tour:
    """Cyclic visiting order of all teams; weight includes the wrap-around leg."""

    order: tuple[int, ...]
    weight: float


def pairs_weight(d: np.ndarray, pairs) -> float:
    return float(sum(d[a][b] for a, b in sorted(tuple(sorted(p)) for p in pairs)))


def minimum_spanning_tree(dm: DistanceMatrix) -> SpanningTree:
    """Prim's algorithm on the complete graph, O(n^2), index tie-breaks."""
    d = dm.d
    n = dm.n
    in_tree = [False] * n
    best = [float("inf")] * n
    parent = [-1] * n
    best[0] = 0.0
    edges: list[Pair] = []
    for _ in range(n):
        u = -1
        for v in range(n):
            if not in_tree[v] and (u == -1 or best[v] < best[u]):
                u = v
        in_tree[u] = True
        if parent[u] >= 0:
            edges.append(tuple(sorted((parent[u], u))))
        du = d[u]
        for v in range(n):
            if not in_tree[v] and du[v] < best[v]:
                best[v] = du[v]
                parent[v] = u
    edges.sort()
    return SpanningTree(tuple(edges), float(sum(d[a][b] for a, b in edges)))


def min_weight_perfect_matching(dm: DistanceMatrix, subset=None) -> Matching:
    """Minimum-weight perfect matching of ``subset`` (default: all teams)."""
    vertices = list(range(dm.n)) if subset is None else sorted(subset)
    if len(vertices) % 2 != 0:
        raise DomainError(f"subset size must be even, got {len(vertices)}")
    pairs = min_weight_perfect_matching_dense(dm.d, vertices)
    return Matching(tuple(pairs), pairs_weight(dm.d, pairs))


def _eulerian_circuit(n: int, multi_edges: list[Pair], start: int) -> list[int]:
    """Hierholzer on the multigraph given by ``multi_edges``; smallest-neighbor-first."""
    adj: dict[int, list[int]] = {v: [] for v in range(n)}
    for a, b in multi_edges:
        adj[a].append(b)
        adj[b].append(a)
    for v in adj:
        adj[v].sort(reverse=True)  # pop() then yields the smallest remaining neighbor
    stack = [start]
    circuit: list[int] = []
    # Track one usable copy per inserted edge occurrence.
    remaining: dict[Pair, int] = {}
    for a, b in multi_edges:
        key = tuple(sorted((a, b)))
        remaining[key] = remaining.get(key, 0) + 1
    while stack:
        v = stack[-1]
        found = False
        while adj[v]:
            w = adj[v][-1]
            key = tuple(sorted((v, w)))
            if remaining.get(key, 0) > 0:
                remaining[key] -= 1
                adj[v].pop()
                stack.append(w)
                found = True
                break
            adj[v].pop()
        if not found:
            circuit.append(stack.pop())
    circuit.reverse()
    return circuit


def christofides_tour(dm: DistanceMatrix) -> Tour:
    """Christofides: MST + matching on odd-degree vertices + shortcut Euler walk.

    Deterministic: Euler walk starts at the lowest index and prefers smaller
    neighbors; shortcutting keeps the first occurrence of each team.
    """
    n = dm.n
    if n == 2:
        return Tour((0, 1), float(2 * dm.d[0][1]))
    tree = minimum_spanning_tree(dm)
    degree = [0] * n
    for a, b in tree.edges:
        degree[a] += 1
        degree[b] += 1
    odd = [v for v in range(n) if degree[v] % 2 == 1]
    odd_pairs = min_weight_perfect_matching_dense(dm.d, odd) if odd else []
    multi = list(tree.edges) + [tuple(p) for p in odd_pairs]
    walk = _eulerian_circuit(n, multi, start=min(v for e in multi for v in e))
    seen = [False] * n
    order: list[int] = []
    for v in walk:
        if not seen[v]:
            seen[v] = True
            order.append(v)
    d = dm.d
    weight = float(
        sum(d[order[i]][order[(i + 1) % n]] for i in range(n))
    )
    return Tour(tuple(order), weight)
