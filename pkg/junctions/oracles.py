# oracles.py
"""
oracles.py

Brute-force reference answers, for tests and debugging only:

- connected_components: union-find over the nonzero pattern of W
- objective_eval: k-means objective recomputed from labels alone

Nothing here reuses numeric code from graph, eigen or kmeans, so agreement with
them is evidence rather than a tautology.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from junctions.graph import SimilarityGraph


class UnionFind:
    """Disjoint sets with path compression and union by rank."""

    def __init__(self, elements: Optional[Iterable[Hashable]] = None):
        self.parent: Dict[Hashable, Hashable] = {}
        self.rank: Dict[Hashable, int] = {}
        for e in elements or ():
            self.add(e)

    def add(self, element: Hashable) -> None:
        if element not in self.parent:
            self.parent[element] = element
            self.rank[element] = 0

    def find(self, element: Hashable) -> Hashable:
        self.add(element)
        root = element
        while self.parent[root] != root:
            root = self.parent[root]
        # compress
        while self.parent[element] != root:
            self.parent[element], element = root, self.parent[element]
        return root

    def union(self, a: Hashable, b: Hashable) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True

    def __len__(self) -> int:
        return len(self.parent)


@dataclass(frozen=True)
class ComponentLabeling:
    labels: Tuple[int, ...]  # component ids numbered by first appearance
    count: int


def connected_components(graph: Union[SimilarityGraph, np.ndarray]) -> ComponentLabeling:
    weights = graph.weights if isinstance(graph, SimilarityGraph) else np.asarray(graph)
    n = weights.shape[0]
    uf = UnionFind(range(n))
    for i, j in zip(*np.nonzero(weights > 0)):
        if i < j:
            uf.union(int(i), int(j))

    ids: Dict[Hashable, int] = {}
    labels: List[int] = []
    for i in range(n):
        root = uf.find(i)
        if root not in ids:
            ids[root] = len(ids)
        labels.append(ids[root])
    return ComponentLabeling(labels=tuple(labels), count=len(ids))


def objective_eval(rows, labels: Sequence[int]) -> float:
    """Sum of squared distances from each row to the mean of its cluster."""
    x = np.asarray(rows, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    groups: Dict[int, List[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(i)

    total = 0.0
    for members in groups.values():
        pts = x[members]
        centre = pts.mean(axis=0)
        total += float(((pts - centre) ** 2).sum())
    return total


__all__ = [
    "UnionFind",
    "ComponentLabeling",
    "connected_components",
    "objective_eval",
]
