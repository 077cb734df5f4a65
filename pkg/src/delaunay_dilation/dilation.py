"""Shortest paths and dilation of triangulations viewed as Euclidean graphs.

The all-pairs maximum runs one binary-heap Dijkstra per source (scipy's
csgraph implementation) and reduces deterministically: ties in the ratio go
to the smallest index pair.  Witness paths and single-pair queries use a
local Dijkstra with exact-tie preference for the lexicographically smallest
vertex sequence.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _csgraph_dijkstra

from .geom import GeometryError, dist
from .triangulation import PointSet, Triangulation

__all__ = [
    "EuclideanGraph",
    "DilationReport",
    "graph_from_triangulation",
    "shortest_path",
    "pair_dilation",
    "max_dilation",
    "report_to_json",
    "pairs_to_csv",
]


@dataclass(frozen=True)
class EuclideanGraph:
    """Undirected graph whose edge weights are the endpoint distances."""

    points: PointSet
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.points)
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise GeometryError(f"bad edge {(u, v)}")

    @cached_property
    def weights(self) -> tuple[float, ...]:
        return tuple(dist(self.points[u], self.points[v]) for u, v in self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, float], ...], ...]:
        adj: list[list[tuple[int, float]]] = [[] for _ in range(len(self.points))]
        for (u, v), w in zip(self.edges, self.weights):
            adj[u].append((v, w))
            adj[v].append((u, w))
        for lst in adj:
            lst.sort()
        return tuple(tuple(lst) for lst in adj)

    @cached_property
    def _csr(self) -> csr_matrix:
        n = len(self.points)
        rows, cols, vals = [], [], []
        for (u, v), w in zip(self.edges, self.weights):
            rows += [u, v]
            cols += [v, u]
            vals += [w, w]
        return csr_matrix((vals, (rows, cols)), shape=(n, n))

    def check_weights(self) -> bool:
        """Recompute every weight from coordinates; exact equality."""
        return all(
            w == dist(self.points[u], self.points[v])
            for (u, v), w in zip(self.edges, self.weights)
        )


@dataclass(frozen=True)
class DilationReport:
    max_dilation: float
    witness: tuple[int, int]
    witness_path: tuple[int, ...]
    pairs: tuple[tuple[int, int, float], ...] | None = None


def graph_from_triangulation(ps: PointSet, t: Triangulation) -> EuclideanGraph:
    return EuclideanGraph(points=ps, edges=t.edges)


def shortest_path(g: EuclideanGraph, u: int, v: int) -> tuple[float, list[int]]:
    """Minimal path length and the lexicographically smallest optimal path.

    Lexicographic preference applies on exact floating-point ties, which do
    occur in the symmetric circle constructions.
    """
    n = len(g.points)
    if not (0 <= u < n and 0 <= v < n):
        raise GeometryError("vertex index out of range")
    if u == v:
        return 0.0, [u]

    adj = g.adjacency
    distv: dict[int, float] = {u: 0.0}
    parent: dict[int, int] = {}
    done: set[int] = set()
    heap: list[tuple[float, int]] = [(0.0, u)]

    def path_to(x: int) -> list[int]:
        out = [x]
        while out[-1] != u:
            out.append(parent[out[-1]])
        out.reverse()
        return out

    while heap:
        d, x = heapq.heappop(heap)
        if x in done or d > distv[x]:
            continue
        done.add(x)
        if x == v:
            break
        for y, w in adj[x]:
            if y in done:
                continue
            nd = d + w
            old = distv.get(y)
            if old is None or nd < old:
                distv[y] = nd
                parent[y] = x
                heapq.heappush(heap, (nd, y))
            elif nd == old and parent.get(y) != x:
                if path_to(x) + [y] < path_to(parent[y]) + [y]:
                    parent[y] = x
    if v not in done:
        raise GeometryError(f"no path from {u} to {v}")
    return distv[v], path_to(v)


def pair_dilation(g: EuclideanGraph, u: int, v: int) -> float:
    if u == v:
        raise GeometryError("dilation of a coincident pair is undefined")
    length, _ = shortest_path(g, u, v)
    return length / dist(g.points[u], g.points[v])


def _distance_matrix(g: EuclideanGraph) -> np.ndarray:
    return _csgraph_dijkstra(g._csr, directed=False)


def max_dilation(g: EuclideanGraph, include_pairs: bool = False) -> DilationReport:
    """Maximum dilation over all vertex pairs, with witness pair and path."""
    n = len(g.points)
    if n < 2:
        raise GeometryError("need at least 2 vertices")
    coords = g.points.coords
    graph_d = _distance_matrix(g)
    if np.isinf(graph_d).any():
        raise GeometryError("graph is disconnected")
    diff = coords[:, None, :] - coords[None, :, :]
    euclid = np.hypot(diff[:, :, 0], diff[:, :, 1])
    iu, ju = np.triu_indices(n, k=1)
    ratios = graph_d[iu, ju] / euclid[iu, ju]
    best = int(np.argmax(ratios))
    wi, wj = int(iu[best]), int(ju[best])

    length, path = shortest_path(g, wi, wj)
    value = _path_length(coords, path) / dist(g.points[wi], g.points[wj])

    pairs = None
    if include_pairs:
        pairs = tuple(
            (int(i), int(j), float(r)) for i, j, r in zip(iu, ju, ratios)
        )
    return DilationReport(
        max_dilation=float(value),
        witness=(wi, wj),
        witness_path=tuple(path),
        pairs=pairs,
    )


def _path_length(coords: np.ndarray, path) -> float:
    total = 0.0
    for a, b in zip(path, path[1:]):
        total += math.hypot(
            coords[a, 0] - coords[b, 0], coords[a, 1] - coords[b, 1]
        )
    return total


def report_to_json(report: DilationReport) -> str:
    doc = {
        "max_dilation": report.max_dilation,
        "witness": list(report.witness),
        "path": list(report.witness_path),
    }
    if report.pairs is not None:
        doc["pairs"] = [[i, j, r] for i, j, r in report.pairs]
    return json.dumps(doc)


def pairs_to_csv(report: DilationReport) -> str:
    if report.pairs is None:
        raise ValueError("report was computed without the per-pair table")
    lines = ["i,j,dilation"]
    lines += [f"{i},{j},{r!r}" for i, j, r in report.pairs]
    return "\n".join(lines) + "\n"
