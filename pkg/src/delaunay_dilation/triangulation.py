"""Indexed triangulations and a robust Delaunay builder.

Triangulations are plain lists of index triples over a PointSet; adjacency is
derived on demand.  The Delaunay builder is a randomized incremental
Bowyer-Watson with a symbolic ghost vertex for the outside face, running
entirely on the exact predicates from ``geom``, so cocircular and collinear
degeneracies are handled without tolerances.  Exactly cocircular groups are
re-triangulated to the lexicographically smallest completion, which makes
the builder deterministic even on symmetric inputs.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
import struct
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .geom import (
    GeometryError,
    Point2,
    Sign,
    dist,
    incircle,
    orient2d,
)

__all__ = [
    "PointSet",
    "Triangulation",
    "ValidityReport",
    "TriangulationStructureError",
    "AllCollinearError",
    "RealizationError",
    "delaunay",
    "is_valid_delaunay",
    "stability_check",
    "perturb",
    "make_unique_delaunay",
    "convex_hull",
    "points_to_json",
    "points_from_json",
    "triangulation_to_json",
    "triangulation_from_json",
]

_GHOST = -1


class TriangulationStructureError(GeometryError):
    """The triple list is not a triangulation of the point set."""


class AllCollinearError(GeometryError):
    """Triangulation requires at least three non-collinear points."""


class RealizationError(GeometryError):
    """No perturbation within budget realizes the requested triangulation."""


@dataclass(frozen=True)
class PointSet:
    """Ordered, duplicate-free points with stable integer indices."""

    points: tuple[Point2, ...]

    def __post_init__(self):
        seen = {}
        for i, p in enumerate(self.points):
            key = (p.x, p.y)
            if key in seen:
                raise GeometryError(f"duplicate point at indices {seen[key]} and {i}")
            seen[key] = i

    @classmethod
    def from_coords(cls, coords) -> "PointSet":
        return cls(tuple(Point2(float(x), float(y)) for x, y in coords))

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point2:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    @cached_property
    def coords(self) -> np.ndarray:
        return np.array([(p.x, p.y) for p in self.points], dtype=np.float64)


def _canonical_triple(t) -> tuple[int, int, int]:
    """Rotate so the smallest index leads; cyclic order (orientation) kept."""
    a, b, c = t
    if a <= b and a <= c:
        return (a, b, c)
    if b <= a and b <= c:
        return (b, c, a)
    return (c, a, b)


@dataclass(frozen=True)
class Triangulation:
    """Counterclockwise index triples, canonically rotated and sorted."""

    triangles: tuple[tuple[int, int, int], ...]

    @classmethod
    def from_triples(cls, triples) -> "Triangulation":
        canon = sorted(_canonical_triple(tuple(int(i) for i in t)) for t in triples)
        return cls(tuple(canon))

    def __len__(self) -> int:
        return len(self.triangles)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        es = set()
        for a, b, c in self.triangles:
            es.add((a, b) if a < b else (b, a))
            es.add((b, c) if b < c else (c, b))
            es.add((a, c) if a < c else (c, a))
        return tuple(sorted(es))

    def triangle_set(self) -> frozenset:
        return frozenset(frozenset(t) for t in self.triangles)


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    violations: tuple[tuple[int, int, float], ...]  # (triangle idx, point idx, margin)


# --------------------------------------------------------------------------
# JSON interchange
# --------------------------------------------------------------------------

def points_to_json(ps: PointSet) -> str:
    return json.dumps({"points": [[p.x, p.y] for p in ps]})


def points_from_json(text: str) -> PointSet:
    data = json.loads(text)
    if not isinstance(data, dict) or "points" not in data:
        raise ValueError("expected an object with a 'points' array")
    return PointSet.from_coords(data["points"])


def triangulation_to_json(t: Triangulation) -> str:
    return json.dumps({"triangles": [list(tri) for tri in t.triangles]})


def triangulation_from_json(text: str) -> Triangulation:
    data = json.loads(text)
    if not isinstance(data, dict) or "triangles" not in data:
        raise ValueError("expected an object with a 'triangles' array")
    return Triangulation.from_triples(data["triangles"])


# --------------------------------------------------------------------------
# Convex hull (exact orientation; collinear boundary points kept)
# --------------------------------------------------------------------------

def convex_hull(ps: PointSet, keep_collinear: bool = True) -> list[int]:
    """Hull vertex indices in ccw order.

    With keep_collinear=True, points lying on hull edges are included, which
    is what the Euler-relation bookkeeping for triangulations needs.
    """
    n = len(ps)
    order = sorted(range(n), key=lambda i: (ps[i].x, ps[i].y))
    if n < 3:
        return order

    def build(indices):
        chain: list[int] = []
        for i in indices:
            while len(chain) >= 2:
                s = orient2d(ps[chain[-2]], ps[chain[-1]], ps[i])
                if s is Sign.NEGATIVE or (s is Sign.ZERO and not keep_collinear):
                    chain.pop()
                else:
                    break
            chain.append(i)
        return chain

    lower = build(order)
    upper = build(reversed(order))
    if len(lower) == n and len(upper) == n and all(
        orient2d(ps[order[0]], ps[order[-1]], ps[i]) is Sign.ZERO for i in order[1:-1]
    ):
        # Fully collinear input: the "hull" is the chain itself.
        return order
    return lower[:-1] + upper[:-1]


# --------------------------------------------------------------------------
# Delaunay builder
# --------------------------------------------------------------------------

def _shuffle_seed(ps: PointSet) -> int:
    digest = hashlib.sha256()
    for p in ps:
        digest.update(struct.pack("<dd", p.x, p.y))
    return int.from_bytes(digest.digest()[:8], "little")


def _between_collinear(a: Point2, b: Point2, p: Point2) -> bool:
    """Strict betweenness for points already known collinear."""
    if a.x != b.x:
        lo, hi = (a.x, b.x) if a.x < b.x else (b.x, a.x)
        return lo < p.x < hi
    lo, hi = (a.y, b.y) if a.y < b.y else (b.y, a.y)
    return lo < p.y < hi


class _Mesh:
    """Mutable triangle soup with directed-edge adjacency and a ghost rim."""

    def __init__(self, ps: PointSet):
        self.ps = ps
        self.tris: dict[int, tuple[int, int, int]] = {}
        self.edge_tri: dict[tuple[int, int], int] = {}
        self.next_id = 0
        self.last_finite = None

    def add(self, a: int, b: int, c: int) -> int:
        # Keep the ghost in the last slot, preserving cyclic order.
        if a == _GHOST:
            a, b, c = b, c, a
        elif b == _GHOST:
            a, b, c = c, a, b
        tid = self.next_id
        self.next_id += 1
        self.tris[tid] = (a, b, c)
        self.edge_tri[(a, b)] = tid
        self.edge_tri[(b, c)] = tid
        self.edge_tri[(c, a)] = tid
        if c != _GHOST:
            self.last_finite = tid
        return tid

    def remove(self, tid: int):
        a, b, c = self.tris.pop(tid)
        for e in ((a, b), (b, c), (c, a)):
            if self.edge_tri.get(e) == tid:
                del self.edge_tri[e]

    def is_bad(self, tid: int, p: Point2) -> bool:
        a, b, c = self.tris[tid]
        pts = self.ps
        if c == _GHOST:
            s = orient2d(pts[a], pts[b], p)
            if s is Sign.POSITIVE:
                return True
            if s is Sign.ZERO:
                return _between_collinear(pts[a], pts[b], p)
            return False
        return incircle(pts[a], pts[b], pts[c], p) is Sign.POSITIVE

    def locate_bad(self, p: Point2, rng: random.Random) -> int:
        """Walk toward p from the last insertion; fall back to a scan."""
        cur = self.last_finite
        if cur is None or cur not in self.tris:
            cur = next(iter(self.tris))
        pts = self.ps
        for _ in range(4 * len(self.tris) + 16):
            tri = self.tris.get(cur)
            if tri is None:
                break
            a, b, c = tri
            if c == _GHOST:
                if self.is_bad(cur, p):
                    return cur
                break  # degenerate visibility; use the scan
            verts = (a, b, c)
            start = rng.randrange(3)
            moved = False
            for k in range(3):
                u = verts[(start + k) % 3]
                v = verts[(start + k + 1) % 3]
                if orient2d(pts[u], pts[v], p) is Sign.NEGATIVE:
                    cur = self.edge_tri[(v, u)]
                    moved = True
                    break
            if not moved:
                return cur  # p inside or on the closed triangle
        for tid in self.tris:
            if self.is_bad(tid, p):
                return tid
        raise GeometryError("no triangle found for insertion (duplicate point?)")

    def insert(self, idx: int, rng: random.Random):
        p = self.ps[idx]
        seed_tid = self.locate_bad(p, rng)
        cavity = {seed_tid}
        stack = [seed_tid]
        while stack:
            tid = stack.pop()
            a, b, c = self.tris[tid]
            for u, v in ((a, b), (b, c), (c, a)):
                nb = self.edge_tri[(v, u)]
                if nb not in cavity and self.is_bad(nb, p):
                    cavity.add(nb)
                    stack.append(nb)
        boundary = []
        for tid in cavity:
            a, b, c = self.tris[tid]
            for u, v in ((a, b), (b, c), (c, a)):
                if self.edge_tri[(v, u)] not in cavity:
                    boundary.append((u, v))
        for tid in cavity:
            self.remove(tid)
        for u, v in boundary:
            self.add(u, v, idx)


def delaunay(ps: PointSet) -> Triangulation:
    """Delaunay triangulation via randomized incremental insertion.

    Exactly valid under the incircle predicate; cocircular ties are broken
    to the lexicographically smallest set of index triples.  The insertion
    order is a shuffle seeded from the point coordinates, so the result is
    a pure function of the input.
    """
    n = len(ps)
    if n < 3:
        raise GeometryError("need at least 3 points")
    rng = random.Random(_shuffle_seed(ps))
    order = list(range(n))
    rng.shuffle(order)

    third = None
    for k in range(2, n):
        if orient2d(ps[order[0]], ps[order[1]], ps[order[k]]) is not Sign.ZERO:
            third = k
            break
    if third is None:
        raise AllCollinearError("all points are collinear")
    order[2], order[third] = order[third], order[2]

    i0, i1, i2 = order[0], order[1], order[2]
    if orient2d(ps[i0], ps[i1], ps[i2]) is Sign.NEGATIVE:
        i1, i2 = i2, i1
    mesh = _Mesh(ps)
    mesh.add(i0, i1, i2)
    mesh.add(i1, i0, _GHOST)
    mesh.add(i2, i1, _GHOST)
    mesh.add(i0, i2, _GHOST)

    for idx in order[3:]:
        mesh.insert(idx, rng)

    finite = [t for t in mesh.tris.values() if t[2] != _GHOST]
    finite = _break_cocircular_ties(ps, finite)
    return Triangulation.from_triples(finite)


def _break_cocircular_ties(ps: PointSet, tris: list) -> list:
    """Re-triangulate exactly cocircular groups lexicographically smallest."""
    tris = [tuple(t) for t in tris]
    edge_tri: dict[tuple[int, int], int] = {}
    for i, (a, b, c) in enumerate(tris):
        edge_tri[(a, b)] = i
        edge_tri[(b, c)] = i
        edge_tri[(c, a)] = i

    parent = list(range(len(tris)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tied = False
    for i, (a, b, c) in enumerate(tris):
        for u, v in ((a, b), (b, c), (c, a)):
            j = edge_tri.get((v, u))
            if j is None or j <= i:
                continue
            w = next(x for x in tris[j] if x not in (u, v))
            if incircle(ps[a], ps[b], ps[c], ps[w]) is Sign.ZERO:
                parent[find(i)] = find(j)
                tied = True
    if not tied:
        return tris

    clusters: dict[int, list[int]] = {}
    for i in range(len(tris)):
        clusters.setdefault(find(i), []).append(i)

    out = [t for i, t in enumerate(tris) if len(clusters[find(i)]) == 1]
    for members in clusters.values():
        if len(members) == 1:
            continue
        member_set = set(members)
        # Boundary cycle of the cluster, ccw because triangles are ccw.
        succ = {}
        for i in members:
            a, b, c = tris[i]
            for u, v in ((a, b), (b, c), (c, a)):
                j = edge_tri.get((v, u))
                if j is None or j not in member_set:
                    succ[u] = v
        start = min(succ)
        cycle = [start]
        cur = succ[start]
        while cur != start:
            cycle.append(cur)
            cur = succ[cur]
        out.extend(_lexmin_polygon_triangulation(cycle))
    return out


def _lexmin_polygon_triangulation(cycle: list[int]) -> list[tuple[int, int, int]]:
    """Lexicographically smallest triangulation of a convex polygon.

    Greedy: the smallest index triple is always realizable in a convex
    polygon; commit it and recurse on the three remaining chains.
    """
    out = []
    stack = [cycle]
    while stack:
        poly = stack.pop()
        k = len(poly)
        if k < 3:
            continue
        if k == 3:
            out.append(tuple(poly))
            continue
        pos = sorted(sorted(range(k), key=lambda i: poly[i])[:3])
        i, j, l = pos
        out.append((poly[i], poly[j], poly[l]))
        stack.append(poly[i : j + 1])
        stack.append(poly[j : l + 1])
        stack.append(poly[l:] + poly[: i + 1])
    return out


# --------------------------------------------------------------------------
# Validity
# --------------------------------------------------------------------------

def _structural_check(ps: PointSet, t: Triangulation) -> list[tuple[int, int, int]]:
    """Raise TriangulationStructureError unless t triangulates hull(ps).

    Returns the triangles normalized to ccw orientation.
    """
    n = len(ps)
    if n < 3:
        raise TriangulationStructureError("point set too small")
    if not t.triangles:
        raise TriangulationStructureError("empty triangulation")

    normalized = []
    used = set()
    for tri in t.triangles:
        a, b, c = tri
        if len({a, b, c}) < 3:
            raise TriangulationStructureError(f"repeated index in triangle {tri}")
        if not all(0 <= i < n for i in tri):
            raise TriangulationStructureError(f"index out of range in triangle {tri}")
        s = orient2d(ps[a], ps[b], ps[c])
        if s is Sign.ZERO:
            raise TriangulationStructureError(f"degenerate triangle {tri}")
        normalized.append((a, b, c) if s is Sign.POSITIVE else (a, c, b))
        used.update(tri)
    if used != set(range(n)):
        missing = sorted(set(range(n)) - used)
        raise TriangulationStructureError(f"points not used: {missing}")

    directed = set()
    undirected: dict[tuple[int, int], int] = {}
    for a, b, c in normalized:
        for u, v in ((a, b), (b, c), (c, a)):
            if (u, v) in directed:
                raise TriangulationStructureError(
                    f"directed edge {(u, v)} used twice (overlapping triangles)"
                )
            directed.add((u, v))
            key = (u, v) if u < v else (v, u)
            undirected[key] = undirected.get(key, 0) + 1
    if any(cnt > 2 for cnt in undirected.values()):
        raise TriangulationStructureError("an edge borders more than two triangles")

    boundary = [e for e, cnt in undirected.items() if cnt == 1]
    hull = convex_hull(ps, keep_collinear=True)
    h = len(hull)
    n_tri = len(normalized)
    n_edge = len(undirected)
    if n_tri != 2 * n - h - 2 or n_edge != 3 * n - h - 3 or len(boundary) != h:
        raise TriangulationStructureError(
            "Euler relation violated: "
            f"n={n} h={h} triangles={n_tri} edges={n_edge} boundary={len(boundary)}"
        )
    return normalized


def _circumcircles_array(coords: np.ndarray, tris: np.ndarray):
    a = coords[tris[:, 0]]
    b = coords[tris[:, 1]] - a
    c = coords[tris[:, 2]] - a
    den = 2.0 * (b[:, 0] * c[:, 1] - b[:, 1] * c[:, 0])
    b2 = (b * b).sum(axis=1)
    c2 = (c * c).sum(axis=1)
    ux = (c[:, 1] * b2 - b[:, 1] * c2) / den
    uy = (b[:, 0] * c2 - c[:, 0] * b2) / den
    centers = a + np.stack([ux, uy], axis=1)
    radii = np.hypot(ux, uy)
    return centers, radii


def is_valid_delaunay(ps: PointSet, t: Triangulation, eps: float = 0.0) -> ValidityReport:
    """Check the empty-circumcircle property.

    A violation is a point strictly inside some circumcircle by relative
    margin greater than eps.  With eps=0 the decision falls back to the
    exact predicate, so boundary cocircularity is never a violation.
    Structurally malformed triangulations raise, they do not report invalid.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    normalized = _structural_check(ps, t)
    coords = ps.coords
    tris = np.array(normalized, dtype=np.intp)
    centers, radii = _circumcircles_array(coords, tris)

    band = 1e-9
    threshold = -band if eps == 0.0 else eps
    violations = []
    block = 512
    npts = len(ps)
    for lo in range(0, len(tris), block):
        hi = min(lo + block, len(tris))
        d = np.sqrt(
            ((coords[None, :, :] - centers[lo:hi, None, :]) ** 2).sum(axis=2)
        )
        margins = (radii[lo:hi, None] - d) / radii[lo:hi, None]
        for k in range(3):
            margins[np.arange(hi - lo), tris[lo:hi, k]] = -np.inf
        cand_t, cand_p = np.where(margins > threshold)
        for ti, pi in zip(cand_t.tolist(), cand_p.tolist()):
            tri_idx = lo + ti
            margin = float(margins[ti, pi])
            if eps == 0.0:
                a, b, c = normalized[tri_idx]
                s = incircle(ps[a], ps[b], ps[c], ps[pi])
                if s is not Sign.POSITIVE:
                    continue
                if margin <= 0.0:
                    margin = 0.0
            violations.append((tri_idx, int(pi), margin))
    violations.sort()
    return ValidityReport(valid=not violations, violations=tuple(violations))


# --------------------------------------------------------------------------
# Perturbation, stability, uniqueness
# --------------------------------------------------------------------------

def perturb(ps: PointSet, delta: float, seed: int) -> PointSet:
    """Displace each point independently, uniformly in a radius-delta disk."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    if delta == 0.0:
        return ps
    rng = np.random.default_rng(seed)
    n = len(ps)
    radii = delta * np.sqrt(rng.random(n))
    angles = 2.0 * math.pi * rng.random(n)
    out = []
    for p, r, a in zip(ps, radii, angles):
        out.append(Point2(p.x + r * math.cos(a), p.y + r * math.sin(a)))
    return PointSet(tuple(out))


def _has_exact_cocircularity(ps: PointSet, t: Triangulation) -> bool:
    edge_tri: dict[tuple[int, int], tuple[int, int, int]] = {}
    for tri in t.triangles:
        a, b, c = tri
        if orient2d(ps[a], ps[b], ps[c]) is Sign.NEGATIVE:
            a, b, c = a, c, b
        for u, v in ((a, b), (b, c), (c, a)):
            edge_tri[(u, v)] = (a, b, c)
    for (u, v), tri in edge_tri.items():
        other = edge_tri.get((v, u))
        if other is None or (u, v) < (v, u):
            continue
        w = next(x for x in other if x not in (u, v))
        a, b, c = tri
        if incircle(ps[a], ps[b], ps[c], ps[w]) is Sign.ZERO:
            return True
    return False


def stability_check(
    ps: PointSet, t: Triangulation, delta: float, trials: int, seed: int
) -> bool:
    """True iff every radius-delta perturbation trial keeps the triangle set."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    if _has_exact_cocircularity(ps, t):
        return False
    target = t.triangles
    for trial in range(trials):
        moved = perturb(ps, delta, seed=_mix_seed(seed, trial))
        try:
            got = delaunay(moved)
        except GeometryError:
            return False
        if got.triangles != target:
            return False
    return True


def _mix_seed(*parts: int) -> int:
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])


def make_unique_delaunay(ps: PointSet, t: Triangulation, budget: float) -> PointSet:
    """Perturb ps (each point by at most budget) so delaunay(result) == t.

    t must already be Delaunay-valid at eps=0; the freedom being resolved is
    which way cocircular groups are triangulated.  Weights realizing t as a
    regular (lifted) triangulation are found by linear programming, then the
    points move toward their group's circumcenter by those weights, with
    shrinking steps until the builder reproduces t exactly.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    _structural_check(ps, t)
    if delaunay(ps).triangles == t.triangles and not _has_exact_cocircularity(ps, t):
        return ps

    tris, clusters = _near_cocircular_clusters(ps, t)
    if not clusters:
        raise RealizationError(
            "triangulation differs from the Delaunay but has no cocircular freedom"
        )
    weights = _cluster_weights(ps, tris, clusters)

    scale = max(dist(ps[0], p) for p in ps) or 1.0
    step = min(budget, 1e-6 * scale) * 0.999
    total_w: dict[int, float] = {}
    for (pt_idx, _), w in weights:
        total_w[pt_idx] = total_w.get(pt_idx, 0.0) + w
    wmax = max(total_w.values()) or 1.0
    for _ in range(8):
        moved = list(ps.points)
        for (pt_idx, center), w in weights:
            p = moved[pt_idx]
            ux, uy = p.x - center[0], p.y - center[1]
            norm = math.hypot(ux, uy)
            if norm == 0.0:
                continue
            f = step * (w / wmax) / norm
            moved[pt_idx] = Point2(p.x - f * ux, p.y - f * uy)
        try:
            candidate = PointSet(tuple(moved))
            if delaunay(candidate).triangles == t.triangles:
                return candidate
        except GeometryError:
            pass
        step /= 8.0
    raise RealizationError("could not realize the triangulation within budget")


def _near_cocircular_clusters(ps: PointSet, t: Triangulation, rtol: float = 1e-9):
    """Groups of edge-adjacent triangles sharing one circumcircle (within rtol).

    Returns (normalized ccw triangles, list of (member ids, shared center)).
    """
    tris = [
        tri if orient2d(ps[tri[0]], ps[tri[1]], ps[tri[2]]) is Sign.POSITIVE
        else (tri[0], tri[2], tri[1])
        for tri in t.triangles
    ]
    coords = ps.coords
    arr = np.array(tris, dtype=np.intp)
    centers, radii = _circumcircles_array(coords, arr)

    edge_tri: dict[tuple[int, int], int] = {}
    for i, (a, b, c) in enumerate(tris):
        for u, v in ((a, b), (b, c), (c, a)):
            edge_tri[(u, v)] = i

    parent = list(range(len(tris)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (a, b, c) in enumerate(tris):
        for u, v in ((a, b), (b, c), (c, a)):
            j = edge_tri.get((v, u))
            if j is None or j <= i:
                continue
            r = max(radii[i], radii[j])
            if (
                abs(radii[i] - radii[j]) <= rtol * r
                and np.hypot(*(centers[i] - centers[j])) <= rtol * r
            ):
                parent[find(i)] = find(j)

    groups: dict[int, list[int]] = {}
    for i in range(len(tris)):
        groups.setdefault(find(i), []).append(i)
    clusters = []
    for members in groups.values():
        if len(members) < 2:
            continue
        center = centers[members].mean(axis=0)
        clusters.append((members, (float(center[0]), float(center[1]))))
    return tris, clusters


def _cluster_weights(ps: PointSet, tris, clusters):
    """Solve for radial weights making every cluster's diagonals strictly legal.

    One variable per (point, cluster) incidence; a point shared by several
    clusters moves along the sum of its per-cluster inward directions, so a
    constraint for one cluster sees the projections of the others' moves.
    """
    from scipy.optimize import linprog

    def inward_unit(pt_idx, center):
        p = ps[pt_idx]
        ux, uy = center[0] - p.x, center[1] - p.y
        norm = math.hypot(ux, uy)
        return (ux / norm, uy / norm) if norm else (0.0, 0.0)

    # Pass 1: register every (point, cluster) variable.
    var_index: dict[tuple[int, int], int] = {}
    var_meta: list[tuple[int, tuple[float, float]]] = []
    point_vars: dict[int, list[int]] = {}
    for ci, (members, center) in enumerate(clusters):
        pts_in_cluster = sorted({v for i in members for v in tris[i]})
        for pt in pts_in_cluster:
            var_index[(pt, ci)] = len(var_meta)
            var_meta.append((pt, center))
            point_vars.setdefault(pt, []).append(var_index[(pt, ci)])

    # Pass 2: one constraint per internal edge of each cluster.
    rows: list[dict[int, float]] = []
    for ci, (members, center) in enumerate(clusters):
        member_set = set(members)
        edge_tri: dict[tuple[int, int], int] = {}
        for i in members:
            a, b, c = tris[i]
            for u, v in ((a, b), (b, c), (c, a)):
                edge_tri[(u, v)] = i
        for i in members:
            a, b, c = tris[i]
            for u, v in ((a, b), (b, c), (c, a)):
                j = edge_tri.get((v, u))
                if j is None or j not in member_set or j <= i:
                    continue
                w1 = next(x for x in tris[i] if x not in (u, v))
                w2 = next(x for x in tris[j] if x not in (u, v))
                coeffs = _lift_row(ps, u, v, w1, w2)
                row: dict[int, float] = {}
                for pt_idx, coeff in coeffs.items():
                    radial = inward_unit(pt_idx, center)
                    for vi in point_vars.get(pt_idx, ()):
                        d = inward_unit(pt_idx, var_meta[vi][1])
                        proj = d[0] * radial[0] + d[1] * radial[1]
                        if proj != 0.0:
                            row[vi] = row.get(vi, 0.0) + coeff * proj
                rows.append(row)

    nvars = len(var_meta)
    a_ub = np.zeros((len(rows), nvars))
    for r, row in enumerate(rows):
        for k, val in row.items():
            a_ub[r, k] = -val
    b_ub = -np.ones(len(rows))
    res = linprog(
        c=np.ones(nvars),
        A_ub=a_ub,
        b_ub=b_ub,
        bounds=[(0, None)] * nvars,
        method="highs",
    )
    if not res.success:
        raise RealizationError(f"weight solve failed: {res.message}")
    return [(meta, float(w)) for meta, w in zip(var_meta, res.x)]


def _lift_row(ps: PointSet, u: int, v: int, w1: int, w2: int) -> dict[int, float]:
    """Linearization of the lifted incircle test for quad (u, v, w1 | w2).

    Points sit on a common circle; lowering point p's lift by weight w_p
    changes incircle(u, v, w1, w2) by -kappa * D(w).  The diagonal (u, v)
    becomes strictly legal when D(w) > 0.  Coefficients are twice the signed
    areas of the opposite sub-triangles.
    """

    def area2(p, q, r):
        return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)

    pu, pv, p1, p2 = ps[u], ps[v], ps[w1], ps[w2]
    cu = area2(pv, p1, p2)
    cv = -area2(pu, p1, p2)
    c1 = area2(pu, pv, p2)
    c2 = -(cu + cv + c1)
    return {u: cu, v: cv, w1: c1, w2: c2}
