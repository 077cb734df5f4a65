"""Point-set constructions whose Delaunay triangulations have large dilation.

Three families are generated, each with a bespoke triangulation chosen among
the legal Delaunay completions of its cocircular groups:

* ``generate_chew``: evenly spaced points on one circle, triangulated by a
  ladder of chords nearly perpendicular to a marked diameter.  The shortest
  marked-pair path follows a semicircle, so the dilation tends to pi/2.

* ``generate_two_semicircle``: points in convex position on two unit
  semicircles a distance ``d`` apart.  Each semicircle carries a ladder
  oriented so boundary arcs stay optimal (checked per chord against the
  arc-versus-detour inequality); the middle rectangle takes the diagonal
  that does not shorten the marked crossing.  Dilation tends to
  ``(pi + d) / sqrt(4 + d^2 + 4 d cos(alpha))``.

* ``generate_three_circle``: points on arcs of two unit circles and a larger
  third circle, with four exterior shield points whose fans close the hull
  while keeping every outside detour slightly longer than the boundary.
  The points are not in convex position and the dilation edges past the
  convex-position family.

All ladders are produced by one funnel sweep: points merge by boundary
distance from the marked vertex and each step emits a triangle against the
current frontier chord.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geom import (
    Circle,
    GeometryError,
    Point2,
    Sign,
    dist,
    orient2d,
    tangent_points,
)
from .triangulation import PointSet, Triangulation, delaunay

__all__ = [
    "ChewSpec",
    "TwoSemicircleSpec",
    "ThreeCircleSpec",
    "ConstructionOutput",
    "SweepResult",
    "SparseSamplingError",
    "ShieldPlacementError",
    "arc_beats_detour",
    "closed_form_t",
    "path_lengths_limit",
    "balance_alpha",
    "sweep_d",
    "generate_chew",
    "generate_two_semicircle",
    "generate_three_circle",
    "shield_position",
]


class SparseSamplingError(GeometryError):
    """A ladder chord would beat the boundary arc; sample more points."""


class ShieldPlacementError(GeometryError):
    """Shield root finding failed (degenerate circle configuration)."""


# --------------------------------------------------------------------------
# Closed forms
# --------------------------------------------------------------------------

def arc_beats_detour(beta: float, theta: float) -> bool:
    """True iff the arc of angle beta beats the opposite arc plus chord.

    For a unit-circle sector of angle theta with the mark at arc distance
    beta from one endpoint, the direct arc is strictly shorter than going
    the other way and crossing the chord exactly when
    ``beta < theta/2 + sin(theta/2)``.
    """
    if not (0.0 <= beta <= theta <= 2.0 * math.pi):
        raise GeometryError(f"angles out of range: beta={beta}, theta={theta}")
    return beta < theta / 2.0 + math.sin(theta / 2.0)


def closed_form_t(d: float, alpha: float = 1.0) -> tuple[float, float]:
    """Limit dilation of the two-semicircle family.

    Returns (ell, t): the marked-pair distance
    ``ell = sqrt(4 + d^2 + 4 d cos(alpha))`` and ``t = (pi + d) / ell``.
    """
    if d < 0:
        raise GeometryError("d must be nonnegative")
    ell = math.sqrt(4.0 + d * d + 4.0 * d * math.cos(alpha))
    return ell, (math.pi + d) / ell


def path_lengths_limit(d: float, alpha: float) -> tuple[float, float]:
    """Limiting lengths of the two locally optimal marked-pair paths.

    The perimeter path walks one semicircle and bridges the gap:
    ``pi + d``.  The crossing path trades arc for a vertical chord:
    ``pi + 2 - 2*alpha + d``.
    """
    if d < 0:
        raise GeometryError("d must be nonnegative")
    if not (0.0 < alpha < math.pi / 2.0):
        raise GeometryError("alpha must lie in (0, pi/2)")
    return math.pi + d, math.pi + 2.0 - 2.0 * alpha + d


def balance_alpha() -> float:
    """Marker angle at which both path types have equal length.

    The difference (crossing - perimeter) is ``2 - 2*alpha`` independent of
    d, so the balance point is exactly 1 radian.
    """
    return 1.0


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[tuple[float, float, float], ...]  # (d, ell, t)
    argmax_d: float
    argmax_t: float

    def to_csv(self) -> str:
        lines = ["d,ell,t"]
        lines += [f"{d!r},{ell!r},{t!r}" for d, ell, t in self.rows]
        return "\n".join(lines) + "\n"


def _golden_max(f, lo: float, hi: float, tol: float) -> float:
    """Golden-section maximizer for a unimodal function on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (a + b) / 2.0


def sweep_d(d_min: float, d_max: float, step: float) -> SweepResult:
    """Evaluate the closed form over a d-range (alpha = 1) and locate its max."""
    if not (0.0 <= d_min <= d_max) or step <= 0.0:
        raise GeometryError("need 0 <= d_min <= d_max and step > 0")
    rows = []
    k = 0
    while True:
        d = d_min + k * step
        if d > d_max + step * 1e-9:
            break
        d = min(d, d_max)
        ell, t = closed_form_t(d, 1.0)
        rows.append((d, ell, t))
        if d >= d_max:
            break
        k += 1
    if d_min == d_max:
        best = d_min
    else:
        best = _golden_max(lambda x: closed_form_t(x, 1.0)[1], d_min, d_max, 1e-9)
    return SweepResult(
        rows=tuple(rows), argmax_d=best, argmax_t=closed_form_t(best, 1.0)[1]
    )


# --------------------------------------------------------------------------
# Construction specs
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ChewSpec:
    n: int

    def __post_init__(self):
        if self.n < 8 or self.n % 2:
            raise GeometryError("n must be even and at least 8")


@dataclass(frozen=True)
class TwoSemicircleSpec:
    d: float = 0.29
    alpha: float = 1.0
    n_arc: int = 111  # points per semicircle

    def __post_init__(self):
        if self.d <= 0:
            raise GeometryError("d must be positive")
        if not (0.0 < self.alpha < math.pi / 2.0):
            raise GeometryError("alpha must lie in (0, pi/2)")
        if self.n_arc < 5:
            raise GeometryError("n_arc must be at least 5")


@dataclass(frozen=True)
class ThreeCircleSpec:
    d: float = 0.58
    r: float = 1.1507
    theta: float = 2.2895 / 2.0  # unit-arc half-angle (capped at the junction)
    beta: float = 1.30432 / 2.0  # big-arc half-angle (capped by the gap)
    g: float = 0.0065            # shielded gap, as arc length near a junction
    arc_density: float = 260.0   # sample points per unit arc length
    shield_margin: float = 1e-4

    def __post_init__(self):
        if self.d <= 0 or self.r <= 0:
            raise GeometryError("d and r must be positive")
        if self.theta <= 0 or self.beta <= 0 or self.g < 0:
            raise GeometryError("theta and beta must be positive, g nonnegative")
        if self.arc_density <= 0 or self.shield_margin <= 0:
            raise GeometryError("arc_density and shield_margin must be positive")


@dataclass(frozen=True)
class ConstructionOutput:
    points: PointSet
    triangulation: Triangulation
    p: int
    q: int
    predicted_dilation: float


# --------------------------------------------------------------------------
# Funnel / strip ladders
# --------------------------------------------------------------------------

def _oriented(pts, a: int, b: int, c: int) -> tuple[int, int, int]:
    if orient2d(pts[a], pts[b], pts[c]) is Sign.POSITIVE:
        return (a, b, c)
    return (a, c, b)


def _funnel(pts, mark, side_a, side_b, terminal=None, check_rungs=False):
    """Zigzag-triangulate a convex chain pair relative to a mark vertex.

    side_a and side_b are lists of (index, boundary distance from mark)
    sorted ascending, excluding the mark and the optional shared terminal.
    Every chord produced connects the two sides, so boundary paths from the
    mark stay shortest; with check_rungs each chord is validated against
    the arc-versus-detour inequality (angles measured on a unit circle).
    """
    if not side_a or not side_b:
        raise GeometryError("funnel needs points on both sides of the mark")
    tris = []
    frontiers = []

    la, ka = side_a[0]
    lb, kb = side_b[0]
    tris.append(_oriented(pts, mark, la, lb))
    frontiers.append((ka, kb))
    ia = ib = 1
    while ia < len(side_a) or ib < len(side_b):
        take_a = ib >= len(side_b) or (
            ia < len(side_a) and side_a[ia][1] <= side_b[ib][1]
        )
        if take_a:
            v, kv = side_a[ia]
            ia += 1
            tris.append(_oriented(pts, la, v, lb))
            la, ka = v, kv
        else:
            v, kv = side_b[ib]
            ib += 1
            tris.append(_oriented(pts, la, v, lb))
            lb, kb = v, kv
        frontiers.append((ka, kb))
    if terminal is not None:
        tris.append(_oriented(pts, la, terminal, lb))

    if check_rungs:
        used = frontiers if terminal is not None else frontiers[:-1]
        for ka, kb in used:
            theta = ka + kb
            if not (
                arc_beats_detour(ka, theta) and arc_beats_detour(kb, theta)
            ):
                raise SparseSamplingError(
                    f"chord at arc distances ({ka:.6f}, {kb:.6f}) beats the "
                    "boundary; increase the sampling density"
                )
    return tris


def _strip(pts, top, bottom):
    """Ladder between two chains sorted by a shared key (ties: top first)."""
    tris = []
    la, ka = top[0]
    lb, kb = bottom[0]
    ia = ib = 1
    while ia < len(top) or ib < len(bottom):
        take_top = ib >= len(bottom) or (ia < len(top) and top[ia][1] <= bottom[ib][1])
        if take_top:
            v, ka = top[ia]
            ia += 1
            tris.append(_oriented(pts, la, v, lb))
            la = v
        else:
            v, kb = bottom[ib]
            ib += 1
            tris.append(_oriented(pts, la, v, lb))
            lb = v
    return tris


def _linspace(a: float, b: float, n_intervals: int) -> list[float]:
    """n_intervals+1 evenly spaced values with exact endpoints."""
    if n_intervals < 1:
        raise ValueError("need at least one interval")
    h = (b - a) / n_intervals
    vals = [a + k * h for k in range(n_intervals)]
    vals.append(b)
    return vals


# --------------------------------------------------------------------------
# Chew's circle construction
# --------------------------------------------------------------------------

def generate_chew(spec: ChewSpec) -> ConstructionOutput:
    """Evenly spaced circle points with the ladder triangulation.

    The marked pair is antipodal (indices 0 and n/2); the shortest path
    between them follows one semicircle, giving dilation (n/2)*sin(pi/n).
    """
    n = spec.n
    pts = [
        Point2(math.cos(2.0 * math.pi * k / n), math.sin(2.0 * math.pi * k / n))
        for k in range(n)
    ]
    half = n // 2
    step = 2.0 * math.pi / n
    side_a = [(k, k * step) for k in range(1, half)]
    side_b = [(n - k, k * step) for k in range(1, half)]
    tris = _funnel(pts, 0, side_a, side_b, terminal=half)
    return ConstructionOutput(
        points=PointSet(tuple(pts)),
        triangulation=Triangulation.from_triples(tris),
        p=0,
        q=half,
        predicted_dilation=half * math.sin(math.pi / n),
    )


# --------------------------------------------------------------------------
# Two-semicircle construction (convex position)
# --------------------------------------------------------------------------

def _split_intervals(total: int, short_frac: float) -> tuple[int, int]:
    k = round(total * short_frac)
    k = max(1, min(total - 1, k))
    return k, total - k


def generate_two_semicircle(spec: TwoSemicircleSpec) -> ConstructionOutput:
    """Convex-position construction on two unit semicircles.

    Each semicircle is sampled anchored at its marked point and carries a
    funnel ladder; the middle rectangle is closed with the diagonal that
    leaves the marked crossing path at its nominal length.
    """
    d, alpha, n_arc = spec.d, spec.alpha, spec.n_arc
    half_pi = math.pi / 2.0
    m = n_arc - 1
    n_top, n_bot = _split_intervals(m, (half_pi - alpha) / math.pi)

    # Left semicircle, parameterized by the angle t off the negative x-axis
    # (t > 0 above the axis).  The mark sits exactly at t = alpha.
    top_t = _linspace(alpha, half_pi, n_top)[1:]
    bot_t = _linspace(alpha, -half_pi, n_bot)[1:]

    def left_point(t: float) -> Point2:
        return Point2(-d / 2.0 - math.cos(t), math.sin(t))

    pts: list[Point2] = [left_point(alpha)]
    pts += [left_point(t) for t in top_t]
    pts += [left_point(t) for t in bot_t]
    left_count = len(pts)
    pts += [Point2(-p.x, -p.y) for p in pts[:left_count]]

    p_idx = 0
    q_idx = left_count
    top_chain = [(1 + j, top_t[j] - alpha) for j in range(n_top)]
    bot_chain = [(1 + n_top + j, alpha - bot_t[j]) for j in range(n_bot)]
    right_top = [(q_idx + i, k) for i, k in top_chain]
    right_bot = [(q_idx + i, k) for i, k in bot_chain]

    tris = _funnel(pts, p_idx, top_chain, bot_chain, check_rungs=True)
    tris += _funnel(pts, q_idx, right_top, right_bot, check_rungs=True)

    e_ltop = n_top                  # (-d/2, 1)
    e_lbot = n_top + n_bot          # (-d/2, -1)
    e_rbot = q_idx + n_top          # (d/2, -1)
    e_rtop = q_idx + n_top + n_bot  # (d/2, 1)
    tris += _strip(
        pts,
        top=[(e_ltop, -d / 2.0), (e_rtop, d / 2.0)],
        bottom=[(e_lbot, -d / 2.0), (e_rbot, d / 2.0)],
    )

    return ConstructionOutput(
        points=PointSet(tuple(pts)),
        triangulation=Triangulation.from_triples(tris),
        p=p_idx,
        q=q_idx,
        predicted_dilation=closed_form_t(d, alpha)[1],
    )


# --------------------------------------------------------------------------
# Three-circle construction (general position, shield points)
# --------------------------------------------------------------------------

def shield_position(
    unit_center: Point2, junction: Point2, big: Circle, margin: float
) -> Point2:
    """Place a shield point on the ray from unit_center through the junction.

    The point is pushed outward until the tangent path around it exceeds the
    boundary path between the tangency points by about ``margin`` (always
    within (0, 2*margin]); the root is found by bisection to 1e-12.
    """
    if margin <= 0:
        raise GeometryError("margin must be positive")
    r_u = dist(junction, unit_center)
    if r_u <= 0:
        raise ShieldPlacementError("junction coincides with the unit center")
    if abs(dist(junction, big.center) - big.radius) > 1e-6 * big.radius:
        raise ShieldPlacementError("junction does not lie on the big circle")
    ux = (junction.x - unit_center.x) / r_u
    uy = (junction.y - unit_center.y) / r_u

    # Direction of the big-circle arc away from this junction: the component
    # of the junction radius orthogonal to the line of centers.
    axx = unit_center.x - big.center.x
    axy = unit_center.y - big.center.y
    axn = math.hypot(axx, axy)
    if axn == 0:
        raise ShieldPlacementError("concentric circles")
    jx = junction.x - big.center.x
    jy = junction.y - big.center.y
    perp = jx * (-axy / axn) + jy * (axx / axn)
    if abs(perp) <= 1e-9 * big.radius:
        raise ShieldPlacementError("tangent circle configuration")
    psi_j = math.atan2(jy, jx)
    # The big arc departs the junction toward its midpoint, which lies on
    # the junction's side of the line of centers.
    mid_angle = math.atan2(perp * (axx / axn), -perp * (axy / axn))
    delta = (mid_angle - psi_j + math.pi) % (2.0 * math.pi) - math.pi
    arc_sign = 1.0 if delta > 0 else -1.0

    def excess(sigma: float) -> float:
        s = Point2(junction.x + sigma * ux, junction.y + sigma * uy)
        du = dist(s, unit_center)
        db = dist(s, big.center)
        if du <= r_u or db <= big.radius:
            return -margin  # inside: certainly not longer
        tan_u = math.sqrt(du * du - r_u * r_u)
        a_u = math.acos(r_u / du)
        tan_b = math.sqrt(db * db - big.radius * big.radius)
        a_b = math.acos(big.radius / db)
        psi_s = math.atan2(s.y - big.center.y, s.x - big.center.x)
        psi_tc = psi_s + arc_sign * a_b
        arc_b = big.radius * abs(
            (psi_tc - psi_j + math.pi) % (2.0 * math.pi) - math.pi
        )
        return (tan_u + tan_b) - (r_u * a_u + arc_b)

    lo = 0.0
    hi = max(margin, 1e-6)
    grow = 0
    while excess(hi) < margin:
        hi *= 2.0
        grow += 1
        if grow > 60:
            raise ShieldPlacementError("no bracket: tangent path never exceeds margin")
    if excess(lo) > margin:
        raise ShieldPlacementError("no sign change in the bisection bracket")
    while hi - lo > 1e-12:
        mid = (lo + hi) / 2.0
        if excess(mid) < margin:
            lo = mid
        else:
            hi = mid
    sigma = hi  # excess(hi) >= margin > 0, and <= 2*margin by continuity
    return Point2(junction.x + sigma * ux, junction.y + sigma * uy)


def generate_three_circle(spec: ThreeCircleSpec) -> ConstructionOutput:
    """General-position construction on three circles with shield points.

    Unit circles sit at (+-d/2, 0); the big circle (radius r) is centered at
    their midpoint.  Unit arcs run junction to junction, the big circle's
    arcs stop a gap short of each junction, and a shield point guards each
    junction from outside shortcuts.  The marked points are placed so the
    boundary route and the cheapest crossing route balance.
    """
    d, r = spec.d, spec.r
    c_left = Point2(-d / 2.0, 0.0)
    big = Circle(Point2(0.0, 0.0), r)

    xj = (1.0 - r * r - d * d / 4.0) / d
    yj_sq = r * r - xj * xj
    if yj_sq <= 0 or abs(xj + d / 2.0) >= 1.0:
        raise GeometryError("the unit circles do not intersect the big circle")
    yj = math.sqrt(yj_sq)
    junction = Point2(xj, yj)

    theta_j = math.acos(-(xj + d / 2.0))   # junction angle off the -x axis
    psi_j = math.atan2(yj, xj)             # junction angle seen from center
    beta_j = psi_j - math.pi / 2.0
    theta_eff = min(spec.theta, theta_j)
    beta_eff = min(spec.beta, beta_j - spec.g / r)
    if beta_eff <= 0:
        raise GeometryError("gap leaves no big-circle arc")

    phi = math.sin(theta_eff)  # balance of boundary route vs cheapest crossing
    if not (0.0 < phi < theta_eff):
        raise GeometryError("marked point falls outside the unit arc")

    density = spec.arc_density
    k_top = max(1, round(density * (theta_eff - phi)))
    k_bot = max(1, round(density * (theta_eff + phi)))
    m_big = max(2, round(density * 2.0 * beta_eff * r))

    def left_point(t: float) -> Point2:
        return Point2(-d / 2.0 - math.cos(t), math.sin(t))

    coords: list[Point2] = []
    index_of: dict[tuple[float, float], int] = {}

    def add(p: Point2) -> int:
        key = (p.x, p.y)
        if key in index_of:
            return index_of[key]
        index_of[key] = len(coords)
        coords.append(p)
        return index_of[key]

    p_idx = add(left_point(phi))
    top_t = _linspace(phi, theta_eff, k_top)[1:]
    bot_t = _linspace(phi, -theta_eff, k_bot)[1:]
    left_top = [(add(left_point(t)), t - phi) for t in top_t]
    left_bot = [(add(left_point(t)), phi - t) for t in bot_t]
    left_ids = {p_idx} | {i for i, _ in left_top} | {i for i, _ in left_bot}

    q_idx = add(Point2(-coords[p_idx].x, -coords[p_idx].y))
    right_top = [
        (add(Point2(-coords[i].x, -coords[i].y)), k) for i, k in left_top
    ]
    right_bot = [
        (add(Point2(-coords[i].x, -coords[i].y)), k) for i, k in left_bot
    ]
    right_ids = {q_idx} | {i for i, _ in right_top} | {i for i, _ in right_bot}

    # Big-circle arcs, left-to-right (descending angle on top).
    psi_vals = _linspace(math.pi / 2.0 + beta_eff, math.pi / 2.0 - beta_eff, m_big - 1)
    big_top = [
        (add(Point2(r * math.cos(a), r * math.sin(a))), r * math.cos(a))
        for a in psi_vals
    ]
    big_bot = [
        (add(Point2(r * math.cos(a), -r * math.sin(a))), r * math.cos(a))
        for a in psi_vals
    ]
    big_ids = {i for i, _ in big_top} | {i for i, _ in big_bot}

    c_right = Point2(d / 2.0, 0.0)
    shields = [
        shield_position(c_left, Point2(xj, yj), big, spec.shield_margin),
        shield_position(c_left, Point2(xj, -yj), big, spec.shield_margin),
        shield_position(c_right, Point2(-xj, yj), big, spec.shield_margin),
        shield_position(c_right, Point2(-xj, -yj), big, spec.shield_margin),
    ]
    for s in shields:
        add(s)

    ps = PointSet(tuple(coords))
    built = delaunay(ps)

    # The junction samples lie on the big circle as well, so when the unit
    # arcs reach them they join the big circle's cocircular family and the
    # strip polygon runs junction to junction.
    strip_top = list(big_top)
    strip_bot = list(big_bot)
    big_family = set(big_ids)
    if theta_eff == theta_j:
        tl, bl = left_top[-1][0], left_bot[-1][0]
        tr, br = right_bot[-1][0], right_top[-1][0]
        big_family |= {tl, bl, tr, br}
        if strip_top[0][0] != tl:
            strip_top.insert(0, (tl, coords[tl].x))
        if strip_top[-1][0] != tr:
            strip_top.append((tr, coords[tr].x))
        if strip_bot[0][0] != bl:
            strip_bot.insert(0, (bl, coords[bl].x))
        if strip_bot[-1][0] != br:
            strip_bot.append((br, coords[br].x))

    # Replace each circle's cocircular block with its route-preserving ladder.
    kept = [
        tri
        for tri in built.triangles
        if not (
            set(tri) <= left_ids or set(tri) <= right_ids or set(tri) <= big_family
        )
    ]
    tris = list(kept)
    tris += _funnel(coords, p_idx, left_top, left_bot, check_rungs=True)
    tris += _funnel(coords, q_idx, right_top, right_bot, check_rungs=True)
    tris += _strip(coords, strip_top, strip_bot)

    # Boundary route: unit arc to the junction, gap hop, big arc, and mirror.
    hop = dist(coords[left_top[-1][0]], coords[big_top[0][0]])
    route = 2.0 * (theta_eff + hop + r * beta_eff)
    ell = dist(coords[p_idx], coords[q_idx])

    return ConstructionOutput(
        points=ps,
        triangulation=Triangulation.from_triples(tris),
        p=p_idx,
        q=q_idx,
        predicted_dilation=route / ell,
    )
