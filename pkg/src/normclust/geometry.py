"""Planar primitives: hulls, normed diameters and perimeters, lines and
stabbing lines.

The convex hull is norm-independent; diameter and perimeter are measured in
the plane's own gauge.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import EmptyInput, TooFewPoints
from .norm import (
    DEFAULT_TOL,
    NormedPlane,
    Point,
    Segment,
    as_array,
    gauge,
    pairwise_distances,
)


@dataclass(frozen=True)
class ConvexPolygon:
    """Vertices in counterclockwise order, no three collinear retained.

    One vertex (a point) or two vertices (a segment) are allowed as
    degenerate hulls.
    """

    vertices: tuple[Point, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def degenerate(self) -> bool:
        return len(self.vertices) < 3


class Side(enum.Enum):
    LEFT = 1
    ON = 0
    RIGHT = -1


@dataclass(frozen=True)
class OrientedLine:
    anchor: Point
    direction: Point  # nonzero; "left" is the positive-determinant side


class OnRule(enum.Enum):
    TO_LEFT = "to_left"
    TO_RIGHT = "to_right"


# --------------------------------------------------------------------------


def convex_hull(points) -> ConvexPolygon:
    """Monotone chain, strict (collinear vertices dropped)."""
    pts = [Point(float(p[0]), float(p[1])) for p in points]
    if not pts:
        raise EmptyInput("convex hull of an empty set")
    uniq = sorted(set(pts))
    if len(uniq) == 1:
        return ConvexPolygon((uniq[0],))
    scale = max(max(abs(p.x), abs(p.y)) for p in uniq)
    eps = 1e-12 * max(1.0, scale) ** 2

    def build(seq):
        chain: list[Point] = []
        for p in seq:
            while len(chain) >= 2:
                o, a = chain[-2], chain[-1]
                if (a.x - o.x) * (p.y - o.y) - (a.y - o.y) * (p.x - o.x) <= eps:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    lower = build(uniq)
    upper = build(reversed(uniq))
    verts = lower[:-1] + upper[:-1]
    if len(verts) < 2:  # all collinear
        return ConvexPolygon((uniq[0], uniq[-1]))
    return ConvexPolygon(tuple(verts))


def _chains(poly: ConvexPolygon):
    """Split a CCW hull into lower and upper x-monotone chains."""
    verts = poly.vertices
    lo = min(range(len(verts)), key=lambda i: verts[i])
    hi = max(range(len(verts)), key=lambda i: verts[i])
    lower = []
    i = lo
    while True:
        lower.append(verts[i])
        if i == hi:
            break
        i = (i + 1) % len(verts)
    upper = []
    i = hi
    while True:
        upper.append(verts[i])
        if i == lo:
            break
        i = (i + 1) % len(verts)
    upper.reverse()  # leftmost -> rightmost along the top
    return upper, lower


def antipodal_pairs(poly: ConvexPolygon) -> Iterable[tuple[Point, Point]]:
    """Rotating calipers; on slope ties the cross pairs are emitted too."""
    if len(poly) == 1:
        yield poly.vertices[0], poly.vertices[0]
        return
    if len(poly) == 2:
        yield poly.vertices[0], poly.vertices[1]
        return
    U, L = _chains(poly)
    scale = max(max(abs(p.x), abs(p.y)) for p in poly.vertices)
    eps = 1e-12 * max(1.0, scale) ** 2
    i, j = 0, len(L) - 1
    while i < len(U) - 1 or j > 0:
        yield U[i], L[j]
        if i == len(U) - 1:
            j -= 1
        elif j == 0:
            i += 1
        else:
            du = (U[i + 1].x - U[i].x, U[i + 1].y - U[i].y)
            dl = (L[j].x - L[j - 1].x, L[j].y - L[j - 1].y)
            c = du[1] * dl[0] - dl[1] * du[0]
            if c > eps:
                i += 1
            elif c < -eps:
                j -= 1
            else:
                yield U[i + 1], L[j]
                yield U[i], L[j - 1]
                i += 1
                j -= 1
    yield U[i], L[j]


def diameter(plane: NormedPlane, points) -> tuple[float, tuple[Point, Point]]:
    """Normed diameter with an attaining pair, via rotating calipers."""
    hull = convex_hull(points)
    best = -1.0
    best_pair = (hull.vertices[0], hull.vertices[0])
    for p, q in antipodal_pairs(hull):
        g = gauge(plane, (q.x - p.x, q.y - p.y))
        if g > best:
            best, best_pair = g, (p, q)
    return best, best_pair


def norm_perimeter(plane: NormedPlane, polygon: ConvexPolygon) -> float:
    """Sum of gauge lengths of the edges (a 2-vertex polygon counts both ways)."""
    verts = polygon.vertices
    if len(verts) < 2:
        return 0.0
    arr = as_array(verts)
    edges = np.roll(arr, -1, axis=0) - arr
    return float(np.sum(gauge(plane, edges)))


# --------------------------------------------------------------------------
# lines


def line_through(p, q) -> OrientedLine:
    p = Point(float(p[0]), float(p[1]))
    q = Point(float(q[0]), float(q[1]))
    return OrientedLine(p, Point(q.x - p.x, q.y - p.y))


def signed_offset(line: OrientedLine, p) -> float:
    """Orientation determinant of p against the line (positive = left)."""
    dx, dy = line.direction
    return dx * (p[1] - line.anchor.y) - dy * (p[0] - line.anchor.x)


def side_of(line: OrientedLine, p, tol: float = DEFAULT_TOL) -> Side:
    det = signed_offset(line, p)
    dl = max(abs(line.direction.x), abs(line.direction.y))
    pl = max(abs(p[0] - line.anchor.x), abs(p[1] - line.anchor.y), 1.0)
    band = tol * max(1.0, dl * pl)
    if det > band:
        return Side.LEFT
    if det < -band:
        return Side.RIGHT
    return Side.ON


def split_by_line(points, line: OrientedLine, on_rule: OnRule = OnRule.TO_LEFT,
                  tol: float = DEFAULT_TOL):
    """Partition points into (left, right); On-points follow ``on_rule``."""
    left, right = [], []
    for p in points:
        s = side_of(line, p, tol)
        if s is Side.LEFT or (s is Side.ON and on_rule is OnRule.TO_LEFT):
            left.append(Point(float(p[0]), float(p[1])))
        else:
            right.append(Point(float(p[0]), float(p[1])))
    return left, right


def _segment_stabbed(line: OrientedLine, seg: Segment, tol: float) -> bool:
    sa = side_of(line, seg.a, tol)
    sb = side_of(line, seg.b, tol)
    if sa is Side.ON or sb is Side.ON:
        return True
    return sa is not sb


def stabbing_line(segments: Sequence[Segment], tol: float = DEFAULT_TOL) -> Optional[OrientedLine]:
    """A line meeting every segment, or None.

    Candidates: lines through two segment endpoints, lines through one
    endpoint parallel to a segment, and horizontal fallbacks.  A stabbing
    line, if one exists, can be translated and rotated until it touches two
    endpoints, so the candidate set is complete.
    """
    segs = list(segments)
    if not segs:
        return OrientedLine(Point(0.0, 0.0), Point(1.0, 0.0))
    endpoints: list[Point] = []
    for s in segs:
        for e in (s.a, s.b):
            if e not in endpoints:
                endpoints.append(e)
    candidates: list[OrientedLine] = []
    for i, e1 in enumerate(endpoints):
        for e2 in endpoints[i + 1:]:
            if e1 != e2:
                candidates.append(line_through(e1, e2))
    for e in endpoints:
        for s in segs:
            if s.a != s.b:
                candidates.append(OrientedLine(e, Point(s.b.x - s.a.x, s.b.y - s.a.y)))
        candidates.append(OrientedLine(e, Point(1.0, 0.0)))
    for line in candidates:
        if all(_segment_stabbed(line, s, tol) for s in segs):
            return line
    return None


def sorted_pairwise_distances(plane: NormedPlane, points) -> list[tuple[float, tuple[int, int]]]:
    """All n(n-1)/2 distances ascending; ties broken by index pair."""
    pts = as_array(points)
    n = len(pts)
    if n < 2:
        raise TooFewPoints("need at least two points")
    D = pairwise_distances(plane, pts)
    iu, ju = np.triu_indices(n, k=1)
    vals = D[iu, ju]
    order = np.lexsort((ju, iu, vals))
    return [(float(vals[k]), (int(iu[k]), int(ju[k]))) for k in order]


# --------------------------------------------------------------------------
# convex polygon helpers (norm-independent)


def point_in_convex(poly: ConvexPolygon, p, tol: float = DEFAULT_TOL) -> bool:
    """Closed membership test; degenerate polygons are handled."""
    verts = poly.vertices
    if len(verts) == 1:
        v = verts[0]
        return abs(p[0] - v.x) <= tol and abs(p[1] - v.y) <= tol
    scale = max(1.0, max(max(abs(v.x), abs(v.y)) for v in verts))
    band = tol * scale
    if len(verts) == 2:
        a, b = verts
        cross = (b.x - a.x) * (p[1] - a.y) - (b.y - a.y) * (p[0] - a.x)
        if abs(cross) > band * max(1.0, abs(b.x - a.x) + abs(b.y - a.y)):
            return False
        t = (p[0] - a.x) * (b.x - a.x) + (p[1] - a.y) * (b.y - a.y)
        return -band <= t <= (b.x - a.x) ** 2 + (b.y - a.y) ** 2 + band
    for i in range(len(verts)):
        a, b = verts[i], verts[(i + 1) % len(verts)]
        if (b.x - a.x) * (p[1] - a.y) - (b.y - a.y) * (p[0] - a.x) < -band:
            return False
    return True


def convex_clip(subject: Sequence[Point], clip: ConvexPolygon) -> list[Point]:
    """Sutherland-Hodgman clip of a convex subject by a convex polygon."""
    out = [np.array([p[0], p[1]], float) for p in subject]
    verts = clip.vertices
    if len(verts) < 3:
        return []
    for i in range(len(verts)):
        a, b = verts[i], verts[(i + 1) % len(verts)]
        ex, ey = b.x - a.x, b.y - a.y
        inp = out
        out = []
        if not inp:
            break
        prev = inp[-1]
        prev_in = ex * (prev[1] - a.y) - ey * (prev[0] - a.x) >= 0
        for cur in inp:
            cur_in = ex * (cur[1] - a.y) - ey * (cur[0] - a.x) >= 0
            if cur_in != prev_in:
                d = cur - prev
                den = ex * d[1] - ey * d[0]
                if abs(den) > 1e-30:
                    t = (ey * (prev[0] - a.x) - ex * (prev[1] - a.y)) / den
                    out.append(prev + t * d)
            if cur_in:
                out.append(cur)
            prev, prev_in = cur, cur_in
    return [Point(float(p[0]), float(p[1])) for p in out]


def polygon_area(points: Sequence) -> float:
    if len(points) < 3:
        return 0.0
    arr = as_array([tuple(p) for p in points])
    x, y = arr[:, 0], arr[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def hulls_interiors_overlap(hull_a: ConvexPolygon, hull_b: ConvexPolygon,
                            tol: float = DEFAULT_TOL) -> bool:
    """True when conv(A) and conv(B) share interior points."""
    if hull_a.degenerate or hull_b.degenerate:
        return False
    inter = convex_clip(hull_a.vertices, hull_b)
    scale = max(
        1.0,
        max(max(abs(v.x), abs(v.y)) for v in hull_a.vertices + hull_b.vertices),
    )
    return polygon_area(inter) > tol * scale * scale
