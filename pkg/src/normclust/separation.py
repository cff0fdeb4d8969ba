"""Cluster separation without diameter increase.

Given clusters A and B, produce linearly separable A', B' with
diam(A') <= diam(A), diam(B') <= diam(B) and A' u B' = A u B.  The
construction decomposes the hull boundaries into interlacing pieces, finds
"bad" piece pairs whose cross distance exceeds the larger diameter, groups
them, and cuts along a line through two boundary crossings.  A brute-force
candidate split is kept as a safety net for degenerate inputs.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import EmptyCluster, NoOverlap, NormClustError
from .geometry import (
    ConvexPolygon,
    OnRule,
    OrientedLine,
    Side,
    convex_hull,
    diameter,
    hulls_interiors_overlap,
    line_through,
    norm_perimeter,
    point_in_convex,
    side_of,
    signed_offset,
)
from .norm import NormedPlane, Point, Segment, as_array, gauge, pairwise_distances


class SeparationWitness(enum.Enum):
    NO_BAD_PAIRS = "no_bad_pairs"
    DISJOINT_HULLS = "disjoint_hulls"
    GROUP_SPLIT = "group_split"
    # candidate-line search: degenerate hulls, or a group split whose
    # perimeter sum failed to decrease (possible on flat-sided norms)
    FALLBACK_SPLIT = "fallback_split"


@dataclass(frozen=True)
class _Crossing:
    point: Point
    ia: int
    ta: float
    ib: int
    tb: float


@dataclass(frozen=True)
class CrossingSequence:
    """Boundary crossing points of conv(A) and conv(B), clockwise."""

    points: tuple[Point, ...]
    records: tuple[_Crossing, ...]  # counterclockwise along the A hull

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Piece:
    """One boundary piece; crossing indices refer to the clockwise crossing
    cycle that starts at the first A piece's entry crossing."""

    owner: str  # "A" or "B"
    index: int  # 0-based within its owner, clockwise
    polygon: ConvexPolygon
    entry_crossing: int  # clockwise crossing index before the piece
    exit_crossing: int   # clockwise crossing index after the piece
    cycle: tuple[Point, ...]  # raw boundary cycle, incl. crossing points
    entry_point: Point
    exit_point: Point


@dataclass(frozen=True)
class BadPairRecord:
    pieces: tuple[int, int]  # (A-piece index, B-piece index)
    witness: Segment
    length: float


@dataclass(frozen=True)
class GroupDecomposition:
    groups_a: tuple[tuple[int, ...], ...]
    groups_b: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SeparationResult:
    a_prime: tuple[Point, ...]
    b_prime: tuple[Point, ...]
    line: OrientedLine
    witness: SeparationWitness


# --------------------------------------------------------------------------
# boundary crossings


def _edge_cross(a1: Point, a2: Point, b1: Point, b2: Point, eps: float):
    """Proper transversal crossing of two closed segments, or None."""
    d1 = (a2.x - a1.x, a2.y - a1.y)
    d2 = (b2.x - b1.x, b2.y - b1.y)
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(den) <= eps:
        return None
    rx, ry = b1.x - a1.x, b1.y - a1.y
    t = (rx * d2[1] - ry * d2[0]) / den
    u = (rx * d1[1] - ry * d1[0]) / den
    if -1e-12 <= t <= 1 + 1e-12 and -1e-12 <= u <= 1 + 1e-12:
        return (
            Point(a1.x + t * d1[0], a1.y + t * d1[1]),
            min(max(t, 0.0), 1.0),
            min(max(u, 0.0), 1.0),
        )
    return None


def boundary_crossings(conv_a: ConvexPolygon, conv_b: ConvexPolygon,
                       tol: float = 1e-9) -> CrossingSequence:
    """All transversal boundary intersection points, clockwise.

    Empty when the hulls are disjoint or nested.
    """
    if conv_a.degenerate or conv_b.degenerate:
        return CrossingSequence((), ())
    va, vb = conv_a.vertices, conv_b.vertices
    scale = max(1.0, max(max(abs(p.x), abs(p.y)) for p in va + vb))
    eps = tol * scale * scale
    recs: list[_Crossing] = []
    for ia in range(len(va)):
        a1, a2 = va[ia], va[(ia + 1) % len(va)]
        for ib in range(len(vb)):
            b1, b2 = vb[ib], vb[(ib + 1) % len(vb)]
            hit = _edge_cross(a1, a2, b1, b2, eps)
            if hit is not None:
                pt, t, u = hit
                recs.append(_Crossing(pt, ia, t, ib, u))
    # dedupe near-identical points (vertex grazing produces twins)
    recs.sort(key=lambda r: (r.ia, r.ta))
    dedup: list[_Crossing] = []
    for r in recs:
        if any(
            abs(r.point.x - s.point.x) <= 1e3 * tol * scale
            and abs(r.point.y - s.point.y) <= 1e3 * tol * scale
            for s in dedup
        ):
            continue
        dedup.append(r)
    cw_points = tuple(r.point for r in reversed(dedup))
    return CrossingSequence(cw_points, tuple(dedup))


# --------------------------------------------------------------------------
# piece decomposition


def _walk(hull: ConvexPolygon, pos1, pos2, p1: Point, p2: Point):
    """Boundary polyline from p1 (at pos1) CCW to p2 (at pos2)."""
    verts = hull.vertices
    n = len(verts)
    (i1, t1), (i2, t2) = pos1, pos2
    pts = [p1]
    if i1 == i2 and t2 >= t1:
        pts.append(p2)
        return pts
    i = i1
    while True:
        nxt = (i + 1) % n
        pts.append(verts[nxt])
        i = nxt
        if i == i2:
            break
        if len(pts) > 2 * n + 2:
            raise NormClustError("boundary walk failed to terminate")
    pts.append(p2)
    return pts


def _polyline_midpoint(pts: Sequence[Point]) -> Point:
    arr = as_array([tuple(p) for p in pts])
    seg = np.diff(arr, axis=0)
    lens = np.hypot(seg[:, 0], seg[:, 1])
    total = float(lens.sum())
    if total <= 0:
        return pts[0]
    target = total / 2
    acc = 0.0
    for k, l in enumerate(lens):
        if acc + l >= target:
            s = (target - acc) / l if l > 0 else 0.0
            p = arr[k] + s * seg[k]
            return Point(float(p[0]), float(p[1]))
        acc += l
    return pts[-1]


def decompose_pieces(a_points, b_points, crossings: CrossingSequence) -> list[Piece]:
    """Alternating boundary pieces of conv(A)\\conv(B) and conv(B)\\conv(A),
    clockwise, starting with an A piece."""
    if len(crossings) < 2:
        raise NoOverlap("hulls are disjoint or nested")
    hull_a = convex_hull(a_points)
    hull_b = convex_hull(b_points)
    recs = list(crossings.records)
    m = len(recs)
    if m % 2 != 0:
        raise NormClustError("odd crossing count; tangential configuration")

    # classify the boundary run after each crossing (CCW along the A hull)
    runs = []
    for k in range(m):
        c1, c2 = recs[k], recs[(k + 1) % m]
        walk_a = _walk(hull_a, (c1.ia, c1.ta), (c2.ia, c2.ta), c1.point, c2.point)
        inside = point_in_convex(hull_b, _polyline_midpoint(walk_a), 1e-9)
        runs.append((c1, c2, walk_a, inside))
    if any(runs[k][3] == runs[(k + 1) % m][3] for k in range(m)):
        raise NormClustError("crossing runs do not alternate")

    # cyclic position of every crossing along the B hull
    def b_key(r: _Crossing) -> float:
        return r.ib + r.tb

    nb_total = len(hull_b.vertices)

    def run_is_clear(cfrom: _Crossing, cto: _Crossing) -> bool:
        """No other crossing strictly inside the CCW B-run cfrom -> cto."""
        lo, hi = b_key(cfrom), b_key(cto)
        for r in recs:
            if r is cfrom or r is cto:
                continue
            x = b_key(r)
            if lo <= hi:
                if lo < x < hi:
                    return False
            elif x > lo or x < hi:
                return False
        return True

    pieces_ccw = []
    for c1, c2, walk_a, inside in runs:
        # B-hull run closing the piece, from c2 back to c1: the piece boundary
        # contains no other crossing, so pick the crossing-free direction
        # (midpoint side decides when both directions are free, i.e. k = 1)
        want_inside_a = not inside  # A-piece closes with the B-arc inside conv(A)
        fwd_clear = run_is_clear(c2, c1)
        rev_clear = run_is_clear(c1, c2)
        if fwd_clear and not rev_clear:
            chosen = _walk(hull_b, (c2.ib, c2.tb), (c1.ib, c1.tb), c2.point, c1.point)
        elif rev_clear and not fwd_clear:
            chosen = list(reversed(_walk(hull_b, (c1.ib, c1.tb), (c2.ib, c2.tb), c1.point, c2.point)))
        elif fwd_clear and rev_clear:
            chosen = None
            for cand in (
                _walk(hull_b, (c2.ib, c2.tb), (c1.ib, c1.tb), c2.point, c1.point),
                list(reversed(_walk(hull_b, (c1.ib, c1.tb), (c2.ib, c2.tb), c1.point, c2.point))),
            ):
                if point_in_convex(hull_a, _polyline_midpoint(cand), 1e-9) == want_inside_a:
                    chosen = cand
                    break
            if chosen is None:
                raise NormClustError("could not orient the closing hull run")
        else:
            raise NormClustError("no crossing-free closing run")
        if point_in_convex(hull_a, _polyline_midpoint(chosen), 1e-9) != want_inside_a:
            raise NormClustError("closing run lies on the wrong side")
        cycle = tuple(walk_a) + tuple(chosen[1:-1])
        owner = "B" if inside else "A"
        pieces_ccw.append((owner, cycle, c1, c2))

    # clockwise presentation: reverse, rotate to start at an A piece
    pieces_cw = list(reversed(pieces_ccw))
    start = next(i for i, p in enumerate(pieces_cw) if p[0] == "A")
    pieces_cw = pieces_cw[start:] + pieces_cw[:start]

    out: list[Piece] = []
    counts = {"A": 0, "B": 0}
    for j, (owner, cycle, c1, c2) in enumerate(pieces_cw):
        out.append(
            Piece(
                owner=owner,
                index=counts[owner],
                polygon=convex_hull(cycle),
                entry_crossing=j,
                exit_crossing=(j + 1) % m,
                cycle=cycle,
                entry_point=c2.point,  # clockwise entry = CCW-end crossing
                exit_point=c1.point,
            )
        )
        counts[owner] += 1
    if counts["A"] != counts["B"]:
        raise NormClustError("pieces do not interlace")
    return out


def _cyclic_runs(flags: Sequence[bool]) -> list[list[int]]:
    n = len(flags)
    idx = [i for i in range(n) if flags[i]]
    if not idx:
        return []
    if all(flags):
        return [list(range(n))]
    runs = []
    run: list[int] = []
    # start scanning right after a gap so cyclic runs are not split
    start = next(i for i in range(n) if not flags[i])
    for k in range(1, n + 1):
        i = (start + k) % n
        if flags[i]:
            run.append(i)
        elif run:
            runs.append(run)
            run = []
    if run:
        runs.append(run)
    runs.sort(key=lambda r: r[0])
    return runs


def find_bad_structure(plane: NormedPlane, pieces: Sequence[Piece], diam_a: float
                       ) -> tuple[list[BadPairRecord], GroupDecomposition]:
    """Bad piece pairs (cross distance > diam_a) and their maximal cyclic
    groups per cluster."""
    a_pieces = [p for p in pieces if p.owner == "A"]
    b_pieces = [p for p in pieces if p.owner == "B"]
    tol = plane.tolerance * max(1.0, diam_a)
    records: list[BadPairRecord] = []
    for ap in a_pieces:
        va = as_array([tuple(p) for p in ap.polygon.vertices])
        for bp in b_pieces:
            vb = as_array([tuple(p) for p in bp.polygon.vertices])
            diffs = va[:, None, :] - vb[None, :, :]
            g = gauge(plane, diffs.reshape(-1, 2)).reshape(len(va), len(vb))
            k = int(np.argmax(g))
            i, j = divmod(k, len(vb))
            if g[i, j] > diam_a + tol:
                records.append(
                    BadPairRecord(
                        (ap.index, bp.index),
                        Segment(Point(*va[i]), Point(*vb[j])),
                        float(g[i, j]),
                    )
                )
    k = len(a_pieces)
    bad_a = [False] * k
    bad_b = [False] * k
    for r in records:
        bad_a[r.pieces[0]] = True
        bad_b[r.pieces[1]] = True
    groups = GroupDecomposition(
        tuple(tuple(r) for r in _cyclic_runs(bad_a)),
        tuple(tuple(r) for r in _cyclic_runs(bad_b)),
    )
    return records, groups


# --------------------------------------------------------------------------
# the separation construction


def _diam(plane, pts) -> float:
    if len(pts) == 0:
        return 0.0
    return diameter(plane, pts)[0]


def _perim_of(plane, pts) -> float:
    if len(pts) == 0:
        return 0.0
    return norm_perimeter(plane, convex_hull(pts))


def _tangent_line(points: Sequence[Point]) -> OrientedLine:
    """A supporting line of conv(points) with every point on one closed side."""
    hull = convex_hull(points)
    v = hull.vertices
    if len(v) == 1:
        return OrientedLine(v[0], Point(1.0, 0.0))
    return line_through(v[0], v[1])


def _find_separating_line(union, n_a: int, tol: float = 1e-9) -> Optional[OrientedLine]:
    """A line with the first n_a points on one closed side and the rest on the
    other, if one exists."""
    pts = union
    n = len(pts)
    cands: list[OrientedLine] = []
    for i in range(n):
        for j in range(i + 1, n):
            if pts[i] != pts[j]:
                cands.append(line_through(pts[i], pts[j]))
    dirs = [Point(1.0, 0.0), Point(0.0, 1.0)]
    for p in pts:
        for d in dirs:
            cands.append(OrientedLine(p, d))
    for line in cands:
        ok_left = all(side_of(line, p, tol) is not Side.RIGHT for p in pts[:n_a]) and all(
            side_of(line, p, tol) is not Side.LEFT for p in pts[n_a:]
        )
        if ok_left:
            return line
        ok_right = all(side_of(line, p, tol) is not Side.LEFT for p in pts[:n_a]) and all(
            side_of(line, p, tol) is not Side.RIGHT for p in pts[n_a:]
        )
        if ok_right:
            return OrientedLine(line.anchor, Point(-line.direction.x, -line.direction.y))
    return None


def _valid(plane, a_pts, b_pts, line, diam_a, diam_b) -> bool:
    slack = 5e-10
    if _diam(plane, a_pts) > diam_a + slack or _diam(plane, b_pts) > diam_b + slack:
        return False
    for p in a_pts:
        if side_of(line, p) is Side.RIGHT:
            return False
    for p in b_pts:
        if side_of(line, p) is Side.LEFT:
            return False
    return True


def _fallback_split(plane, union, diam_a, diam_b):
    """Exhaustive candidate-line search; among valid splits pick the one with
    the smallest resulting hull-perimeter sum (one at least as good as the
    constructive answer always exists)."""
    pts = union
    n = len(pts)
    arr = as_array([tuple(p) for p in pts])
    D = pairwise_distances(plane, arr)
    scale = max(1.0, float(np.abs(arr).max()))
    band = 1e-9 * scale
    slack = 5e-10

    def mask_diam(mask: np.ndarray) -> float:
        if mask.sum() < 2:
            return 0.0
        sub = D[np.ix_(mask, mask)]
        return float(sub.max())

    seen: set[bytes] = set()
    candidates: list[tuple[np.ndarray, OrientedLine]] = []

    full = np.ones(n, dtype=bool)
    empty = np.zeros(n, dtype=bool)
    far = OrientedLine(Point(float(arr[:, 0].min() - 1.0), 0.0), Point(0.0, -1.0))
    candidates.append((full, far))
    candidates.append((empty, far))

    for i in range(n):
        for j in range(i + 1, n):
            if pts[i] == pts[j]:
                continue
            line = line_through(pts[i], pts[j])
            off = (arr[:, 0] - line.anchor.x) * (-line.direction.y) + (
                arr[:, 1] - line.anchor.y
            ) * line.direction.x
            onb = band * max(1.0, abs(line.direction.x) + abs(line.direction.y)) * scale
            strict_left = off > onb
            on = np.abs(off) <= onb
            on_idx = np.nonzero(on)[0][:6]
            for r in range(len(on_idx) + 1):
                for chosen in itertools.combinations(on_idx, r):
                    mask = strict_left.copy()
                    mask[list(chosen)] = True
                    key = mask.tobytes()
                    if key not in seen:
                        seen.add(key)
                        candidates.append((mask, line))

    best = None
    for mask, line in candidates:
        d_left = mask_diam(mask)
        d_right = mask_diam(~mask)
        for a_mask, d_a_side, d_b_side in (
            (mask, d_left, d_right),
            (~mask, d_right, d_left),
        ):
            if d_a_side <= diam_a + slack and d_b_side <= diam_b + slack:
                a_pts = tuple(pts[k] for k in range(n) if a_mask[k])
                b_pts = tuple(pts[k] for k in range(n) if not a_mask[k])
                after = 0.0
                if a_pts:
                    after += norm_perimeter(plane, convex_hull(a_pts))
                if b_pts:
                    after += norm_perimeter(plane, convex_hull(b_pts))
                # orient the line with the A side on the left
                ln = line
                if any(side_of(ln, p) is Side.RIGHT for p in a_pts):
                    ln = OrientedLine(ln.anchor, Point(-ln.direction.x, -ln.direction.y))
                if _valid(plane, a_pts, b_pts, ln, diam_a, diam_b):
                    if best is None or after < best[0]:
                        best = (after, a_pts, b_pts, ln)
    if best is None:
        raise NormClustError("no valid separable split found (unexpected)")
    return best[1], best[2], best[3]


def _group_split(plane, union, pieces, records, groups):
    """The splitting line of the construction: pick the last bad A piece of
    the first group; the line runs through the crossing before the first bad
    B piece after it and the crossing after its last bad partner."""
    piece_pos = {}
    for pos, p in enumerate(pieces):
        piece_pos[(p.owner, p.index)] = pos
    m = len(pieces)

    a_groups = groups.groups_a
    group0 = a_groups[0]
    a_i = group0[-1]
    pos_ai = piece_pos[("A", a_i)]

    def disp(owner_idx):
        return (piece_pos[("B", owner_idx)] - pos_ai) % m

    partners = sorted({r.pieces[1] for r in records if r.pieces[0] == a_i})
    all_bad_b = sorted({r.pieces[1] for r in records})
    b_first = min(all_bad_b, key=disp)
    b_last = max(partners, key=disp)

    pc_first = pieces[piece_pos[("B", b_first)]]
    pc_last = pieces[piece_pos[("B", b_last)]]
    u_before = pc_first.entry_point
    u_after = pc_last.exit_point
    if abs(u_before.x - u_after.x) < 1e-12 and abs(u_before.y - u_after.y) < 1e-12:
        raise NormClustError("degenerate splitting line")
    line = line_through(u_before, u_after)

    # B' lives on the side of B_first's piece
    ref, ref_off = None, 0.0
    for v in pc_first.polygon.vertices + pc_last.polygon.vertices:
        off = signed_offset(line, v)
        if abs(off) > abs(ref_off):
            ref, ref_off = v, off
    if ref is None or ref_off == 0.0:
        raise NormClustError("cannot orient the splitting line")
    sgn = 1.0 if ref_off > 0 else -1.0
    # orient so that the A' side is the closed left side
    if sgn > 0:
        line = OrientedLine(line.anchor, Point(-line.direction.x, -line.direction.y))
    return line


def _split_assignments(plane, union, line, diam_a, diam_b):
    """Splits of the union by ``line``: strict sides are fixed (left = A');
    points exactly on the line are enumerated over both sides, the all-to-A'
    convention first."""
    scale = max(1.0, max(max(abs(p.x), abs(p.y)) for p in union))
    band = 1e-9 * scale * max(abs(line.direction.x), abs(line.direction.y), 1e-30)
    strict_a, strict_b, on_pts = [], [], []
    for p in union:
        off = signed_offset(line, p)
        if off > band:
            strict_a.append(p)
        elif off < -band:
            strict_b.append(p)
        else:
            on_pts.append(p)
    on_pts = on_pts[:8]
    combos = [tuple([True] * len(on_pts)), tuple([False] * len(on_pts))]
    for combo in itertools.product((True, False), repeat=len(on_pts)):
        if combo not in combos:
            combos.append(combo)
    for combo in combos:
        a_pts = tuple(strict_a) + tuple(p for p, to_a in zip(on_pts, combo) if to_a)
        b_pts = tuple(strict_b) + tuple(p for p, to_a in zip(on_pts, combo) if not to_a)
        yield a_pts, b_pts


def _separate_ordered(plane, a_points, b_points, diam_a, diam_b):
    """Core construction assuming diam(A) >= diam(B)."""
    union = tuple(a_points) + tuple(b_points)
    hull_a = convex_hull(a_points)
    hull_b = convex_hull(b_points)
    slack = 5e-10

    def no_bad_branch():
        if _diam(plane, union) <= diam_a + slack:
            return (union, (), _tangent_line(union), SeparationWitness.NO_BAD_PAIRS)
        return None

    if hull_a.degenerate or hull_b.degenerate:
        line = _find_separating_line(union, len(a_points))
        if line is not None:
            return (tuple(a_points), tuple(b_points), line, SeparationWitness.DISJOINT_HULLS)
        res = no_bad_branch()
        if res is not None:
            return res
        a_pts, b_pts, line = _fallback_split(plane, union, diam_a, diam_b)
        return (a_pts, b_pts, line, SeparationWitness.FALLBACK_SPLIT)

    crossings = boundary_crossings(hull_a, hull_b, plane.tolerance)
    if len(crossings) < 2:
        nested = all(point_in_convex(hull_a, v) for v in hull_b.vertices) or all(
            point_in_convex(hull_b, v) for v in hull_a.vertices
        )
        if nested:
            res = no_bad_branch()
            if res is not None:
                return res
        line = _find_separating_line(union, len(a_points))
        if line is not None:
            return (tuple(a_points), tuple(b_points), line, SeparationWitness.DISJOINT_HULLS)
        res = no_bad_branch()
        if res is not None:
            return res
        a_pts, b_pts, line = _fallback_split(plane, union, diam_a, diam_b)
        return (a_pts, b_pts, line, SeparationWitness.FALLBACK_SPLIT)

    try:
        pieces = decompose_pieces(a_points, b_points, crossings)
        records, groups = find_bad_structure(plane, pieces, diam_a)
        if not records:
            res = no_bad_branch()
            if res is None:
                raise NormClustError("no bad pairs but the union diameter grew")
            return res
        line = _group_split(plane, union, pieces, records, groups)
        before = norm_perimeter(plane, hull_a) + norm_perimeter(plane, hull_b)
        best = None
        for a_pts, b_pts in _split_assignments(plane, union, line, diam_a, diam_b):
            if _valid(plane, a_pts, b_pts, line, diam_a, diam_b):
                after = _perim_of(plane, a_pts) + _perim_of(plane, b_pts)
                if best is None or after < best[0]:
                    best = (after, a_pts, b_pts)
        if best is None:
            raise NormClustError("group split failed validation")
        # boundaries cross here, so the hull interiors overlap and the
        # perimeter sum must drop strictly; on flat-sided norms the rule's
        # line may hit a chord of half the intersection's perimeter, in
        # which case a strictly decreasing candidate split is used instead
        if before - best[0] > 1e-9:
            return (best[1], best[2], line, SeparationWitness.GROUP_SPLIT)
        raise NormClustError("group split did not decrease the perimeter sum")
    except NormClustError:
        a_pts, b_pts, line = _fallback_split(plane, union, diam_a, diam_b)
        return (a_pts, b_pts, line, SeparationWitness.FALLBACK_SPLIT)


def separate_clusters(plane: NormedPlane, a_points, b_points) -> SeparationResult:
    """Produce linearly separable A', B' covering A u B with no diameter
    increase on either side."""
    a_list = [Point(float(p[0]), float(p[1])) for p in a_points]
    b_list = [Point(float(p[0]), float(p[1])) for p in b_points]
    if not a_list or not b_list:
        raise EmptyCluster("both clusters must be nonempty")
    diam_a = _diam(plane, a_list)
    diam_b = _diam(plane, b_list)
    swapped = diam_b > diam_a
    if swapped:
        big, small, d_big, d_small = b_list, a_list, diam_b, diam_a
    else:
        big, small, d_big, d_small = a_list, b_list, diam_a, diam_b
    big_p, small_p, line, witness = _separate_ordered(plane, big, small, d_big, d_small)
    if swapped:
        a_prime, b_prime = small_p, big_p
        line = OrientedLine(line.anchor, Point(-line.direction.x, -line.direction.y))
    else:
        a_prime, b_prime = big_p, small_p
    return SeparationResult(tuple(a_prime), tuple(b_prime), line, witness)


def perimeter_check(plane: NormedPlane, a_points, b_points,
                    result: SeparationResult) -> tuple[float, float]:
    """(before, after) hull-perimeter sums; after <= before, strictly when the
    hull interiors meet."""
    def perim(pts):
        if len(pts) == 0:
            return 0.0
        return norm_perimeter(plane, convex_hull(pts))

    before = perim(list(a_points)) + perim(list(b_points))
    after = perim(list(result.a_prime)) + perim(list(result.b_prime))
    return before, after
