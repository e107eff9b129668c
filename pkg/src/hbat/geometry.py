"""Exact integer geometry on small character grids.

Everything here is decided at cell centers with integer cross products:
no floats, no epsilons. Boundaries count as inside throughout, so a
response sitting exactly on a triangle edge or hull edge is a valid
member of that shape's response set.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class GridPoint:
    """A cell position on a w x h grid: col in [0, w), row in [0, h)."""

    col: int
    row: int

    def on_grid(self, w: int, h: int) -> bool:
        return 0 <= self.col < w and 0 <= self.row < h


@dataclass(frozen=True)
class Triangle:
    """Three grid vertices; collinear (degenerate) triangles are allowed."""

    vertices: tuple[GridPoint, GridPoint, GridPoint]

    def __post_init__(self) -> None:
        if len(self.vertices) != 3:
            raise ValueError("triangle needs exactly 3 vertices")


@dataclass(frozen=True)
class ConvexHull:
    """A validated convex polygon given by >=3 vertices in hull order."""

    vertices: tuple[GridPoint, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) < 3:
            raise ValueError("hull needs at least 3 vertices")
        n = len(self.vertices)
        signs = set()
        for i in range(n):
            o, a, b = self.vertices[i], self.vertices[(i + 1) % n], self.vertices[(i + 2) % n]
            c = cross(o, a, b)
            if c:
                signs.add(c > 0)
        if len(signs) > 1:
            raise ValueError("vertex sequence is not convex")


def cross(o: GridPoint, a: GridPoint, b: GridPoint) -> int:
    """Twice the signed area of (o, a, b); 0 means collinear."""
    return (a.col - o.col) * (b.row - o.row) - (a.row - o.row) * (b.col - o.col)


def _lattice_points_between(p: tuple[int, int], q: tuple[int, int]) -> list[tuple[int, int]]:
    """Lattice points strictly between p and q on the real segment p->q."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    g = gcd(abs(dx), abs(dy))
    sx, sy = dx // g, dy // g
    return [(p[0] + i * sx, p[1] + i * sy) for i in range(1, g)]


def cells_on_segment(p: GridPoint, q: GridPoint) -> list[GridPoint]:
    """Cells strictly between p and q whose centers lie on the segment.

    Endpoints are excluded (the password characters themselves are never
    part of the response set in the straight-line scheme). Ordered from
    p to q.
    """
    if p == q:
        raise ValueError("degenerate segment")
    return [GridPoint(c, r) for c, r in _lattice_points_between((p.col, p.row), (q.col, q.row))]


@lru_cache(maxsize=262144)
def _triangle_cells(key: tuple[tuple[int, int], ...], w: int, h: int) -> frozenset[tuple[int, int]]:
    """Cell set of a triangle with canonically sorted vertices (cached).

    The cache is what keeps rejection-sampling challenge generation fast:
    the same vertex triples recur across grid permutations.
    """
    (ax, ay), (bx, by), (cx, cy) = key
    area2 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if area2 == 0:
        # Collinear: the covered cells are the lattice points of the
        # segment joining the two extreme vertices, endpoints included.
        lo, hi = key[0], key[-1]
        if lo == hi:
            return frozenset({lo})
        return frozenset([lo, hi] + _lattice_points_between(lo, hi))
    cells = []
    lo_x, hi_x = min(ax, bx, cx), max(ax, bx, cx)
    lo_y, hi_y = min(ay, by, cy), max(ay, by, cy)
    lo_x, lo_y = max(lo_x, 0), max(lo_y, 0)
    hi_x, hi_y = min(hi_x, w - 1), min(hi_y, h - 1)
    for x in range(lo_x, hi_x + 1):
        for y in range(lo_y, hi_y + 1):
            d1 = (bx - ax) * (y - ay) - (by - ay) * (x - ax)
            d2 = (cx - bx) * (y - by) - (cy - by) * (x - bx)
            d3 = (ax - cx) * (y - cy) - (ay - cy) * (x - cx)
            # Inside or on boundary: no pair of strictly opposite signs.
            if not ((d1 > 0 or d2 > 0 or d3 > 0) and (d1 < 0 or d2 < 0 or d3 < 0)):
                cells.append((x, y))
    return frozenset(cells)


def cells_in_triangle(t: Triangle, w: int, h: int) -> set[GridPoint]:
    """Every cell whose center lies inside or on the boundary of t.

    Vertices are always included. Degenerate triangles rasterize to the
    segment between their extreme vertices, endpoints included.
    """
    key = tuple(sorted((v.col, v.row) for v in t.vertices))
    return {GridPoint(x, y) for x, y in _triangle_cells(key, w, h)}


@lru_cache(maxsize=262144)
def _triangle_interior(key: tuple[tuple[int, int], ...], w: int, h: int) -> frozenset[tuple[int, int]]:
    (ax, ay), (bx, by), (cx, cy) = key
    if (bx - ax) * (cy - ay) - (by - ay) * (cx - ax) == 0:
        return frozenset()
    cells = []
    for x in range(max(min(ax, bx, cx), 0), min(max(ax, bx, cx), w - 1) + 1):
        for y in range(max(min(ay, by, cy), 0), min(max(ay, by, cy), h - 1) + 1):
            d1 = (bx - ax) * (y - ay) - (by - ay) * (x - ax)
            d2 = (cx - bx) * (y - by) - (cy - by) * (x - bx)
            d3 = (ax - cx) * (y - cy) - (ay - cy) * (x - cx)
            if (d1 > 0 and d2 > 0 and d3 > 0) or (d1 < 0 and d2 < 0 and d3 < 0):
                cells.append((x, y))
    return frozenset(cells)


def interior_cells_in_triangle(t: Triangle, w: int, h: int) -> set[GridPoint]:
    """Cells whose centers lie strictly inside t.

    Empty for degenerate triangles and for thin ones that trap no cell
    center between their edges.
    """
    key = tuple(sorted((v.col, v.row) for v in t.vertices))
    return {GridPoint(x, y) for x, y in _triangle_interior(key, w, h)}


def triangles_disjoint(a: Triangle, b: Triangle, w: int, h: int) -> bool:
    """Cell-level disjointness: no grid cell belongs to both triangles."""
    ka = tuple(sorted((v.col, v.row) for v in a.vertices))
    kb = tuple(sorted((v.col, v.row) for v in b.vertices))
    return not (_triangle_cells(ka, w, h) & _triangle_cells(kb, w, h))


def convex_hull(points: Iterable[GridPoint]) -> tuple[GridPoint, ...]:
    """Monotone-chain hull in counter-clockwise order.

    Collinear inputs yield a 1- or 2-point chain rather than an error;
    callers that require a true polygon should wrap in ConvexHull.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return tuple(pts)
    lower: list[GridPoint] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[GridPoint] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = tuple(lower[:-1] + upper[:-1])
    if len(hull) == 2:  # all points collinear
        return hull
    return hull


def point_in_hull(p: GridPoint, hull: Sequence[GridPoint]) -> bool:
    """Inside-or-on test against a hull chain from convex_hull().

    Handles the degenerate chains too: a single point only contains
    itself, a 2-point chain contains the cells on its closed segment.
    """
    if len(hull) == 1:
        return p == hull[0]
    if len(hull) == 2:
        a, b = hull
        if cross(a, b, p) != 0:
            return False
        return (min(a.col, b.col) <= p.col <= max(a.col, b.col)
                and min(a.row, b.row) <= p.row <= max(a.row, b.row))
    n = len(hull)
    for i in range(n):
        if cross(hull[i], hull[(i + 1) % n], p) < 0:
            return False
    return True


def hulls_disjoint(a: Sequence[GridPoint], b: Sequence[GridPoint],
                   placement: Iterable[GridPoint]) -> bool:
    """True iff no placed position lies inside or on both hulls.

    This is icon-level disjointness: the hulls may overlap geometrically
    as long as the overlap is empty of displayed positions, because a
    user response is always one of the placed icons.
    """
    for p in placement:
        if point_in_hull(p, a) and point_in_hull(p, b):
            return False
    return True
