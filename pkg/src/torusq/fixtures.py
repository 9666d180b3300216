"""Benchmark embeddings and an independent mod-2 linking oracle.

Tubes are one voxel thick: the solid is the set of voxels visited by a
closed lattice path, the meridian is the square where two collinear path
voxels meet, and the lattice-framed longitude walks the minimum corners of
the path voxels (the core shifted by (-1/2, -1/2, -1/2)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cubical import EdgeCycle, Point, VoxelSolid, boundary_surface, edge_key, surface_path
from .embedding import E, EE, NONZERO_CLASSES, H1Class, MarkedTorusEmbedding, combine_cycles
from .errors import InvalidPath, PinchedSolid, SharedPoint


def _sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def _add(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1], p[2] + q[2])


def _unit(i: int, sign: int = 1) -> Point:
    return tuple(sign if j == i else 0 for j in range(3))  # type: ignore[return-value]


def _axis_of(step: Point) -> int:
    return next(i for i in range(3) if step[i])


@dataclass(frozen=True)
class LatticePath:
    """Lattice path of voxel indices; closed paths wrap from last back to first."""

    points: tuple[Point, ...]
    closed: bool = True

    def __post_init__(self) -> None:
        pts = tuple(tuple(int(c) for c in p) for p in self.points)
        if self.closed and len(pts) > 1 and pts[0] == pts[-1]:
            pts = pts[:-1]
        object.__setattr__(self, "points", pts)
        n = len(pts)
        if n < (4 if self.closed else 1):
            raise InvalidPath(f"path too short ({n} points)")
        if len(set(pts)) != n:
            raise InvalidPath("path is not simple")
        pairs = list(zip(pts, pts[1:]))
        if self.closed:
            pairs.append((pts[-1], pts[0]))
        for a, b in pairs:
            if sum(abs(x) for x in _sub(a, b)) != 1:
                raise InvalidPath(f"step {a} -> {b} is not a unit lattice step")

    @classmethod
    def of(cls, points: Iterable[Sequence[int]], closed: bool = True) -> LatticePath:
        return cls(tuple(tuple(p) for p in points), closed)

    def __len__(self) -> int:
        return len(self.points)

    def _consecutive(self, i: int, j: int) -> bool:
        d = abs(i - j)
        return d == 1 or (self.closed and d == len(self.points) - 1)

    def check_taut(self) -> None:
        """Raise PinchedSolid if two non-consecutive points are at distance <= 1."""
        where = {p: i for i, p in enumerate(self.points)}
        for i, p in enumerate(self.points):
            for k in range(3):
                for s in (1, -1):
                    j = where.get(_add(p, _unit(k, s)))
                    if j is not None and not self._consecutive(i, j):
                        raise PinchedSolid(f"path points {p} and {self.points[j]} are adjacent but not consecutive")

    def straight_indices(self) -> list[int]:
        """Indices whose two neighbours are collinear with them."""
        pts = self.points
        n = len(pts)
        out = []
        for i in range(n):
            if not self.closed and (i == 0 or i == n - 1):
                continue
            prev, nxt = pts[i - 1], pts[(i + 1) % n]
            if _sub(pts[i], prev) == _sub(nxt, pts[i]):
                out.append(i)
        return out

    def translated(self, shift: Point) -> LatticePath:
        return LatticePath(tuple(_add(p, shift) for p in self.points), self.closed)


def polyline(corners: Sequence[Point], scale: int = 1, closed: bool = True) -> LatticePath:
    """Fill axis-parallel segments between consecutive (scaled) corners with unit steps."""
    pts: list[Point] = []
    cs = [tuple(scale * c for c in p) for p in corners]
    if closed:
        cs = cs + [cs[0]]
    for a, b in zip(cs, cs[1:]):
        delta = _sub(b, a)
        nonzero = [i for i in range(3) if delta[i]]
        if len(nonzero) != 1:
            raise InvalidPath(f"corners {a} and {b} are not axis-aligned")
        k = nonzero[0]
        sign = 1 if delta[k] > 0 else -1
        for t in range(abs(delta[k])):
            pts.append(_add(a, _unit(k, sign * t)))  # type: ignore[arg-type]
    if not closed:
        pts.append(cs[-1])  # type: ignore[arg-type]
    return LatticePath(tuple(pts), closed)


def rectangle_path(width: int, height: int, origin: Point = (0, 0, 0)) -> LatticePath:
    """Voxel ring around a width x height footprint in a horizontal plane."""
    if width < 3 or height < 3:
        raise ValueError("a voxel ring needs a footprint of at least 3 x 3")
    w, h = width - 1, height - 1
    ring = polyline([(0, 0, 0), (w, 0, 0), (w, h, 0), (0, h, 0)])
    return ring.translated(origin)


def _braid_trefoil_corners() -> list[Point]:
    # closure of the 2-strand braid sigma_1^3; each crossing block spans two units in x
    under = lambda a: [(a, 0, 0), (a + 1, 0, 0), (a + 1, 2, 0)]  # noqa: E731
    over = lambda a: [(a, 2, 0), (a, 2, 1), (a + 1, 2, 1), (a + 1, 0, 1), (a + 2, 0, 1)]  # noqa: E731
    first = under(0) + over(2) + under(4)
    outer_return = [(6, 2, 0), (7, 2, 0), (7, 4, 0), (-1, 4, 0), (-1, 2, 0)]
    second = over(0) + under(2) + over(4)
    inner_return = [(6, 0, 0), (8, 0, 0), (8, 6, 0), (-2, 6, 0), (-2, 0, 0)]
    return first + outer_return + second + inner_return


def _trefoil() -> LatticePath:
    coarse = _braid_trefoil_corners()
    # drop collinear corner repeats so polyline sees axis-aligned runs
    corners = [p for i, p in enumerate(coarse) if p != coarse[i - 1]]
    return polyline(corners, scale=2)


TREFOIL = _trefoil()


# --------------------------------------------------------------------------
# Constructors


def _face_square(prev: Point, cur: Point) -> EdgeCycle:
    """Boundary square of the unit face shared by two adjacent voxels."""
    step = _sub(cur, prev)
    k = _axis_of(step)
    base = list(max(prev, cur, key=lambda p: p[k]))
    a, b = [i for i in range(3) if i != k]
    corners = []
    for da, db in ((0, 0), (1, 0), (1, 1), (0, 1)):
        q = list(base)
        q[a] += da
        q[b] += db
        corners.append(tuple(q))
    return EdgeCycle(tuple(corners))


def tube_meridian(knot: LatticePath, index: int | None = None) -> EdgeCycle:
    if index is None:
        straight = knot.straight_indices()
        if not straight:
            raise InvalidPath("knot path has no straight segment for the meridian")
        index = straight[0]
    return _face_square(knot.points[index - 1], knot.points[index])


def lattice_longitude(knot: LatticePath) -> EdgeCycle:
    return EdgeCycle(knot.points)


def tube(knot: LatticePath, box_margin: int = 2) -> MarkedTorusEmbedding:
    if not knot.closed:
        raise InvalidPath("a tube needs a closed knot path")
    knot.check_taut()
    solid = VoxelSolid(frozenset(knot.points))
    return MarkedTorusEmbedding(solid, tube_meridian(knot), lattice_longitude(knot), box_margin)


def donut(outer: int = 3, box_margin: int = 2) -> MarkedTorusEmbedding:
    """Square voxel ring of outer x outer footprint, one voxel thick and tall.

    Marking: m girdles the first straight segment, l runs once around the hole
    along the bottom face.
    """
    if outer < 3:
        raise ValueError(f"donut(outer={outer}) has no hole")
    ring = rectangle_path(outer, outer)
    k = outer - 1
    hole = polyline([(1, 1, 0), (k, 1, 0), (k, k, 0), (1, k, 0)])
    l_cycle = EdgeCycle(hole.points)
    return MarkedTorusEmbedding(VoxelSolid(frozenset(ring.points)), tube_meridian(ring), l_cycle, box_margin)


def fused_donuts() -> VoxelSolid:
    """Genus-2 solid: a 3 x 5 slab with two unit holes."""
    return VoxelSolid(frozenset((x, y, 0) for x in range(3) for y in range(5) if (x, y) not in {(1, 1), (1, 3)}))


def adjust_framing(e: MarkedTorusEmbedding) -> MarkedTorusEmbedding:
    """Replace l by a surface walk homologous to l + m."""
    l_new = combine_cycles(e.surface, [(e.l_cycle, 1), (e.m_cycle, 1)])
    return e.with_marking(e.m_cycle, l_new)


def trefoil_tube(framing: str = "even", box_margin: int = 2) -> MarkedTorusEmbedding:
    if framing not in ("even", "odd"):
        raise ValueError("framing must be 'even' or 'odd'")
    e = tube(TREFOIL, box_margin)
    if linking_parity(e.l_cycle, TREFOIL) != (framing == "odd"):
        e = adjust_framing(e)
    return e


def unknot_tube(box_margin: int = 2) -> MarkedTorusEmbedding:
    return tube(rectangle_path(3, 3), box_margin)


def straight_tunnel(side: int, x: int = 1, y: int = 1) -> LatticePath:
    return LatticePath(tuple((x, y, z) for z in range(side)), closed=False)


def _outward(p: Point, side: int) -> Point:
    dirs = [_unit(i, -1) for i in range(3) if p[i] == 0] + [_unit(i, 1) for i in range(3) if p[i] == side - 1]
    if len(dirs) != 1:
        raise InvalidPath(f"tunnel end {p} must lie on exactly one face of the cube")
    return dirs[0]


def drilled_cube(side: int = 4, tunnel: LatticePath | None = None, box_margin: int = 2) -> MarkedTorusEmbedding:
    """Cube of ``side`` voxels with a tunnel removed.

    Marking: m is the square around the tunnel entrance; l runs along the
    tunnel wall (minimum corners of the tunnel voxels) and returns over the
    outside of the cube by a shortest walk on the cube faces.
    """
    if side < 4:
        raise ValueError("drilled cube needs side >= 4")
    if tunnel is None:
        tunnel = straight_tunnel(side)
    if tunnel.closed or len(tunnel) < 2:
        raise InvalidPath("tunnel must be an open path with at least two voxels")
    pts = tunnel.points
    for p in pts:
        if not all(0 <= c < side for c in p):
            raise InvalidPath(f"tunnel voxel {p} lies outside the cube")
    for p in pts[1:-1]:
        if not all(1 <= c <= side - 2 for c in p):
            raise InvalidPath(f"tunnel touches the cube wall mid-course at {p}")
    tunnel.check_taut()
    d_in = _outward(pts[0], side)
    d_out = _outward(pts[-1], side)

    cube = {(x, y, z) for x in range(side) for y in range(side) for z in range(side)}
    solid = VoxelSolid(frozenset(cube - set(pts)))

    def mouth_corner(p: Point, d: Point) -> Point:
        return _add(p, d) if sum(d) > 0 else p

    entry = mouth_corner(pts[0], d_in)
    exit_ = mouth_corner(pts[-1], d_out)
    walk = ([entry] if entry != pts[0] else []) + list(pts) + ([exit_] if exit_ != pts[-1] else [])

    def on_cube_face(key: tuple[int, int, int]) -> bool:
        # an edge key lies on a cube face when some even coordinate equals 0 or 2*side
        return any(c % 2 == 0 and c in (0, 2 * side) for c in key)

    surface = boundary_surface(solid)
    back = surface_path(surface, exit_, entry, edge_filter=on_cube_face)
    l_cycle = EdgeCycle(tuple(walk + back[1:-1]))
    m_cycle = _face_square(_add(pts[0], d_in), pts[0])
    return MarkedTorusEmbedding(solid, m_cycle, l_cycle, box_margin)


# --------------------------------------------------------------------------
# Linking oracle

# Candidate projection directions; the first one giving a generic projection
# of the pair wins, so results are reproducible bit for bit.
PROJECTION_DIRECTIONS: tuple[Point, ...] = (
    (3, 1000003, 1000033),
    (1000037, 5, 1000039),
    (1000081, 1000099, 7),
    (11, 1000117, 13),
    (1000121, 17, 19),
)


def _dot(p: Point, q: Point) -> int:
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]


def _cross(p: Point, q: Point) -> Point:
    return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])


def _orient(a: tuple[int, int], b: tuple[int, int], c: tuple[int, int]) -> int:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _boxes_meet(a0, a1, b0, b1) -> bool:
    return all(max(min(a0[i], a1[i]), min(b0[i], b1[i])) <= min(max(a0[i], a1[i]), max(b0[i], b1[i])) for i in (0, 1))


def _over_crossings(upper: list[Point], lower: list[Point], d: Point) -> int | None:
    """Count crossings where ``upper`` passes over ``lower`` viewed from +d; None if degenerate."""
    u = _cross(d, (1, 0, 0))
    w = _cross(d, u)
    proj = lambda p: (_dot(p, u), _dot(p, w))  # noqa: E731
    segs_a = [(p, q, proj(p), proj(q)) for p, q in zip(upper, upper[1:] + upper[:1])]
    segs_b = [(p, q, proj(p), proj(q)) for p, q in zip(lower, lower[1:] + lower[:1])]
    count = 0
    for p0, p1, a0, a1 in segs_a:
        for q0, q1, b0, b1 in segs_b:
            if not _boxes_meet(a0, a1, b0, b1):
                continue
            o1, o2 = _orient(a0, a1, b0), _orient(a0, a1, b1)
            o3, o4 = _orient(b0, b1, a0), _orient(b0, b1, a1)
            if 0 in (o1, o2, o3, o4):
                return None
            if (o1 > 0) == (o2 > 0) or (o3 > 0) == (o4 > 0):
                continue
            # parameters of the crossing along each 2D segment
            s = Fraction(o3, o3 - o4)
            t = Fraction(o1, o1 - o2)
            depth = _dot(p0, d) + s * _dot(_sub(p1, p0), d) - _dot(q0, d) - t * _dot(_sub(q1, q0), d)
            if depth == 0:
                raise SharedPoint("curves meet in space")
            if depth > 0:
                count += 1
    return count


def linking_parity(cycle: EdgeCycle, core: LatticePath) -> int:
    """Mod-2 linking number of a surface edge cycle with a tube core.

    The core runs through voxel centres, the cycle along lattice edges; both
    are doubled to integers and the cycle's over-crossings in a generic
    projection are counted exactly.
    """
    if not core.closed:
        raise InvalidPath("linking needs a closed core")
    a = [(2 * p[0], 2 * p[1], 2 * p[2]) for p in cycle.vertices]
    b = [(2 * p[0] + 1, 2 * p[1] + 1, 2 * p[2] + 1) for p in core.points]
    shared = set(a) & set(b)
    if shared:
        raise SharedPoint(f"cycle and core share {min(shared)}")
    for d in PROJECTION_DIRECTIONS:
        n = _over_crossings(a, b, d)
        if n is not None:
            return n % 2
    raise RuntimeError("no generic projection direction found")


def meridian_disk_crossings(cycle: EdgeCycle, core: LatticePath, index: int) -> int:
    """Number of times the cycle crosses the meridian disc cut through the middle of core voxel ``index``.

    The voxel must sit on a straight run of the core; the disc's boundary then
    meets the surface 1-skeleton only at the midpoints of the voxel's four
    edges parallel to the core, so crossings are uses of those edges.
    """
    if index not in core.straight_indices():
        raise InvalidPath(f"core index {index} is not on a straight run")
    v = core.points[index]
    k = _axis_of(_sub(core.points[(index + 1) % len(core)], v))
    a, b = [i for i in range(3) if i != k]
    ribs = set()
    for da in (0, 1):
        for db in (0, 1):
            lo = list(v)
            lo[a] += da
            lo[b] += db
            lo_t = tuple(lo)
            ribs.add(edge_key(lo_t, _add(lo_t, _unit(k))))  # type: ignore[arg-type]
    return sum(1 for key in cycle.edge_keys() if key in ribs)


def class_representative(e: MarkedTorusEmbedding, h: H1Class) -> EdgeCycle:
    """A surface cycle in class ``h`` of the marking basis."""
    if h == E:
        return e.m_cycle
    if h == EE:
        return e.l_cycle
    return combine_cycles(e.surface, [(e.m_cycle, 1), (e.l_cycle, 1)])


def oracle_kernel_classes(e: MarkedTorusEmbedding, core: LatticePath, disk_index: int | None = None) -> tuple[list[H1Class], list[H1Class]]:
    """Classes the oracles say bound on the compact and outer sides of a tube.

    Compact side: even crossing count through a meridian disc.  Outer side:
    even linking with the core.
    """
    if disk_index is None:
        disk_index = core.straight_indices()[-1]
    compact, outer = [], []
    for h in NONZERO_CLASSES:
        z = class_representative(e, h)
        if meridian_disk_crossings(z, core, disk_index) % 2 == 0:
            compact.append(h)
        if linking_parity(z, core) == 0:
            outer.append(h)
    return compact, outer


__all__ = [
    "LatticePath",
    "class_representative",
    "oracle_kernel_classes",
    "PROJECTION_DIRECTIONS",
    "TREFOIL",
    "adjust_framing",
    "donut",
    "drilled_cube",
    "fused_donuts",
    "lattice_longitude",
    "linking_parity",
    "meridian_disk_crossings",
    "polyline",
    "rectangle_path",
    "straight_tunnel",
    "trefoil_tube",
    "tube",
    "tube_meridian",
    "unknot_tube",
]
