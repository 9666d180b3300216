"""Voxel solids, their cubical cell complexes and Z/2 homology.

Cells are keyed by doubled lattice coordinates.  A coordinate is odd when the
cell extends along that axis, so the unit voxel ``(x, y, z)`` is the key
``(2x+1, 2y+1, 2z+1)``, the lattice vertex ``p`` is ``2p``, and a cell's
dimension is the number of odd coordinates.  Keys are shared between every
complex built on the same lattice, which lets a surface chain be looked up in
any region containing it without translation.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

from .errors import CycleNotOnSurface, InvalidPath, PinchedSolid
from .gf2 import ColumnReduction, Gf2Matrix, Gf2Vector

Point = tuple[int, int, int]
Cell = tuple[int, int, int]

COORD_LIMIT = 2**30
AXES: tuple[Point, ...] = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def cell_dim(key: Cell) -> int:
    return (key[0] & 1) + (key[1] & 1) + (key[2] & 1)


def voxel_key(v: Point) -> Cell:
    return (2 * v[0] + 1, 2 * v[1] + 1, 2 * v[2] + 1)


def vertex_key(p: Point) -> Cell:
    return (2 * p[0], 2 * p[1], 2 * p[2])


def edge_key(p: Point, q: Point) -> Cell:
    """Key of the unit lattice edge between two adjacent lattice points."""
    if sum(abs(a - b) for a, b in zip(p, q)) != 1:
        raise InvalidPath(f"{p} and {q} are not unit-adjacent")
    return (p[0] + q[0], p[1] + q[1], p[2] + q[2])


def facets(key: Cell) -> list[Cell]:
    out = []
    for i in range(3):
        if key[i] & 1:
            lo = list(key)
            hi = list(key)
            lo[i] -= 1
            hi[i] += 1
            out.append(tuple(lo))
            out.append(tuple(hi))
    return out


def closure(key: Cell) -> Iterator[Cell]:
    ranges = [(k - 1, k, k + 1) if k & 1 else (k,) for k in key]
    return product(*ranges)


# --------------------------------------------------------------------------
# Manifold condition


def _octant_table() -> tuple[bool, ...]:
    """For each 8-bit occupancy of the voxels around a vertex: is the boundary a disc there?

    The boundary near the vertex is a disc iff the occupied octants and the
    empty octants are each connected under face adjacency (octants differing
    in one coordinate bit).  Uniform patterns are interior or exterior.
    """

    def connected(members: list[int]) -> bool:
        if not members:
            return True
        seen = {members[0]}
        stack = [members[0]]
        pool = set(members)
        while stack:
            o = stack.pop()
            for bit in (1, 2, 4):
                nb = o ^ bit
                if nb in pool and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(pool)

    table = []
    for mask in range(256):
        full = [o for o in range(8) if mask >> o & 1]
        empty = [o for o in range(8) if not mask >> o & 1]
        table.append(connected(full) and connected(empty))
    return tuple(table)


_OCTANT_OK = _octant_table()


def _octant_mask(voxels: frozenset[Point] | set[Point], p: Point) -> int:
    x, y, z = p
    mask = 0
    for o in range(8):
        v = (x - 1 + (o & 1), y - 1 + (o >> 1 & 1), z - 1 + (o >> 2 & 1))
        if v in voxels:
            mask |= 1 << o
    return mask


def pinch_points(voxels: Iterable[Point]) -> list[Point]:
    """Lattice vertices where the boundary of the union of voxels fails to be a 2-manifold."""
    vox = voxels if isinstance(voxels, (set, frozenset)) else frozenset(voxels)
    corners = {(x + dx, y + dy, z + dz) for (x, y, z) in vox for dx, dy, dz in product((0, 1), repeat=3)}
    return sorted(p for p in corners if not _OCTANT_OK[_octant_mask(vox, p)])


# --------------------------------------------------------------------------
# Domain types


@dataclass(frozen=True)
class VoxelSolid:
    voxels: frozenset[Point]

    def __post_init__(self) -> None:
        vox = frozenset(tuple(int(c) for c in v) for v in self.voxels)
        for v in vox:
            if len(v) != 3 or any(abs(c) > COORD_LIMIT for c in v):
                raise ValueError(f"voxel {v} outside the supported coordinate range")
        object.__setattr__(self, "voxels", vox)

    @classmethod
    def of(cls, voxels: Iterable[Sequence[int]]) -> VoxelSolid:
        return cls(frozenset(tuple(v) for v in voxels))

    def __len__(self) -> int:
        return len(self.voxels)

    def __iter__(self) -> Iterator[Point]:
        return iter(sorted(self.voxels))

    def bounding_box(self) -> tuple[Point, Point]:
        """Inclusive voxel-index bounds (lo, hi)."""
        xs, ys, zs = zip(*self.voxels)
        return (min(xs), min(ys), min(zs)), (max(xs), max(ys), max(zs))

    def check_manifold(self) -> None:
        bad = pinch_points(self.voxels)
        if bad:
            raise PinchedSolid(f"boundary is not a manifold at lattice vertex {bad[0]} ({len(bad)} such vertices)")


class CubicalComplex:
    """A finite cubical complex closed under taking faces.

    ``cells[k]`` lists the k-cells in sorted key order; boundary matrices are
    indexed by that order.
    """

    def __init__(self, top_cells: Iterable[Cell], check: bool = True):
        found: set[Cell] = set()
        for key in top_cells:
            found.update(closure(key))
        by_dim: list[list[Cell]] = [[], [], [], []]
        for key in found:
            by_dim[cell_dim(key)].append(key)
        self.cells: tuple[tuple[Cell, ...], ...] = tuple(tuple(sorted(c)) for c in by_dim)
        self.index: tuple[dict[Cell, int], ...] = tuple({c: i for i, c in enumerate(cs)} for cs in self.cells)
        self._reductions: dict[int, ColumnReduction] = {}
        if check:
            self.check_chain_complex()

    def __len__(self) -> int:
        return sum(len(c) for c in self.cells)

    def counts(self) -> tuple[int, int, int, int]:
        return tuple(len(c) for c in self.cells)  # type: ignore[return-value]

    @property
    def dimension(self) -> int:
        return max((k for k in range(4) if self.cells[k]), default=-1)

    def boundary(self, k: int) -> Gf2Matrix:
        """The Z/2 boundary operator from k-cells to (k-1)-cells, for k = 1, 2, 3."""
        if k not in (1, 2, 3):
            raise ValueError("boundary operators exist for k = 1, 2, 3")
        return self._boundaries[k - 1]

    @cached_property
    def _boundaries(self) -> tuple[Gf2Matrix, ...]:
        mats = []
        for k in (1, 2, 3):
            lower = self.index[k - 1]
            cols = []
            for key in self.cells[k]:
                col = 0
                for f in facets(key):
                    col |= 1 << lower[f]
                cols.append(col)
            mats.append(Gf2Matrix(len(self.cells[k - 1]), len(self.cells[k]), tuple(cols)))
        return tuple(mats)

    def check_chain_complex(self) -> None:
        """Assert every face of every cell is present and that boundary o boundary = 0."""
        for k in (1, 2, 3):
            lower = self.index[k - 1]
            for key in self.cells[k]:
                faces = facets(key)
                if any(f not in lower for f in faces):
                    raise AssertionError(f"cell {key} is missing a face")
                if k >= 2:
                    twice = Counter(g for f in faces for g in facets(f))
                    if any(n % 2 for n in twice.values()):
                        raise AssertionError(f"boundary of boundary of {key} is nonzero")

    @cached_property
    def _ranks(self) -> tuple[int, int, int, int, int]:
        # rank of the boundary out of degree k, k = 0..4 (degrees 0 and 4 are zero maps)
        return (0,) + tuple(self.reduction(k).rank for k in (1, 2, 3)) + (0,)

    def reduction(self, k: int) -> ColumnReduction:
        """Cached column reduction of the boundary operator out of degree k."""
        red = self._reductions.get(k)
        if red is None:
            red = self._reductions[k] = ColumnReduction(self.boundary(k))
        return red

    def betti(self, k: int) -> int:
        if not 0 <= k <= 3:
            return 0
        n = len(self.cells[k])
        return n - self._ranks[k] - self._ranks[k + 1]

    def betti_numbers(self, top: int = 2) -> tuple[int, ...]:
        return tuple(self.betti(k) for k in range(top + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(c) for k, c in enumerate(self.cells))

    def components(self) -> int:
        """Connected components by graph search on the 1-skeleton."""
        adj: dict[Cell, list[Cell]] = {v: [] for v in self.cells[0]}
        for e in self.cells[1]:
            a, b = facets(e)
            adj[a].append(b)
            adj[b].append(a)
        seen: set[Cell] = set()
        count = 0
        for start in adj:
            if start in seen:
                continue
            count += 1
            seen.add(start)
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
        return count

    def chain(self, k: int, keys: Iterable[Cell]) -> int:
        """Bitmask of a Z/2 k-chain given by cell keys (repeated keys cancel)."""
        idx = self.index[k]
        mask = 0
        for key in keys:
            mask ^= 1 << idx[key]
        return mask


class SurfaceComplex(CubicalComplex):
    """Closed cubical surface; ``provenance`` maps each face to its (solid, empty) voxel pair."""

    def __init__(self, provenance: dict[Cell, tuple[Point, Point]]):
        super().__init__(provenance)
        self.provenance = provenance
        d2 = self.boundary(2)
        incidence = Counter()
        for col in d2.columns:
            while col:
                low = col & -col
                incidence[low.bit_length() - 1] += 1
                col ^= low
        bad = [self.cells[1][i] for i in range(len(self.cells[1])) if incidence[i] != 2]
        if bad:
            raise PinchedSolid(f"surface edge {bad[0]} is not incident to exactly two faces")

    @cached_property
    def h1_basis(self) -> tuple[int, ...]:
        """Edge chains whose classes form a basis of H1(surface; Z/2)."""
        red = ColumnReduction(self.boundary(2))
        basis = []
        # kernel combos of the edge-boundary map are themselves edge chains
        for z in ColumnReduction(self.boundary(1), track=True).kernel():
            if red.add_column(z):
                basis.append(z)
        return tuple(basis)

    def vertex_graph(self) -> dict[Point, list[Point]]:
        """Adjacency of lattice points along surface edges, neighbours sorted."""
        adj: dict[Point, list[Point]] = {}
        for e in self.cells[1]:
            a, b = facets(e)
            pa = (a[0] // 2, a[1] // 2, a[2] // 2)
            pb = (b[0] // 2, b[1] // 2, b[2] // 2)
            adj.setdefault(pa, []).append(pb)
            adj.setdefault(pb, []).append(pa)
        for nbs in adj.values():
            nbs.sort()
        return adj


@dataclass(frozen=True)
class EdgeCycle:
    """Closed walk along unit lattice edges; a repeated final vertex is dropped."""

    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        pts = tuple(tuple(int(c) for c in p) for p in self.vertices)
        if len(pts) > 1 and pts[0] == pts[-1]:
            pts = pts[:-1]
        if len(pts) < 2:
            raise InvalidPath("an edge cycle needs at least two vertices")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            if sum(abs(x - y) for x, y in zip(a, b)) != 1:
                raise InvalidPath(f"cycle step {a} -> {b} is not a unit lattice edge")
        object.__setattr__(self, "vertices", pts)

    @classmethod
    def of(cls, points: Iterable[Sequence[int]]) -> EdgeCycle:
        return cls(tuple(tuple(p) for p in points))

    def __len__(self) -> int:
        return len(self.vertices)

    def steps(self) -> list[tuple[Point, Point]]:
        pts = self.vertices
        return list(zip(pts, pts[1:] + pts[:1]))

    def edge_keys(self) -> list[Cell]:
        """Walked edges with multiplicity."""
        return [edge_key(a, b) for a, b in self.steps()]

    def chain_keys(self) -> frozenset[Cell]:
        """Support of the Z/2 1-chain (edges walked an odd number of times)."""
        counts = Counter(self.edge_keys())
        return frozenset(k for k, n in counts.items() if n % 2)

    def reversed(self) -> EdgeCycle:
        return EdgeCycle(self.vertices[::-1])

    def translated(self, shift: Point) -> EdgeCycle:
        return EdgeCycle(tuple((p[0] + shift[0], p[1] + shift[1], p[2] + shift[2]) for p in self.vertices))


# --------------------------------------------------------------------------
# Operations


def build_complex(solid: VoxelSolid) -> CubicalComplex:
    solid.check_manifold()
    return CubicalComplex(voxel_key(v) for v in solid.voxels)


def voxel_complex(voxels: Iterable[Point]) -> CubicalComplex:
    """Complex of an arbitrary voxel set, without the manifold gate."""
    return CubicalComplex(voxel_key(v) for v in voxels)


def betti(complex: CubicalComplex, k: int) -> int:
    return complex.betti(k)


def euler_characteristic(complex: CubicalComplex) -> int:
    return complex.euler_characteristic()


def boundary_surface(solid: VoxelSolid) -> SurfaceComplex:
    solid.check_manifold()
    vox = solid.voxels
    provenance: dict[Cell, tuple[Point, Point]] = {}
    for v in vox:
        for axis in AXES:
            for sign in (1, -1):
                w = (v[0] + sign * axis[0], v[1] + sign * axis[1], v[2] + sign * axis[2])
                if w not in vox:
                    a, b = voxel_key(v), voxel_key(w)
                    provenance[((a[0] + b[0]) // 2, (a[1] + b[1]) // 2, (a[2] + b[2]) // 2)] = (v, w)
    return SurfaceComplex(provenance)


def is_torus(surface: SurfaceComplex) -> bool:
    # boundaries of solids in R^3 are orientable, so connected with chi = 0 means genus one
    return surface.components() == 1 and surface.euler_characteristic() == 0


def _chain_on(surface: CubicalComplex, z: EdgeCycle) -> int:
    idx = surface.index[1]
    for key in z.edge_keys():
        if key not in idx:
            a, b = facets(key)
            raise CycleNotOnSurface(f"edge {tuple(c // 2 for c in a)}-{tuple(c // 2 for c in b)} is not on the surface")
    return surface.chain(1, z.chain_keys())


def class_of_cycle(surface: SurfaceComplex, z: EdgeCycle) -> Gf2Vector:
    """Coordinates of [z] in the basis ``surface.h1_basis``."""
    chain = _chain_on(surface, z)
    basis = surface.h1_basis
    d2 = surface.boundary(2)
    red = ColumnReduction(d2.hstack(basis), track=True)
    x = red.solve(chain)
    if x is None:
        raise AssertionError("cycle chain is not a cycle of the surface")
    return Gf2Vector(len(basis), x >> d2.cols)


def independent_in_h1(surface: SurfaceComplex, z1: EdgeCycle, z2: EdgeCycle) -> bool:
    c1 = _chain_on(surface, z1)
    c2 = _chain_on(surface, z2)
    d2 = surface.boundary(2)
    return ColumnReduction(d2.hstack((c1, c2))).rank == surface.reduction(2).rank + 2


def surface_path(
    surface: SurfaceComplex,
    start: Point,
    goal: Point,
    edge_filter: Callable[[Cell], bool] | None = None,
) -> list[Point]:
    """Shortest lattice walk from start to goal along surface edges (BFS, sorted tie-break).

    ``edge_filter`` receives edge keys and restricts which edges may be used.
    """
    adj = surface.vertex_graph()
    if start not in adj or goal not in adj:
        raise CycleNotOnSurface(f"{start if start not in adj else goal} is not a surface vertex")
    prev: dict[Point, Point | None] = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if v == goal:
            break
        for w in adj[v]:
            if w not in prev and (edge_filter is None or edge_filter(edge_key(v, w))):
                prev[w] = v
                queue.append(w)
    if goal not in prev:
        raise CycleNotOnSurface(f"{goal} is not reachable from {start} on the surface")
    path = [goal]
    while path[-1] != start:
        path.append(prev[path[-1]])  # type: ignore[arg-type]
    return path[::-1]


__all__ = [
    "CubicalComplex",
    "EdgeCycle",
    "SurfaceComplex",
    "VoxelSolid",
    "betti",
    "boundary_surface",
    "build_complex",
    "class_of_cycle",
    "edge_key",
    "euler_characteristic",
    "independent_in_h1",
    "is_torus",
    "pinch_points",
    "surface_path",
    "vertex_key",
    "voxel_complex",
    "voxel_key",
]
