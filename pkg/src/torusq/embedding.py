"""Marked torus embeddings and the mod-2 quadruple-point invariant Q.

An embedded torus splits space into a compact side C (the voxel solid) and a
non-compact side N (truncated here to a box around the solid).  Each side
kills exactly one nonzero class of H1(torus; Z/2); calling these c and n,
Q = 0 when c precedes n in the fixed order e < ee < eee and Q = 1 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, total_ordering
from itertools import product
from typing import Iterable, Sequence

from .cubical import (
    CubicalComplex,
    EdgeCycle,
    Point,
    SurfaceComplex,
    VoxelSolid,
    boundary_surface,
    build_complex,
    independent_in_h1,
    is_torus,
    surface_path,
    voxel_complex,
)
from .errors import (
    ComponentCountMismatch,
    CycleNotOnSurface,
    DependentMarking,
    InsufficientMargin,
    KernelDimensionError,
    NotATorus,
    OverlappingComponents,
)
from .mcg import MappingClass

DEFAULT_BOX_MARGIN = 2


@total_ordering
@dataclass(frozen=True)
class H1Class:
    """Element of H1(torus; Z/2) as coordinates (a, b) in the basis ([m], [l])."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a not in (0, 1) or self.b not in (0, 1):
            raise ValueError("H1Class coordinates are bits")

    @property
    def rank(self) -> int:
        # e = [m] < ee = [l] < eee = [m] + [l]
        return _ORDER[(self.a, self.b)]

    @property
    def name(self) -> str:
        return ("0", "e", "ee", "eee")[self.rank + 1]

    @property
    def bits(self) -> str:
        return f"({self.a},{self.b})"

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __lt__(self, other: H1Class) -> bool:
        if not isinstance(other, H1Class):
            return NotImplemented
        return self.rank < other.rank

    def __add__(self, other: H1Class) -> H1Class:
        return H1Class(self.a ^ other.a, self.b ^ other.b)

    def __str__(self) -> str:
        return self.name

    @classmethod
    def from_name(cls, name: str) -> H1Class:
        return NONZERO_CLASSES[("e", "ee", "eee").index(name)]


_ORDER = {(0, 0): -1, (1, 0): 0, (0, 1): 1, (1, 1): 2}
E = H1Class(1, 0)
EE = H1Class(0, 1)
EEE = H1Class(1, 1)
NONZERO_CLASSES = (E, EE, EEE)


@dataclass(frozen=True)
class MarkedTorusEmbedding:
    """A voxel solid with torus boundary and two marking cycles playing f(m) and f(l).

    Construction validates the torus boundary, that both cycles run along
    surface edges, and that they are independent in H1(surface; Z/2).
    """

    solid: VoxelSolid
    m_cycle: EdgeCycle
    l_cycle: EdgeCycle
    box_margin: int = DEFAULT_BOX_MARGIN

    def __post_init__(self) -> None:
        if not self.solid.voxels:
            raise NotATorus("empty solid")
        if self.box_margin < 1:
            raise InsufficientMargin(f"box_margin must be at least 1, got {self.box_margin}")
        surface = self.surface
        if not is_torus(surface):
            raise NotATorus(
                f"boundary has {surface.components()} component(s) and Euler characteristic "
                f"{surface.euler_characteristic()}"
            )
        if not independent_in_h1(surface, self.m_cycle, self.l_cycle):
            raise DependentMarking("m and l cycles do not span H1(surface; Z/2)")

    @cached_property
    def surface(self) -> SurfaceComplex:
        return boundary_surface(self.solid)

    @cached_property
    def compact(self) -> CubicalComplex:
        return compact_region(self)

    @cached_property
    def outer(self) -> CubicalComplex:
        return outer_region(self)

    def with_marking(self, m_cycle: EdgeCycle, l_cycle: EdgeCycle) -> MarkedTorusEmbedding:
        return MarkedTorusEmbedding(self.solid, m_cycle, l_cycle, self.box_margin)

    def with_margin(self, box_margin: int) -> MarkedTorusEmbedding:
        return MarkedTorusEmbedding(self.solid, self.m_cycle, self.l_cycle, box_margin)

    def swapped(self) -> MarkedTorusEmbedding:
        return self.with_marking(self.l_cycle, self.m_cycle)

    def translated(self, shift: Point) -> MarkedTorusEmbedding:
        dx, dy, dz = shift
        solid = VoxelSolid(frozenset((x + dx, y + dy, z + dz) for x, y, z in self.solid.voxels))
        return MarkedTorusEmbedding(solid, self.m_cycle.translated(shift), self.l_cycle.translated(shift), self.box_margin)


@dataclass(frozen=True)
class SystemEmbedding:
    components: tuple[MarkedTorusEmbedding, ...]

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        halo: dict[Point, int] = {}
        for i, comp in enumerate(comps):
            for (x, y, z) in comp.solid.voxels:
                for dx, dy, dz in product((-1, 0, 1), repeat=3):
                    halo.setdefault((x + dx, y + dy, z + dz), i)
        for j, comp in enumerate(comps):
            for v in comp.solid.voxels:
                owner = halo.get(v)
                if owner is not None and owner != j:
                    raise OverlappingComponents(f"components {owner} and {j} touch or overlap near voxel {v}")

    def __len__(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class ComponentQ:
    c: H1Class
    n: H1Class
    q_bit: int


@dataclass(frozen=True)
class QResult:
    components: tuple[ComponentQ, ...]
    total: int = field(init=False)

    def __post_init__(self) -> None:
        total = 0
        for comp in self.components:
            total ^= comp.q_bit
        object.__setattr__(self, "total", total)


def compact_region(e: MarkedTorusEmbedding) -> CubicalComplex:
    return build_complex(e.solid)


def outer_region(e: MarkedTorusEmbedding) -> CubicalComplex:
    """Voxels of the bounding box grown by ``box_margin``, minus the solid."""
    if e.box_margin < 1:
        raise InsufficientMargin("the outer region must enclose the surface")
    (x0, y0, z0), (x1, y1, z1) = e.solid.bounding_box()
    k = e.box_margin
    solid = e.solid.voxels
    voxels = [
        v
        for v in product(range(x0 - k, x1 + k + 1), range(y0 - k, y1 + k + 1), range(z0 - k, z1 + k + 1))
        if v not in solid
    ]
    return voxel_complex(voxels)


def _region_chain(region: CubicalComplex, cycle: EdgeCycle) -> int:
    idx = region.index[1]
    keys = cycle.chain_keys()
    missing = [key for key in keys if key not in idx]
    if missing:
        raise InsufficientMargin(f"region does not contain marking edge {missing[0]}")
    return region.chain(1, keys)


def bounding_classes(region: CubicalComplex, e: MarkedTorusEmbedding) -> list[H1Class]:
    """All nonzero classes whose marking-cycle representative bounds a 2-chain of the region."""
    m = _region_chain(region, e.m_cycle)
    l = _region_chain(region, e.l_cycle)
    red = region.reduction(2)
    return [h for h in NONZERO_CLASSES if red.contains((m if h.a else 0) ^ (l if h.b else 0))]


def kernel_class(region: CubicalComplex, e: MarkedTorusEmbedding) -> H1Class:
    found = bounding_classes(region, e)
    if len(found) != 1:
        raise KernelDimensionError(
            f"expected exactly one nonzero bounding class, found {[h.name for h in found]}"
        )
    return found[0]


def q_invariant(e: MarkedTorusEmbedding) -> ComponentQ:
    c = kernel_class(e.compact, e)
    n = kernel_class(e.outer, e)
    if c == n:
        raise KernelDimensionError(f"compact and outer sides kill the same class {c.name}")
    return ComponentQ(c, n, int(c > n))


def q_system(s: SystemEmbedding | Sequence[MarkedTorusEmbedding]) -> QResult:
    comps = s.components if isinstance(s, SystemEmbedding) else tuple(s)
    return QResult(tuple(q_invariant(e) for e in comps))


def predict_q(f: SystemEmbedding, g: SystemEmbedding) -> int:
    """Parity of quadruple points of any generic regular homotopy from f to g.

    Valid only when f and g are regularly homotopic; that hypothesis is the
    caller's responsibility and is not checked.
    """
    if len(f.components) != len(g.components):
        raise ComponentCountMismatch(f"{len(f.components)} components vs {len(g.components)}")
    return q_system(f).total ^ q_system(g).total


# --------------------------------------------------------------------------
# Marking surgery


def _free_reduce(walk: list[Point]) -> list[Point]:
    """Cancel immediate back-and-forth steps of a closed walk (first == last)."""
    out: list[Point] = []
    for v in walk:
        if len(out) >= 2 and out[-2] == v:
            out.pop()
        else:
            out.append(v)
    while len(out) > 3 and out[1] == out[-2]:
        out = out[1:-1]
    return out


def combine_cycles(surface: SurfaceComplex, terms: Iterable[tuple[EdgeCycle, int]]) -> EdgeCycle:
    """A closed surface walk homologous to sum(count * cycle).

    Each term is reached from a common base vertex by a surface path that is
    walked out and back, so the connecting paths cancel.
    """
    terms = [(cyc, k) for cyc, k in terms if k]
    if not terms:
        raise ValueError("combination has no nonzero term")
    base = terms[0][0].vertices[0]
    walk = [base]
    for cyc, k in terms:
        loop = cyc if k > 0 else cyc.reversed()
        start = loop.vertices[0]
        path = surface_path(surface, base, start)
        body = list(loop.vertices) * abs(k) + [start]
        walk += path[1:] + body[1:] + path[-2::-1]
    walk = _free_reduce(walk)
    if len(walk) < 3:
        raise CycleNotOnSurface("combination reduces to a trivial walk")
    return EdgeCycle(tuple(walk))


def transport_marking(e: MarkedTorusEmbedding, mat: MappingClass) -> MarkedTorusEmbedding:
    """Re-mark ``e`` by the cycles realizing a*m + c*l and b*m + d*l (columns of ``mat``)."""
    m_new = combine_cycles(e.surface, [(e.m_cycle, mat.a), (e.l_cycle, mat.c)])
    l_new = combine_cycles(e.surface, [(e.m_cycle, mat.b), (e.l_cycle, mat.d)])
    return e.with_marking(m_new, l_new)


__all__ = [
    "ComponentQ",
    "DEFAULT_BOX_MARGIN",
    "E",
    "EE",
    "EEE",
    "H1Class",
    "MarkedTorusEmbedding",
    "NONZERO_CLASSES",
    "QResult",
    "SystemEmbedding",
    "bounding_classes",
    "combine_cycles",
    "compact_region",
    "kernel_class",
    "outer_region",
    "predict_q",
    "q_invariant",
    "q_system",
    "transport_marking",
]
