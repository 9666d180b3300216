from __future__ import annotations

import random
from itertools import product

import pytest

from oracles import dense_betti, dense_rank, exhaustive_betti
from torusq.cubical import (
    CubicalComplex,
    EdgeCycle,
    VoxelSolid,
    betti,
    boundary_surface,
    build_complex,
    class_of_cycle,
    edge_key,
    euler_characteristic,
    facets,
    independent_in_h1,
    is_torus,
    pinch_points,
    surface_path,
    voxel_complex,
)
from torusq.errors import CycleNotOnSurface, InvalidPath, PinchedSolid
from torusq.fixtures import donut, fused_donuts

ONE = VoxelSolid.of([(0, 0, 0)])
DONUT = VoxelSolid.of([(x, y, 0) for x in range(3) for y in range(3) if (x, y) != (1, 1)])


def random_valid_solids(count: int, seed: int, size: int = 3, p: float = 0.5) -> list[VoxelSolid]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        vox = [v for v in product(range(size), repeat=3) if rng.random() < p]
        if vox and not pinch_points(vox):
            out.append(VoxelSolid.of(vox))
    return out


VALID_SOLIDS = random_valid_solids(25, seed=2024)


# ---------------------------------------------------------------- construction


def test_single_voxel_counts():
    assert build_complex(ONE).counts() == (8, 12, 6, 1)


def test_bar_counts():
    assert build_complex(VoxelSolid.of([(0, 0, 0), (1, 0, 0)])).counts() == (12, 20, 11, 2)


@pytest.mark.parametrize(
    "pair",
    [
        [(0, 0, 0), (1, 1, 1)],  # corner
        [(0, 0, 0), (1, 1, 0)],  # edge
    ],
)
def test_pinched_pairs_rejected(pair):
    with pytest.raises(PinchedSolid):
        build_complex(VoxelSolid.of(pair))
    with pytest.raises(PinchedSolid):
        boundary_surface(VoxelSolid.of(pair))


def test_edge_pinch_filled_is_accepted():
    # the same diagonal pair becomes manifold once an L-shape joins them
    build_complex(VoxelSolid.of([(0, 0, 0), (1, 1, 0), (1, 0, 0)]))


def test_cavity_pinch_on_empty_side_rejected():
    # two empty voxels meeting only along an edge inside a block
    block = set(product(range(4), repeat=3)) - {(1, 1, 1), (2, 2, 1)}
    with pytest.raises(PinchedSolid):
        build_complex(VoxelSolid.of(block))


def test_coordinate_guard():
    with pytest.raises(ValueError):
        VoxelSolid.of([(2**31, 0, 0)])


def test_boundary_operator_index_range():
    with pytest.raises(ValueError):
        build_complex(ONE).boundary(4)


def test_boundary_of_boundary_is_zero_on_fixtures():
    for solid in [ONE, DONUT, fused_donuts(), *VALID_SOLIDS[:5]]:
        cx = build_complex(solid)
        for k in (2, 3):
            assert (cx.boundary(k - 1) @ cx.boundary(k)).is_zero()


# ---------------------------------------------------------------- betti numbers


def test_single_voxel_betti():
    assert build_complex(ONE).betti_numbers() == (1, 0, 0)


def test_single_voxel_surface_is_sphere():
    s = boundary_surface(ONE)
    assert s.betti_numbers() == (1, 0, 1)
    assert euler_characteristic(s) == 2


def test_donut_betti_matches_dense_oracle():
    cx = build_complex(DONUT)
    assert cx.betti_numbers() == (1, 1, 0)
    dense = dense_betti(cx.counts(), [cx.boundary(k).to_dense() for k in (1, 2, 3)])
    assert dense == (1, 1, 0, 0)


def test_donut_surface():
    s = boundary_surface(DONUT)
    assert s.betti_numbers() == (1, 2, 1)
    assert s.euler_characteristic() == 0
    assert s.components() == 1


def test_genus_two_surface():
    s = boundary_surface(fused_donuts())
    assert s.euler_characteristic() == -2
    assert s.betti_numbers() == (1, 4, 1)
    assert not is_torus(s)


def _small_complexes() -> list[CubicalComplex]:
    rng = random.Random(7)
    grid = [(2 * x + 1, 2 * y + 1, 0) for x in range(3) for y in range(3)]
    out = [CubicalComplex([(1, 1, 1)]), CubicalComplex(boundary_surface(ONE).cells[2])]
    # open box: five faces of a cube
    out.append(CubicalComplex([k for k in boundary_surface(ONE).cells[2] if k != (1, 1, 2)]))
    # two squares sharing a corner only, plus a loose edge
    out.append(CubicalComplex([(1, 1, 0), (3, 3, 0), (6, 5, 0)]))
    while len(out) < 40:
        faces = rng.sample(grid, rng.randint(1, 9))
        cx = CubicalComplex(faces)
        if len(cx.cells[1]) <= 16:
            out.append(cx)
    return out


@pytest.mark.parametrize("cx", _small_complexes())
def test_betti_matches_exhaustive_enumeration(cx):
    counts = cx.counts()
    top = cx.dimension
    cols = [list(cx.boundary(k).columns) for k in range(1, top + 1)]
    expected = exhaustive_betti(counts[: top + 1], cols)
    assert tuple(cx.betti(k) for k in range(top + 1)) == expected
    assert betti(cx, 0) == cx.components()


# ---------------------------------------------------------------- surfaces


def test_surface_of_single_voxel_has_six_faces():
    s = boundary_surface(ONE)
    assert s.counts()[:3] == (8, 12, 6)
    assert all(solid == (0, 0, 0) for solid, _ in s.provenance.values())


def test_disjoint_pair_is_two_spheres():
    s = boundary_surface(VoxelSolid.of([(0, 0, 0), (3, 0, 0)]))
    assert s.components() == 2
    assert s.betti_numbers() == (2, 0, 2)
    assert not is_torus(s)


def test_is_torus_examples():
    assert not is_torus(boundary_surface(ONE))
    assert is_torus(boundary_surface(DONUT))
    pair = VoxelSolid(DONUT.voxels | {(x + 5, y, z) for x, y, z in DONUT.voxels})
    assert not is_torus(boundary_surface(pair))


@pytest.mark.parametrize("solid", VALID_SOLIDS)
def test_random_solid_surface_properties(solid):
    cx = build_complex(solid)
    s = boundary_surface(solid)
    assert s.euler_characteristic() % 2 == 0
    # a compact 3-manifold with boundary has chi(boundary) = 2 chi(M)
    assert s.euler_characteristic() == 2 * cx.euler_characteristic()
    assert cx.betti(0) == cx.components()
    assert s.betti(0) == s.components()
    incidence = [col.bit_count() for col in s.boundary(2).transpose().columns]
    assert set(incidence) == {2}


# ---------------------------------------------------------------- cycles and H1


def _donut_marking():
    e = donut(3)
    return e.surface, e.m_cycle, e.l_cycle


def test_face_boundary_is_null_homologous():
    s, m, l = _donut_marking()
    square = EdgeCycle.of([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)])
    assert not class_of_cycle(s, square)
    assert not independent_in_h1(s, square, m)


def test_canonical_marking_independent():
    s, m, l = _donut_marking()
    assert independent_in_h1(s, m, l)
    assert class_of_cycle(s, m) and class_of_cycle(s, l)
    assert class_of_cycle(s, m) != class_of_cycle(s, l)


def test_canonical_marking_independent_dense_oracle():
    s, m, l = _donut_marking()
    d2 = s.boundary(2)
    cm = s.chain(1, m.chain_keys())
    cl = s.chain(1, l.chain_keys())
    base = dense_rank(d2.to_dense())
    stacked = d2.hstack((cm, cl)).to_dense()
    assert dense_rank(stacked) == base + 2


def test_same_cycle_dependent():
    s, m, _ = _donut_marking()
    assert not independent_in_h1(s, m, m)
    assert not independent_in_h1(s, m, m.reversed())


def test_off_surface_cycle_rejected():
    s, m, _ = _donut_marking()
    inner = EdgeCycle.of([(0, 0, 5), (1, 0, 5), (1, 1, 5), (0, 1, 5)])
    with pytest.raises(CycleNotOnSurface):
        independent_in_h1(s, inner, m)
    with pytest.raises(CycleNotOnSurface):
        class_of_cycle(s, inner)


def test_h1_basis_has_rank_two():
    s, _, _ = _donut_marking()
    assert len(s.h1_basis) == 2


# ---------------------------------------------------------------- small helpers


def test_edge_cycle_validation():
    with pytest.raises(InvalidPath):
        EdgeCycle.of([(0, 0, 0), (1, 1, 0), (0, 1, 0)])
    with pytest.raises(InvalidPath):
        EdgeCycle.of([(0, 0, 0)])
    c = EdgeCycle.of([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0), (0, 0, 0)])
    assert len(c) == 4


def test_backtracking_cancels_in_chain():
    c = EdgeCycle.of([(0, 0, 0), (1, 0, 0)])
    assert len(c.edge_keys()) == 2
    assert c.chain_keys() == frozenset()


def test_edge_key_and_facets():
    key = edge_key((0, 0, 0), (0, 1, 0))
    assert key == (0, 1, 0)
    assert sorted(facets(key)) == [(0, 0, 0), (0, 2, 0)]
    with pytest.raises(InvalidPath):
        edge_key((0, 0, 0), (1, 1, 0))


def test_surface_path_is_shortest_and_on_surface():
    s = boundary_surface(ONE)
    path = surface_path(s, (0, 0, 0), (1, 1, 1))
    assert path[0] == (0, 0, 0) and path[-1] == (1, 1, 1)
    assert len(path) == 4
    with pytest.raises(CycleNotOnSurface):
        surface_path(s, (0, 0, 0), (5, 5, 5))


def test_voxel_complex_skips_gate():
    # the corner pair is not a manifold solid but still a fine cell complex
    cx = voxel_complex([(0, 0, 0), (1, 1, 1)])
    assert cx.betti_numbers(3) == (1, 0, 0, 0)
