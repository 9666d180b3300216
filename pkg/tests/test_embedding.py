from __future__ import annotations

from itertools import permutations, product

import pytest

from torusq.cubical import CubicalComplex, EdgeCycle, VoxelSolid, voxel_complex
from torusq.embedding import (
    E,
    EE,
    EEE,
    H1Class,
    MarkedTorusEmbedding,
    QResult,
    SystemEmbedding,
    bounding_classes,
    combine_cycles,
    compact_region,
    kernel_class,
    outer_region,
    predict_q,
    q_invariant,
    q_system,
    transport_marking,
)
from torusq.errors import (
    ComponentCountMismatch,
    CycleNotOnSurface,
    DependentMarking,
    InsufficientMargin,
    KernelDimensionError,
    NotATorus,
    OverlappingComponents,
    PinchedSolid,
)
from torusq.fixtures import donut, drilled_cube, trefoil_tube, unknot_tube
from torusq.mcg import MappingClass, tau

# one integer representative for each element of GL2(Z/2)
GL2_REPS = [
    MappingClass(1, 0, 0, 1),
    MappingClass(0, 1, 1, 0),
    MappingClass(1, 1, 0, 1),
    MappingClass(1, 0, 1, 1),
    MappingClass(0, 1, 1, 1),
    MappingClass(1, 1, 1, 0),
]


def mod2_inverse_apply(m: MappingClass, h: H1Class) -> H1Class:
    """tau(m)^-1 applied to the coordinate column of h (inverse of a 2x2 over GF(2) is its adjugate)."""
    a, b, c, d = m.d % 2, m.b % 2, m.c % 2, m.a % 2
    return H1Class((a * h.a + b * h.b) % 2, (c * h.a + d * h.b) % 2)


@pytest.fixture(scope="module")
def dn():
    return donut(3)


# ---------------------------------------------------------------- H1Class


def test_class_order_and_names():
    assert E < EE < EEE
    assert [h.name for h in (E, EE, EEE)] == ["e", "ee", "eee"]
    assert EEE.bits == "(1,1)"
    assert E + EE == EEE
    assert not (E + E)
    assert H1Class.from_name("ee") == EE
    with pytest.raises(ValueError):
        H1Class(2, 0)


# ---------------------------------------------------------------- regions


def test_donut_region_homology(dn):
    assert compact_region(dn).betti(1) == 1
    assert outer_region(dn).betti(1) == 1


def test_drilled_cube_compact_region():
    assert compact_region(drilled_cube(4)).betti(1) == 1


def test_regions_contain_surface_cells(dn):
    for region in (dn.compact, dn.outer):
        for k in range(3):
            assert set(dn.surface.cells[k]) <= set(region.index[k])


def test_outer_region_excludes_solid(dn):
    voxels = {tuple((c - 1) // 2 for c in key) for key in dn.outer.cells[3]}
    assert not voxels & dn.solid.voxels
    assert len(voxels) == 7 * 7 * 5 - 8


# ---------------------------------------------------------------- kernel classes and Q


def test_donut_kernel_classes(dn):
    assert kernel_class(dn.compact, dn) == E
    assert kernel_class(dn.outer, dn) == EE


def test_swapped_donut_kernel_classes(dn):
    sw = dn.swapped()
    assert kernel_class(sw.compact, sw) == EE
    assert kernel_class(sw.outer, sw) == E


def test_q_examples(dn):
    q = q_invariant(dn)
    assert (q.c, q.n, q.q_bit) == (E, EE, 0)
    q = q_invariant(dn.swapped())
    assert (q.c, q.n, q.q_bit) == (EE, E, 1)


def test_system_total(dn):
    other = dn.swapped().translated((10, 0, 0))
    res = q_system(SystemEmbedding((dn, other)))
    assert [c.q_bit for c in res.components] == [0, 1]
    assert res.total == 1


def test_qresult_total_is_xor():
    a = q_invariant(donut(3))
    assert QResult((a, a, a)).total == 0
    assert QResult(()).total == 0


ALL_FIXTURES = {
    "donut3": lambda: donut(3),
    "donut4": lambda: donut(4),
    "unknot": unknot_tube,
    "trefoil-even": lambda: trefoil_tube("even"),
    "trefoil-odd": lambda: trefoil_tube("odd"),
    "drilled": lambda: drilled_cube(4),
    "drilled5": lambda: drilled_cube(5),
}


@pytest.mark.parametrize("name", sorted(ALL_FIXTURES))
def test_kernel_uniqueness_and_distinct(name):
    e = ALL_FIXTURES[name]()
    assert len(bounding_classes(e.compact, e)) == 1
    assert len(bounding_classes(e.outer, e)) == 1
    q = q_invariant(e)
    assert q.c != q.n


@pytest.mark.parametrize("name", sorted(ALL_FIXTURES))
def test_box_margin_insensitive(name):
    e = ALL_FIXTURES[name]()
    wide = e.with_margin(4)
    assert kernel_class(wide.outer, wide) == kernel_class(e.outer, e)
    assert kernel_class(e.with_margin(1).outer, e) == kernel_class(e.outer, e)


def test_permutation_invariance(dn):
    comps = [dn, dn.swapped().translated((8, 0, 0)), unknot_tube().translated((0, 8, 0))]
    totals = {q_system(list(p)).total for p in permutations(comps)}
    assert totals == {1}


# ---------------------------------------------------------------- marking changes


@pytest.mark.parametrize("mat", GL2_REPS, ids=str)
@pytest.mark.parametrize("make", [lambda: donut(3), unknot_tube], ids=["donut", "unknot"])
def test_transport_acts_by_inverse(make, mat):
    e = make()
    base = q_invariant(e)
    moved = transport_marking(e, mat)
    q = q_invariant(moved)
    assert q.c == mod2_inverse_apply(mat, base.c)
    assert q.n == mod2_inverse_apply(mat, base.n)
    if tau(mat).name == "U":
        assert q.q_bit == base.q_bit
    elif tau(mat).name == "V":
        assert q.q_bit != base.q_bit


def test_transport_by_large_entries(dn):
    mat = MappingClass(3, 2, 4, 3)
    moved = transport_marking(dn, mat)
    assert q_invariant(moved).q_bit == 0


def test_combine_cycles_class(dn):
    z = combine_cycles(dn.surface, [(dn.m_cycle, 1), (dn.l_cycle, 1)])
    assert bounding_classes(dn.compact, dn.with_marking(z, dn.l_cycle)) == [EEE]
    with pytest.raises(ValueError):
        combine_cycles(dn.surface, [(dn.m_cycle, 0)])


# ---------------------------------------------------------------- predict


def test_predict(dn):
    f = SystemEmbedding((dn,))
    g = SystemEmbedding((dn.swapped(),))
    assert predict_q(f, f) == 0
    assert predict_q(f, g) == 1
    assert predict_q(SystemEmbedding((unknot_tube(),)), SystemEmbedding((trefoil_tube("even"),))) == 0


def test_predict_count_mismatch(dn):
    with pytest.raises(ComponentCountMismatch):
        predict_q(SystemEmbedding((dn,)), SystemEmbedding((dn, dn.translated((9, 0, 0)))))


# ---------------------------------------------------------------- gates


def test_single_voxel_is_not_a_torus(dn):
    with pytest.raises(NotATorus):
        MarkedTorusEmbedding(VoxelSolid.of([(0, 0, 0)]), dn.m_cycle, dn.l_cycle)


def test_empty_solid(dn):
    with pytest.raises(NotATorus):
        MarkedTorusEmbedding(VoxelSolid(frozenset()), dn.m_cycle, dn.l_cycle)


def test_genus_two_is_not_a_torus(dn):
    from torusq.fixtures import fused_donuts

    with pytest.raises(NotATorus):
        MarkedTorusEmbedding(fused_donuts(), dn.m_cycle, dn.l_cycle)


def test_pinched_solid(dn):
    solid = VoxelSolid(dn.solid.voxels | {(3, 3, 1)})
    with pytest.raises(PinchedSolid):
        MarkedTorusEmbedding(solid, dn.m_cycle, dn.l_cycle)


def test_dependent_marking(dn):
    with pytest.raises(DependentMarking):
        dn.with_marking(dn.m_cycle, dn.m_cycle)
    square = EdgeCycle.of([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)])
    with pytest.raises(DependentMarking):
        dn.with_marking(square, dn.l_cycle)


def test_off_surface_marking(dn):
    far = EdgeCycle.of([(0, 0, 9), (1, 0, 9), (1, 1, 9), (0, 1, 9)])
    with pytest.raises(CycleNotOnSurface):
        dn.with_marking(dn.m_cycle, far)


@pytest.mark.parametrize("margin", [0, -1])
def test_insufficient_margin(dn, margin):
    with pytest.raises(InsufficientMargin):
        dn.with_margin(margin)
    assert issubclass(InsufficientMargin, KernelDimensionError)


def test_wrong_region_raises(dn):
    # on the surface itself nothing nonzero bounds
    with pytest.raises(KernelDimensionError):
        kernel_class(CubicalComplex(dn.surface.cells[2]), dn)
    # in a filled box every class bounds
    box = voxel_complex(product(range(-1, 4), range(-1, 4), range(-1, 2)))
    with pytest.raises(KernelDimensionError):
        kernel_class(box, dn)


def test_region_missing_marking_edges(dn):
    tiny = voxel_complex([(20, 20, 20)])
    with pytest.raises(InsufficientMargin):
        kernel_class(tiny, dn)


def test_overlapping_components(dn):
    with pytest.raises(OverlappingComponents):
        SystemEmbedding((dn, dn))
    with pytest.raises(OverlappingComponents):
        SystemEmbedding((dn, dn.translated((3, 3, 1))))  # corner contact only
    SystemEmbedding((dn, dn.translated((4, 0, 0))))
