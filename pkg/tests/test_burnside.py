import pytest

from chowring.burnside import (
    BadIndices, BurnsideContext, GroupMismatch, GSet, SubgroupRegistry,
    burnside_geq, decompose, marks_consistent, pf2_minor_check,
    pf2_quadruples, product, young_stabilizer_audit,
)
from chowring.chow import chow_ring
from chowring.matroid import boolean, graphic, uniform
from chowring.perm import (NotFullSymmetricGroup, matroid_automorphisms,
                           symmetric_group, trivial_group)


def ctx_for(m):
    return BurnsideContext(chow_ring(m), matroid_automorphisms(m))


def test_fy1_b3_decomposition():
    ctx = ctx_for(boolean(3))
    d = ctx.decompose_degrees((1,))
    # one fixed point (the top class) and one 3-element orbit
    by_order = {ctx.registry.order_of(i): c for i, c in d.coeffs.items()}
    assert by_order == {6: 1, 2: 1}
    assert d.cardinality() == 4


def test_fy1_b4_three_young_orbits():
    ctx = ctx_for(boolean(4))
    d = ctx.decompose_degrees((1,))
    names = sorted(ctx.registry.describe(i) for i in d.coeffs)
    assert names == ["S(2,2)", "S(3,1)", "S(4)"]
    assert all(c == 1 for c in d.coeffs.values())


def test_trivial_group_decomposition():
    g = trivial_group(3)
    reg = SubgroupRegistry(g)
    x = GSet(g, tuple(range(5)), lambda p, v: v)
    d = decompose(x, reg)
    assert d.cardinality() == 5
    assert list(d.coeffs.values()) == [5]


def test_product_with_point():
    g = symmetric_group(3)
    reg = SubgroupRegistry(g)
    x = GSet(g, tuple(range(3)), lambda p, v: p[v])
    pt = GSet(g, ("*",), lambda p, v: v)
    d_xp = decompose(product(x, pt), reg)
    d_x = decompose(x, reg)
    assert d_xp.coeffs == d_x.coeffs


def test_disjoint_union_additivity_and_marks():
    g = symmetric_group(3)
    reg = SubgroupRegistry(g)
    x = GSet(g, tuple(range(3)), lambda p, v: p[v])
    d = decompose(x, reg)
    assert marks_consistent(x, d)
    xx = product(x, x)
    dxx = decompose(xx, reg)
    assert marks_consistent(xx, dxx)
    assert dxx.cardinality() == 9


def test_group_mismatch():
    g3 = symmetric_group(3)
    g4 = symmetric_group(4)
    x = GSet(g3, (0, 1, 2), lambda p, v: p[v])
    y = GSet(g4, (0, 1, 2, 3), lambda p, v: p[v])
    with pytest.raises(GroupMismatch):
        product(x, y)
    d3 = decompose(x, SubgroupRegistry(g3))
    d4 = decompose(y, SubgroupRegistry(g4))
    with pytest.raises(GroupMismatch):
        d3 + d4


def test_b3_square_minus_fixed_point_nonnegative():
    # [FY1]^2 - [FY0][FY2] decomposes as a genuine 15-element difference
    ctx = ctx_for(boolean(3))
    big = ctx.decompose_degrees((1, 1))
    small = ctx.decompose_degrees((0, 2))
    ok, witness = burnside_geq(big, small)
    assert ok and witness is None
    assert (big - small).cardinality() == 16 - 1


def test_relabeling_invariance():
    # decomposition depends only on the isomorphism class of the G-set
    m = boolean(3)
    ring = chow_ring(m)
    g = matroid_automorphisms(m)
    reg = SubgroupRegistry(g)
    basis = ring.fy_basis(1)
    x = GSet(g, basis, lambda p, mo: ring.act(p, mo))
    relabeled = GSet(g, tuple(reversed(basis)), lambda p, mo: ring.act(p, mo))
    assert decompose(x, reg).coeffs == decompose(relabeled, reg).coeffs


def test_pf2_quadruple_validation():
    ctx = ctx_for(boolean(3))
    with pytest.raises(BadIndices):
        pf2_minor_check(ctx, 1, 0, 1, 2)
    with pytest.raises(BadIndices):
        pf2_minor_check(ctx, 0, 1, 1, 3)


def test_pf2_b4_crosscheck():
    ctx = ctx_for(boolean(4))
    rep = pf2_minor_check(ctx, 1, 2, 2, 3)
    assert rep["passed"]
    rep = pf2_minor_check(ctx, 0, 1, 1, 2)
    assert rep["passed"]


def test_pf2_degenerate_equality():
    ctx = ctx_for(boolean(3))
    rep = pf2_minor_check(ctx, 1, 1, 2, 2)
    assert rep["passed"]
    assert rep["difference"] == "0"


def test_young_audit_b3_and_b4():
    ctx = ctx_for(boolean(3))
    rep = young_stabilizer_audit(ctx, 0, 1, 1, 2)
    assert rep["passed"]
    shapes = dict((tuple(lam), c) for lam, c in rep["young_shapes"])
    assert shapes == {(2, 1): 3, (1, 1, 1): 1}
    ctx4 = ctx_for(boolean(4))
    for quad in pf2_quadruples(3):
        assert young_stabilizer_audit(ctx4, *quad)["passed"]


def test_young_audit_needs_symmetric_group():
    ctx = ctx_for(graphic([(0, 1), (0, 2), (0, 3), (0, 4),
                           (1, 2), (2, 3), (3, 4), (4, 1)]))
    with pytest.raises(NotFullSymmetricGroup):
        young_stabilizer_audit(ctx, 0, 1, 1, 2)


def test_pf2_full_battery_rank4():
    for m in (boolean(4), uniform(4, 5)):
        ctx = ctx_for(m)
        for quad in pf2_quadruples(ctx.ring.r):
            assert pf2_minor_check(ctx, *quad)["passed"], quad


def test_quadruple_enumeration():
    quads = pf2_quadruples(2)
    assert (0, 1, 1, 2) in quads
    assert all(i + l == j + k and i <= j <= k <= l <= 2
               for i, j, k, l in quads)
