import pytest

from chowring.chow import chow_ring, mono_mul
from chowring.koszul import (
    DegreeMismatch, UnmatchedCase, audit_rule_shapes, injection_2x2,
    injection_3x3, rules_3x3, verify_injection,
)
from chowring.matroid import boolean, graphic, mask_of, uniform
from chowring.perm import matroid_automorphisms


def test_rules_parse_and_are_two_sided():
    rules = rules_3x3()
    assert len(rules) > 40
    assert {r.side for r in rules} == {"A", "B"}


def test_2x2_split_example():
    # x_F x_F'^2 with j=2, k=1 splits as (x_F x_F', x_F')
    ring = chow_ring(boolean(5))
    f = mask_of([0, 1])
    fp = mask_of([0, 1, 2, 3])
    a = ring.monomial([(f, 1), (fp, 2)])
    b, c = injection_2x2(ring, 2, 1, a)
    assert b == ring.monomial([(f, 1), (fp, 1)])
    assert c == ring.monomial([(fp, 1)])
    assert mono_mul(b, c) == a


def test_2x2_split_j_zero_and_errors():
    ring = chow_ring(boolean(4))
    a = ring.fy_basis(2)[0]
    assert injection_2x2(ring, 0, 2, a) == ((), a)
    with pytest.raises(DegreeMismatch):
        injection_2x2(ring, 1, 2, a)


def test_2x2_refinement_associativity():
    # splitting (2,1) then (1,1) on the left factor equals splitting (1,2)
    # then (1,1) on the right factor
    ring = chow_ring(boolean(5))
    for a in ring.fy_basis(3):
        b, c = injection_2x2(ring, 2, 1, a)
        b1, b2 = injection_2x2(ring, 1, 1, b)
        left = (b1, b2, c)
        d, e = injection_2x2(ring, 1, 2, a)
        e1, e2 = injection_2x2(ring, 1, 1, e)
        right = (d, e1, e2)
        assert left == right


def test_2x2_verify_on_corpus_samples():
    for m in (boolean(4), uniform(4, 6), uniform(2, 5)):
        ring = chow_ring(m)
        group = matroid_automorphisms(m)
        rep = verify_injection(ring, group, which="2x2")
        assert rep["passed"]


def test_3x3_examples_from_the_case_table():
    # proper flats with consecutive rank gaps of 2 need a rank-7 Boolean
    ring7 = chow_ring(boolean(7))
    x = mask_of([0, 1])
    y = mask_of([0, 1, 2, 3])
    z = mask_of([0, 1, 2, 3, 4, 5])
    c1 = ring7.monomial([(x, 1)])
    c2 = ring7.monomial([(y, 1), (z, 1)])
    kind, payload = injection_3x3(ring7, "A", c1, c2)
    assert kind == "M"
    assert payload == ring7.monomial([(x, 1), (y, 1), (z, 1)])
    # with a gap of one in front, the image is the triple instead
    x1 = mask_of([0, 1, 2])
    kind, payload = injection_3x3(ring7, "A", ring7.monomial([(x1, 1)]), c2)
    assert kind == "T"

    ring = chow_ring(boolean(5))
    top = ring.matroid.full
    # (x_E, x_E^2) -> x_E^3
    kind, payload = injection_3x3(ring, "A", ring.monomial([(top, 1)]),
                                  ring.monomial([(top, 2)]))
    assert kind == "M" and payload == ring.monomial([(top, 3)])
    # (x_F x_E, x_F) with cork(F) = 2 -> the triple (F, E, F)
    w = mask_of([0, 1, 2])
    c1 = ring.monomial([(w, 1), (top, 1)])
    c2 = ring.monomial([(w, 1)])
    kind, payload = injection_3x3(ring, "B", c1, c2)
    assert kind == "T"
    assert payload == (ring.monomial([(w, 1)]), ring.monomial([(top, 1)]),
                       ring.monomial([(w, 1)]))


def test_3x3_total_and_injective_rank_le_4():
    for m in (boolean(4), uniform(4, 5), uniform(3, 5), uniform(2, 4),
              graphic([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])):
        ring = chow_ring(m)
        group = matroid_automorphisms(m)
        rep = verify_injection(ring, group)
        if m.rank >= 4 or m.rank <= 2:
            assert rep["passed"], (m, rep)
        else:
            # rank 3: the one unmatched source and the negative minor
            assert len(rep["unmatched"]) == 1
            assert not rep["minor_nonnegative"]


def test_3x3_domain_size_u45():
    m = uniform(4, 5)
    ring = chow_ring(m)
    rep = verify_injection(ring, matroid_automorphisms(m), check_minor=False)
    assert rep["domain"] == 2 * 21 * 21
    assert rep["passed"]


def test_3x3_rank_one_vacuous():
    m = boolean(1)
    ring = chow_ring(m)
    rep = verify_injection(ring, matroid_automorphisms(m), check_minor=False)
    assert rep["domain"] == 0 and rep["passed"]


def test_3x3_rank5_documented_gaps_only():
    m = boolean(5)
    ring = chow_ring(m)
    group = matroid_automorphisms(m)
    rep = verify_injection(ring, group)
    assert not rep["ambiguous"] and not rep["collisions"]
    assert not rep["invalid"] and not rep["equivariance_failures"]
    # the gaps are exactly (E, x_F x_E) and (x_F x_E, E) over rank-3 flats
    top = ring.top_var
    expected = set()
    for vi in range(ring.nvars):
        if ring.vrank[vi] == 3:
            pe = ((vi, 1), (top, 1))
            e1 = ((top, 1),)
            expected.add(("A", e1, pe))
            expected.add(("B", pe, e1))
    assert set(rep["unmatched"]) == expected
    # the Burnside minor itself still holds by direct decomposition
    assert rep["minor_nonnegative"]


def test_3x3_minor_negative_on_rank3():
    m = boolean(3)
    ring = chow_ring(m)
    rep = verify_injection(ring, matroid_automorphisms(m))
    assert not rep["minor_nonnegative"]
    # the failing coefficient sits at the full-group class: the target has
    # one G-fixed point, the sources have two
    assert rep["minor_witness"] == "S(3)"


def test_rule_audit_exhaustive_up_to_rank_4():
    audit = audit_rule_shapes(max_rank=4)
    assert audit["conflicts"] == []
    # the single documented gap below rank 5: (E, E^2) when FY3 is empty
    assert audit["gaps"] == [(3, "A", "x_E", "x_E^2")]


def test_rule_audit_gap_shapes_at_rank_5():
    audit = audit_rule_shapes(max_rank=5)
    assert audit["conflicts"] == []
    for n, side, c1, c2 in audit["gaps"]:
        assert n in (3, 5)
        assert "x_E" in c1 and "x_E" in c2


def test_unmatched_raises():
    ring = chow_ring(boolean(3))
    top = ring.top_var
    with pytest.raises(UnmatchedCase):
        injection_3x3(ring, "A", ((top, 1),), ((top, 2),))
