"""Dynkin backends: roots, Euler form, cluster Ext rules."""

from __future__ import annotations

from itertools import combinations, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tiltkit.dynkin import (
    AcyclicQuiver,
    NotFiniteType,
    RootModule,
    ShiftedProjective,
    ext1_c,
    euler_form,
    indecomposables_c,
    is_positive_definite,
    parse_dynkin_object,
    parse_quiver,
    positive_roots,
    tits_form,
)

A2 = parse_quiver("A2")
A3 = parse_quiver("A3")
D4 = parse_quiver("D4")


def brute_roots(q, bound=6):
    """Independent root enumeration with explicit nested loops."""
    roots = []

    def rec(prefix):
        if len(prefix) == q.n:
            if any(prefix) and tits_form(q, tuple(prefix)) == 1:
                roots.append(tuple(prefix))
            return
        for v in range(bound + 1):
            rec(prefix + [v])

    rec([])
    return set(roots)


def test_parse_quiver_forms():
    assert parse_quiver("2; 1->2") == AcyclicQuiver(2, ((0, 1),))
    assert parse_quiver("A3") == AcyclicQuiver(3, ((0, 1), (1, 2)))
    assert parse_quiver("A3<>") == AcyclicQuiver(3, ((1, 0), (1, 2)))
    assert parse_quiver("D4") == AcyclicQuiver(4, ((0, 1), (1, 2), (1, 3)))
    assert parse_quiver(str(A3)) == A3
    with pytest.raises(ValueError):
        parse_quiver("A3<")
    with pytest.raises(ValueError):
        parse_quiver("3; 1->4")
    with pytest.raises(ValueError):
        parse_quiver("2; 1->1")
    with pytest.raises(ValueError):
        parse_quiver("2; 1->2; 2->1")  # oriented cycle


def test_euler_form_on_a2():
    assert euler_form(A2, (1, 0), (0, 1)) == -1
    assert euler_form(A2, (0, 1), (1, 0)) == 0
    assert tits_form(A2, (1, 1)) == 1


def test_positive_definite_detection():
    assert is_positive_definite(A3)
    assert is_positive_definite(D4)
    # affine A1 (Kronecker) and affine D4 are not finite type
    kron = AcyclicQuiver(2, ((0, 1), (0, 1)))
    assert not is_positive_definite(kron)
    with pytest.raises(NotFiniteType):
        positive_roots(kron)


def test_root_counts_match_brute_force():
    for q, count in [(A2, 3), (A3, 6), (D4, 12)]:
        roots = positive_roots(q)
        assert len(roots) == count
        assert set(roots) == brute_roots(q)
        assert all(tits_form(q, d) == 1 for d in roots)


def test_roots_orientation_independent():
    base = set(positive_roots(A3))
    for suffix in ("<>", "><", "<<"):
        assert set(positive_roots(parse_quiver("A3" + suffix))) == base


def test_indecomposable_counts():
    assert len(indecomposables_c(A2)) == 5
    assert len(indecomposables_c(A3)) == 9
    assert len(indecomposables_c(D4)) == 16


@given(st.data())
def test_ext1_c_symmetric(data):
    q = data.draw(st.sampled_from([A2, A3, D4]))
    objs = indecomposables_c(q)
    a = data.draw(st.sampled_from(objs))
    b = data.draw(st.sampled_from(objs))
    assert ext1_c(q, a, b) == ext1_c(q, b, a)


def test_ext1_c_rules():
    m10, m01, m11 = RootModule((1, 0)), RootModule((0, 1)), RootModule((1, 1))
    sp1, sp2 = ShiftedProjective(0), ShiftedProjective(1)
    assert ext1_c(A2, m10, m01) == 1
    assert ext1_c(A2, m10, m11) == 0
    assert ext1_c(A2, m01, m11) == 0
    assert ext1_c(A2, sp1, m10) == 1
    assert ext1_c(A2, sp1, m01) == 0
    assert ext1_c(A2, sp2, m11) == 1
    assert ext1_c(A2, sp1, sp2) == 0


def test_a2_compatibility_graph_is_pentagon():
    objs = indecomposables_c(A2)
    pairs = [
        frozenset(p) for p in combinations(objs, 2) if ext1_c(A2, *p) == 0
    ]
    assert len(pairs) == 5
    # each object lies in exactly two maximal compatible pairs
    for obj in objs:
        assert sum(1 for p in pairs if obj in p) == 2


def test_no_self_extensions():
    for q in (A2, A3, D4):
        for obj in indecomposables_c(q):
            assert ext1_c(q, obj, obj) == 0


def test_parse_dynkin_object():
    assert parse_dynkin_object(A3, "M(1,1,0)") == RootModule((1, 1, 0))
    assert parse_dynkin_object(A3, "SP(2)") == ShiftedProjective(1)
    for obj in indecomposables_c(D4):
        assert parse_dynkin_object(D4, str(obj)) == obj
    with pytest.raises(ValueError):
        parse_dynkin_object(A3, "M(1,1)")
    with pytest.raises(ValueError):
        parse_dynkin_object(A3, "SP(4)")
