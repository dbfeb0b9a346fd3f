"""Sheaf Hom/Ext calculus checked against independent oracles."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiltkit.lattice import (
    WeightType,
    canonical,
    gen,
    graded_dim,
    normal_form,
    omega,
    zero,
)
from tiltkit.sheaves import (
    LineBundle,
    TorsionSheaf,
    ext1_dim,
    euler_line,
    hom_dim,
    is_exceptional,
    is_rigid,
    parse_sheaf,
    rigid_torsion_objects,
    sheaf_rank,
    shift,
    tau,
    tau_inverse,
    tube_hom_oracle,
)

WEIGHTS = [
    WeightType((1, 1)),
    WeightType((2, 3)),
    WeightType((2, 2, 2)),
    WeightType((2, 3, 5)),
    WeightType((2, 3, 6)),
    WeightType((2, 2, 2, 2)),
]

weights_st = st.sampled_from(WEIGHTS)


@st.composite
def lattice_elements(draw, w):
    coeffs = tuple(draw(st.integers(-8, 8)) for _ in range(w.t))
    return normal_form(w, coeffs, draw(st.integers(-6, 6)))


@st.composite
def sheaves(draw, w):
    if draw(st.booleans()):
        return LineBundle(draw(lattice_elements(w)))
    tube = draw(st.sampled_from([None] + list(range(1, w.t + 1))))
    rank = 1 if tube is None else w.p[tube - 1]
    socle = draw(st.integers(0, max(rank - 1, 0)))
    length = draw(st.integers(1, 2 * rank + 1))
    return TorsionSheaf(w, tube, socle, length)


def test_tau_on_lines():
    w = WeightType((1, 1))
    o = LineBundle(zero(w))
    assert tau(o) == LineBundle(normal_form(w, (0, 0), -2))
    for wt in WEIGHTS:
        line = LineBundle(canonical(wt))
        assert tau(line) == LineBundle(canonical(wt) + omega(wt))


def test_shift_moves_tube_socles():
    w = WeightType((2, 3, 5))
    s = TorsionSheaf(w, 3, 0, 2)
    assert shift(s, gen(w, 3)) == TorsionSheaf(w, 3, 1, 2)
    assert shift(s, gen(w, 1)) == s  # other generators act trivially
    assert shift(s, canonical(w)) == s  # c has no x_3 content mod p_3
    mu = TorsionSheaf(w, None, 0, 3)
    assert shift(mu, gen(w, 2)) == mu


@given(st.data())
def test_shift_by_omega_is_tau(data):
    w = data.draw(weights_st)
    s = data.draw(sheaves(w))
    assert shift(s, omega(w)) == tau(s)
    assert tau_inverse(tau(s)) == s
    assert tau(tau_inverse(s)) == s


def test_torsion_socle_normalized():
    w = WeightType((2, 3))
    assert TorsionSheaf(w, 2, 5, 1) == TorsionSheaf(w, 2, 2, 1)
    assert TorsionSheaf(w, 2, -1, 1).socle == 2
    with pytest.raises(ValueError):
        TorsionSheaf(w, 3, 0, 1)
    with pytest.raises(ValueError):
        TorsionSheaf(w, 1, 0, 0)


def test_euler_line_examples():
    w = WeightType((2, 3))
    assert euler_line(zero(w), zero(w)) == 1
    assert euler_line(zero(w), canonical(w)) == 2
    k = WeightType((1, 1))
    minus2c = normal_form(k, (0, 0), -2)
    assert euler_line(zero(k), minus2c) == -1


def test_hom_line_to_exceptional_simples():
    # Hom(O, S_{i,m}) is 1 exactly when m = p_i - 1 mod p_i
    for w in [WeightType((2, 3)), WeightType((2, 3, 5))]:
        o = LineBundle(zero(w))
        for i, p in enumerate(w.p, start=1):
            for m in range(2 * p):
                expected = 1 if m % p == p - 1 else 0
                assert hom_dim(o, TorsionSheaf(w, i, m, 1)) == expected


def test_hom_examples_and_orthogonality():
    w = WeightType((2, 3))
    o = LineBundle(zero(w))
    assert hom_dim(o, TorsionSheaf(w, 2, 2, 1)) == 1
    assert hom_dim(o, TorsionSheaf(w, 2, 0, 1)) == 0
    assert hom_dim(TorsionSheaf(w, 2, 0, 1), o) == 0
    assert hom_dim(TorsionSheaf(w, 1, 0, 1), TorsionSheaf(w, 2, 0, 1)) == 0
    assert hom_dim(TorsionSheaf(w, 1, 0, 1), TorsionSheaf(w, None, 0, 1)) == 0


@given(st.data())
def test_hom_line_to_homogeneous_is_length(data):
    # a line bundle sees a generic simple exactly once
    w = data.draw(weights_st)
    x = data.draw(lattice_elements(w))
    length = data.draw(st.integers(1, 5))
    assert hom_dim(LineBundle(x), TorsionSheaf(w, None, 0, length)) == length


@given(st.data())
def test_hom_line_to_torsion_telescopes(data):
    w = data.draw(weights_st)
    x = data.draw(lattice_elements(w))
    tube = data.draw(st.integers(1, w.t))
    p = w.p[tube - 1]
    socle = data.draw(st.integers(0, p - 1))
    length = data.draw(st.integers(1, 2 * p))
    line = LineBundle(x)
    total = sum(
        hom_dim(line, TorsionSheaf(w, tube, socle + m, 1)) for m in range(length)
    )
    assert hom_dim(line, TorsionSheaf(w, tube, socle, length)) == total


@given(st.data())
@settings(max_examples=60)
def test_hom_is_tau_invariant(data):
    w = data.draw(weights_st)
    a = data.draw(sheaves(w))
    b = data.draw(sheaves(w))
    assert hom_dim(tau(a), tau(b)) == hom_dim(a, b)
    assert ext1_dim(tau(a), tau(b)) == ext1_dim(a, b)


def test_tube_window_rule_matches_matrix_oracle():
    # standalone tube ranks, all socle pairs, lengths up to twice the rank
    for d in (2, 3):
        w = WeightType((d,))
        for ja in range(d):
            for jb in range(d):
                for la in range(1, 2 * d + 1):
                    for lb in range(1, 2 * d + 1):
                        got = hom_dim(
                            TorsionSheaf(w, 1, ja, la), TorsionSheaf(w, 1, jb, lb)
                        )
                        assert got == tube_hom_oracle(d, ja, la, jb, lb)


def test_homogeneous_hom_is_min_length():
    w = WeightType((2, 3))
    for a in range(1, 5):
        for b in range(1, 5):
            got = hom_dim(TorsionSheaf(w, None, 0, a), TorsionSheaf(w, None, 0, b))
            assert got == min(a, b) == tube_hom_oracle(1, 0, a, 0, b)


def test_ext_pattern_between_tube_simples():
    # Ext^1(S_{i,j}, S_{i,j'}) is 1 exactly when j - j' = 1 mod p_i
    for w in [WeightType((2, 3, 5)), WeightType((2, 3, 6))]:
        for i, p in enumerate(w.p, start=1):
            for j in range(p):
                for j2 in range(p):
                    got = ext1_dim(TorsionSheaf(w, i, j, 1), TorsionSheaf(w, i, j2, 1))
                    assert got == (1 if (j - j2) % p == 1 % p else 0)
    w = WeightType((2, 3))
    mu = TorsionSheaf(w, None, 0, 1)
    assert ext1_dim(mu, mu) == 1


def test_rigidity_boundary():
    for w in WEIGHTS:
        for i, p in enumerate(w.p, start=1):
            for length in range(1, p):
                assert is_rigid(TorsionSheaf(w, i, 0, length))
            for length in range(p, p + 3):
                assert not is_rigid(TorsionSheaf(w, i, 0, length))
        for length in (1, 2, 3):
            assert not is_rigid(TorsionSheaf(w, None, 0, length))


@given(st.data())
def test_line_bundles_always_rigid(data):
    w = data.draw(weights_st)
    x = data.draw(lattice_elements(w))
    assert is_rigid(LineBundle(x))
    assert is_exceptional(LineBundle(x))


@given(st.data())
def test_line_pair_rigidity_window(data):
    # O(x) + O(y) is rigid iff both graded pieces at omega +- (y - x) vanish
    w = data.draw(weights_st)
    x = data.draw(lattice_elements(w))
    y = data.draw(lattice_elements(w))
    d = y - x
    om = omega(w)
    pair_rigid = (
        ext1_dim(LineBundle(x), LineBundle(y)) == 0
        and ext1_dim(LineBundle(y), LineBundle(x)) == 0
    )
    assert pair_rigid == (graded_dim(om + d) == 0 and graded_dim(om - d) == 0)


def test_socle_plus_structure_sheaf_is_rigid():
    # the hop used by reach certificates: S_{i,1} pairs with O
    for w in [WeightType((2, 2, 2)), WeightType((2, 3, 6))]:
        o = LineBundle(zero(w))
        for i in range(1, w.t + 1):
            s = TorsionSheaf(w, i, 1, 1)
            assert ext1_dim(s, o) == 0
            assert ext1_dim(o, s) == 0


def test_full_support_twist_is_not_rigid_with_structure_sheaf():
    # Ext^1(O(x1+x2+x3), O) has dimension (number of nonzero components) - 1
    w = WeightType((2, 3, 5))
    x = gen(w, 1) + gen(w, 2) + gen(w, 3)
    assert ext1_dim(LineBundle(x), LineBundle(zero(w))) == 2


def test_rigid_torsion_census():
    for w in WEIGHTS:
        objs = rigid_torsion_objects(w)
        assert len(objs) == sum(p * (p - 1) for p in w.p)
        assert all(is_rigid(s) for s in objs)
        assert len(set(objs)) == len(objs)


def test_sheaf_rank():
    w = WeightType((2, 3))
    assert sheaf_rank(LineBundle(zero(w))) == 1
    assert sheaf_rank(TorsionSheaf(w, 1, 0, 1)) == 0


@given(st.data())
def test_parse_render_round_trip(data):
    w = data.draw(weights_st)
    s = data.draw(sheaves(w))
    assert parse_sheaf(w, str(s)) == s


def test_parse_sheaf_errors():
    w = WeightType((2, 3))
    for bad in ["O", "T(1;0)", "T(0; 0; 1)", "Q(1*c)", "T(4; 0; 1)"]:
        with pytest.raises(ValueError):
            parse_sheaf(w, bad)
    assert parse_sheaf(w, "T(hom; 0; 2)") == TorsionSheaf(w, None, 0, 2)
    assert parse_sheaf(w, "O(1*c)") == LineBundle(canonical(w))
