"""Weight lattice: normal forms, group laws, order, graded dimensions."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiltkit.lattice import (
    GenusClass,
    LatticeElement,
    WeightMismatch,
    WeightType,
    canonical,
    gen,
    genus,
    graded_dim,
    graded_dim_oracle,
    is_effective,
    leq,
    normal_form,
    omega,
    parse_element,
    rank_g0,
    scalar_mul,
    zero,
)

WEIGHTS = [
    WeightType((1, 1)),
    WeightType((2, 3)),
    WeightType((2, 2, 2)),
    WeightType((2, 3, 5)),
    WeightType((2, 3, 6)),
    WeightType((2, 3, 7)),
    WeightType((2, 2, 2, 2)),
]

weights_st = st.sampled_from(WEIGHTS + [WeightType((3,)), WeightType((1, 4))])


@st.composite
def elements(draw, weights=weights_st, lbound=10):
    w = draw(weights)
    coeffs = tuple(draw(st.integers(-12, 12)) for _ in range(w.t))
    l = draw(st.integers(-lbound, lbound))
    return normal_form(w, coeffs, l)


def reduction_oracle(w: WeightType, coeffs, l) -> LatticeElement:
    """Independent normal form via residues plus the degree homomorphism.

    deg(x_i) = pbar / p_i and deg(c) = pbar; (residues, degree) determine
    an element uniquely, so solve for the c coefficient from the degree.
    """
    pbar = w.pbar
    residues = tuple(v % p for v, p in zip(coeffs, w.p))
    degree = sum(v * (pbar // p) for v, p in zip(coeffs, w.p)) + l * pbar
    rest = degree - sum(r * (pbar // p) for r, p in zip(residues, w.p))
    assert rest % pbar == 0
    return LatticeElement(w, residues, rest // pbar)


# frozen expected values, cross-checked against reduction_oracle below

def test_normal_form_carry():
    w = WeightType((2, 3))
    x = normal_form(w, (1, 4), 0)
    assert (x.li, x.l) == ((1, 1), 1)
    assert x == reduction_oracle(w, (1, 4), 0)


def test_omega_normal_forms():
    cases = {
        (1, 1): ((0, 0), -2),
        (2, 3): ((1, 2), -2),
        (2, 3, 5): ((1, 2, 4), -2),
        (2, 2, 2, 2): ((1, 1, 1, 1), -2),
    }
    for p, (li, l) in cases.items():
        w = WeightType(p)
        om = omega(w)
        assert (om.li, om.l) == (li, l)
        assert om == reduction_oracle(w, (-1,) * w.t, w.t - 2)


def test_scalar_mul_double_omega():
    w = WeightType((2, 3))
    x = scalar_mul(2, omega(w))
    assert (x.li, x.l) == ((0, 1), -2)
    assert x == reduction_oracle(w, (-2, -2), 0)
    # cross-check through the rank-one embedding x1 -> 3, x2 -> 2, c -> 6
    assert 3 * x.li[0] + 2 * x.li[1] + 6 * x.l == -10


@given(elements())
def test_normal_form_matches_reduction_oracle(x):
    assert x == reduction_oracle(x.weight, x.li, x.l)


@given(st.data())
def test_normal_form_representative_independent(data):
    w = data.draw(weights_st)
    coeffs = tuple(data.draw(st.integers(-30, 30)) for _ in range(w.t))
    l = data.draw(st.integers(-10, 10))
    assert normal_form(w, coeffs, l) == reduction_oracle(w, coeffs, l)


@given(st.data())
def test_group_laws(data):
    w = data.draw(weights_st)
    xs = [data.draw(elements(st.just(w))) for _ in range(3)]
    x, y, z = xs
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x + zero(w) == x
    assert x + (-x) == zero(w)
    assert scalar_mul(3, x) == x + x + x
    assert scalar_mul(-2, x) == -(x + x)


def test_generator_relations():
    for w in WEIGHTS:
        for i in range(1, w.t + 1):
            assert scalar_mul(w.p[i - 1], gen(w, i)) == canonical(w)


def test_weight_mismatch_raises():
    a = zero(WeightType((2, 3)))
    b = zero(WeightType((2, 3, 5)))
    with pytest.raises(WeightMismatch):
        _ = a + b
    with pytest.raises(WeightMismatch):
        leq(a, b)


@given(st.data())
def test_order_translation_invariant(data):
    w = data.draw(weights_st)
    x = data.draw(elements(st.just(w)))
    y = data.draw(elements(st.just(w)))
    z = data.draw(elements(st.just(w)))
    if leq(x, y):
        assert leq(x + z, y + z)


@given(st.data())
def test_order_partial_order_laws(data):
    w = data.draw(weights_st)
    x = data.draw(elements(st.just(w)))
    y = data.draw(elements(st.just(w)))
    assert leq(x, x)
    if leq(x, y) and leq(y, x):
        assert x == y


@given(elements())
def test_trichotomy(x):
    w = x.weight
    upper = canonical(w) + omega(w)
    assert is_effective(x) != leq(x, upper)


@given(elements(lbound=6))
def test_graded_dim_against_monomial_oracle(x):
    assert graded_dim(x) == graded_dim_oracle(x)


def test_graded_dim_examples():
    w23 = WeightType((2, 3))
    assert graded_dim(canonical(w23)) == 2  # X1^2 and X2^3
    assert graded_dim(zero(w23)) == 1
    assert graded_dim(omega(w23)) == 0
    w222 = WeightType((2, 2, 2))
    assert graded_dim(canonical(w222)) == 2  # three squares modulo one relation
    w235 = WeightType((2, 3, 5))
    assert graded_dim(gen(w235, 1) + canonical(w235)) == 2


def test_graded_dim_positive_iff_effective():
    for w in WEIGHTS:
        for l in range(-3, 4):
            x = normal_form(w, tuple(range(w.t)), l)
            assert (graded_dim(x) > 0) == is_effective(x)


def test_graded_dim_single_weight():
    # one unbounded exponent only: dimension is the effectivity indicator
    w = WeightType((3,))
    for l in range(-2, 4):
        for l1 in range(3):
            x = LatticeElement(w, (l1,), l)
            expected = 1 if l >= 0 else 0
            assert graded_dim(x) == expected
            assert graded_dim_oracle(x) == expected


def test_genus_classification():
    cases = {
        (1, 1): (Fraction(0), "domestic"),
        (2, 3): (Fraction(-3, 2), "domestic"),
        (2, 3, 5): (Fraction(1, 2), "domestic"),
        (2, 3, 6): (Fraction(1), "tubular"),
        (3, 3, 3): (Fraction(1), "tubular"),
        (2, 4, 4): (Fraction(1), "tubular"),
        (2, 2, 2, 2): (Fraction(1), "tubular"),
        (2, 3, 7): (Fraction(3, 2), "wild"),
    }
    for p, (value, kind) in cases.items():
        got = genus(WeightType(p))
        assert got == GenusClass(value, kind), p


def test_rank_g0():
    assert rank_g0(WeightType((1, 1))) == 2
    assert rank_g0(WeightType((2, 3))) == 5
    assert rank_g0(WeightType((2, 3, 5))) == 9
    assert rank_g0(WeightType((2, 3, 6))) == 10
    assert rank_g0(WeightType((2, 2, 2, 2))) == 6


@given(elements())
def test_parse_render_round_trip(x):
    assert parse_element(x.weight, str(x)) == x


def test_parse_rejects_garbage():
    w = WeightType((2, 3))
    for bad in ["", "x", "xx1", "1*x4+0*c", "1*x1+1*x1+0*c", "x1+x1", "1x1", "2*y1"]:
        with pytest.raises(ValueError):
            parse_element(w, bad)
    assert parse_element(w, "1*x1 + 2*x2 + -2*c") == omega(w)
    # partial sums are accepted, missing terms default to zero
    assert parse_element(w, "1*c") == canonical(w)
    assert parse_element(w, "1*x2") == gen(w, 2)


def test_parse_accepts_bare_generators():
    w = WeightType((2, 3))
    assert parse_element(w, "x1") == gen(w, 1)
    assert parse_element(w, "c") == canonical(w)
    assert parse_element(w, "x1+x2+-1*c") == gen(w, 1) + gen(w, 2) - canonical(w)
    assert parse_element(w, "-c") == -canonical(w)
    assert parse_element(w, "2") == scalar_mul(2, canonical(w))


def test_weight_type_parse_and_validation():
    assert WeightType.parse("(2, 3, 5)") == WeightType((2, 3, 5))
    assert str(WeightType((2, 3))) == "(2,3)"
    with pytest.raises(ValueError):
        WeightType.parse("()")
    with pytest.raises(ValueError):
        WeightType(())
    with pytest.raises(ValueError):
        WeightType((0, 2))
