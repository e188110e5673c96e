import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from cwquot.errors import ZeroConstantTerm
from cwquot.intpoly import (
    IntPolynomial,
    charpoly,
    circle_factor_data,
    companion_matrix,
    cyclotomic,
    factor_over_rationals,
    has_root_of_unity_except_one,
    isolate_roots,
    multiply_all,
    unit_circle_root_count,
    validate_otto,
)

X2_3X_1 = IntPolynomial([1, -3, 1])
F6 = IntPolynomial([1, 0, -1, -1, -1, 0, 1])


def test_parse_and_print():
    assert IntPolynomial.parse("x^2-3x+1") == X2_3X_1
    assert IntPolynomial.parse("1,-3,1") == X2_3X_1
    assert IntPolynomial.parse("[1,-3,1]") == X2_3X_1
    assert str(X2_3X_1) == "x^2 - 3*x + 1"
    assert IntPolynomial([3, 0, 0]).degree == 0


@pytest.mark.parametrize(
    "f, ok",
    [(X2_3X_1, True), (IntPolynomial([2, -3, 1]), False), (IntPolynomial([-1, 1, 0, 1]), True), (IntPolynomial([1, 0, 2]), False)],
)
def test_validate_otto(f, ok):
    assert validate_otto(f) is ok


def test_unit_circle_examples():
    assert unit_circle_root_count(IntPolynomial([1, -2, 1])) == (2, IntPolynomial([1, -2, 1]))
    assert unit_circle_root_count(F6)[0] == 4
    count, factor = unit_circle_root_count(X2_3X_1)
    assert count == 0 and factor == IntPolynomial([1])


def test_unit_circle_zero_constant():
    with pytest.raises(ZeroConstantTerm):
        unit_circle_root_count(IntPolynomial([0, 1, 1]))


def test_roots_of_unity():
    assert has_root_of_unity_except_one(IntPolynomial([1, 1, 1]))
    assert not has_root_of_unity_except_one(IntPolynomial([-1, 1]))
    assert not has_root_of_unity_except_one(X2_3X_1)
    assert has_root_of_unity_except_one(IntPolynomial([-1, 1]) * cyclotomic(12))


def test_companion_examples():
    assert companion_matrix(X2_3X_1) == [[0, -1], [1, 3]]
    assert companion_matrix(IntPolynomial([-1, 1])) == [[1]]
    f = X2_3X_1 * IntPolynomial([-1, 1])
    m = companion_matrix(f)
    assert charpoly(m) == f
    # block diagonal: the x - 1 block does not mix with the quadratic block
    assert m[2][:2] == [0, 0] or m[0][2] == 0


def test_factor_examples():
    facs = factor_over_rationals(IntPolynomial([-1, 0, 0, 0, 1]))
    assert sorted((f.coeffs, e) for f, e in facs) == sorted([((-1, 1), 1), ((1, 1), 1), ((1, 0, 1), 1)])
    assert factor_over_rationals(F6) == [(F6, 1)]
    assert factor_over_rationals(X2_3X_1**2) == [(X2_3X_1, 2)]


def test_isolate_examples():
    boxes = isolate_roots(X2_3X_1)
    classes = sorted(b.modulus_class for b in boxes)
    assert classes == ["inside", "outside"]
    centers = sorted(b.center.real for b in boxes)
    assert abs(centers[0] - 0.3819660112501051) < 1e-9 and abs(centers[1] - 2.618033988749895) < 1e-9
    (one,) = isolate_roots(IntPolynomial([-1, 3, -3, 1]))
    assert one.multiplicity == 3 and one.modulus_class == "on" and one.center == 1
    boxes = isolate_roots(IntPolynomial([1, 0, 1]))
    imags = sorted(b.center.imag for b in boxes)
    assert all(abs(a - e) <= float(b.width) for a, e, b in zip(imags, [-1, 1], boxes))
    assert all(b.modulus_class == "on" for b in boxes)
    assert all(b.width <= Fraction(1, 2**40) for b in isolate_roots(X2_3X_1))


def _random_poly(rng: random.Random, monic_unit: bool = False) -> IntPolynomial:
    deg = rng.randint(1, 6)
    cs = [rng.randint(-4, 4) for _ in range(deg)] + [1]
    if monic_unit or cs[0] == 0:
        cs[0] = rng.choice([-1, 1])
    return IntPolynomial(cs)


def test_circle_count_matches_boxes():
    rng = random.Random(7)
    for _ in range(100):
        f = _random_poly(rng)
        boxes = isolate_roots(f)
        on = sum(b.multiplicity for b in boxes if b.modulus_class == "on")
        inside = sum(b.multiplicity for b in boxes if b.modulus_class == "inside")
        outside = sum(b.multiplicity for b in boxes if b.modulus_class == "outside")
        assert unit_circle_root_count(f)[0] == on
        assert on + inside + outside == f.degree


def test_log_moduli_sum_to_zero():
    rng = random.Random(11)
    for _ in range(30):
        f = _random_poly(rng, monic_unit=True)
        boxes = isolate_roots(f, Fraction(1, 2**50))
        total = sum(b.multiplicity * sp.log(abs(complex(b.center))) for b in boxes)
        assert abs(float(total)) < 1e-9


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6))
def test_companion_charpoly_roundtrip(mid):
    f = IntPolynomial([1] + mid[1:] + [1]) if len(mid) > 1 else IntPolynomial([1, mid[0] or 1, 1])
    assert charpoly(companion_matrix(f)) == f


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=7).filter(lambda c: c[-1] != 0 and c[0] != 0))
def test_factor_remultiplies(coeffs):
    f = IntPolynomial(coeffs)
    facs = factor_over_rationals(f)
    lead = f.coeffs[-1]
    prod = multiply_all(facs)
    assert IntPolynomial([lead * c for c in prod.coeffs]) == f or prod == f
    for g, _ in facs:
        assert sp.Poly(list(reversed(g.coeffs)), sp.Symbol("x")).is_irreducible


def test_circle_factor_data_counts():
    data = circle_factor_data(F6)
    assert len(data) == 1 and data[0].circle_roots == 4 and data[0].real_off_circle == 2
    data = {d.factor: d for d in circle_factor_data(X2_3X_1 * IntPolynomial([1, 1, 1]))}
    assert data[X2_3X_1].circle_roots == 0 and data[X2_3X_1].real_off_circle == 2
    assert data[IntPolynomial([1, 1, 1])].circle_roots == 2
