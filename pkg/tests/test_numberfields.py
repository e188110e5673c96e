from fractions import Fraction
from math import isqrt

import mpmath
import pytest
import sympy as sp

from cwquot.errors import NonSymbolicInput, NotSquarefree
from cwquot.intpoly import IntPolynomial
from cwquot.numberfields import (
    LogUnitForm,
    f2_membership,
    f6_example,
    is_salem,
    pell_fundamental_unit,
    salem4_condition,
    salem4_enumerate,
    salem4_family,
    salem_structure,
)


def brute_force_pell(d: int) -> tuple[int, int]:
    """Smallest (l, k) with l^2 d -+ c = k^2, scanning l upward (c = 4 if d = 1 mod 4 else 1)."""
    c = 4 if d % 4 == 1 else 1
    for l in range(1, 10_000):
        for v in (l * l * d - c, l * l * d + c):
            if v > 0 and isqrt(v) ** 2 == v:
                return l, isqrt(v)
    raise AssertionError("no solution found")


@pytest.mark.parametrize("d", [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21])
def test_pell_matches_brute_force(d):
    sol = pell_fundamental_unit(d)
    assert (sol.l, sol.k) == brute_force_pell(d)


def test_pell_examples():
    s2 = pell_fundamental_unit(2)
    assert (s2.l, s2.k, s2.half) == (1, 1, False)
    s5 = pell_fundamental_unit(5)
    assert (s5.l, s5.k, s5.half) == (1, 1, True)
    s3 = pell_fundamental_unit(3)
    assert (s3.l, s3.k) == (1, 2)
    with pytest.raises(NotSquarefree):
        pell_fundamental_unit(8)
    with pytest.raises(NotSquarefree):
        pell_fundamental_unit(1)


@pytest.mark.parametrize("d", [2, 3, 5, 6, 7, 10, 13, 29])
def test_pell_unit_property(d):
    sol = pell_fundamental_unit(d)
    f = sol.minimal_polynomial()
    assert f.is_monic and abs(f.constant_term) == 1
    x = sp.Rational(sol.k, 2 if sol.half else 1) + sp.Rational(sol.l, 2 if sol.half else 1) * sp.sqrt(d)
    assert sp.expand(x**2 - sp.Integer(-f.coeffs[1]) * x + f.coeffs[0]) == 0
    lo, hi = sol.unit_value
    with mpmath.workdps(40):
        v = sol.value()
        assert mpmath.mpf(lo.numerator) / lo.denominator <= v <= mpmath.mpf(hi.numerator) / hi.denominator


def test_is_salem_examples():
    assert is_salem(f6_example())
    assert not is_salem(IntPolynomial([1, -3, 1]))
    assert not is_salem(IntPolynomial([1, -4, 6, -4, 1]))


def test_f6_structure():
    info = salem_structure(f6_example())
    assert info["circle_count"] == 4 and info["off_circle_real_pair"]
    # independent check: sympy counts exactly two real roots
    x = sp.Symbol("x")
    poly = sp.Poly(x**6 - x**4 - x**3 - x**2 + 1, x)
    assert poly.count_roots() == 2


def test_salem4_family_and_condition():
    fams = salem4_family(3, 3)
    assert fams["reciprocal"] == IntPolynomial([1, -3, 3, -3, 1])
    assert is_salem(fams["reciprocal"])
    assert not salem4_condition(1, 0)


def test_salem4_enumerate():
    out = salem4_enumerate(5)
    assert out
    assert all(c.verified and is_salem(c.f) for c in out)
    assert [(c.a, c.b, c.reading) for c in out] == sorted((c.a, c.b, c.reading) for c in out)
    assert len({tuple(c.f.coeffs) for c in out}) == len(out)
    with pytest.raises(ValueError):
        salem4_enumerate(0)


def test_salem_off_circle_pair_reciprocal():
    for cand in salem4_enumerate(4):
        poly = cand.f.sympy_poly()
        real_roots = sp.real_roots(poly)
        assert len(real_roots) == 2
        assert sp.simplify(real_roots[0] * real_roots[1] - 1) == 0
        assert sp.sign(real_roots[0]) == sp.sign(real_roots[1])


def test_f2_membership_examples():
    r = f2_membership("1/pi*log(1+sqrt(2))")
    assert r["in_F2"] and r["d"] == 2
    r = f2_membership("2/pi*log((3+sqrt(5))/2)")
    assert r["in_F2"] and r["d"] == 5 and r["power_of_fundamental_unit"] == 2
    assert not f2_membership("1/pi*log(3+sqrt(2))")["in_F2"]
    with pytest.raises(NonSymbolicInput):
        f2_membership(0.28)


def test_log_unit_parse():
    form = LogUnitForm.parse("1/pi*log(1+sqrt(2))")
    assert form == LogUnitForm(Fraction(1), Fraction(1), Fraction(1), 2)
    with mpmath.workdps(30):
        assert abs(form.value() - mpmath.log(1 + mpmath.sqrt(2)) / mpmath.pi) < mpmath.mpf(10) ** -25
