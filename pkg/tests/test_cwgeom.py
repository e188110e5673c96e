import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cwquot.cwgeom import (
    Ambient,
    CWParams,
    GroupElement,
    algebra_inner,
    elements_close,
    group_inv,
    group_mul,
    identity_element,
    isometric,
    lie_bracket,
    mat_mul,
    mat_vec,
    metric_at,
    normalize,
    omega_via_L,
    theta,
    transpose,
)
from cwquot.errors import DimensionMismatch, IncompatibleAmbient

AMBIENTS = [Ambient((1,), ()), Ambient((), (1, 2)), Ambient((Fraction(1, 2), 3), (Fraction(5, 3),))]


def _frac(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


def _sign_phi(amb: Ambient, rng: random.Random):
    signs = [[Fraction(0)] * amb.n for _ in range(amb.n)]
    for i in range(amb.n):
        signs[i][i] = Fraction(rng.choice((1, -1)))
    return amb.lift_phi(signs)


def _element(amb: Ambient, rng: random.Random, with_t: bool = False) -> GroupElement:
    a = [_frac(rng) for _ in range(2 * amb.n)]
    t = Fraction(rng.randint(-4, 4), rng.randint(2, 5)) if with_t else 0
    return GroupElement.make(amb, _frac(rng), a, t, _sign_phi(amb, rng))


def _rel_close(g1: GroupElement, g2: GroupElement, tol: float = 1e-35) -> bool:
    """Closeness relative to the size of the entries (exp(tL) is evaluated at 50 digits)."""
    scale = max(1.0, *(float(abs(x)) for x in [g1.z, g1.t] + list(g1.a)))
    return elements_close(g1, g2, tol=tol * scale)


def test_normalize_examples():
    assert normalize(CWParams([2, -2], [])) == CWParams([1, 1], [])
    assert normalize(CWParams([3], [6, -9])) == CWParams([Fraction(1, 2)], [1, Fraction(3, 2)])
    assert normalize(CWParams([], [5, 5])) == CWParams([], [1, 1])


def test_params_validation():
    with pytest.raises(ValueError):
        CWParams([], [])
    with pytest.raises(ValueError):
        CWParams([1, 0], [])


def test_isometric_examples():
    assert isometric(CWParams([1, 1], []), CWParams([7, 7], []))
    assert not isometric(CWParams([1, 2], []), CWParams([1, 1], []))
    assert isometric(CWParams([1], [1]), CWParams([2], [2]))
    assert not isometric(CWParams([1], [1]), CWParams([], [1, 1]))


def test_float_isometry_tolerance():
    assert isometric(CWParams([0.1, 0.3], []), CWParams([1, 3.0000000000001], []))
    assert not isometric(CWParams([1, 3], []), CWParams([1, 3.00001], []))


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=7).filter(bool), max_size=3),
    st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=7).filter(bool), max_size=3),
    st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(bool),
    st.randoms(use_true_random=False),
)
def test_normalize_fiber_invariance(lam, mu, r, rnd):
    if not lam and not mu:
        return
    params = CWParams(lam, mu)
    lam2 = [r * x * rnd.choice((1, -1)) for x in lam]
    mu2 = [r * x * rnd.choice((1, -1)) for x in mu]
    rnd.shuffle(lam2)
    rnd.shuffle(mu2)
    other = CWParams(lam2, mu2)
    assert normalize(other) == normalize(params)
    assert normalize(normalize(params)) == normalize(params)
    assert isometric(params, other) and isometric(other, params)


def test_metric_examples():
    params = CWParams([1], [])
    point = [0, 3, 0]
    dz, dx, dzp = [1, 0, 0], [0, 1, 0], [0, 0, 1]
    assert metric_at(params, point, dz, dz) == 0
    assert metric_at(params, point, dz, dzp) == 1
    assert metric_at(params, point, dzp, dzp) == 9
    assert metric_at(params, point, dx, dx) == 1
    assert metric_at(CWParams([], [2]), [0, 3, 0], dzp, dzp) == -36
    with pytest.raises(DimensionMismatch):
        metric_at(params, [0, 0], dz, dz)


def test_group_law_examples():
    amb = Ambient((1,), ())
    e1 = GroupElement.make(amb, 0, [1, 0])
    e2 = GroupElement.make(amb, 0, [0, 1])
    assert amb.omega([1, 0], [0, 1]) == 1
    prod = group_mul(amb, e1, e2)
    assert prod.z == Fraction(1, 2) and prod.a == [1, 1] and prod.t == 0
    one = identity_element(amb)
    assert elements_close(group_mul(amb, one, e1), e1)


def test_conjugation_by_t_flows():
    amb = Ambient((1,), (2,))
    t = Fraction(3, 7)
    a = [Fraction(1), Fraction(2), Fraction(-1), Fraction(5)]
    gt = GroupElement.make(amb, 0, None, t)
    ga = GroupElement.make(amb, 0, a)
    conj = group_mul(amb, group_mul(amb, gt, ga), group_inv(amb, gt))
    with mpmath.workdps(50):
        expected = mat_vec(amb.exp_tL(t), a)
    assert all(abs(x - y) < 1e-40 for x, y in zip(conj.a, expected))
    assert abs(conj.z) < 1e-40 and conj.t == 0


def test_incompatible_ambient():
    a1, a2 = Ambient((1,), ()), Ambient((1,), (1,))
    with pytest.raises(IncompatibleAmbient):
        group_mul(a1, identity_element(a1), identity_element(a2))


def test_theta_examples():
    amb = Ambient((), (1,))
    g = GroupElement.from_complex(amb, 1, [(3, 4)], 2)
    th = theta(amb, g)
    assert th.z == -1 and th.a == [3, -4] and th.t == -2
    rng = random.Random(3)
    for _ in range(100):
        amb = rng.choice(AMBIENTS)
        g = _element(amb, rng, with_t=True)
        assert elements_close(theta(amb, theta(amb, g)), g)


def test_theta_is_automorphism():
    rng = random.Random(4)
    for _ in range(50):
        amb = rng.choice(AMBIENTS)
        g1, g2 = _element(amb, rng), _element(amb, rng)
        lhs = theta(amb, group_mul(amb, g1, g2))
        rhs = group_mul(amb, theta(amb, g1), theta(amb, g2))
        assert elements_close(lhs, rhs)


def test_associativity_exact():
    rng = random.Random(5)
    for _ in range(500):
        amb = rng.choice(AMBIENTS)
        g1, g2, g3 = (_element(amb, rng) for _ in range(3))
        left = group_mul(amb, group_mul(amb, g1, g2), g3)
        right = group_mul(amb, g1, group_mul(amb, g2, g3))
        assert elements_close(left, right)


def test_associativity_with_flow():
    rng = random.Random(6)
    for _ in range(50):
        amb = rng.choice(AMBIENTS)
        g1, g2, g3 = (_element(amb, rng, with_t=True) for _ in range(3))
        left = group_mul(amb, group_mul(amb, g1, g2), g3)
        right = group_mul(amb, g1, group_mul(amb, g2, g3))
        assert _rel_close(left, right)


def test_inverse():
    rng = random.Random(7)
    for _ in range(50):
        amb = rng.choice(AMBIENTS)
        g = _element(amb, rng, with_t=True)
        assert _rel_close(group_mul(amb, g, group_inv(amb, g)), identity_element(amb))


def test_ad_invariance_exact():
    rng = random.Random(8)
    for _ in range(100):
        amb = rng.choice(AMBIENTS)

        def elem():
            return (_frac(rng), [_frac(rng) for _ in range(2 * amb.n)], _frac(rng))

        x, y, z = elem(), elem(), elem()
        assert algebra_inner(amb, lie_bracket(amb, x, y), z) + algebra_inner(amb, y, lie_bracket(amb, x, z)) == 0


def test_ambient_structure_conditions():
    rng = random.Random(9)
    for amb in AMBIENTS:
        th, lm = amb.theta_matrix(), amb.L_matrix()
        assert mat_mul(lm, th) == [[-x for x in row] for row in mat_mul(th, lm)]
        assert amb.in_K(_sign_phi(amb, rng))
        for _ in range(20):
            u = [_frac(rng) for _ in range(2 * amb.n)]
            v = [_frac(rng) for _ in range(2 * amb.n)]
            assert amb.omega(mat_vec(th, u), mat_vec(th, v)) == -amb.omega(u, v)
            assert amb.omega(mat_vec(lm, u), v) + amb.omega(u, mat_vec(lm, v)) == 0
            assert omega_via_L(amb, u, v) == amb.omega(u, v)
        om = amb.omega_matrix()
        assert transpose(om) == [[-x for x in row] for row in om]


def test_params_json_round_trip():
    p = CWParams([Fraction(1, 2), 3], [Fraction(5, 3)])
    assert CWParams.from_json(p.to_json()) == p
