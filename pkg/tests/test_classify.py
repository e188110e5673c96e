import itertools
import json
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from cwquot.classify import (
    REASON_CONDITION_A,
    QuotientCertificate,
    SpaceSpec,
    bind_spec,
    classify,
    classify_imaginary,
    classify_real,
    compose,
    cwfalsch_certificate,
    default_constellation,
    empty_spec,
    flags,
    gamma_generators,
    space_from_spec,
    spec_params,
    validate_spec,
    verify_certificate,
)
from cwquot.cwgeom import CWParams, isometric
from cwquot.errors import ConstellationClash
from cwquot.intpoly import IntPolynomial, unit_circle_root_count
from cwquot.numberfields import f6_example
from cwquot.special import SpecialConstellation

from helpers import acceptance_specs

SPECS = acceptance_specs()
F = Fraction


@pytest.fixture(scope="module")
def built():
    return {name: space_from_spec(spec) for name, spec in SPECS.items()}


@pytest.mark.parametrize("name", list(SPECS))
def test_acceptance_specs_build_and_verify(name, built):
    assert validate_spec(SPECS[name]) == [] or SPECS[name].unbound_symbols()
    params, cert = built[name]
    check = verify_certificate(params, cert)
    assert check.ok, check.reasons
    again = QuotientCertificate.from_json(json.loads(json.dumps(cert.to_json())))
    assert verify_certificate(params, again).ok
    rep = gamma_generators(cert)
    assert rep.center_nontrivial and rep.non_abelian


def test_gamma_relations(built):
    real = gamma_generators(built["real"][1])
    assert real.heisenberg_rank == 0
    assert real.conjugation_charpoly == IntPolynomial([1, -3, 1])
    group = gamma_generators(built["group_manifold"][1])
    assert group.heisenberg_rank == 2


def test_cwfalsch_fails_condition_a():
    params, cert = cwfalsch_certificate((1, 2, 3))
    check = verify_certificate(params, cert)
    assert not check.ok and REASON_CONDITION_A in check.reasons


def test_tampered_lattice_fails(built):
    params, cert = built["real"]
    doc = cert.to_json()
    # v0 / 3 is no longer mapped into the lattice by gamma0
    doc["lattice"]["vectors"][0] = [str(float(x) / 3) for x in doc["lattice"]["vectors"][0]]
    assert not verify_certificate(params, QuotientCertificate.from_json(doc)).ok
    doc = cert.to_json()
    doc["lattice"]["vectors"][0] = doc["lattice"]["vectors"][1]
    assert not verify_certificate(params, QuotientCertificate.from_json(doc)).ok
    assert not verify_certificate(CWParams([], [1, 2, 3]), built["imaginary"][1]).ok


def test_classify_real_outcomes():
    r = classify_real((1, 1))
    assert r.verdict == "yes" and r.witness.f == IntPolynomial([1, -3, 1])
    r = classify_real((1, 1, 2))
    assert r.verdict == "yes" and r.witness.f == IntPolynomial([1, -1, 0, 1])
    assert classify_real((1, 2)).verdict == "no"
    assert classify_real((1, 1, 1, 3)).verdict == "no"


def test_classify_imaginary_outcomes():
    r = classify_imaginary((1, 2, 3))
    assert r.verdict == "yes" and r.witness.k == (1, 2, 3)
    r = classify_imaginary((1, 1))
    assert r.verdict == "yes" and str(r.witness.P) == "II:0,2"
    assert classify_imaginary((1, 2)).verdict == "no"
    r = classify_imaginary((F(1), F(3, 2), F(5, 2)))
    assert r.verdict == "yes" and r.witness.k == (2, 3, 5)
    assert classify((1, 1), (1, 1)).verdict == "unknown"


def test_witnesses_are_isometric_to_input():
    for lam, mu in [((1, 1), ()), ((1, 1, 2), ()), ((), (1, 2, 3)), ((), (F(1), F(3, 2), F(5, 2)))]:
        res = classify(lam, mu)
        assert isometric(spec_params(res.witness), CWParams(lam, mu))


@pytest.mark.parametrize("lam,mu", [((1, 2), (3,)), ((1,), (1, 1)), ((1,), ()), ((), (5,)), ((2, 2, 2), (1,))])
def test_types_p1_and_1q_are_no(lam, mu):
    assert classify(lam, mu).verdict == "no"


def _trace_holds(values) -> bool:
    return any(sum(s * v for s, v in zip(signs, values)) == 0 for signs in itertools.product((1, -1), repeat=len(values)))


def test_no_yes_without_trace_condition():
    rng = random.Random(31)
    for _ in range(60):
        n = rng.randint(2, 4)
        vals = tuple(F(rng.randint(1, 6), rng.randint(1, 2)) for _ in range(n))
        if _trace_holds(vals):
            continue
        assert classify_real(vals).verdict == "no"
        assert classify_imaginary(vals).verdict == "no"


def test_compose_coherence():
    s1, s2 = SPECS["real"], SPECS["imaginary"]
    mixed = compose(s1, s2)
    assert (mixed.p, mixed.q) == (2, 3)
    p1, p2, pm = spec_params(s1), spec_params(s2), spec_params(mixed)
    assert isometric(pm, CWParams(list(p1.lam) + list(p2.lam), list(p1.mu) + list(p2.mu)))
    same = compose(s1, empty_spec())
    assert same.f == s1.f and same.k == s1.k and same.P == s1.P
    with pytest.raises(ConstellationClash):
        compose(SPECS["mixed_2_3"], SPECS["mixed_2_3"])


def test_flags_examples():
    g = flags(SPECS["group_manifold"])
    assert g.group_manifold and not g.straight_only and g.fundamental_rank_r == 2
    assert flags(SPECS["real"]).transvection
    m23 = flags(SPECS["mixed_2_3"])
    assert not m23.transvection and "solvmanifold" in m23.reasons
    i = flags(SPECS["imaginary"])
    assert i.transvection and not i.solvmanifold


def test_default_constellation():
    spec = default_constellation(IntPolynomial([1, 1, 1]) * IntPolynomial([1, -3, 1]))
    assert str(spec.P) == "II:1/3,0" and spec.k == (0, 0)
    spec = default_constellation(f6_example())
    assert spec.q == 4 and validate_spec(spec) == []
    spec = default_constellation(IntPolynomial([1, -1, -1, -1, 1]) * IntPolynomial([-1, 1]))
    assert spec.P.blocks[0].kind == "IV"


def _direct_params(spec: SpaceSpec) -> CWParams:
    """lambda = log|nu| over the p roots farthest from the circle (numpy), mu = 2 pi (mu(P) + k)."""
    spec = bind_spec(spec)
    logs = sorted((float(np.log(abs(r))) for r in np.roots(list(reversed(spec.f.coeffs)))), key=abs, reverse=True)
    lam = logs[: spec.p]
    mu = [2 * np.pi * (float(m) + k) for m, k in zip(spec.P.mu, spec.k)]
    return CWParams(lam, mu)


@pytest.mark.parametrize("name", list(SPECS))
def test_round_trip_params(name, built):
    params = built[name][0]
    direct = _direct_params(SPECS[name])
    assert len(direct.lam) == params.p and len(direct.mu) == params.q
    for a, b in zip(sorted(map(float, params.lam)), sorted(direct.lam)):
        assert abs(a - b) < 1e-9
    for a, b in zip(sorted(map(float, params.mu)), sorted(direct.mu)):
        assert abs(a - b) < 1e-9


def _otto_without_circle_roots(rng: random.Random, degree: int) -> IntPolynomial:
    while True:
        coeffs = [rng.choice((1, -1))] + [rng.randint(-6, 6) for _ in range(degree - 1)] + [1]
        f = IntPolynomial(coeffs)
        g = f.sympy_poly()
        if sp.gcd(g, g.diff()).is_ground and unit_circle_root_count(f)[0] == 0:
            return f


def test_transvection_matches_all_real_roots():
    rng = random.Random(32)
    seen = {True: 0, False: 0}
    for i in range(20):
        f = IntPolynomial([1, -3, 1]) * IntPolynomial([-1, -4, 1]) if i == 0 else _otto_without_circle_roots(rng, rng.randint(2, 4))
        all_real = f.sympy_poly().count_roots() == f.degree
        seen[all_real] += 1
        assert flags(SpaceSpec(f)).transvection == all_real
    assert seen[True] and seen[False]


def test_mu_scaling_reported():
    res = classify_imaginary((F(1), F(3, 2), F(5, 2)))
    assert flags(res.witness).transvection
