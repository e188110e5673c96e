"""The ten acceptance criteria, each at its stated tolerance and time limit.

Every test prints one PASS/FAIL line (bypassing output capture) with its runtime.
"""

import cmath
import itertools
import math
import time
from fractions import Fraction
from math import isqrt

import numpy as np
import sympy as sp
from helpers import acceptance_specs, good_instances

from cwquot.classify import (
    REASON_CONDITION_A,
    classify,
    classify_imaginary,
    classify_real,
    cwfalsch_certificate,
    flags,
    gamma_generators,
    space_from_spec,
    verify_certificate,
)
from cwquot.goodness import complex_line, construct_good_dim3, construct_good_dim6, is_good
from cwquot.intpoly import IntPolynomial, companion_matrix, unit_circle_root_count
from cwquot.lattices import integer_invariant_form, stable_lattice, symplectic_stable_lattice, verify_stable_integral
from cwquot.numberfields import f6_example, is_salem, pell_fundamental_unit, salem_structure
from cwquot.trigcert import laurent_from_subspace, trace_condition


def _run(capsys, label: str, body, limit: float | None = None) -> None:
    start = time.perf_counter()
    ok = False
    try:
        body()
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} {label} ({elapsed:.2f} s)")


def test_criterion_01_kk_goodness(capsys):
    def body():
        for k in (1, 3, 7):
            c = complex_line()
            lp = laurent_from_subspace((k, k), c)
            assert lp.exact and lp.terms == {0: (Fraction(-1), Fraction(0))}
            cert = is_good((k, k), c)
            assert cert.good and cert.mode == "exact"

    _run(capsys, "1 (k,k)-goodness of C(1,i), f_C = -1 exactly", body, limit=1.0)


def test_criterion_02_dim3_identity(capsys, nprng):
    def body():
        ts = np.linspace(0, 2 * math.pi, 1000, endpoint=False)
        for _ in range(20):
            k2, k3 = (int(x) for x in nprng.integers(1, 10, size=2))
            seed = int(nprng.integers(0, 2**31))
            c = construct_good_dim3(k2 + k3, k2, k3, seed=seed)
            w = cmath.exp(1j * c.note["r"])
            lp = laurent_from_subspace((k2 + k3, k2, k3), c)
            for t in ts:
                z = cmath.exp(1j * t)
                expected = (z**k3).real ** 2 + (z**k2 * w).imag ** 2
                assert abs(lp.eval_t(t) - expected) < 1e-10

    _run(capsys, "2 three-dimensional identity R(k3)^2 + I(k2,w)^2 at 1000 points", body)


def test_criterion_03_dim6(capsys):
    def body():
        v = construct_good_dim6((-10, -11, -31, -15, -28, -19))
        assert v.status == "yes"
        # f_C < 0 here; the certified quantity is min |f_C| > 0 (sign recorded)
        assert Fraction(v.details["min_abs_lower_bound"]) > 0
        assert v.details["sign"] in (1, -1)

    _run(capsys, "3 six-dimensional instance certified R-admissible", body, limit=10.0)


def test_criterion_04_trace_necessity(capsys, nprng):
    def body():
        instances = good_instances(nprng, 200)
        assert len(instances) == 200
        for k, c in instances:
            assert len(k) <= 4 and c.exact and is_good(k, c).good
            brute = [s for s in itertools.product((1, -1), repeat=len(k)) if sum(a * b for a, b in zip(s, k)) == 0]
            assert brute, f"trace condition fails for good k = {k}"
            assert sorted(brute) == sorted(trace_condition(k))

    _run(capsys, "4 trace condition holds on 200 certified-good instances", body)


def test_criterion_05_unit_circle_count(capsys):
    def body():
        f = f6_example()
        assert f == IntPolynomial([1, 0, -1, -1, -1, 0, 1])
        count, _ = unit_circle_root_count(f)
        assert count == 4
        info = salem_structure(f)
        assert info["circle_count"] == 4 and info["off_circle_real_pair"]
        assert sp.Poly(f.sympy_poly()).count_roots() == 2
        assert is_salem(f)

    _run(capsys, "5 x^6-x^4-x^3-x^2+1: 4 circle roots, 2 real reciprocal, Salem", body, limit=1.0)


def _brute_pell(d: int) -> tuple[int, int]:
    c = 4 if d % 4 == 1 else 1
    l = 1
    while True:
        for v in (l * l * d - c, l * l * d + c):
            if v > 0 and isqrt(v) ** 2 == v:
                return l, isqrt(v)
        l += 1


def test_criterion_06_pell(capsys):
    def body():
        for d in (2, 3, 5, 6, 7, 10):
            sol = pell_fundamental_unit(d)
            assert (sol.l, sol.k) == _brute_pell(d)

    _run(capsys, "6 Pell fundamental units match brute force", body)


def _to_frac(m: sp.Matrix) -> list[list[Fraction]]:
    return [[Fraction(int(x.p), int(x.q)) for x in m.row(i)] for i in range(m.rows)]


def _random_invertible(rng, n: int) -> sp.Matrix:
    while True:
        m = sp.Matrix(n, n, lambda i, j: sp.Rational(int(rng.integers(-3, 4)), int(rng.integers(1, 4))))
        if m.det() != 0:
            return m


def _squarefree(f: IntPolynomial) -> bool:
    g = f.sympy_poly()
    return sp.gcd(g, g.diff()).is_ground


def test_criterion_07_lattices(capsys, nprng):
    def body():
        done = 0
        while done < 50:
            deg = int(nprng.integers(1, 7))
            f = IntPolynomial([int(nprng.choice([1, -1]))] + [int(x) for x in nprng.integers(-4, 5, size=deg - 1)] + [1])
            if not _squarefree(f):
                continue
            m = _random_invertible(nprng, deg)
            a = _to_frac(m * sp.Matrix(companion_matrix(f)) * m.inv())
            lat = stable_lattice(a)
            assert lat.exact and verify_stable_integral(lat, a)
            done += 1
        done = 0
        while done < 20:
            a1, a2 = (int(x) for x in nprng.integers(-6, 7, size=2))
            f = IntPolynomial([1, a1, a2, a1, 1])
            if not _squarefree(f):
                continue
            c = sp.Matrix(companion_matrix(f))
            w = sp.Matrix(integer_invariant_form(companion_matrix(f)))
            m = _random_invertible(nprng, 4)
            mi = m.inv()
            a, om = _to_frac(m * c * mi), _to_frac(mi.T * w * mi)
            lat = symplectic_stable_lattice(a, om)
            assert lat.exact and verify_stable_integral(lat, a, om)
            assert all(Fraction(x).denominator == 1 for row in lat.gram for x in row)
            done += 1

    _run(capsys, "7 50 gigi and 20 nono lattices verify exactly", body)


def test_criterion_08_end_to_end(capsys):
    def body():
        for name, spec in acceptance_specs().items():
            params, cert = space_from_spec(spec)
            check = verify_certificate(params, cert)
            assert check.ok, (name, check.reasons)
            rep = gamma_generators(cert)
            assert rep.center_nontrivial, name
            assert rep.non_abelian, name

    _run(capsys, "8 build + verify for the five end-to-end specs", body)


def test_criterion_09_negative_controls(capsys):
    def body():
        assert classify_real((1, 2)).verdict == "no"
        assert classify_imaginary((1, 2)).verdict == "no"
        for lam, mu in [((1, 1), (3,)), ((1, 2, 3), (1,)), ((2,), (1, 1)), ((1,), (1, 2, 3))]:
            assert classify(lam, mu).verdict == "no"
        params, cert = cwfalsch_certificate((1, 2, 3))
        check = verify_certificate(params, cert)
        assert not check.ok and REASON_CONDITION_A in check.reasons

    _run(capsys, "9 negative controls and V = a_- rejection", body)


def test_criterion_10_moduli_spot_checks(capsys):
    def body():
        r = classify_imaginary((1, 1))
        assert r.verdict == "yes" and flags(r.witness).group_manifold
        r = classify_imaginary((Fraction(1), Fraction(3, 2), Fraction(5, 2)))
        assert r.verdict == "yes" and r.witness.k == (2, 3, 5)
        assert flags(r.witness).transvection

    _run(capsys, "10 (1,1) group manifold and (1,3/2,5/2) transvection", body)

