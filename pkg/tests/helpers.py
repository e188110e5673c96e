"""Shared generators of certified-good (k, C) instances for the test suite."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import sympy as sp

from cwquot.goodness import complex_line, dim3_witness, dim4_witness, direct_sum, is_good
from cwquot.subspace import SubspaceMatrix


def _seed_instance(rng: np.random.Generator) -> tuple[tuple[int, ...], SubspaceMatrix]:
    kind = int(rng.integers(0, 4))
    if kind == 0:
        m = int(rng.integers(1, 8))
        return (m, m), complex_line()
    if kind == 1:
        while True:
            k2, k3 = (int(x) for x in rng.integers(1, 8, size=2))
            found = dim3_witness(k2 + k3, k2, k3)
            if found is not None and found[1].exact:
                return found
    if kind == 2:
        while True:
            k1, k3, d = (int(x) for x in rng.integers(1, 6, size=3))
            k = (k1, k1 + d, k3, k3 + d)
            c = dim4_witness(k)
            if c is not None and c.exact:
                return k, c
    a, b = int(rng.integers(1, 6)), int(rng.integers(1, 6))
    return (a, a, b, b), direct_sum(complex_line(), complex_line())


def _mix_columns(c: SubspaceMatrix, rng: np.random.Generator) -> SubspaceMatrix:
    """Right-multiply by a random unimodular-ish real matrix; the real span is unchanged."""
    n = c.n
    while True:
        r = [[Fraction(int(rng.integers(-2, 3))) for _ in range(n)] for _ in range(n)]
        if sp.Matrix(r).det() != 0:
            break
    rows = c.gauss_rows()
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            re = sum((rows[i][l][0] * r[l][j] for l in range(n)), Fraction(0))
            im = sum((rows[i][l][1] * r[l][j] for l in range(n)), Fraction(0))
            row.append((re, im))
        out.append(row)
    return SubspaceMatrix(out)


def good_instances(rng: np.random.Generator, count: int, max_n: int = 4) -> list[tuple[tuple[int, ...], SubspaceMatrix]]:
    """Exact certified-good instances with n <= max_n, in random coordinates."""
    out = []
    while len(out) < count:
        k, c = _seed_instance(rng)
        if len(k) > max_n:
            continue
        c = _mix_columns(c, rng)
        perm = [int(x) for x in rng.permutation(len(k))]
        k = tuple(k[i] for i in perm)
        c = c.permuted(perm)
        assert is_good(k, c).good
        out.append((k, c))
    return out


def acceptance_specs():
    """The end-to-end specs: real, imaginary, group manifold, mixed (2,2) and mixed (2,3)."""
    from cwquot.classify import SpaceSpec
    from cwquot.intpoly import IntPolynomial
    from cwquot.special import SpecialConstellation

    x_minus_1 = IntPolynomial([-1, 1])
    return {
        "real": SpaceSpec(IntPolynomial([1, -3, 1])),
        "imaginary": SpaceSpec(x_minus_1**3, SpecialConstellation.parse("I|I|I"), (1, 2, 3)),
        "group_manifold": SpaceSpec(x_minus_1**4, SpecialConstellation.parse("II:0,2|II:0,2"), (0, 0, 0, 0)),
        "mixed_2_2": SpaceSpec(IntPolynomial([1, -3, 3, -3, 1]), SpecialConstellation.parse("II:τ,τ"), (0, 0)),
        "mixed_2_3": SpaceSpec(IntPolynomial([1, -1, -1, -1, 1]) * x_minus_1, SpecialConstellation.parse("IV:τ,0"), (0, 0, 0)),
    }
