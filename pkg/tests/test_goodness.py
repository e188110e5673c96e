import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from helpers import good_instances

from cwquot.errors import BadRelation, OddLength, ShapeMismatch
from cwquot.goodness import (
    balanced_partitions,
    complex_line,
    construct_good_dim3,
    construct_good_dim4,
    construct_good_dim6,
    decide_C_admissible,
    decide_R_admissible,
    dim3_witness,
    dim6_closed_form,
    dim6_family,
    extend_by_induction,
    is_good,
    normalize_last_row,
)
from cwquot.subspace import SubspaceMatrix, is_complex_subspace
from cwquot.trigcert import certify_no_zero_on_circle, laurent_from_subspace, trace_condition

DIM6_K = (-10, -11, -31, -15, -28, -19)


def test_complex_line_good_for_equal_pairs():
    for m in (1, 5, 12):
        assert is_good((m, m), complex_line()).good


def test_unequal_pair_never_good():
    for c in (complex_line(), SubspaceMatrix([[1, 0], [0, 1]]), SubspaceMatrix([[1, "i"], [2, "3*i"]])):
        assert not is_good((1, 2), c).good


def test_one_dimensional_not_good():
    assert not is_good((1,), SubspaceMatrix([[1]])).good


def test_dim3_generic_omega():
    c = construct_good_dim3(3, 2, 1)
    assert c.note["omega"] == "generic" and "r" in c.note
    cert = is_good((3, 2, 1), c)
    assert cert.good and cert.mode == "certified_numeric"


def test_dim3_identity_on_circle(nprng):
    c = construct_good_dim3(5, 3, 2)
    w = cmath.exp(1j * c.note["r"])
    lp = laurent_from_subspace((5, 3, 2), c)
    for t in nprng.uniform(0, 2 * math.pi, size=200):
        z = cmath.exp(1j * t)
        r3 = (z**2).real
        i2 = (z**3 * w).imag
        assert abs(lp.eval_t(t) - (r3 * r3 + i2 * i2)) < 1e-10


def test_dim3_omega_one_two_adic():
    found = dim3_witness(5, 3, 2)
    assert found is not None
    k, c = found
    assert sorted(k) == [2, 3, 5] and c.exact
    assert is_good(k, c).good


def test_dim3_bad_relation():
    with pytest.raises(BadRelation):
        construct_good_dim3(4, 2, 1)


def test_dim4_generic_and_trivial():
    c = construct_good_dim4((1, 3, 2, 4))
    assert is_good((1, 3, 2, 4), c).good
    assert is_complex_subspace(c)
    assert is_good((1, 1, 1, 1), construct_good_dim4((1, 1, 1, 1), omega=1)).good
    with pytest.raises(BadRelation):
        construct_good_dim4((1, 2, 3, 5))


def test_dim6_reference_instance():
    v = construct_good_dim6(DIM6_K)
    assert v.status == "yes"
    assert Fraction(v.details["min_abs_lower_bound"]) > 0
    assert v.details["sign"] == -1  # f_C is negative here; only non-vanishing matters


def test_dim6_closed_form_matches_determinant(nprng):
    v = construct_good_dim6(DIM6_K)
    lp = laurent_from_subspace(DIM6_K, v.witness)
    for t in nprng.uniform(0, 2 * math.pi, size=100):
        assert abs(lp.eval_t(t) - dim6_closed_form(DIM6_K, cmath.exp(1j * t))) < 1e-9


def test_dim6_equal_alpha_beta_odd_gamma_delta():
    for gamma, delta in ((1, 3), (3, 5), (1, 7)):
        k = dim6_family(2, 2, gamma, delta, 0)
        assert construct_good_dim6(k).status == "yes"


def test_dim6_all_ones_decided():
    assert construct_good_dim6((1, 1, 1, 1, 1, 1)).status in ("yes", "unknown")


def test_dim6_bad_relation():
    with pytest.raises(BadRelation):
        construct_good_dim6((1, 2, 3, 4, 5, 6))


def test_extend_by_induction_example():
    c = SubspaceMatrix([["-i", 1], [1, "i"]])
    kt, ct = extend_by_induction((3, 3), c, 1, -1)
    assert kt == (3, 1, 1, -1)
    assert is_good(kt, ct).good
    assert is_complex_subspace(ct)


def test_extend_even_multiplicity():
    kt, ct = extend_by_induction((4, 4), normalize_last_row(complex_line(), 1), 4, 4)
    assert kt == (4, 4, 4, 4) and is_good(kt, ct).good


def test_extend_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        extend_by_induction((2, 2), SubspaceMatrix([[1, 0], [0, 1]]), 1, 0)


def test_extend_preserves_determinant(nprng):
    checked = 0
    for k, c in good_instances(nprng, 80, max_n=3):
        try:
            c1 = normalize_last_row(c, c.n - 1)
        except Exception:
            continue
        k_new = int(nprng.integers(-5, 6))
        k_hat = 2 * k_new - k[-1]
        kt, ct = extend_by_induction(k, c1, k_new, k_hat)
        assert laurent_from_subspace(kt, ct).terms == laurent_from_subspace(k, c1).terms
        assert is_good(kt, ct).good
        checked += 1
        if checked == 50:
            break
    assert checked == 50


def test_decide_R_examples():
    v = decide_R_admissible((1, 2, 3))
    assert v.status == "yes" and is_good(v.k, v.witness).good
    v = decide_R_admissible((1, 2))
    assert v.status == "no" and "trace" in v.obstruction
    assert decide_R_admissible((7, 7)).status == "yes"


def test_decide_C_examples():
    v = decide_C_admissible((1, 2, 3, 4))
    assert v.status == "yes" and is_complex_subspace(v.witness)
    assert balanced_partitions((1, 2, 3, 4)) == [(0, 3)]
    assert decide_C_admissible((1, 1, 1, 2)).status == "no"
    with pytest.raises(OddLength):
        decide_C_admissible((1, 2, 3))


@pytest.mark.parametrize(
    "k",
    [(1, 1), (2, 3, 5), (1, 1, 1, 3), (1, 2, 3, 4), (3, 1, 1, -1), (1, 2, 4), (2, 2, 3, 3, 5, 5), (1, 3, 5, 7, 2)],
)
def test_yes_verdicts_recertify(k):
    v = decide_R_admissible(k)
    if v.status == "yes":
        assert is_good(k, v.witness).good
        assert trace_condition(k)
    elif v.status == "no":
        assert not trace_condition(k)


def test_R_admissible_extra_witness():
    v = decide_R_admissible((2, 2), extra_witness=complex_line())
    assert v.status == "yes"


def test_goodness_symmetries(nprng):
    for k, c in good_instances(nprng, 50):
        n = len(k)
        perm = [int(x) for x in nprng.permutation(n)]
        assert is_good(tuple(k[i] for i in perm), c.permuted(perm)).good
        i = int(nprng.integers(0, n))
        flipped = tuple(-x if j == i else x for j, x in enumerate(k))
        assert is_good(flipped, c.conj_row(i)).good
        m = int(nprng.choice([-3, -2, 2, 3]))
        assert is_good(tuple(m * x for x in k), c).good


def test_openness_small_perturbation(nprng):
    for k, c in good_instances(nprng, 10, max_n=3):
        rows = np.array(c.complex_rows()) + 1e-6 * (
            nprng.normal(size=(c.n, c.n)) + 1j * nprng.normal(size=(c.n, c.n))
        )
        pert = SubspaceMatrix(rows.tolist())
        cert = certify_no_zero_on_circle(laurent_from_subspace(k, pert), mode="certified_numeric")
        assert cert.good
