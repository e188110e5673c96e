import itertools

import numpy as np
import pytest

from cwquot.errors import ConstellationClash, InvalidBlock, RelationViolated
from cwquot.paramfield import Number
from cwquot.special import (
    Block,
    SpecialConstellation,
    block_data,
    block_from_data,
    construct_b0,
    construct_b1,
    construct_b2,
    construct_special_subspace,
    exists_special_subspace,
    fourier_sign_test,
    is_invariant,
    is_minimal,
    is_P_admissible,
    is_transversal,
    lagrange_gram,
    matrix_to_basis,
)

N = Number.parse


def test_block_tables():
    d = block_data(Block("III", (N("1"), N("3"))))
    assert d.mu == (N("1"), N("2"), N("2"), N("3"))
    d = block_data(Block("I"))
    assert d.d == 1 and d.mu == (N("0"),) and d.phi() == [[N("0")]]
    d = block_data(Block("II", (N("1/3"), N("1/5"))))
    assert d.mu == (N("4/15"), N("4/15"))
    assert sorted(d.rho, key=float) == [N("-1/3"), N("1/3")]


def test_block_validation():
    with pytest.raises(InvalidBlock):
        Block("II", (N("0"), N("0")))
    with pytest.raises(InvalidBlock):
        Block("III", (N("1"), N("-1")))
    with pytest.raises(InvalidBlock):
        Block("IV", (N("1"), N("2")))
    with pytest.raises(InvalidBlock):
        Block("V")


def test_subkinds():
    assert Block("II", (N("0"), N("2"))).subkind == "II.a"
    assert Block("II", (N("τ"), N("τ"))).subkind == "II.b"
    assert Block("II", (N("1/3"), N("-1/3"))).subkind == "II.c"


@pytest.mark.parametrize(
    "block",
    [
        Block("II", (N("1/3"), N("1/3"))),
        Block("II", (N("0"), N("2"))),
        Block("II", (N("τ"), N("-τ"))),
        Block("III", (N("1"), N("3"))),
        Block("III", (N("τ"), N("2τ"), N("1/2"))),
        Block("IV", (N("2"), N("0"))),
        Block("IV", (N("1/3"), N("τ"), N("0"))),
    ],
)
def test_block_round_trip(block):
    data = block_data(block)
    assert block_from_data(data.d, data.mu, data.gamma) == block


def test_constellation_constraints():
    with pytest.raises(ConstellationClash):
        SpecialConstellation.parse("IV:1,0|IV:2,0")
    with pytest.raises(ConstellationClash):
        SpecialConstellation.parse("III:1,2|III:2,3")
    P = SpecialConstellation.parse("I|II:0,2|III:1,3")
    assert P.d == 1 + 2 + 4
    assert len(P.mu) == P.d


def test_minimality():
    assert not is_minimal(SpecialConstellation.parse("II:1/3,1/3"))
    assert is_minimal(SpecialConstellation.parse("II:τ,τ"))
    assert is_minimal(SpecialConstellation.parse("III:τ,2τ"))


def test_exists_special_examples():
    assert exists_special_subspace([1, 3], [2]) is not None
    assert exists_special_subspace([1, 2], [2]) is None
    w = exists_special_subspace([], [7])
    assert w is not None and not w.pairs and not w.singles


def test_b_examples():
    for s in (construct_b0(2), construct_b1(1, 3, [2]), construct_b2(2, [1])):
        assert s.verified
        assert is_transversal(s.basis)
        assert is_invariant(s.basis, s.mu, s.phi)
    assert construct_b1(1, 3, [2]).gamma == (N("-1"),)
    assert len(construct_b2(2, [1]).basis) == 3


def test_relation_violation():
    with pytest.raises(RelationViolated):
        construct_special_subspace([1, 2], [2])


def _grid_cases():
    vals = [1, 2, 3, 4]
    for p in range(0, 4):
        for alpha in itertools.combinations(vals, p):
            for q in range(0, 4):
                for beta in itertools.combinations_with_replacement(vals, q):
                    if p + q:
                        yield list(alpha), list(beta)


def test_existence_and_construction_agree():
    for alpha, beta in _grid_cases():
        w = exists_special_subspace(alpha, beta)
        if w is None:
            with pytest.raises(RelationViolated):
                construct_special_subspace(alpha, beta)
        else:
            s = construct_special_subspace(alpha, beta, w)
            assert s.verified and len(s.basis) == len(alpha) + 2 * len(beta)


def _flow_transversal(s, ts):
    n = len(s.mu)
    gen = np.diag([1j * float(m) for m in s.mu]) + np.array([[float(x) for x in row] for row in s.phi])
    basis = np.array([[complex(float(g[0]), float(g[1])) for g in v] for v in s.basis]).T
    w, u = np.linalg.eig(gen)
    u_inv = np.linalg.inv(u)
    for t in ts:
        m = u @ np.diag(np.exp(t * w)) @ u_inv @ basis
        stack = np.vstack([np.hstack([m.real, np.eye(n)]), np.hstack([m.imag, np.zeros((n, n))])])
        if np.linalg.matrix_rank(stack, tol=1e-9) != 2 * n:
            return False
    return True


def test_flow_stays_transversal(nprng):
    ts = nprng.uniform(0, 2 * np.pi, size=20)
    for alpha, beta in _grid_cases():
        w = exists_special_subspace(alpha, beta)
        if w is not None:
            assert _flow_transversal(construct_special_subspace(alpha, beta, w), ts)


def test_fourier_sign_test():
    assert fourier_sign_test(numbers_of([1, 2, 3]), [0, 0, 0]) == (1, 1, -1)
    assert fourier_sign_test(numbers_of([1, 2]), [0, 0]) is None


def numbers_of(xs):
    return tuple(Number(x) for x in xs)


def test_pktyp_reduction():
    P = SpecialConstellation.parse("I|I|II:0,2")
    assert is_P_admissible(P, (1, 1, 5, 5)).status == "yes"
    assert is_P_admissible(P, (1, 2, 5, 5)).status == "no"
    P = SpecialConstellation.parse("I|I|I|II:0,2")
    assert is_P_admissible(P, (1, 2, 3, 0, 0)).status == "yes"


def test_zero_k_is_admissible():
    for text in ("II:τ,τ", "II:1/3,1/3|II:1/2,1/2", "III:1/3,1/5"):
        P = SpecialConstellation.parse(text)
        v = is_P_admissible(P, (0,) * P.d)
        assert v.status == "yes"


def test_no_joint_sign_means_no():
    v = is_P_admissible(SpecialConstellation.parse("I|I"), (1, 2))
    assert v.status == "no" and "kappa" in v.obstruction


@pytest.mark.parametrize(
    "text,k",
    [
        ("II:τ,τ", (0, 0)),
        ("II:1/3,1/3|II:1/2,1/2", (0, 0, 0, 0)),
        ("III:1/3,1/5", (0, 0, 0, 0)),
        ("I|I|I", (1, 2, 3)),
        ("I|I|II:0,2", (1, 1, 5, 5)),
        ("IV:1/3,0", (0, 0, 0)),
    ],
)
def test_yes_passes_fourier_and_lagrange(text, k):
    P = SpecialConstellation.parse(text)
    v = is_P_admissible(P, k)
    assert v.status == "yes"
    assert fourier_sign_test(P.mu, k) is not None
    if all(not (m + x).is_zero() for m, x in zip(P.mu, k)):
        gram = lagrange_gram(matrix_to_basis(v.witness), P.mu, k)
        assert any(not x.is_zero() for row in gram for x in row)
