"""Blocks, special constellations and (L, phi)-special subspaces.

Coordinates: a block of dimension d acts on C^d. L(P) is multiplication by
i*mu(P) coordinatewise and phi(P) is a real skew matrix made of 2x2 pieces
gamma * [[0, -1], [1, 0]] on consecutive coordinate pairs. A subspace V is
special when it is a complement of R^d invariant under L + phi.

Subspaces are stored by a real basis: d complex vectors with Gaussian
rational entries whose real span is V.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

import sympy as sp

from .errors import (
    ConstellationClash,
    DimensionMismatch,
    InvalidBlock,
    NonSymbolicInput,
    RelationViolated,
    SearchBudgetExceeded,
)
from .goodness import (
    AdmissibilityVerdict,
    complex_line,
    decide_C_admissible,
    decide_R_admissible,
    direct_sum,
    is_good,
)
from .paramfield import Number, numbers
from .subspace import Gauss, SubspaceMatrix

GVec = list[Gauss]
F0, F1 = Fraction(0), Fraction(1)


def _g(re: int | Fraction, im: int | Fraction = 0) -> Gauss:
    return (Fraction(re), Fraction(im))


def _zero_vec(n: int) -> GVec:
    return [(F0, F0) for _ in range(n)]


def _times_i(v: GVec) -> GVec:
    return [(-y, x) for x, y in v]


def _conj_entries(v: GVec, idx: Iterable[int]) -> GVec:
    out = list(v)
    for i in idx:
        out[i] = (out[i][0], -out[i][1])
    return out


# ------------------------------------------------------------------ blocks


@dataclass(frozen=True)
class Block:
    kind: str  # "I", "II", "III", "IV"
    params: tuple[Number, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "params", numbers(self.params))
        k, ps = self.kind, self.params
        if k == "I":
            if ps and not all(p.is_zero() for p in ps):
                raise InvalidBlock("Type I has no parameters")
            object.__setattr__(self, "params", ())
        elif k == "II":
            if len(ps) != 2 or (ps[0].is_zero() and ps[1].is_zero()):
                raise InvalidBlock("Type II needs (rho, rho') not both zero")
        elif k in ("III", "IV"):
            core = ps[:-1] if k == "IV" else ps
            if k == "IV" and (not ps or not ps[-1].is_zero()):
                raise InvalidBlock("Type IV parameters end with 0")
            if len(ps) < 2:
                raise InvalidBlock(f"Type {k} needs r >= 2")
            if any(p.is_zero() for p in core):
                raise InvalidBlock(f"Type {k} parameters must be nonzero")
            for a, b in itertools.combinations(core, 2):
                if a == b or a == -b:
                    raise InvalidBlock(f"Type {k} parameters need distinct absolute values")
        else:
            raise InvalidBlock(f"unknown block type {k!r}")

    @property
    def subkind(self) -> str:
        if self.kind != "II":
            return self.kind
        rho, rho2 = self.params
        if rho.is_zero():
            return "II.a"
        if rho == rho2:
            return "II.b"
        if rho == -rho2:
            return "II.c"
        return "II"

    @property
    def endpoints(self) -> tuple[Number, ...]:
        """Start and end parameters of Type III/IV blocks (empty otherwise)."""
        if self.kind in ("III", "IV"):
            return (self.params[0], self.params[-1])
        return ()

    def to_json(self) -> dict:
        out: dict[str, Any] = {"type": self.kind}
        if self.kind != "I":
            out["rho"] = [p.to_json() for p in self.params]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Block":
        kind = obj["type"]
        if kind in ("II.a", "II.b", "II.c"):
            kind = "II"
        return cls(kind, tuple(Number.coerce(p) for p in obj.get("rho", [])))


@dataclass
class BlockData:
    d: int
    mu: tuple[Number, ...]
    rho: tuple[Number, ...]
    gamma: tuple[Number, ...]
    pairs: tuple[tuple[int, int], ...]  # coordinate pairs carrying gamma

    def phi(self) -> list[list[Number]]:
        m = [[Number(0) for _ in range(self.d)] for _ in range(self.d)]
        for (a, b), g in zip(self.pairs, self.gamma):
            m[a][b] = -g
            m[b][a] = g
        return m


def block_data(block: Block) -> BlockData:
    """d, mu, rho (multiset), gamma and the gamma pairs of a block."""
    k, ps = block.kind, block.params
    if k == "I":
        return BlockData(1, (Number(0),), (Number(0),), (), ())
    if k == "II":
        rho, rho2 = ps
        m = (rho + rho2) / 2
        return BlockData(2, (m, m), (rho, -rho), ((rho - rho2) / 2,), ((0, 1),))
    core = ps if k == "III" else ps[:-1]
    r = len(ps)
    rhos = list(ps)  # rho_r = 0 for Type IV
    mu: list[Number] = [rhos[0]]
    gamma = []
    pairs = []
    for j in range(1, r):
        beta = (rhos[j - 1] + rhos[j]) / 2
        mu += [beta, beta]
        gamma.append((rhos[j - 1] - rhos[j]) / 2)
        pairs.append((2 * j - 1, 2 * j))
    if k == "III":
        mu.append(rhos[-1])
    rho_ms: list[Number] = []
    for p in core:
        rho_ms += [p, -p]
    if k == "IV":
        rho_ms.append(Number(0))
    return BlockData(len(mu), tuple(mu), tuple(rho_ms), tuple(gamma), tuple(pairs))


def block_from_data(d: int, mu: Sequence[Any], gamma: Sequence[Any]) -> Block:
    """Inverse of block_data for Types II-IV: rho_{j-1}, rho_j = beta_j +- gamma_j.

    Type I is ambiguous with a zero entry and is returned only for d = 1.
    """
    mu_n, gamma_n = numbers(mu), numbers(gamma)
    if len(mu_n) != d:
        raise InvalidBlock("mu has the wrong length")
    if d == 1:
        if not mu_n[0].is_zero():
            raise InvalidBlock("a one-dimensional block is Type I with mu = 0")
        return Block("I")
    if d == 2:
        (g,) = gamma_n
        return Block("II", (mu_n[0] + g, mu_n[0] - g))
    r = len(gamma_n) + 1
    if d not in (2 * r, 2 * r - 1):
        raise InvalidBlock("d does not match the number of gammas")
    rhos = [mu_n[0]]
    for j in range(1, r):
        beta, g = mu_n[2 * j - 1], gamma_n[j - 1]
        if beta + g != rhos[-1]:
            raise InvalidBlock("mu and gamma are not consistent")
        rhos.append(beta - g)
    if d == 2 * r:
        if mu_n[-1] != rhos[-1]:
            raise InvalidBlock("last mu entry must equal rho_r")
        return Block("III", tuple(rhos))
    return Block("IV", tuple(rhos))


def block_special_basis(block: Block) -> list[GVec]:
    """Real basis of the special subspace of a single block."""
    k = block.kind
    if k == "I":
        return [[_g(0, 1)]]
    if k == "II":
        u = [_g(1), _g(0, -1)]
        return [u, _times_i(u)]
    r = len(block.params)
    d = block_data(block).d

    def e(i: int) -> GVec:
        v = _zero_vec(d)
        v[i] = _g(1)
        return v

    def add(*vs: GVec) -> GVec:
        out = _zero_vec(d)
        for v in vs:
            out = [(a[0] + b[0], a[1] + b[1]) for a, b in zip(out, v)]
        return out

    def u_minus(j: int) -> GVec:
        v = _zero_vec(d)
        v[2 * j - 1] = _g(1)
        v[2 * j] = _g(0, -1)
        return v

    def u_plus(j: int) -> GVec:
        v = _zero_vec(d)
        v[2 * j - 1] = _g(1)
        v[2 * j] = _g(0, 1)
        return v

    complex_vecs = [add(e(0), _times_i(u_minus(1)))]
    last_pair = r - 1
    for j in range(1, r - 1):
        complex_vecs.append(add(u_plus(j), u_minus(j + 1)))
    real_extra: list[GVec] = []
    if k == "III":
        complex_vecs.append(add(e(d - 1), u_plus(last_pair)))
    else:
        real_extra.append(u_plus(last_pair))
    basis: list[GVec] = []
    for v in complex_vecs:
        basis += [v, _times_i(v)]
    return basis + real_extra


# ----------------------------------------------------------- constellations


def _same_abs(a: Number, b: Number) -> bool:
    return a == b or a == -b


@dataclass(frozen=True)
class SpecialConstellation:
    blocks: tuple[Block, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        self.validate()

    def validate(self) -> None:
        ends = []
        n_iv = 0
        for idx, b in enumerate(self.blocks):
            if b.kind == "IV":
                n_iv += 1
            own: list[Number] = []
            for e in b.endpoints:
                if not any(_same_abs(e, x) for x in own):
                    own.append(e)
            ends += [(idx, e) for e in own]
        if n_iv > 1:
            raise ConstellationClash("at most one block of Type IV")
        for (i, a), (j, b) in itertools.combinations(ends, 2):
            if i != j and _same_abs(a, b):
                raise ConstellationClash(f"blocks {i} and {j} both start or end with +-{a}")

    @property
    def d(self) -> int:
        return sum(block_data(b).d for b in self.blocks)

    def offsets(self) -> list[int]:
        out, pos = [], 0
        for b in self.blocks:
            out.append(pos)
            pos += block_data(b).d
        return out

    @property
    def mu(self) -> tuple[Number, ...]:
        return tuple(m for b in self.blocks for m in block_data(b).mu)

    @property
    def rho(self) -> tuple[Number, ...]:
        return tuple(r for b in self.blocks for r in block_data(b).rho)

    def gamma_pairs(self) -> list[tuple[int, int, Number]]:
        out = []
        for off, b in zip(self.offsets(), self.blocks):
            data = block_data(b)
            for (a, c), g in zip(data.pairs, data.gamma):
                out.append((off + a, off + c, g))
        return out

    def phi(self) -> list[list[Number]]:
        n = self.d
        m = [[Number(0) for _ in range(n)] for _ in range(n)]
        for a, c, g in self.gamma_pairs():
            m[a][c] = -g
            m[c][a] = g
        return m

    def rho_tilde(self) -> tuple[Number, ...]:
        out: list[Number] = []
        for b in self.blocks:
            if b.kind == "II" or b.kind == "III":
                out += list(b.params)
            elif b.kind == "IV":
                out += list(b.params[:-1])
        return tuple(out)

    def special_basis(self) -> list[GVec]:
        n = self.d
        basis: list[GVec] = []
        for off, b in zip(self.offsets(), self.blocks):
            for v in block_special_basis(b):
                w = _zero_vec(n)
                w[off : off + len(v)] = v
                basis.append(w)
        return basis

    def symbols(self) -> set:
        out = set()
        for b in self.blocks:
            for p in b.params:
                out |= p.symbols()
        return out

    def bind(self, values: dict[str, str]) -> "SpecialConstellation":
        return SpecialConstellation(
            tuple(Block(b.kind, tuple(p.bind(values) for p in b.params)) for b in self.blocks)
        )

    def compose(self, other: "SpecialConstellation") -> "SpecialConstellation":
        return SpecialConstellation(self.blocks + other.blocks)

    def to_json(self) -> list[dict]:
        return [b.to_json() for b in self.blocks]

    @classmethod
    def from_json(cls, obj: Sequence[dict]) -> "SpecialConstellation":
        return cls(tuple(Block.from_json(b) for b in obj))

    @classmethod
    def parse(cls, text: str) -> "SpecialConstellation":
        """Compact syntax: blocks separated by "|", e.g. "I|I|II:0,2|III:τ,2τ|IV:τ,0"."""
        text = text.strip()
        if not text or text in ("-", "()"):
            return cls(())
        blocks = []
        for part in text.split("|"):
            part = part.strip()
            if part in ("0", "I"):
                blocks.append(Block("I"))
                continue
            kind, _, rest = part.partition(":")
            kind = kind.strip()
            if kind in ("II.a", "II.b", "II.c"):
                kind = "II"
            blocks.append(Block(kind, tuple(Number.parse(x) for x in rest.split(","))))
        return cls(tuple(blocks))

    def __str__(self) -> str:
        parts = []
        for b in self.blocks:
            parts.append("I" if b.kind == "I" else f"{b.kind}:" + ",".join(map(str, b.params)))
        return "|".join(parts) if parts else "-"


def is_minimal(P: SpecialConstellation) -> bool:
    """No nonzero integer combination of the block parameters is an integer.

    Writing each parameter as c_0 + sum_j c_j tau_j, the integer vectors
    killing every tau-coordinate form a lattice K; the condition holds iff
    the rational coordinate vanishes on K, i.e. iff the row c_0 lies in the
    Q-row-span of the tau rows.
    """
    rt = [p for p in P.rho_tilde() if not p.is_zero()]
    if not rt:
        return True
    for p in rt:
        for s in p.symbols():
            if s.name is None:
                raise NonSymbolicInput("parameters must be exact")
    syms = sorted({s.name for p in rt for s in p.symbols()})
    c0 = sp.Matrix([[sp.Rational(p.rational.numerator, p.rational.denominator) for p in rt]])
    if not syms:
        return False
    rows = [[sp.Rational(p.coefficient(n).numerator, p.coefficient(n).denominator) for p in rt] for n in syms]
    m = sp.Matrix(rows)
    return m.rank() == sp.Matrix.vstack(m, c0).rank()


# -------------------------------------------------- subspace verification


def _real_stack(basis: Sequence[GVec]) -> sp.Matrix:
    n = len(basis[0]) if basis else 0
    re = [[sp.Rational(v[i][0].numerator, v[i][0].denominator) for v in basis] for i in range(n)]
    im = [[sp.Rational(v[i][1].numerator, v[i][1].denominator) for v in basis] for i in range(n)]
    return sp.Matrix(re + im)


def is_transversal(basis: Sequence[GVec]) -> bool:
    """V + R^n = C^n with dim V = n, i.e. the imaginary parts have full rank."""
    n = len(basis)
    if n == 0:
        return True
    if any(len(v) != n for v in basis):
        return False
    im = sp.Matrix([[sp.Rational(v[i][1].numerator, v[i][1].denominator) for v in basis] for i in range(n)])
    return im.rank() == n


def _apply_operator(mu: Sequence[Number], phi: Sequence[Sequence[Number]], v: GVec) -> list[tuple[Number, Number]]:
    """(L + phi) v with L = i*diag(mu) and phi real."""
    n = len(v)
    out = []
    for k in range(n):
        re = -mu[k] * v[k][1]
        im = mu[k] * v[k][0]
        for l in range(n):
            c = phi[k][l]
            if not c.is_zero():
                re = re + c * v[l][0]
                im = im + c * v[l][1]
        out.append((Number(re), Number(im)))
    return out


def _number_components(vec: Sequence[Number]) -> list[list[Fraction]]:
    names = sorted({(s.name, s.value or "") for x in vec for s in x.symbols()})
    comps = [[x.rational for x in vec]]
    for name, value in names:
        comps.append([sum((c for s, c in x.coords.items() if (s.name, s.value or "") == (name, value)), F0) for x in vec])
    return comps


def _in_real_span(stack: sp.Matrix, vec: Sequence[Number]) -> bool:
    for comp in _number_components(vec):
        w = sp.Matrix([sp.Rational(c.numerator, c.denominator) for c in comp])
        if w.is_zero_matrix:
            continue
        if sp.Matrix.hstack(stack, w).rank() != stack.rank():
            return False
    return True


def is_invariant(basis: Sequence[GVec], mu: Sequence[Number], phi: Sequence[Sequence[Number]]) -> bool:
    """Exact check that (L + phi) maps the real span of basis into itself."""
    if not basis:
        return True
    stack = _real_stack(basis)
    for v in basis:
        tv = _apply_operator(mu, phi, v)
        flat = [x[0] for x in tv] + [x[1] for x in tv]
        if not _in_real_span(stack, flat):
            return False
    return True


def constellation_subspace_ok(P: SpecialConstellation, basis: Sequence[GVec] | None = None) -> bool:
    basis = P.special_basis() if basis is None else basis
    return len(basis) == P.d and is_transversal(basis) and is_invariant(basis, P.mu, P.phi())


def basis_to_matrix(basis: Sequence[GVec]) -> SubspaceMatrix:
    n = len(basis)
    return SubspaceMatrix([[basis[j][i] for j in range(n)] for i in range(n)])


def matrix_to_basis(c: SubspaceMatrix) -> list[GVec]:
    g = c.gauss_rows()
    return [[g[i][j] for i in range(c.n)] for j in range(c.n)]


# ------------------------------------------------ special subspace search


@dataclass
class SpecialWitness:
    sigma: tuple[int, ...]
    pairs: tuple[tuple[int, int, int, tuple[int, ...], tuple[int, ...]], ...]  # (a, b, delta, I, c)
    singles: tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...]  # (l, I, c)
    candidates: int = 0

    def to_json(self) -> dict:
        return {
            "sigma": list(self.sigma),
            "pairs": [{"alpha": [a, b], "delta": d, "I": list(I), "c": list(c)} for a, b, d, I, c in self.pairs],
            "singles": [{"alpha": l, "I": list(I), "c": list(c)} for l, I, c in self.singles],
            "candidates": self.candidates,
        }


DEFAULT_BUDGET = 10**7


def exists_special_subspace(
    alpha: Sequence[Any],
    beta: Sequence[Any],
    budget: int = DEFAULT_BUDGET,
    max_p: int = 6,
    max_q: int = 8,
) -> SpecialWitness | None:
    """Search permutations, disjoint subsets and signs for the special-subspace relations.

    Pairs of alphas satisfy alpha_a + delta*alpha_b = 2 sum_{i in I} c_i beta_i and
    single alphas satisfy alpha_l = 2 sum_{i in I} c_i beta_i, with pairwise
    disjoint index sets. Pairing semantics: every pair and every single
    consumes its own index set.
    """
    al = numbers(alpha)
    be = numbers(beta)
    p, q = len(al), len(be)
    if p > max_p or q > max_q:
        raise SearchBudgetExceeded(f"p={p}, q={q} exceeds bounds p<={max_p}, q<={max_q}")
    if p == 0:
        return SpecialWitness((), (), (), 0)
    # sums 2*sum c_i beta_i, indexed by value, in the order cardinality, mask, signs (+ first)
    table: dict[Number, list[tuple[int, tuple[int, ...], tuple[int, ...]]]] = defaultdict(list)
    for size in range(1, q + 1):
        for idx in itertools.combinations(range(q), size):
            mask = sum(1 << i for i in idx)
            for signs in itertools.product((1, -1), repeat=size):
                val = Number(0)
                for c, i in zip(signs, idx):
                    val = val + 2 * c * be[i]
                table[val].append((mask, idx, signs))
    count = 0

    def tick():
        nonlocal count
        count += 1
        if count > budget:
            raise SearchBudgetExceeded(f"more than {budget} candidates")

    def solve(pieces, used, acc):
        if not pieces:
            return acc
        kind, data = pieces[0]
        targets = []
        if kind == "pair":
            a, b = data
            targets = [(al[a] + al[b], 1), (al[a] - al[b], -1)]
        else:
            targets = [(al[data], 0)]
        for val, delta in targets:
            for mask, idx, signs in table.get(val, []):
                tick()
                if mask & used:
                    continue
                res = solve(pieces[1:], used | mask, acc + [(kind, data, delta, idx, signs)])
                if res is not None:
                    return res
        return None

    for p0 in range(p // 2, -1, -1):
        for sigma in itertools.permutations(range(p)):
            pieces = [("pair", (sigma[2 * k], sigma[2 * k + 1])) for k in range(p0)]
            pieces += [("single", sigma[l]) for l in range(2 * p0, p)]
            res = solve(pieces, 0, [])
            if res is not None:
                pairs = tuple((d[0], d[1], delta, idx, signs) for kind, d, delta, idx, signs in res if kind == "pair")
                singles = tuple((d, idx, signs) for kind, d, delta, idx, signs in res if kind == "single")
                return SpecialWitness(tuple(sigma), pairs, singles, count)
    return None


@dataclass
class SpecialSubspace:
    basis: list[GVec]
    mu: tuple[Number, ...]
    gamma: tuple[Number, ...]  # one per beta pair
    phi: list[list[Number]]
    p: int
    q: int
    verified: bool = False
    witness: SpecialWitness | None = None
    details: dict = field(default_factory=dict)

    def matrix(self) -> SubspaceMatrix:
        return basis_to_matrix(self.basis)


def _b1_gammas(alpha2: Number, betas: Sequence[Number]) -> list[Number]:
    q = len(betas)
    g = [Number(0)] * q
    g[q - 1] = betas[q - 1] - alpha2
    for j in range(q - 2, -1, -1):
        g[j] = -g[j + 1] + betas[j] - betas[j + 1]
    return g


def construct_special_subspace(alpha: Sequence[Any], beta: Sequence[Any], witness: SpecialWitness | None = None) -> SpecialSubspace:
    """Assemble V from B0/B1/B2 pieces following a witness; re-verified exactly.

    W = C^p + C^{2q}: alpha_k lives on coordinate k, beta_j on coordinates
    p+2j, p+2j+1. Sign changes of parameters are realised by conjugating
    the affected coordinates, which intertwines L_x with L_{-x} and commutes
    with the real matrix phi.
    """
    al = numbers(alpha)
    be = numbers(beta)
    p, q = len(al), len(be)
    n = p + 2 * q
    if witness is None:
        witness = exists_special_subspace(al, be)
        if witness is None:
            raise RelationViolated("no special subspace: relations have no solution")
    mu = list(al) + [x for b in be for x in (b, b)]
    gamma = [Number(0)] * q
    basis: list[GVec] = []
    used: set[int] = set()

    def pc(j: int) -> tuple[int, int]:
        return p + 2 * j, p + 2 * j + 1

    def vec(entries: dict[int, Gauss]) -> GVec:
        v = _zero_vec(n)
        for i, g in entries.items():
            v[i] = g
        return v

    def chain(first: int, second: int | None, idx: Sequence[int], cs: Sequence[int], delta: int) -> None:
        qq = len(idx)
        if qq == 0:
            raise RelationViolated("empty index set")
        flips: list[int] = []
        sb = [(-1) ** m * c for m, c in enumerate(cs)]  # sign turning beta_i into beta'_m
        betas_p = [s * be[i] for s, i in zip(sb, idx)]
        if second is not None:
            s2 = (-1) ** (qq + 1) * delta
            alpha2 = s2 * al[second]
            if s2 < 0:
                flips.append(second)
            lhs = al[first] - (-1) ** qq * alpha2
        else:
            alpha2 = Number(0)
            lhs = al[first]
        rhs = Number(0)
        for m, b in enumerate(betas_p):
            rhs = rhs + 2 * (-1) ** m * b
        if lhs != rhs:
            raise RelationViolated(f"{lhs} != {rhs}")
        for s, i in zip(sb, idx):
            if s < 0:
                flips += list(pc(i))
        gs = _b1_gammas(alpha2, betas_p)
        for g, i in zip(gs, idx):
            gamma[i] = g
            used.add(i)
        one, ii, mi = _g(1), _g(0, 1), _g(0, -1)
        cvecs = []
        a1, a2 = pc(idx[0])
        cvecs.append(vec({first: one, a1: ii, a2: one}))
        for m in range(qq - 1):
            x1, x2 = pc(idx[m])
            y1, y2 = pc(idx[m + 1])
            cvecs.append(vec({x1: one, x2: ii, y1: one, y2: mi}))
        l1, l2 = pc(idx[-1])
        real_extra = []
        if second is not None:
            cvecs.append(vec({second: one, l1: one, l2: ii}))
        else:
            real_extra.append(vec({l1: one, l2: ii}))
        for v in cvecs:
            basis.append(_conj_entries(v, flips))
            basis.append(_conj_entries(_times_i(v), flips))
        for v in real_extra:
            basis.append(_conj_entries(v, flips))

    for a, b, delta, idx, cs in witness.pairs:
        chain(a, b, idx, cs, delta)
    for l, idx, cs in witness.singles:
        chain(l, None, idx, cs, 0)
    for j in range(q):
        if j not in used:
            x1, x2 = pc(j)
            v = vec({x1: _g(1), x2: _g(0, 1)})
            basis.append(v)
            basis.append(_times_i(v))
    phi = [[Number(0) for _ in range(n)] for _ in range(n)]
    for j, g in enumerate(gamma):
        x1, x2 = pc(j)
        phi[x1][x2] = -g
        phi[x2][x1] = g
    ok = len(basis) == n and is_transversal(basis) and is_invariant(basis, mu, phi)
    if not ok:
        raise RelationViolated("assembled subspace failed re-verification")
    return SpecialSubspace(basis, tuple(mu), tuple(gamma), phi, p, q, True, witness)


def construct_b0(beta: Any) -> SpecialSubspace:
    """V = C(1, i) in C^2 for L = i*beta on both coordinates."""
    return construct_special_subspace((), (beta,), SpecialWitness((), (), ()))


def construct_b1(alpha1: Any, alpha2: Any, betas: Sequence[Any]) -> SpecialSubspace:
    """Special subspace for alpha1 - (-1)^q alpha2 = 2 sum (-1)^{j+1} beta_j, betas in order."""
    q = len(betas)
    delta = -((-1) ** q)
    cs = tuple((-1) ** m for m in range(q))
    w = SpecialWitness((0, 1), ((0, 1, delta, tuple(range(q)), cs),), ())
    return construct_special_subspace((alpha1, alpha2), betas, w)


def construct_b2(alpha: Any, betas: Sequence[Any]) -> SpecialSubspace:
    """Special subspace for alpha = 2 sum (-1)^{j+1} beta_j and an extra real eigenvector."""
    q = len(betas)
    cs = tuple((-1) ** m for m in range(q))
    w = SpecialWitness((0,), (), ((0, tuple(range(q)), cs),))
    return construct_special_subspace((alpha,), betas, w)


# ------------------------------------------------------- P-admissibility


def fourier_sign_test(mu: Sequence[Number], k: Sequence[int]) -> tuple[int, ...] | None:
    """A sign vector kappa with <kappa, mu> = 0 and <kappa, k> = 0, or None."""
    n = len(mu)
    for kappa in itertools.product((1, -1), repeat=n):
        if sum(c * x for c, x in zip(kappa, k)) != 0:
            continue
        tot = Number(0)
        for c, m in zip(kappa, mu):
            tot = tot + c * m
        if tot.is_zero():
            return kappa
    return None


def lagrange_gram(basis: Sequence[GVec], mu: Sequence[Number], k: Sequence[int]) -> list[list[Number]]:
    """omega(v_a, v_b) = sum_j (k_j + mu_j) Im(conj(v_aj) v_bj)."""
    n = len(basis)
    out = [[Number(0) for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            tot = Number(0)
            for j in range(len(mu)):
                x1, y1 = basis[a][j]
                x2, y2 = basis[b][j]
                im = x1 * y2 - y1 * x2
                if im != 0:
                    tot = tot + (mu[j] + k[j]) * im
            out[a][b] = tot
    return out


def _embed(c: SubspaceMatrix, n: int, coords: Sequence[int]) -> list[GVec]:
    out = []
    for v in matrix_to_basis(c):
        w = _zero_vec(n)
        for i, x in zip(coords, v):
            w[i] = x
        out.append(w)
    return out


def is_P_admissible(P: SpecialConstellation, k: Sequence[int], seed: int | None = None) -> AdmissibilityVerdict:
    """Three-valued P-admissibility with a certified witness for yes."""
    k = tuple(int(x) for x in k)
    n = P.d
    if len(k) != n:
        raise DimensionMismatch(f"k has length {len(k)}, constellation dimension is {n}")
    mu = P.mu
    for a, c, g in P.gamma_pairs():
        if not g.is_zero() and k[a] != k[c]:
            return AdmissibilityVerdict("no", obstruction=f"L_k does not commute with phi(P): k_{a} != k_{c}", k=k)
    for i in range(n):
        if (mu[i] + k[i]).is_zero():
            return AdmissibilityVerdict("no", obstruction=f"mu_{i} + k_{i} = 0", k=k)
    kappa = fourier_sign_test(mu, k)
    if kappa is None:
        return AdmissibilityVerdict("no", obstruction="no sign vector kappa with <kappa, mu(P)> = 0 and <kappa, k> = 0", k=k)
    if n == 0:
        return AdmissibilityVerdict("yes", SubspaceMatrix([]), k=k)
    extra = {} if seed is None else {"seed": seed}

    # the special subspace of P itself
    basis = P.special_basis()
    cmat = basis_to_matrix(basis)
    cert = is_good(k, cmat)
    if cert.good:
        return _finish(P, k, basis, cert, "special subspace of P", kappa)

    # direct sum of per-group witnesses
    offs = P.offsets()
    type_i = [offs[j] for j, b in enumerate(P.blocks) if b.kind == "I"]
    groups_b: dict[str, list[int]] = {}
    group_rho: dict[str, Number] = {}
    pieces: list[tuple[list[int], SubspaceMatrix | None, str]] = []
    iff_kinds = {"I", "II.a"}
    iff_b = {"I", "II.b"}
    kinds = {b.subkind for b in P.blocks}
    pending_no = None
    if type_i:
        v = decide_R_admissible([k[i] for i in type_i], **extra)
        if v.status == "no":
            pending_no = f"Type I part {[k[i] for i in type_i]}: {v.obstruction}"
        pieces.append((type_i, v.witness if v.status == "yes" else None, "R-admissible Type I part"))
    for j, b in enumerate(P.blocks):
        o = offs[j]
        sub = b.subkind
        if sub == "I":
            continue
        coords = list(range(o, o + block_data(b).d))
        if sub == "II.a":
            pieces.append((coords, complex_line(-1), "C(1,-i) on a II.a block"))
        elif sub == "II.b":
            rho = b.params[0]
            key = next((kk for kk, r in group_rho.items() if r == rho), None)
            if key is None:
                key = str(rho)
                group_rho[key] = rho
                groups_b[key] = []
            groups_b[key] += coords
        else:
            bb = block_special_basis(b)
            m = basis_to_matrix(bb)
            ok = is_good([k[i] for i in coords], m).good
            pieces.append((coords, m if ok else None, f"special subspace of {sub} block"))
    for key, coords in groups_b.items():
        v = decide_C_admissible([k[i] for i in coords], **extra)
        if v.status == "no":
            pending_no = pending_no or f"II.b group rho={key}: {v.obstruction}"
        pieces.append((coords, v.witness if v.status == "yes" else None, f"C-admissible II.b group rho={key}"))

    pure_a = kinds <= iff_kinds
    rhos = list(group_rho.values())
    pure_b = kinds <= iff_b and all(not r.is_rational or r.rational.denominator != 1 for r in rhos) and not any(
        a == -b for a, b in itertools.combinations(rhos, 2)
    )
    if pending_no and (pure_a or pure_b):
        return AdmissibilityVerdict("no", obstruction=pending_no, k=k)
    if all(m is not None for _, m, _ in pieces):
        full: list[GVec] = []
        for coords, m, _ in pieces:
            full += _embed(m, n, coords)
        wit = basis_to_matrix(full)
        cert = is_good(k, wit)
        if cert.good and is_transversal(full) and is_invariant(full, mu, P.phi()):
            return _finish(P, k, full, cert, "direct sum: " + "; ".join(d for _, _, d in pieces), kappa)
    missing = [d for _, m, d in pieces if m is None]
    return AdmissibilityVerdict("unknown", obstruction="no constructive witness for: " + "; ".join(missing or ["assembled sum"]), k=k, details={"kappa": list(kappa)})


def _finish(P, k, basis, cert, how, kappa) -> AdmissibilityVerdict:
    gram = lagrange_gram(basis, P.mu, k)
    nonzero = any(not x.is_zero() for row in gram for x in row)
    if not nonzero:
        raise RelationViolated("special k-good witness is Lagrangian, contradicting the symplectic obstruction")
    return AdmissibilityVerdict(
        "yes",
        basis_to_matrix(basis),
        k=tuple(k),
        certificate=cert,
        details={"construction": how, "kappa": list(kappa), "lagrange_gram_nonzero": True},
    )
