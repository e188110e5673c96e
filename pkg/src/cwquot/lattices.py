"""Operator-stable lattices.

stable_lattice builds an A-stable lattice from Krylov blocks (the companion
construction: in the returned basis A acts by an integer block-companion
matrix). symplectic_stable_lattice additionally makes a given invariant
symplectic form integral on the lattice.

Exact inputs (ints, Fractions) are handled in exact rational arithmetic. Real
inputs are mpmath numbers at a working precision of 50 digits; the integer
operator matrix and the integer Gram matrix are then exact by construction and
only the identity A*B = B*C is checked numerically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Any, Sequence

import mpmath
import sympy as sp
from sympy.matrices.normalforms import hermite_normal_form

from . import _numeric as nm
from .errors import (
    ConstantTermNotUnit,
    DegeneratePairing,
    InterpolationFailure,
    NonIntegerCharPoly,
    NotSemisimple,
)
from .intpoly import IntPolynomial, block_diagonal, companion_block, factor_over_rationals

_X = sp.Symbol("x")
NUMERIC_TOL = mpmath.mpf(10) ** -25


# ----------------------------------------------------------------- helpers


def _is_exact_entry(x: Any) -> bool:
    return isinstance(x, (int, Fraction)) or (isinstance(x, sp.Basic) and x.is_Rational)


def is_exact_matrix(a: Sequence[Sequence[Any]]) -> bool:
    return all(_is_exact_entry(x) for row in a for x in row)


def _frac(x: Any) -> Fraction:
    if isinstance(x, sp.Basic):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)


def _sym(a: Sequence[Sequence[Any]]) -> sp.Matrix:
    return sp.Matrix([[sp.Rational(_frac(x).numerator, _frac(x).denominator) for x in row] for row in a])


def _from_sym(m: sp.Matrix) -> list[list[Fraction]]:
    return [[Fraction(int(m[i, j].p), int(m[i, j].q)) for j in range(m.cols)] for i in range(m.rows)]


def _poly_at_matrix(coeffs: Sequence[int], a):
    """Horner evaluation of sum coeffs[i] x^i at a square matrix (sympy or mpmath)."""
    n = a.rows
    eye = sp.eye(n) if isinstance(a, sp.MatrixBase) else mpmath.eye(n)
    zero = sp.zeros(n, n) if isinstance(a, sp.MatrixBase) else mpmath.zeros(n, n)
    out = zero
    for c in reversed(coeffs):
        out = out * a + c * eye
    return out


def characteristic_polynomial(a: Sequence[Sequence[Any]]) -> IntPolynomial:
    """det(xI - A); raises NonIntegerCharPoly unless all coefficients are integers."""
    if is_exact_matrix(a):
        p = _sym(a).charpoly(_X)
        coeffs = [sp.Rational(c) for c in reversed(p.all_coeffs())]
        if any(not c.is_integer for c in coeffs):
            raise NonIntegerCharPoly(f"characteristic polynomial {p.as_expr()} is not integral")
        return IntPolynomial(int(c) for c in coeffs)
    # Faddeev-LeVerrier at working precision
    with mpmath.workdps(nm.DPS):
        m = nm.mat(a)
        n = m.rows
        coeffs = [mpmath.mpf(0)] * (n + 1)
        coeffs[n] = mpmath.mpf(1)
        mk = mpmath.zeros(n, n)
        eye = mpmath.eye(n)
        for k in range(1, n + 1):
            mk = m * mk + coeffs[n - k + 1] * eye
            am = m * mk
            coeffs[n - k] = -sum(am[i, i] for i in range(n)) / k
        ints = [int(mpmath.nint(c)) for c in coeffs]
        for c, i in zip(coeffs, ints):
            if abs(c - i) > mpmath.mpf(10) ** -20 * max(1, abs(c)):
                raise NonIntegerCharPoly(f"characteristic coefficient {mpmath.nstr(c, 20)} is not an integer")
        return IntPolynomial(ints)


def _squarefree_kernel(f: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    return [(g, e) for g, e in factor_over_rationals(f) if g.degree > 0]


def check_semisimple(a: Sequence[Sequence[Any]], f: IntPolynomial) -> None:
    """The product of the distinct irreducible factors of f annihilates A."""
    rad = IntPolynomial([1])
    for g, _ in _squarefree_kernel(f):
        rad = rad * g
    if is_exact_matrix(a):
        if not _poly_at_matrix(rad.coeffs, _sym(a)).is_zero_matrix:
            raise NotSemisimple("minimal polynomial is not squarefree")
        return
    with mpmath.workdps(nm.DPS):
        m = nm.mat(a)
        val = _poly_at_matrix(rad.coeffs, m)
        scale = max(mpmath.mpf(1), nm.max_abs(m)) ** rad.degree
        if nm.max_abs(val) > NUMERIC_TOL * scale * 10**5:
            raise NotSemisimple("minimal polynomial is not squarefree (numerically)")


# ------------------------------------------------------------ lattice type


@dataclass
class LatticeBasis:
    """Columns spanning a full-rank lattice; operator is A in this basis when known."""

    vectors: list[list[Any]]
    operator: list[list[int]] | None = None
    gram: list[list[int]] | None = None
    note: dict = field(default_factory=dict)

    @property
    def ambient_dim(self) -> int:
        return len(self.vectors[0]) if self.vectors else 0

    @property
    def rank(self) -> int:
        return len(self.vectors)

    @property
    def exact(self) -> bool:
        return all(isinstance(x, (int, Fraction)) for v in self.vectors for x in v)

    def matrix_rows(self) -> list[list[Any]]:
        return [[v[i] for v in self.vectors] for i in range(self.ambient_dim)]

    def scaled(self, c: Any) -> "LatticeBasis":
        return LatticeBasis([[c * x for x in v] for v in self.vectors], self.operator, None, dict(self.note))

    def to_json(self) -> dict:
        def s(x):
            return str(x) if isinstance(x, (int, Fraction)) else mpmath.nstr(x, 45)

        out: dict[str, Any] = {"vectors": [[s(x) for x in v] for v in self.vectors], "exact": self.exact}
        if self.operator is not None:
            out["operator"] = self.operator
        if self.gram is not None:
            out["gram"] = self.gram
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "LatticeBasis":
        def p(x: str):
            if obj.get("exact"):
                return Fraction(x)
            with mpmath.workdps(nm.DPS):
                return mpmath.mpf(x)

        return cls([[p(x) for x in v] for v in obj["vectors"]], obj.get("operator"), obj.get("gram"))


@dataclass
class SymplecticForm:
    matrix: list[list[Any]]

    def __post_init__(self):
        n = len(self.matrix)
        for i in range(n):
            for j in range(n):
                if self.matrix[i][j] != -self.matrix[j][i]:
                    if is_exact_matrix(self.matrix) or abs(self.matrix[i][j] + self.matrix[j][i]) > NUMERIC_TOL:
                        raise ValueError("symplectic form must be skew-symmetric")

    @classmethod
    def standard(cls, m: int) -> "SymplecticForm":
        j = [[0] * (2 * m) for _ in range(2 * m)]
        for i in range(m):
            j[i][m + i] = 1
            j[m + i][i] = -1
        return cls(j)

    def __call__(self, u: Sequence[Any], v: Sequence[Any]) -> Any:
        return sum(u[i] * self.matrix[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))


# ---------------------------------------------------------- Krylov blocks


def _candidate_vectors(n: int, exact: bool, seed_vector: Sequence[Any] | None):
    if seed_vector is not None:
        yield list(seed_vector)
    for i in range(n):
        yield [1 if j == i else 0 for j in range(n)]
    yield [1] * n
    # deterministic small-integer vectors
    for k in itertools.count(1):
        yield [((j + 1) * (k + 3)) % (2 * k + 5) - k for j in range(n)]


def _krylov(a_mat, w: list, d: int) -> list[list]:
    vecs = [w]
    for _ in range(d - 1):
        prev = vecs[-1]
        vecs.append([sum(a_mat[i][k] * prev[k] for k in range(len(prev))) for i in range(len(prev))])
    return vecs


def _rank_of_columns(cols: list[list], exact: bool) -> int:
    if not cols:
        return 0
    if exact:
        return sp.Matrix([[_to_rat(c[i]) for c in cols] for i in range(len(cols[0]))]).rank()
    return nm.rank(nm.from_columns(cols), tol=mpmath.mpf(10) ** -20)


def _to_rat(x):
    x = Fraction(x)
    return sp.Rational(x.numerator, x.denominator)


def _kernel_vectors(a, g: IntPolynomial, exact: bool) -> list[list]:
    if exact:
        ker = _poly_at_matrix(g.coeffs, _sym(a)).nullspace()
        return [[Fraction(int(v[i].p), int(v[i].q)) for i in range(v.rows)] for v in ker]
    with mpmath.workdps(nm.DPS):
        m = _poly_at_matrix(g.coeffs, nm.mat(a))
        scale = max(mpmath.mpf(1), nm.max_abs(m))
        return nm.rref_nullspace(m, tol=mpmath.mpf(10) ** -20 * scale)


def _krylov_lattice(a, f: IntPolynomial, seed_vector=None, max_tries: int = 200) -> tuple[list[list], list[list[int]]]:
    """Columns B and integer matrix C with A B = B C (block companion)."""
    exact = is_exact_matrix(a)
    a_rows = [[Fraction(x) if exact else nm.mpf(x) for x in row] for row in a]
    n = len(a_rows)
    factors = _squarefree_kernel(f)
    squarefree = all(e == 1 for _, e in factors)
    with mpmath.workdps(nm.DPS):
        if squarefree:
            for tries, w in enumerate(_candidate_vectors(n, exact, seed_vector)):
                w = [Fraction(x) if exact else nm.mpf(x) for x in w]
                cols = _krylov(a_rows, w, n)
                if _rank_of_columns(cols, exact) == n:
                    return cols, companion_block(f)
                if tries > max_tries:
                    break
            raise NotSemisimple("no cyclic vector found for a squarefree characteristic polynomial")
        cols: list[list] = []
        blocks = []
        for g, e in factors:
            ker = _kernel_vectors(a_rows, g, exact)
            cands = list(ker)
            for r in range(2, len(ker) + 1):
                for combo in itertools.combinations(ker, r):
                    cands.append([sum(c[i] for c in combo) for i in range(n)])
            got = 0
            for w in cands:
                if got == e:
                    break
                blk = _krylov(a_rows, w, g.degree)
                if _rank_of_columns(cols + blk, exact) == len(cols) + g.degree:
                    cols += blk
                    blocks.append(companion_block(g))
                    got += 1
            if got < e:
                raise NotSemisimple(f"could not split the {g}-isotypic part into cyclic blocks")

        return cols, block_diagonal(blocks)


def stable_lattice(
    a: Sequence[Sequence[Any]],
    charpoly: IntPolynomial | None = None,
    seed_vector: Sequence[Any] | None = None,
) -> LatticeBasis:
    """A-stable lattice for semisimple A with integral characteristic polynomial of unit constant term."""
    f = charpoly if charpoly is not None else characteristic_polynomial(a)
    if abs(f.constant_term) != 1:
        raise ConstantTermNotUnit(f"constant term of {f} is {f.constant_term}")
    check_semisimple(a, f)
    cols, c = _krylov_lattice(a, f, seed_vector)
    return LatticeBasis(cols, [list(map(int, r)) for r in c], note={"charpoly": f.to_json()})


# ------------------------------------------------------ symplectic lattices


def _gram(cols: Sequence[Sequence[Any]], omega: Sequence[Sequence[Any]]) -> list[list[Any]]:
    n = len(cols)
    dim = len(omega)
    out = []
    for i in range(n):
        row = []
        wu = [sum(cols[i][a] * omega[a][b] for a in range(dim)) for b in range(dim)]
        for j in range(n):
            row.append(sum(wu[b] * cols[j][b] for b in range(dim)))
        out.append(row)
    return out


def _integral_scale(gram: Sequence[Sequence[Fraction]]) -> int:
    """Smallest s in N with s^2 * gram integral."""
    den = 1
    for row in gram:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    s = 1
    for p, e in sp.factorint(den).items():
        s *= int(p) ** ((int(e) + 1) // 2)
    return s


def integer_invariant_form(c: Sequence[Sequence[int]]) -> list[list[int]]:
    """A nondegenerate integer skew form J with C^T J C = J (exact linear algebra)."""
    n = len(c)
    cm = sp.Matrix(c)
    idx = [(i, j) for i in range(n) for j in range(i + 1, n)]
    syms = sp.symbols(f"j0:{len(idx)}")
    jm = sp.zeros(n, n)
    for s, (i, j) in zip(syms, idx):
        jm[i, j] = s
        jm[j, i] = -s
    eqs = cm.T * jm * cm - jm
    lin = sp.Matrix([[sp.diff(eqs[a, b], s) for s in syms] for a in range(n) for b in range(a + 1, n)])
    ker = lin.nullspace()
    if not ker:
        raise InterpolationFailure("no invariant skew form")
    mats = []
    for v in ker:
        m = sp.zeros(n, n)
        for val, (i, j) in zip(v, idx):
            m[i, j] = val
            m[j, i] = -val
        mats.append(m)
    combos: list[tuple[int, ...]] = [tuple(int(i == k) for i in range(len(mats))) for k in range(len(mats))]
    combos += list(itertools.product(range(-2, 3), repeat=len(mats))) if len(mats) <= 4 else []
    for co in combos:
        m = sum((ci * mi for ci, mi in zip(co, mats)), sp.zeros(n, n))
        if m.det() != 0:
            den = lcm(*[int(sp.Rational(x).q) for x in m])
            m = m * den
            g = sp.gcd_list([int(x) for x in m if x != 0])
            return [[int(m[i, j] / g) for j in range(n)] for i in range(n)]
    raise InterpolationFailure("no nondegenerate invariant skew form among tried combinations")


def _rationalize_interpolant(ys: Sequence[Any], targets: Sequence[Any]) -> list[Fraction]:
    """Rational polynomial R with |R(y) - t| < |t|/4 at all nodes."""
    m = len(ys)
    with mpmath.workdps(nm.DPS):
        vand = mpmath.matrix(m, m)
        rhs = mpmath.matrix(m, 1)
        for i, (y, t) in enumerate(zip(ys, targets)):
            for j in range(m):
                vand[i, j] = mpmath.mpc(y) ** j
            rhs[i] = mpmath.mpc(t)
        sol = mpmath.lu_solve(vand, rhs)
        real = [mpmath.re(sol[j]) for j in range(m)]
        for bits in range(8, 160, 8):
            coeffs = [Fraction(int(mpmath.nint(c * 2**bits)), 2**bits) for c in real]
            ok = True
            for y, t in zip(ys, targets):
                val = sum(nm.mpf(cf) * mpmath.mpc(y) ** j for j, cf in enumerate(coeffs))
                if abs(val - t) >= abs(t) / 4:
                    ok = False
                    break
            if ok:
                return coeffs
    raise InterpolationFailure("rational approximation of the interpolating polynomial failed")


def _symplectic_numeric(a, omega, f: IntPolynomial) -> LatticeBasis:
    factors = _squarefree_kernel(f)
    if any(e > 1 for _, e in factors):
        raise InterpolationFailure("numeric symplectic lattices need a squarefree characteristic polynomial")
    n = len(a)
    cols, c_int = _krylov_lattice(a, f)
    with mpmath.workdps(nm.DPS):
        k = nm.from_columns(cols)
        w = nm.mat(omega)
        w_hat = k.T * w * k
        j_int = integer_invariant_form(c_int)
        jm = nm.mat(j_int)
        p_hat = mpmath.inverse(jm) * w_hat
        cm = nm.mat(c_int)
        evals, evecs = mpmath.eig(cm)
        pvals = []
        for idx in range(n):
            vec = evecs[:, idx]
            img = p_hat * vec
            pos = max(range(n), key=lambda i: abs(vec[i]))
            pvals.append(img[pos] / vec[pos])
        # one node per pair {nu, 1/nu}
        nodes, targets, seen = [], [], []
        for idx, nu in enumerate(evals):
            y = nu + 1 / nu
            if any(abs(y - s) < mpmath.mpf(10) ** -20 for s in seen):
                continue
            seen.append(y)
            nodes.append(y)
            targets.append(pvals[idx])
        if len(nodes) != n // 2:
            raise InterpolationFailure("eigenvalues do not pair into distinct reciprocal pairs")
        r_coeffs = _rationalize_interpolant(nodes, targets)
        svals = []
        for idx, nu in enumerate(evals):
            y = nu + 1 / nu
            rv = sum(nm.mpf(cf) * y**j for j, cf in enumerate(r_coeffs))
            svals.append(mpmath.sqrt(rv / pvals[idx]))
        d_hat = evecs * mpmath.diag(svals) * mpmath.inverse(evecs)
        d_real = mpmath.matrix(n, n)
        for i in range(n):
            for jj in range(n):
                d_real[i, jj] = mpmath.re(d_hat[i, jj])
        # exact Gram after the change: R(C + C^-1)^T J
        cs = sp.Matrix(c_int)
        ysum = cs + cs.inv()
        rmat = _poly_at_matrix([sp.Rational(x.numerator, x.denominator) for x in r_coeffs], ysum)
        g_exact = rmat.T * sp.Matrix(j_int)
        g_frac = _from_sym(g_exact)
        s = _integral_scale(g_frac)
        den_g = [[int(x * s * s) for x in row] for row in g_frac]
        # s * sqrt(...) is not needed: the exact Gram is rational, scale by integer s
        basis = k * d_real * s
        out_cols = nm.columns(basis)
        lb = LatticeBasis(out_cols, [list(map(int, r)) for r in c_int], den_g, note={"charpoly": f.to_json(), "interpolant": [str(x) for x in r_coeffs]})
        # numeric self-check of the Gram identity
        gnum = basis.T * w * basis
        err = max(abs(gnum[i, jj] - den_g[i][jj]) for i in range(n) for jj in range(n))
        if err > NUMERIC_TOL * 10**3:
            raise InterpolationFailure(f"Gram identity residual {mpmath.nstr(err, 5)}")
        return lb


def symplectic_stable_lattice(
    a: Sequence[Sequence[Any]],
    omega: SymplecticForm | Sequence[Sequence[Any]],
    charpoly: IntPolynomial | None = None,
) -> LatticeBasis:
    """Lattice with A L = L and omega(L x L) in Z."""
    om = omega.matrix if isinstance(omega, SymplecticForm) else [list(r) for r in omega]
    f = charpoly if charpoly is not None else characteristic_polynomial(a)
    if abs(f.constant_term) != 1:
        raise ConstantTermNotUnit(f"constant term of {f} is {f.constant_term}")
    check_semisimple(a, f)
    if is_exact_matrix(a) and is_exact_matrix(om):
        lb = stable_lattice(a, f)
        g = _gram(lb.vectors, [[Fraction(x) for x in r] for r in om])
        s = _integral_scale(g)
        out = LatticeBasis([[x * s for x in v] for v in lb.vectors], lb.operator, [[int(x * s * s) for x in r] for r in g], lb.note)
        return out
    return _symplectic_numeric(a, om, f)


def dual_lattice(lattice: LatticeBasis, partner: Sequence[Sequence[Any]], omega: SymplecticForm | Sequence[Sequence[Any]]) -> LatticeBasis:
    """{w' in span(partner) : omega(w, w') in Z for all w in lattice}."""
    om = omega.matrix if isinstance(omega, SymplecticForm) else omega
    q = [[sum(b[i] * om[i][j] * w[j] for i in range(len(b)) for j in range(len(w))) for w in partner] for b in lattice.vectors]
    exact = lattice.exact and is_exact_matrix(partner) and is_exact_matrix(om)
    if exact:
        qm = _sym(q)
        if qm.det() == 0:
            raise DegeneratePairing("pairing between the two factors is degenerate")
        qi = _from_sym(qm.inv())
        pm = [[Fraction(x) for x in w] for w in partner]
    else:
        with mpmath.workdps(nm.DPS):
            qm = nm.mat(q)
            if abs(mpmath.det(qm)) < NUMERIC_TOL:
                raise DegeneratePairing("pairing between the two factors is degenerate")
            qi = nm.rows_of(mpmath.inverse(qm))
        pm = [[nm.mpf(x) for x in w] for w in partner]
    m = len(partner)
    dim = len(partner[0])
    cols = [[sum(pm[j][i] * qi[j][k] for j in range(m)) for i in range(dim)] for k in range(m)]
    return LatticeBasis(cols)


# --------------------------------------------------------------- checking


def lattice_coordinates(lattice: LatticeBasis, vec: Sequence[Any]):
    """Coordinates of vec in the lattice basis (exact or least squares)."""
    if lattice.exact and all(_is_exact_entry(x) for x in vec):
        b = _sym(lattice.matrix_rows())
        sol, params = b.gauss_jordan_solve(_sym([[x] for x in vec]))
        if params.shape[0]:
            raise ValueError("lattice basis is not independent")
        return [Fraction(int(sol[i].p), int(sol[i].q)) for i in range(sol.rows)], Fraction(0)
    with mpmath.workdps(nm.DPS):
        b = nm.mat(lattice.matrix_rows())
        v = nm.mat([[x] for x in vec])
        sol = nm.least_squares(b, v)
        res = nm.max_abs(b * sol - v)
        return [sol[i] for i in range(sol.rows)], res


def stability_report(lattice: LatticeBasis, a: Sequence[Sequence[Any]], omega=None, tol=None) -> list[str]:
    """Reasons why the lattice fails to be A-stable or omega-integral; empty when it passes."""
    tol = NUMERIC_TOL if tol is None else tol
    reasons = []
    n = lattice.ambient_dim
    exact = lattice.exact and is_exact_matrix(a)
    for idx, v in enumerate(lattice.vectors):
        av = [sum(a[i][k] * v[k] for k in range(n)) for i in range(n)]
        coords, res = lattice_coordinates(lattice, av)
        if exact:
            if any(Fraction(c).denominator != 1 for c in coords):
                reasons.append(f"A b_{idx} is not an integer combination of the basis")
        else:
            bad = res > tol * max(1, max(abs(x) for x in av)) or any(abs(c - mpmath.nint(c)) > tol * 10**3 for c in coords)
            if bad:
                reasons.append(f"A b_{idx} is not an integer combination of the basis")
    # A^{-1} stability follows from |det| = 1 of the integer coordinate matrix
    if not reasons:
        mat_rows = []
        for v in lattice.vectors:
            av = [sum(a[i][k] * v[k] for k in range(n)) for i in range(n)]
            coords, _ = lattice_coordinates(lattice, av)
            mat_rows.append([int(mpmath.nint(c)) if not exact else int(c) for c in coords])
        det = sp.Matrix(mat_rows).det()
        if abs(det) != 1:
            reasons.append(f"A acts on the lattice with determinant {det}, so A(L) != L")
    if omega is not None:
        om = omega.matrix if isinstance(omega, SymplecticForm) else omega
        g = _gram(lattice.vectors, om)
        for i, row in enumerate(g):
            for j, x in enumerate(row):
                if exact and is_exact_matrix(om):
                    if Fraction(x).denominator != 1:
                        reasons.append(f"omega(b_{i}, b_{j}) = {x} is not an integer")
                elif abs(x - mpmath.nint(x)) > tol * 10**3:
                    reasons.append(f"omega(b_{i}, b_{j}) = {mpmath.nstr(x, 10)} is not an integer")
    return reasons


def verify_stable_integral(lattice: LatticeBasis, a: Sequence[Sequence[Any]], omega=None) -> bool:
    return not stability_report(lattice, a, omega)


def hermite_form(lattice: LatticeBasis) -> tuple[int, list[list[int]]]:
    """Canonical representative: (d, HNF of d * basis) for an exact lattice."""
    if not lattice.exact:
        raise ValueError("Hermite normal form needs an exact basis")
    rows = [[Fraction(x) for x in r] for r in lattice.matrix_rows()]
    d = 1
    for r in rows:
        for x in r:
            d = lcm(d, x.denominator)
    m = sp.Matrix([[int(x * d) for x in r] for r in rows])
    h = hermite_normal_form(m)
    return d, [[int(h[i, j]) for j in range(h.cols)] for i in range(h.rows)]


def same_lattice(a: LatticeBasis, b: LatticeBasis) -> bool:
    da, ha = hermite_form(a)
    db, hb = hermite_form(b)
    d = lcm(da, db)
    scale_a = [[x * (d // da) for x in r] for r in ha]
    scale_b = [[x * (d // db) for x in r] for r in hb]
    return hermite_normal_form(sp.Matrix(scale_a)) == hermite_normal_form(sp.Matrix(scale_b))
