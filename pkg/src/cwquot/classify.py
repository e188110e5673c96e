"""Space specifications, quotient certificates and classification verdicts.

A SpaceSpec (f, P, k) determines the parameters

    lambda = (log|nu_1|, ..., log|nu_p|),  mu = 2 pi (mu(P) + k)

where nu_1..nu_p are the roots of f off the unit circle. space_from_spec
assembles a certificate (V, Lambda, t0, phi0, h0) for the corresponding space
and verify_certificate re-checks it from the parameters alone.

Coordinates on a = C^p + C^q follow cwgeom: a real vector of length 2n holds
the real parts followed by the imaginary parts. The off-circle roots are laid
out as conjugate pairs with positive imaginary part first (roots of f0 before
roots of f1), then real roots (again f0 before f1). Within f1, a root outside
the circle is immediately followed by its reciprocal partner.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import mpmath
import numpy as np
import sympy as sp

from . import _numeric as nm
from .cwgeom import (
    WORK_DPS,
    Ambient,
    CWParams,
    GroupElement,
    group_inv,
    group_mul,
    identity,
    scalar_str,
    to_scalar,
)
from .errors import (
    CWQError,
    ConstellationClash,
    DimensionMismatch,
    InvariantViolation,
    NotAdmissible,
    UnverifiedCertificate,
)
from .goodness import DEFAULT_SEED, decide_R_admissible, is_good
from .intpoly import (
    IntPolynomial,
    block_diagonal,
    circle_factor_data,
    cyclotomic,
    factor_over_rationals,
    unit_circle_root_count,
    validate_otto,
)
from .lattices import (
    LatticeBasis,
    stable_lattice,
    stability_report,
    symplectic_stable_lattice,
)
from .paramfield import Number
from .special import (
    Block,
    SpecialConstellation,
    block_data,
    is_invariant,
    is_minimal,
    is_P_admissible,
    matrix_to_basis,
)
from .subspace import SubspaceMatrix

ROOT_DPS = 60
MATCH_TOL = mpmath.mpf(10) ** -30
CHECK_TOL = mpmath.mpf(10) ** -25
SEARCH_TOL = 1e-9
RATIONAL_DENOMINATOR_BOUND = 10**4
DEFAULT_COEFF_BOUND = 20
DEFAULT_SEARCH_BUDGET = 2_000_000


def _mpf(x: Any) -> mpmath.mpf:
    return nm.mpf(x)


def _fmt(x: Any) -> str:
    if isinstance(x, (int, Fraction)):
        return str(x)
    return mpmath.nstr(x, 45)


# ===================================================================== roots


@dataclass
class RootSplit:
    """Roots of f at ROOT_DPS digits, split as in f = f0 * f1."""

    circle: list  # unimodular roots with multiplicity
    off0: list  # off-circle roots of f0
    off1: list  # off-circle roots of f1
    f0: IntPolynomial
    f1: IntPolynomial


def _roots_of_factor(h: IntPolynomial) -> list:
    with mpmath.workdps(ROOT_DPS):
        if h.degree == 1:
            return [mpmath.mpc(-h.coeffs[0])]
        coeffs = [int(c) for c in reversed(h.coeffs)]
        return [mpmath.mpc(r) for r in mpmath.polyroots(coeffs, maxsteps=800, extraprec=6 * ROOT_DPS)]


def split_roots(f: IntPolynomial) -> RootSplit:
    """High-precision roots; exact per-factor counts decide which lie on the circle."""
    circle: list = []
    off0: list = []
    off1: list = []
    f0 = IntPolynomial([1])
    f1 = IntPolynomial([1])
    with mpmath.workdps(ROOT_DPS):
        for data in circle_factor_data(f):
            roots = _roots_of_factor(data.factor)
            roots.sort(key=lambda r: float(abs(abs(r) - 1)))
            on, off = roots[: data.circle_roots], roots[data.circle_roots :]
            # the exact real count tells which off-circle roots are real
            off.sort(key=lambda r: float(abs(r.imag)))
            off = [mpmath.mpc(r.real, 0) if i < data.real_off_circle else r for i, r in enumerate(off)]
            on = [mpmath.mpc(r.real, 0) if abs(r.imag) < MATCH_TOL else r for r in on]
            for _ in range(data.multiplicity):
                circle += on
                if data.circle_roots:
                    off1 += off
                    f1 = f1 * data.factor
                else:
                    off0 += off
                    f0 = f0 * data.factor
    return RootSplit(circle, off0, off1, f0, f1)


def circle_angles(f: IntPolynomial) -> list:
    """Angles theta in (0, pi) of unimodular roots with positive imaginary part, ascending."""
    with mpmath.workdps(ROOT_DPS):
        out = [mpmath.arg(r) for r in split_roots(f).circle if r.imag > MATCH_TOL]
        return sorted(out)


# ============================================================== space specs


@dataclass
class SpaceSpec:
    """Data (f, P, k) together with numeric values bound to the symbols of P."""

    f: IntPolynomial
    P: SpecialConstellation = field(default_factory=SpecialConstellation)
    k: tuple[int, ...] = ()
    bindings: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.k = tuple(int(x) for x in self.k)
        self.bindings = dict(self.bindings)
        if self.bindings:
            self.P = self.P.bind(self.bindings)

    @property
    def q(self) -> int:
        return self.P.d

    @property
    def p(self) -> int:
        return self.f.degree - self.q

    def unbound_symbols(self) -> list[str]:
        return sorted({s.name for s in self.P.symbols() if s.value is None})

    def to_json(self) -> dict:
        return {
            "f": self.f.to_json(),
            "P": self.P.to_json(),
            "k": list(self.k),
            "bindings": dict(sorted(self.bindings.items())),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SpaceSpec":
        return cls(
            IntPolynomial(obj["f"]),
            SpecialConstellation.from_json(obj.get("P", [])),
            tuple(obj.get("k", [])),
            dict(obj.get("bindings", {})),
        )

    def __str__(self) -> str:
        return f"({self.f}, {self.P}, {list(self.k)})"


def _nu_of_rho(rho: Number):
    with mpmath.workdps(ROOT_DPS):
        return mpmath.expjpi(2 * rho.to_mpf())


def _match_numeric(targets: Sequence, pool: Sequence) -> bool:
    left = list(pool)
    for t in targets:
        best = min(range(len(left)), key=lambda i: abs(left[i] - t), default=None)
        if best is None or abs(left[best] - t) > MATCH_TOL:
            return False
        left.pop(best)
    return not left


def _cyclotomic_index(h: IntPolynomial) -> int | None:
    d = h.degree
    for m in range(1, 2 * d * d + 3):
        if int(sp.totient(m)) == d and cyclotomic(m) == h:
            return m
    return None


def _match_exact(P: SpecialConstellation, f: IntPolynomial) -> bool | None:
    """Exact comparison of nu(P) with the circle roots when all rho are rational.

    Returns None when some rho is irrational (numeric comparison needed).
    """
    rhos = P.rho
    if not all(r.is_rational for r in rhos):
        return None
    want: Counter = Counter()
    for data in circle_factor_data(f):
        if not data.circle_roots:
            continue
        m = _cyclotomic_index(data.factor)
        if m is None:
            return False  # a non-cyclotomic circle factor has no rational angles
        for a in range(m):
            if math.gcd(a, m) == 1:
                want[Fraction(a, m)] += data.multiplicity
    got = Counter(r.rational % 1 for r in rhos)
    return got == want


def check_nu_match(P: SpecialConstellation, f: IntPolynomial) -> tuple[bool, str]:
    """nu(P) = nu_c(f) as multisets; exact for rational rho, else at 1e-30."""
    exact = _match_exact(P, f)
    if exact is not None:
        return exact, "exact (rational angles)"
    split = split_roots(f)
    return _match_numeric([_nu_of_rho(r) for r in P.rho], split.circle), "numeric at 1e-30"


def bind_spec(spec: SpaceSpec) -> SpaceSpec:
    """Bind a single unbound symbol from the circle-root angles of f."""
    names = spec.unbound_symbols()
    if not names:
        return spec
    if len(names) > 1:
        raise NotAdmissible(f"symbols {names} need explicit numeric bindings")
    name = names[0]
    for theta in circle_angles(spec.f):
        with mpmath.workdps(ROOT_DPS):
            value = mpmath.nstr(theta / (2 * mpmath.pi), ROOT_DPS - 5)
        trial = SpaceSpec(spec.f, spec.P, spec.k, {**spec.bindings, name: value})
        if check_nu_match(trial.P, trial.f)[0]:
            return trial
    raise NotAdmissible(f"no circle-root angle of f makes nu(P) = nu_c(f) for symbol {name}")


def validate_spec(spec: SpaceSpec) -> list[str]:
    """Violated SpaceSpec invariants (empty when the SpaceSpec is valid)."""
    reasons = []
    f = spec.f
    if not validate_otto(f):
        reasons.append("f is not monic with constant term +-1")
        return reasons
    count = unit_circle_root_count(f)[0]
    if count != spec.q:
        reasons.append(f"f has {count} roots on the unit circle but d(P) = {spec.q}")
    if len(spec.k) != spec.q:
        reasons.append(f"k has length {len(spec.k)}, expected {spec.q}")
    if spec.unbound_symbols():
        reasons.append(f"unbound symbols {spec.unbound_symbols()}")
    elif count == spec.q:
        ok, how = check_nu_match(spec.P, f)
        if not ok:
            reasons.append(f"nu(P) != nu_c(f) ({how})")
    return reasons


# =================================================================== layout


@dataclass
class RealLayout:
    """Ordering of the off-circle roots and the real-part data of the construction."""

    nus: list  # nu_l, l = 0..p-1
    rotation: list[list]  # phi_R as a real p x p matrix
    v0: list[list]  # complex vectors (length p) spanning V_R^0
    v1: list[list]  # complex vectors spanning V_R^1


def _nearest(pool: list, target) -> Any:
    idx = min(range(len(pool)), key=lambda i: abs(pool[i] - target))
    if abs(pool[idx] - target) > MATCH_TOL * max(1, abs(target)) * 10**5:
        raise InvariantViolation("off-circle roots of f1 do not pair up reciprocally")
    return pool.pop(idx)


def real_layout(split: RootSplit) -> RealLayout:
    with mpmath.workdps(ROOT_DPS):
        key = lambda r: (float(abs(r)), float(mpmath.arg(r)))  # noqa: E731
        c0 = sorted([r for r in split.off0 if r.imag > 0], key=key)
        r0 = sorted([r.real for r in split.off0 if r.imag == 0], key=float)
        c1 = [r for r in split.off1 if r.imag > 0]
        r1 = [r.real for r in split.off1 if r.imag == 0]
        big_c = sorted([r for r in c1 if abs(r) > 1], key=key)
        small_c = [r for r in c1 if abs(r) < 1]
        quads = []
        for r in big_c:
            partner = _nearest(small_c, r / abs(r) ** 2)
            quads.append((r, partner))
        big_r = sorted([r for r in r1 if abs(r) > 1], key=float)
        small_r = [r for r in r1 if abs(r) < 1]
        pairs = [(r, _nearest(small_r, 1 / r)) for r in big_r]

        nus: list = []
        for r in c0:
            nus += [r, mpmath.conj(r)]
        for r, s in quads:
            nus += [r, mpmath.conj(r), s, mpmath.conj(s)]
        nus += [mpmath.mpc(r) for r in r0]
        for r, s in pairs:
            nus += [mpmath.mpc(r), mpmath.mpc(s)]
        p = len(nus)
        rot = [[mpmath.mpf(0)] * p for _ in range(p)]
        l = 0
        while l < p:
            nu = nus[l]
            if nu.imag > 0:
                a = mpmath.arg(nu)
                c, s = mpmath.cos(a), mpmath.sin(a)
                rot[l][l], rot[l][l + 1], rot[l + 1][l], rot[l + 1][l + 1] = c, -s, s, c
                l += 2
            else:
                rot[l][l] = mpmath.mpf(1 if nu.real > 0 else -1)
                l += 1

        def e(idx: int, coef) -> list:
            v = [mpmath.mpc(0)] * p
            v[idx] = mpmath.mpc(coef)
            return v

        def add(a: list, b: list) -> list:
            return [x + y for x, y in zip(a, b)]

        one_plus, one_minus = mpmath.mpc(1, 1), mpmath.mpc(1, -1)
        v0: list = []
        v1: list = []
        pos = 0
        for _ in c0:
            v0 += [e(pos, one_plus), e(pos + 1, one_plus)]
            pos += 2
        for _ in quads:
            a, b, a2, b2 = pos, pos + 1, pos + 2, pos + 3
            v1 += [
                e(a, one_plus),
                e(b, one_plus),
                add(e(a, one_minus), e(b2, one_plus)),
                add(e(b, one_minus), e(a2, -one_plus)),
            ]
            pos += 4
        for _ in r0:
            v0.append(e(pos, one_plus))
            pos += 1
        for _ in pairs:
            v1 += [e(pos, one_plus), add(e(pos, one_minus), e(pos + 1, one_plus))]
            pos += 2
        return RealLayout(nus, rot, v0, v1)


def spec_params(spec: SpaceSpec, split: RootSplit | None = None) -> CWParams:
    """(log|nu_1|, ..., log|nu_p|; 2 pi (mu(P) + k)) in the layout order."""
    split = split or split_roots(spec.f)
    layout = real_layout(split)
    with mpmath.workdps(WORK_DPS):
        lam = [mpmath.log(abs(nu)) for nu in layout.nus]
        mu = [2 * mpmath.pi * (m + k).to_mpf() for m, k in zip(spec.P.mu, spec.k)]
    return CWParams(lam, mu)


# ============================================================= certificates


@dataclass
class QuotientCertificate:
    """Data (V, Lambda, t0, phi0, h0) with Lambda = central Z + Lambda_0 in z + V."""

    params: CWParams
    V: list[list]  # ambient real vectors (length 2n) spanning V
    lattice: LatticeBasis  # Lambda_0, ambient vectors
    central: Fraction  # generator of Lambda cap z
    t0: Any
    phi0: list[list]
    h0: GroupElement
    P: SpecialConstellation = field(default_factory=SpecialConstellation)
    k: tuple[int, ...] = ()
    witness: SubspaceMatrix | None = None  # V_I as a subspace of C^q
    spec: SpaceSpec | None = None
    notes: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.params.p + self.params.q

    def ambient(self) -> Ambient:
        return Ambient(self.params.lam, self.params.mu)

    @property
    def gamma0(self) -> GroupElement:
        return GroupElement(self.h0.z, list(self.h0.a), to_scalar(self.t0), self.phi0)

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "params": self.params.to_json(),
            "V": [[_fmt(x) for x in v] for v in self.V],
            "lattice": self.lattice.to_json(),
            "central": str(self.central),
            "t0": _fmt(self.t0),
            "phi0": [[_fmt(x) for x in r] for r in self.phi0],
            "h0": self.h0.to_json(),
            "P": self.P.to_json(),
            "k": list(self.k),
            "bindings": {s.name: s.value for s in self.P.symbols()},
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.spec is not None:
            out["spec"] = self.spec.to_json()
        if self.notes:
            out["notes"] = self.notes
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "QuotientCertificate":
        def num(x: str):
            try:
                return Fraction(x)
            except ValueError:
                with mpmath.workdps(WORK_DPS):
                    return mpmath.mpf(x)

        P = SpecialConstellation.from_json(obj.get("P", []))
        if obj.get("bindings"):
            P = P.bind(obj["bindings"])
        return cls(
            params=CWParams.from_json(obj["params"]),
            V=[[num(x) for x in v] for v in obj["V"]],
            lattice=LatticeBasis.from_json(obj["lattice"]),
            central=Fraction(obj["central"]),
            t0=num(obj["t0"]),
            phi0=[[num(x) for x in r] for r in obj["phi0"]],
            h0=GroupElement.from_json(obj["h0"]),
            P=P,
            k=tuple(obj.get("k", [])),
            witness=SubspaceMatrix.from_json(obj["witness"]) if "witness" in obj else None,
            spec=SpaceSpec.from_json(obj["spec"]) if "spec" in obj else None,
            notes=obj.get("notes", {}),
        )


# --------------------------------------------------------- numeric helpers


def _ambient_vec(c_real: Sequence, c_imag: Sequence) -> list:
    """Complex vectors on C^p and C^q to a real vector of length 2n."""
    re = [mpmath.re(x) for x in c_real] + [mpmath.re(x) for x in c_imag]
    im = [mpmath.im(x) for x in c_real] + [mpmath.im(x) for x in c_imag]
    return re + im


def _mat_cols(cols: Sequence[Sequence]) -> mpmath.matrix:
    return nm.from_columns(cols)


def _rank(cols: Sequence[Sequence], tol=None) -> int:
    if not cols:
        return 0
    return nm.rank(_mat_cols(cols), tol=tol if tol is not None else CHECK_TOL)


def _apply(m: Sequence[Sequence], v: Sequence) -> list:
    return [sum((m[i][j] * v[j] for j in range(len(v))), mpmath.mpf(0)) for i in range(len(m))]


def _lstsq(e: mpmath.matrix, b: mpmath.matrix) -> mpmath.matrix:
    """Least squares for a matrix right-hand side, one column at a time."""
    out = mpmath.matrix(e.cols, b.cols)
    for j in range(b.cols):
        col = nm.least_squares(e, b.column(j))
        for i in range(e.cols):
            out[i, j] = col[i]
    return out


def _restrict(a: Sequence[Sequence], cols: list[list]) -> list[list]:
    """Matrix X with A E = E X for the columns E of an A-invariant subspace."""
    with mpmath.workdps(WORK_DPS):
        e = _mat_cols(cols)
        ae = _mat_cols([_apply(a, c) for c in cols])
        x = _lstsq(e, ae)
        if nm.max_abs(e * x - ae) > CHECK_TOL * max(1, nm.max_abs(ae)):
            raise InvariantViolation("subspace is not invariant under A")
        return nm.rows_of(x)


def _gram(cols: Sequence[Sequence], omega: Sequence[Sequence]) -> list[list]:
    return [[sum((u[i] * omega[i][j] * v[j] for i in range(len(u)) for j in range(len(v))), mpmath.mpf(0)) for v in cols] for u in cols]


def _combine(cols: Sequence[Sequence], coeffs: Sequence) -> list:
    n = len(cols[0])
    return [sum((c * col[i] for c, col in zip(coeffs, cols)), mpmath.mpf(0)) for i in range(n)]


def _darboux(cols: list[list], omega: Sequence[Sequence]) -> list[list]:
    """Basis with omega-Gram in {0, 1, -1} (symplectic pairs, then radical vectors)."""

    def om(u, v):
        return sum((u[i] * omega[i][j] * v[j] for i in range(len(u)) for j in range(len(v))), mpmath.mpf(0))

    rest = [list(c) for c in cols]
    out: list[list] = []
    radical: list[list] = []
    scale = max([mpmath.mpf(1)] + [abs(x) for r in omega for x in r])
    while rest:
        e = rest.pop(0)
        idx = next((j for j, w in enumerate(rest) if abs(om(e, w)) > CHECK_TOL * scale), None)
        if idx is None:
            radical.append(e)
            continue
        w = rest.pop(idx)
        f = [x / om(e, w) for x in w]
        rest = [[x - om(u, f) * y + om(u, e) * z for x, y, z in zip(u, e, f)] for u in rest]
        out += [e, f]
    return out + radical


def _select_independent(cols: list[list]) -> list[list]:
    out: list[list] = []
    for c in cols:
        if _rank(out + [c], tol=MATCH_TOL) == len(out) + 1:
            out.append(c)
    return out


def _int_matrix(m: Sequence[Sequence], what: str) -> list[list[int]]:
    ints = [[int(mpmath.nint(x)) for x in r] for r in m]
    for r, ri in zip(m, ints):
        for x, xi in zip(r, ri):
            if abs(x - xi) > CHECK_TOL * 10**3:
                raise InvariantViolation(f"{what} is not integral (entry {mpmath.nstr(x, 12)})")
    return ints


def _B_real(P: SpecialConstellation) -> list[list]:
    """L(P) + phi(P) as a real 2q x 2q matrix on (Re; Im)."""
    q = P.d
    mu = [m.to_mpf() for m in P.mu]
    phi = [[x.to_mpf() for x in r] for r in P.phi()]
    b = [[mpmath.mpf(0)] * (2 * q) for _ in range(2 * q)]
    for i in range(q):
        for j in range(q):
            b[i][j] = phi[i][j]
            b[q + i][q + j] = phi[i][j]
        b[i][q + i] = -mu[i]
        b[q + i][i] = mu[i]
    return b


def _phi_I(P: SpecialConstellation) -> list[list]:
    """exp(2 pi phi(P)) as a real q x q matrix."""
    q = P.d
    m = [[mpmath.mpf(int(i == j)) for j in range(q)] for i in range(q)]
    for a, c, g in P.gamma_pairs():
        ang = 2 * mpmath.pi * g.to_mpf()
        co, si = mpmath.cos(ang), mpmath.sin(ang)
        m[a][a], m[a][c], m[c][a], m[c][c] = co, -si, si, co
    return m


def _witness_vectors(witness: SubspaceMatrix) -> list[list]:
    out = []
    for v in matrix_to_basis(witness):
        out.append([mpmath.mpc(_mpf(x), _mpf(y)) for x, y in v])
    return out


def _quotient_poly(f1: IntPolynomial, q0: int) -> IntPolynomial:
    x = sp.Symbol("x")
    num = sp.Poly(list(reversed(f1.coeffs)), x)
    den = sp.Poly((x - 1) ** q0, x)
    quo, rem = sp.div(num, den)
    if not rem.is_zero:
        raise InvariantViolation(f"(x-1)^{q0} does not divide f1 = {f1}")
    return IntPolynomial.from_sympy(quo)


# --------------------------------------------------------------- building


def space_from_spec(spec: SpaceSpec, seed: int = DEFAULT_SEED) -> tuple[CWParams, QuotientCertificate]:
    """Construct parameters and a quotient certificate from (f, P, k)."""
    spec = bind_spec(spec)
    bad = validate_spec(spec)
    if bad:
        raise NotAdmissible("; ".join(bad))
    P, k = spec.P, spec.k
    q = P.d
    verdict = is_P_admissible(P, k, seed=seed) if q else None
    if verdict is not None and verdict.status != "yes":
        raise NotAdmissible(f"k = {list(k)} is not P-admissible ({verdict.status}): {verdict.obstruction}")
    with mpmath.workdps(WORK_DPS):
        split = split_roots(spec.f)
        layout = real_layout(split)
        params = spec_params(spec, split)
        p = params.p
        n = p + q
        amb = Ambient(params.lam, params.mu)

        # phi0 = phi_R + exp(2 pi phi(P)), A = e^L phi0
        phi_n = block_diagonal([layout.rotation, _phi_I(P)]) if n else []
        phi0 = amb.lift_phi(phi_n)
        a_mat = [[sum((e * f for e, f in zip(row, col)), mpmath.mpf(0)) for col in zip(*phi0)] for row in amb.exp_tL(1)]
        omega = [[_mpf(x) for x in r] for r in amb.omega_matrix()]
        zero_p = [mpmath.mpc(0)] * p
        zero_q = [mpmath.mpc(0)] * q

        e_r0 = [_ambient_vec(v, zero_q) for v in layout.v0]
        e_r1 = [_ambient_vec(v, zero_q) for v in layout.v1]
        e_i0: list[list] = []
        e_i1: list[list] = []
        witness = verdict.witness if verdict is not None else None
        if q:
            wvecs = _witness_vectors(witness)
            e_i = [[mpmath.re(x) for x in v] + [mpmath.im(x) for x in v] for v in wvecs]
            b_real = _B_real(P)
            be = [_apply(b_real, v) for v in e_i]
            kernel = nm.rref_nullspace(_mat_cols(be), tol=MATCH_TOL) if be else []
            v_i0 = [_combine(e_i, c) for c in kernel]
            v_i1 = _select_independent(be)
            if len(v_i0) + len(v_i1) != q:
                raise InvariantViolation("V_I does not split as ker B + B(V_I)")

            def lift(v: list) -> list:
                return [mpmath.mpf(0)] * p + v[:q] + [mpmath.mpf(0)] * p + v[q:]

            e_i0 = [lift(v) for v in v_i0]
            e_i1 = [lift(v) for v in v_i1]

        vectors: list[list] = []
        blocks: list[list[list[int]]] = []
        notes: dict[str, Any] = {"f0": split.f0.to_json(), "f1": split.f1.to_json(), "dims": {}}
        # isotropic real block: any A-stable lattice
        if e_r0:
            x0 = _restrict(a_mat, e_r0)
            lb = stable_lattice(x0, split.f0)
            vectors += [_combine(e_r0, c) for c in lb.vectors]
            blocks.append(lb.operator)
        # symplectic block V^1 = V_R^1 + V_I^1
        e1 = e_r1 + e_i1
        if e1:
            x1 = _restrict(a_mat, e1)
            w1 = _gram(e1, omega)
            g1 = _quotient_poly(split.f1, len(e_i0))
            lb = symplectic_stable_lattice(x1, w1, g1)
            vectors += [_combine(e1, c) for c in lb.vectors]
            blocks.append(lb.operator)
        # A acts trivially on V_I^0: any omega-integral lattice
        if e_i0:
            vectors += _darboux(e_i0, omega)
            blocks.append([[int(i == j) for j in range(len(e_i0))] for i in range(len(e_i0))])
        notes["dims"] = {"V_R0": len(e_r0), "V_R1": len(e_r1), "V_I0": len(e_i0), "V_I1": len(e_i1)}
        gram = _int_matrix(_gram(vectors, omega), "omega on Lambda_0") if vectors else []
        operator = block_diagonal(blocks) if blocks else []
        lattice = LatticeBasis(vectors, [list(map(int, r)) for r in operator], gram, note={"construction": "V_R0 + V^1 + V_I0"})
        if verdict is not None:
            notes["admissibility"] = verdict.details.get("construction")
        notes["minimal_P"] = is_minimal(P) if q else True
        cert = QuotientCertificate(
            params=params,
            V=e_r0 + e1 + e_i0,
            lattice=lattice,
            central=Fraction(1, 2),
            t0=Fraction(1),
            phi0=phi0,
            h0=GroupElement.make(amb),
            P=P,
            k=tuple(k),
            witness=witness,
            spec=spec,
            notes=notes,
        )
    return params, cert


# -------------------------------------------------------------- verifying


@dataclass
class Verification:
    ok: bool
    reasons: list[str]
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "reasons": self.reasons, "details": self.details}


REASON_CONDITION_A = "e^{tL}V meets a_+"


def _same_params(a: CWParams, b: CWParams) -> bool:
    if (a.p, a.q) != (b.p, b.q):
        return False
    with mpmath.workdps(WORK_DPS):
        return all(abs(_mpf(x) - _mpf(y)) <= CHECK_TOL * max(1, abs(_mpf(x))) for x, y in zip(a.lam + a.mu, b.lam + b.mu))


def _failure_time(params: CWParams, k: Sequence[int]) -> Any:
    """Some t > 0 at which e^{tL} turns a vector of i R^q into a real vector (Type I data)."""
    mus = [abs(_mpf(m)) for m in params.mu]
    if not mus:
        return None
    return mpmath.pi / (2 * max(mus))


def verify_certificate(params: CWParams, cert: QuotientCertificate) -> Verification:
    """Re-check the certificate against the given parameters; never raises."""
    try:
        with mpmath.workdps(WORK_DPS):
            return _verify(params, cert)
    except CWQError as exc:
        return Verification(False, [f"{type(exc).__name__}: {exc}"])
    except (ValueError, ZeroDivisionError, IndexError) as exc:
        return Verification(False, [f"malformed certificate: {exc}"])


def _verify(params: CWParams, cert: QuotientCertificate) -> Verification:
    reasons: list[str] = []
    details: dict[str, Any] = {}
    if not _same_params(params, cert.params):
        reasons.append("certificate parameters differ from the given parameters")
    p, q = params.p, params.q
    n = p + q
    amb = Ambient(params.lam, params.mu)
    V = [[_mpf(x) for x in v] for v in cert.V]
    if len(V) != n or any(len(v) != 2 * n for v in V) or _rank(V) != n:
        reasons.append(f"dim V != p + q = {n}")
        return Verification(False, reasons)
    # V cap a_+ = 0 <=> the imaginary parts are independent
    if _rank([v[n:] for v in V]) != n:
        reasons.append("V meets a_+")
    proj_r = [v[:p] + v[n : n + p] for v in V]
    proj_i = [v[p:n] + v[n + p :] for v in V]
    if (p and _rank(proj_r) != p) or (q and _rank(proj_i) != q):
        reasons.append("V does not split as V_R + V_I")
    lm = amb.L_matrix()
    if p:
        lv = [_apply(lm, v) for v in V]
        lv_r = [v[:p] + v[n : n + p] for v in lv]
        if _rank(proj_r + lv_r) != p:
            reasons.append("V_R is not L-invariant")
    if q:
        if cert.witness is None:
            reasons.append("missing V_I witness")
        else:
            w = cert.witness
            basis = matrix_to_basis(w)
            wv = [[_mpf(x) for x, _ in v] + [_mpf(y) for _, y in v] for v in basis]
            if len(basis) != q or _rank(proj_i + wv) != q:
                reasons.append("V_I does not match the attached witness")
            if not is_invariant(basis, cert.P.mu, cert.P.phi()):
                reasons.append("V_I is not invariant under L(P) + phi(P)")
            cc = is_good(cert.k, w)
            details["circle_certificate"] = cc.to_json()
            if not cc.good:
                reasons.append(REASON_CONDITION_A)
                t_bad = _failure_time(params, cert.k)
                if t_bad is not None:
                    details["failure_time_hint"] = mpmath.nstr(t_bad, 15)
            with mpmath.workdps(WORK_DPS):
                want = [2 * mpmath.pi * (m + kk).to_mpf() for m, kk in zip(cert.P.mu, cert.k)]
            if len(want) != q or any(abs(_mpf(a) - b) > CHECK_TOL * max(1, abs(b)) for a, b in zip(params.mu, want)):
                reasons.append("mu does not equal 2 pi (mu(P) + k)")
    t0 = to_scalar(cert.t0)
    if t0 == 0:
        reasons.append("t0 = 0")
    h0 = cert.h0
    if any(x != 0 for x in h0.a) or h0.t != 0 or any(
        abs(_mpf(h0.phi[i][j]) - int(i == j)) > CHECK_TOL for i in range(2 * n) for j in range(2 * n)
    ):
        reasons.append("h0 is not central")
    phi0 = [[_mpf(x) for x in r] for r in cert.phi0]
    if not amb.in_K(phi0, tol=CHECK_TOL):
        reasons.append("phi0 is not in K")
    # lattice: spans V, A-stable with det +-1, omega-integral
    lat = cert.lattice
    vecs = [[_mpf(x) for x in v] for v in lat.vectors]
    if len(vecs) != n or _rank(vecs) != n or _rank(V + vecs) != n:
        reasons.append("Lambda_0 is not a lattice in V")
    else:
        e = amb.exp_tL(t0)
        a_mat = [[sum((x * y for x, y in zip(row, col)), mpmath.mpf(0)) for col in zip(*phi0)] for row in e]
        num_lat = LatticeBasis(vecs)
        reasons += stability_report(num_lat, a_mat, None)
        gram = _gram(vecs, amb.omega_matrix())
        half = cert.central
        if half <= 0:
            reasons.append("central generator must be positive")
        else:
            for i in range(n):
                for j in range(n):
                    val = gram[i][j] / 2 / (half.numerator / mpmath.mpf(half.denominator))
                    if abs(val - mpmath.nint(val)) > CHECK_TOL * 10**3:
                        reasons.append(f"omega(b_{i}, b_{j})/2 is not a multiple of the central generator")
                        break
                else:
                    continue
                break
    return Verification(not reasons, reasons, details)


# --------------------------------------------------------------- generators


@dataclass
class GammaReport:
    central: GroupElement
    lattice: list[GroupElement]
    gamma0: GroupElement
    conjugation: list[list[int]]  # row i: coordinates of gamma0 lambda_i gamma0^{-1}
    commutators: list[list[int]]  # [lambda_i, lambda_j] in units of the central generator
    conjugation_charpoly: IntPolynomial
    center_nontrivial: bool
    non_abelian: bool

    @property
    def heisenberg_rank(self) -> int:
        return sp.Matrix(self.commutators).rank() // 2 if self.commutators else 0

    def to_json(self) -> dict:
        return {
            "central": self.central.to_json(),
            "lattice": [g.to_json() for g in self.lattice],
            "gamma0": self.gamma0.to_json(),
            "conjugation": self.conjugation,
            "commutators": self.commutators,
            "conjugation_charpoly": self.conjugation_charpoly.to_json(),
            "center_nontrivial": self.center_nontrivial,
            "non_abelian": self.non_abelian,
            "heisenberg_rank": self.heisenberg_rank,
        }


def gamma_generators(cert: QuotientCertificate) -> GammaReport:
    """Generators of Gamma = <Lambda, gamma0> and their relations, computed with the group law."""
    check = verify_certificate(cert.params, cert)
    if not check:
        raise UnverifiedCertificate("; ".join(check.reasons))
    with mpmath.workdps(WORK_DPS):
        amb = cert.ambient()
        n = amb.n
        vecs = [[_mpf(x) for x in v] for v in cert.lattice.vectors]
        lam_els = [GroupElement.make(amb, 0, v) for v in vecs]
        central = GroupElement.make(amb, cert.central)
        g0 = cert.gamma0
        g0_inv = group_inv(amb, g0)
        basis = _mat_cols(vecs)
        conj: list[list[int]] = []
        for el in lam_els:
            c = group_mul(amb, group_mul(amb, g0, el), g0_inv)
            if abs(_mpf(c.t)) > CHECK_TOL or abs(_mpf(c.z)) > CHECK_TOL:
                raise UnverifiedCertificate("conjugate of a lattice generator leaves z + V")
            coords = nm.least_squares(basis, nm.mat([[x] for x in c.a]))
            conj.append(_int_matrix([[coords[i] for i in range(n)]], "conjugation")[0])
        half = cert.central.numerator / mpmath.mpf(cert.central.denominator)
        comm: list[list[int]] = []
        for a in lam_els:
            row = []
            for b in lam_els:
                c = group_mul(amb, group_mul(amb, a, b), group_mul(amb, group_inv(amb, a), group_inv(amb, b)))
                if max([abs(_mpf(x)) for x in c.a] + [mpmath.mpf(0)]) > CHECK_TOL:
                    raise UnverifiedCertificate("commutator of lattice generators is not central")
                row.append(_int_matrix([[_mpf(c.z) / half]], "commutator")[0][0])
            comm.append(row)
    cm = sp.Matrix(conj).T if conj else sp.zeros(0, 0)
    x = sp.Symbol("x")
    cp = IntPolynomial.from_sympy(sp.Poly(cm.charpoly(x).as_expr(), x)) if conj else IntPolynomial([1])
    nontrivial_conj = any(conj[i][j] != int(i == j) for i in range(len(conj)) for j in range(len(conj)))
    nonzero_comm = any(v != 0 for r in comm for v in r)
    return GammaReport(central, lam_els, g0, conj, comm, cp, cert.central != 0, nontrivial_conj or nonzero_comm)


# ----------------------------------------------------------- CWfalsch data


def cwfalsch_certificate(k: Sequence[int]) -> tuple[CWParams, QuotientCertificate]:
    """V = a_- = i R^q on X_{0,q}(2 pi k) with Gamma = Z x Gamma_0 x Z (Type I blocks)."""
    k = tuple(int(x) for x in k)
    q = len(k)
    with mpmath.workdps(WORK_DPS):
        params = CWParams([], [2 * mpmath.pi * kk for kk in k])
        amb = Ambient(params.lam, params.mu)
        vecs = [[mpmath.mpf(0)] * q + [mpmath.mpf(int(i == j)) for j in range(q)] for i in range(q)]
        lattice = LatticeBasis(vecs, [[int(i == j) for j in range(q)] for i in range(q)], [[0] * q for _ in range(q)])
        P = SpecialConstellation(tuple(Block("I") for _ in range(q)))
        witness = SubspaceMatrix([[(Fraction(0), Fraction(int(i == j))) for j in range(q)] for i in range(q)])
        cert = QuotientCertificate(
            params=params,
            V=[list(v) for v in vecs],
            lattice=lattice,
            central=Fraction(1),
            t0=Fraction(1),
            phi0=identity(2 * q),
            h0=GroupElement.make(amb),
            P=P,
            k=k,
            witness=witness,
            notes={"construction": "V = a_- with an arbitrary lattice"},
        )
    return params, cert


# ================================================================== flags


@dataclass
class Flags:
    transvection: bool
    solvmanifold: bool
    group_manifold: bool
    straight_only: bool
    fundamental_rank_r: int | None = None
    reasons: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "transvection": self.transvection,
            "solvmanifold": self.solvmanifold,
            "group_manifold": self.group_manifold,
            "straight_only": self.straight_only,
            "fundamental_rank_r": self.fundamental_rank_r,
            "reasons": self.reasons,
        }


def _all_off_circle_real(f: IntPolynomial) -> bool:
    for data in circle_factor_data(f):
        off = data.factor.degree - data.circle_roots
        if data.real_off_circle != off:
            return False
    return True


def _even_multiplicities(values: Sequence[Number]) -> bool:
    left = [abs(v) for v in values]
    while left:
        v = left.pop(0)
        idx = next((i for i, w in enumerate(left) if w == v), None)
        if idx is None:
            return False
        left.pop(idx)
    return True


def flags(spec: SpaceSpec, cert: QuotientCertificate | None = None, seed: int = DEFAULT_SEED) -> Flags:
    spec = bind_spec(spec)
    kinds = [b.subkind for b in spec.P.blocks]
    reasons: dict[str, str] = {}
    real_roots = _all_off_circle_real(spec.f)
    trans = real_roots and all(kd in ("I", "II.b") for kd in kinds)
    reasons["transvection"] = (
        "off-circle roots real and blocks of Type I / II.b only" if trans else "needs all off-circle roots real and only Type I / II.b blocks"
    )
    solv = all(x == 0 for x in spec.k) and not any(kd in ("I", "II.c") for kd in kinds)
    reasons["solvmanifold"] = (
        "k = 0 and no Type I / II.c blocks (checked for the spec as given)"
        if solv
        else "spec as given has k != 0 or a Type I / II.c block; equivalent respecifications not searched"
    )
    values = [m + kk for m, kk in zip(spec.P.mu, spec.k)]
    group = spec.p == 0 and spec.q > 0 and _even_multiplicities(values)
    reasons["group_manifold"] = "imaginary type, every |mu_j| with even multiplicity" if group else "not imaginary type with even multiplicities"
    r = None
    if cert is None:
        try:
            _, cert = space_from_spec(spec, seed=seed)
        except CWQError as exc:
            reasons["fundamental_rank_r"] = f"no certificate: {exc}"
    if cert is not None:
        g = cert.lattice.gram
        r = sp.Matrix(g).rank() // 2 if g else 0
    return Flags(trans, solv, group, not group, r, reasons)


# ============================================================ composition


def compose(s1: SpaceSpec, s2: SpaceSpec) -> SpaceSpec:
    """f = f1 f2, P = (P1 | P2), k = (k1, k2)."""
    for name, val in s2.bindings.items():
        if name in s1.bindings and s1.bindings[name] != val:
            raise ConstellationClash(f"symbol {name} is bound to different values")
    P = s1.P.compose(s2.P)
    return SpaceSpec(s1.f * s2.f, P, s1.k + s2.k, {**s1.bindings, **s2.bindings})


def empty_spec() -> SpaceSpec:
    return SpaceSpec(IntPolynomial([1]))


# ==================================================== default constellation


def default_constellation(f: IntPolynomial) -> SpaceSpec:
    """A constellation P with nu(P) = nu_c(f), nonzero mu(P) and k = 0.

    Unimodular roots are paired as e^{+-2 pi i rho}; a pair gives the Type II
    block (rho, 0) and, when the count is odd, the first pair together with
    one root 1 gives the Type IV block (rho, 0). Roots 1 pair with rho = 1 and
    roots -1 with rho = 1/2.
    """
    if not validate_otto(f):
        raise NotAdmissible("f must be monic with constant term +-1")
    q = unit_circle_root_count(f)[0]
    if q == 1:
        raise NotAdmissible("exactly one root on the unit circle")
    rhos: list[Number] = []
    bindings: dict[str, str] = {}
    ones = minus = 0
    sym_idx = 0
    for data in circle_factor_data(f):
        if not data.circle_roots:
            continue
        h = data.factor
        if h.degree == 1:
            if h.constant_term == -1:
                ones += data.multiplicity
            else:
                minus += data.multiplicity
            continue
        m = _cyclotomic_index(h)
        for _ in range(data.multiplicity):
            if m is not None:
                rhos += [Number(Fraction(a, m)) for a in range(1, (m + 1) // 2) if math.gcd(a, m) == 1]
            else:
                with mpmath.workdps(ROOT_DPS):
                    roots = [r for r in _roots_of_factor(h) if abs(abs(r) - 1) < MATCH_TOL and r.imag > 0]
                    for r in sorted(roots, key=lambda z: float(mpmath.arg(z))):
                        sym_idx += 1
                        name = f"τ{sym_idx}"
                        bindings[name] = mpmath.nstr(mpmath.arg(r) / (2 * mpmath.pi), ROOT_DPS - 5)
                        rhos.append(Number.symbol(name, bindings[name]))
    if minus % 2:
        raise NotAdmissible("-1 has odd multiplicity among the unimodular roots")
    odd = q % 2 == 1
    if odd:
        ones -= 1
    rhos += [Number(Fraction(1, 2))] * (minus // 2) + [Number(1)] * (ones // 2)
    blocks = []
    for i, rho in enumerate(rhos):
        if i == 0 and odd:
            blocks.append(Block("IV", (rho, Number(0))))
        else:
            blocks.append(Block("II", (rho, Number(0))))
    if odd and not rhos:
        raise NotAdmissible("odd number of unimodular roots needs a non-real pair")
    P = SpecialConstellation(tuple(blocks))
    return SpaceSpec(f, P, (0,) * P.d, bindings)


# ============================================================ classification


@dataclass
class ClassifyResult:
    verdict: str  # "yes", "no" or "unknown"
    reasons: list[str]
    witness: SpaceSpec | None = None
    heuristic: bool = False
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"verdict": self.verdict, "reasons": self.reasons, "heuristic": self.heuristic}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.details:
            out["details"] = self.details
        return out


def _values(xs: Sequence[Any]) -> list:
    return [to_scalar(x) for x in xs]


def _exact(xs: Sequence[Any]) -> bool:
    return all(isinstance(x, Fraction) for x in xs)


def trace_signs(values: Sequence[Any], tol: float = SEARCH_TOL) -> list[tuple[int, ...]]:
    """All sign vectors (first sign +) with sum of signed values zero."""
    vals = _values(values)
    if not vals:
        return [()]
    exact = _exact(vals)
    scale = max(abs(_mpf(v)) for v in vals)
    out = []
    for rest in itertools.product((1, -1), repeat=len(vals) - 1):
        signs = (1,) + rest
        s = sum((c * v for c, v in zip(signs, vals)), Fraction(0) if exact else mpmath.mpf(0))
        if (s == 0) if exact else abs(s) <= tol * scale:
            out.append(signs)
    return out


def rational_ratio(x: Any, y: Any, bound: int = RATIONAL_DENOMINATOR_BOUND) -> Fraction | None:
    """x / y when exact; otherwise a continued-fraction guess with bounded denominator."""
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x / y
    r = _mpf(x) / _mpf(y)
    guess = Fraction(float(r)).limit_denominator(bound)
    if abs(r - _mpf(guess)) <= SEARCH_TOL * max(1, abs(r)):
        return guess
    return None


def _werwolf_count(ratios: Sequence[Fraction]) -> int:
    counts = Counter(abs(r) for r in ratios)
    return sum(1 for c in counts.values() if c % 2)


def _shell(h: int, m: int):
    """Integer tuples of length m with max |a_i| = h, in lexicographic order."""
    rng = range(-h, h + 1)
    for t in itertools.product(rng, repeat=m):
        if m == 0 or max(abs(x) for x in t) == h:
            yield t


def _log_pattern(roots: np.ndarray) -> np.ndarray:
    logs = np.sort(np.abs(np.log(np.abs(roots))), axis=1)
    return logs


def otto_search(target: Sequence[float], p: int, bound: int = DEFAULT_COEFF_BOUND, budget: int = DEFAULT_SEARCH_BUDGET):
    """First monic degree-p polynomial with constant +-1 whose |log|nu|| pattern matches target.

    Order: constant +1 before -1, then height max|a_i|, then lexicographic
    order of (a_{p-1}, ..., a_1). Returns (f, scale, examined) or (None, None, examined).
    """
    tgt = np.array(sorted(abs(float(t)) for t in target))
    tgt = tgt / tgt[0]
    examined = 0
    m = p - 1
    for const in (1, -1):
        for h in range(0, bound + 1):
            batch = list(_shell(h, m))
            if not batch:
                continue
            examined += len(batch)
            if examined > budget:
                return None, None, examined
            arr = np.array(batch, dtype=float).reshape(len(batch), m)
            comp = np.zeros((len(batch), p, p))
            if p > 1:
                comp[:, 1:, :-1] = np.eye(p - 1)
            # coefficients low -> high: const, a_1, ..., a_{p-1}, 1
            comp[:, 0, -1] = -const
            if m:
                comp[:, 1:, -1] = -arr[:, ::-1][:, ::-1]
            roots = np.linalg.eigvals(comp)
            mods = np.abs(roots)
            ok = np.all(np.abs(mods - 1) > 1e-6, axis=1)
            if not ok.any():
                continue
            logs = np.sort(np.abs(np.log(mods[ok])), axis=1)
            norm = logs / logs[:, :1]
            hit = np.all(np.abs(norm - tgt) <= 1e-6 * np.maximum(1, tgt), axis=1)
            for idx in np.nonzero(hit)[0]:
                coeffs_mid = batch[int(np.nonzero(ok)[0][idx])]
                f = IntPolynomial([const] + list(coeffs_mid) + [1])
                scale = _confirm_pattern(f, target)
                if scale is not None:
                    return f, scale, examined
    return None, None, examined


def _confirm_pattern(f: IntPolynomial, target: Sequence[Any]):
    """High-precision re-check of a numeric hit; returns the scaling constant c with lambda = c log|nu|."""
    if unit_circle_root_count(f)[0] != 0:
        return None
    with mpmath.workdps(WORK_DPS):
        roots = [r for data in circle_factor_data(f) for r in _roots_of_factor(data.factor) for _ in range(data.multiplicity)]
        logs = sorted(abs(mpmath.log(abs(r))) for r in roots)
        tg = sorted(abs(_mpf(t)) for t in target)
        if len(logs) != len(tg) or logs[0] == 0:
            return None
        c = tg[0] / logs[0]
        for a, b in zip(logs, tg):
            if abs(a * c - b) > SEARCH_TOL * max(1, abs(b)):
                return None
        return c


def classify_real(lam: Sequence[Any], bound: int = DEFAULT_COEFF_BOUND, budget: int = DEFAULT_SEARCH_BUDGET) -> ClassifyResult:
    vals = _values(lam)
    p = len(vals)
    if p < 1:
        raise DimensionMismatch("classify_real needs p >= 1")
    if any(v == 0 for v in vals):
        return ClassifyResult("no", ["parameters must be nonzero"])
    exact = _exact(vals)
    signs = trace_signs(vals)
    if not signs:
        return ClassifyResult("no", ["trace condition: no signs with sum +-lambda_i = 0"], details={"sign_vectors_checked": 2 ** (p - 1)})
    reasons = [f"trace condition holds ({len(signs)} sign vectors)"]
    ref = min(vals, key=lambda v: abs(v))
    ratios = [rational_ratio(v, ref) for v in vals]
    heuristic = False
    if all(r is not None for r in ratios):
        d = _werwolf_count(ratios)
        if exact:
            if 3 * d > p:
                return ClassifyResult("no", reasons + [f"rational ratios with d = {d} > n/3 distinct odd-multiplicity values"], details={"d": d})
            reasons.append(f"rational ratios, d = {d} <= n/3")
        else:
            heuristic = True
            reasons.append(f"ratios look rational (continued fractions, denominators <= {RATIONAL_DENOMINATOR_BOUND}); d = {d}; heuristic only")
    f, scale, examined = otto_search([_mpf(v) for v in vals], p, bound, budget)
    details = {"coefficient_bound": bound, "polynomials_examined": examined}
    if f is None:
        why = "search budget exhausted" if examined > budget else f"no polynomial with |a_i| <= {bound} matches"
        return ClassifyResult("unknown", reasons + [why], heuristic=heuristic, details=details)
    details["scaling"] = mpmath.nstr(scale, 20)
    return ClassifyResult("yes", reasons + [f"f = {f} has matching |log|nu|| pattern"], SpaceSpec(f), heuristic, details)


def _primitive(ints: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints)


def _imaginary_witness(k0: Sequence[int], pairs: Sequence[Any], scale: Any) -> SpaceSpec:
    q = len(k0) + 2 * len(pairs)
    blocks = [Block("I") for _ in k0]
    bindings: dict[str, str] = {}
    for j, w in enumerate(pairs):
        m = w * scale if isinstance(w, Fraction) and isinstance(scale, Fraction) else None
        if m is None:
            name = f"m{j + 1}"
            with mpmath.workdps(WORK_DPS):
                bindings[name] = mpmath.nstr(_mpf(w) * _mpf(scale), WORK_DPS - 5)
            num = Number.symbol(name, bindings[name])
        else:
            num = Number(m)
        blocks.append(Block("II", (Number(0), num * 2)))
    f = IntPolynomial([-1, 1]) ** q
    return SpaceSpec(f, SpecialConstellation(tuple(blocks)), tuple(k0) + (0,) * (2 * len(pairs)), bindings)


def classify_imaginary(mu: Sequence[Any], seed: int = DEFAULT_SEED, max_candidates: int = 200) -> ClassifyResult:
    vals = _values(mu)
    q = len(vals)
    if q < 1:
        raise DimensionMismatch("classify_imaginary needs q >= 1")
    if any(v == 0 for v in vals):
        return ClassifyResult("no", ["parameters must be nonzero"])
    if q == 1:
        return ClassifyResult("no", ["type (0,1) never admits compact quotients"])
    if not trace_signs(vals):
        return ClassifyResult("no", ["trace condition: no signs with sum +-mu_j = 0"])
    exact = _exact(vals)
    absvals = [abs(v) for v in vals]
    # group equal values
    distinct: list = []
    counts: list[int] = []
    for v in absvals:
        for i, w in enumerate(distinct):
            if (v == w) if exact else abs(_mpf(v) - _mpf(w)) <= SEARCH_TOL * _mpf(w):
                counts[i] += 1
                break
        else:
            distinct.append(v)
            counts.append(1)
    # rational-ratio classes
    classes: list[list[int]] = []
    heuristic = not exact
    for i, v in enumerate(distinct):
        for cl in classes:
            if rational_ratio(v, distinct[cl[0]]) is not None:
                cl.append(i)
                break
        else:
            classes.append([i])
    odd = [i for i, c in enumerate(counts) if c % 2]
    reasons = ["trace condition holds"]
    if heuristic:
        reasons.append(f"rational ratios detected by continued fractions (denominators <= {RATIONAL_DENOMINATOR_BOUND}); heuristic")
    if not odd:
        pairs = [distinct[i] for i, c in enumerate(counts) for _ in range(c // 2)]
        scale = Fraction(1) / min(pairs) if exact else 1 / _mpf(min(pairs, key=_mpf))
        wit = _imaginary_witness((), pairs, scale)
        return ClassifyResult("yes", reasons + ["all |mu_j| have even multiplicity (group manifold)"], wit, heuristic, {"k": []})
    home = [cl for cl in classes if set(odd) <= set(cl)]
    if not home:
        return ClassifyResult("no", reasons + ["parity obstruction: values of odd multiplicity are not commensurable"], heuristic=heuristic)
    cl = home[0]
    # per value in the class: how many copies go to the integer part
    options = []
    for i in cl:
        c = counts[i]
        options.append(list(range(c % 2, c + 1, 2)))
    choices = sorted(itertools.product(*options), key=lambda t: (sum(t), t))
    unknown: list[str] = []
    tried = 0
    for choice in choices:
        if sum(choice) == 0:
            continue
        tried += 1
        if tried > max_candidates:
            unknown.append("candidate budget exhausted")
            break
        part = [distinct[i] for i, c in zip(cl, choice) for _ in range(c)]
        ref = part[0]
        ratios = [rational_ratio(v, ref) for v in part]
        den = 1
        for r in ratios:
            den = den * r.denominator // math.gcd(den, r.denominator)
        ints = [int(r * den) for r in ratios]
        k0 = tuple(sorted(_primitive(ints)))
        verdict = decide_R_admissible(k0, seed=seed)
        if verdict.status == "yes":
            scale = Fraction(k0[0]) / ref if isinstance(ref, Fraction) else _mpf(k0[0]) / _mpf(ref)
            # match k0[0] to the smallest value of the part
            small = min(part, key=_mpf)
            scale = Fraction(k0[0]) / small if isinstance(small, Fraction) else _mpf(k0[0]) / _mpf(small)
            rest = []
            for i, c in enumerate(counts):
                used = choice[cl.index(i)] if i in cl else 0
                rest += [distinct[i]] * ((c - used) // 2)
            wit = _imaginary_witness(k0, rest, scale)
            return ClassifyResult(
                "yes",
                reasons + [f"k = {list(k0)} is R-admissible ({verdict.details.get('construction', 'witness found')})"],
                wit,
                heuristic,
                {"k": list(k0)},
            )
        if verdict.status == "unknown":
            unknown.append(f"k = {list(k0)}: {verdict.obstruction}")
    if unknown:
        return ClassifyResult("unknown", reasons + unknown, heuristic=heuristic)
    return ClassifyResult("no", reasons + ["no split into an R-admissible integer part and even-multiplicity pairs"], heuristic=heuristic)


def classify(lam: Sequence[Any] = (), mu: Sequence[Any] = (), seed: int = DEFAULT_SEED, bound: int = DEFAULT_COEFF_BOUND) -> ClassifyResult:
    """Dispatch on the type (p, q)."""
    p, q = len(lam), len(mu)
    if p == 0 and q == 0:
        raise DimensionMismatch("(p, q) must not be (0, 0)")
    if q == 0:
        return classify_real(lam, bound=bound)
    if p == 0:
        return classify_imaginary(mu, seed=seed)
    if p == 1 or q == 1:
        return ClassifyResult("no", [f"type ({p},{q}) never admits compact quotients"])
    if not trace_signs(lam):
        return ClassifyResult("no", ["trace condition fails for lambda"])
    if not trace_signs(mu):
        return ClassifyResult("no", ["trace condition fails for mu"])
    return ClassifyResult("unknown", ["necessary conditions hold; mixed-type search is not implemented"])


__all__ = [
    "RootSplit",
    "split_roots",
    "circle_angles",
    "SpaceSpec",
    "bind_spec",
    "validate_spec",
    "check_nu_match",
    "spec_params",
    "real_layout",
    "QuotientCertificate",
    "space_from_spec",
    "Verification",
    "verify_certificate",
    "REASON_CONDITION_A",
    "GammaReport",
    "gamma_generators",
    "cwfalsch_certificate",
    "Flags",
    "flags",
    "compose",
    "empty_spec",
    "default_constellation",
    "ClassifyResult",
    "trace_signs",
    "rational_ratio",
    "otto_search",
    "classify_real",
    "classify_imaginary",
    "classify",
]
