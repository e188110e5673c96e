"""Cahen-Wallach parameters, the metric and the group H_n(omega) x| (R x K).

Ambient model: a = C^p + C^q with real coordinates (Re z; Im z) in R^{2n},
theta_a = complex conjugation, L = (L_lambda o conj) + L_mu and
omega(u, v) = sum_j c_j Im(conj(u_j) v_j) with c = (lambda, mu).

Scalars are Fractions when exact and mpmath numbers otherwise; e^{tL} is
transcendental for t != 0 and is evaluated at WORK_DPS digits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import mpmath

from .errors import DimensionMismatch, IncompatibleAmbient
from .paramfield import Number

WORK_DPS = 50
FLOAT_TOL = 1e-12
Scalar = Any  # Fraction or mpmath.mpf


def to_scalar(x: Any) -> Scalar:
    """Fraction for exact inputs (int, Fraction, rational Number, rational str); mpf otherwise."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Number):
        return x.rational if x.is_rational else x.to_mpf()
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            return Number.parse(x).to_mpf() if not _looks_float(x) else mpmath.mpf(x)
    if isinstance(x, float):
        return mpmath.mpf(x)
    if isinstance(x, mpmath.mpf):
        return x
    return mpmath.mpf(x)


def _looks_float(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def is_exact(x: Scalar) -> bool:
    return isinstance(x, Fraction)


def scalar_str(x: Scalar) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return mpmath.nstr(x, 30)


def _abs(x: Scalar) -> Scalar:
    return abs(x)


# ------------------------------------------------------------- parameters


@dataclass(frozen=True)
class CWParams:
    p: int
    q: int
    lam: tuple[Scalar, ...]
    mu: tuple[Scalar, ...]

    def __init__(self, lam: Sequence[Any] = (), mu: Sequence[Any] = ()):
        lam_s = tuple(to_scalar(x) for x in lam)
        mu_s = tuple(to_scalar(x) for x in mu)
        if not lam_s and not mu_s:
            raise ValueError("(p, q) must not be (0, 0)")
        if any(x == 0 for x in lam_s + mu_s):
            raise ValueError("all parameters must be nonzero")
        object.__setattr__(self, "p", len(lam_s))
        object.__setattr__(self, "q", len(mu_s))
        object.__setattr__(self, "lam", lam_s)
        object.__setattr__(self, "mu", mu_s)

    @property
    def exact(self) -> bool:
        return all(is_exact(x) for x in self.lam + self.mu)

    @property
    def kind(self) -> str:
        if self.q == 0:
            return "real"
        if self.p == 0:
            return "imaginary"
        return "mixed"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "lambda": [scalar_str(x) for x in self.lam],
            "mu": [scalar_str(x) for x in self.mu],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CWParams":
        return cls([_parse_scalar(x) for x in obj.get("lambda", [])], [_parse_scalar(x) for x in obj.get("mu", [])])


def _parse_scalar(x: Any) -> Scalar:
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            with mpmath.workdps(WORK_DPS):
                return mpmath.mpf(x)
    return to_scalar(x)


def _order_key(x: Scalar) -> mpmath.mpf:
    # Fractions and mpf values do not compare directly
    return mpmath.mpf(x.numerator) / x.denominator if is_exact(x) else x


def normalize(params: CWParams) -> CWParams:
    """Canonical representative under scaling, sign changes and permutations.

    Mixed and imaginary types are scaled so that the smallest |mu| is 1,
    real type so that the smallest |lambda| is 1; entries are sorted.
    """
    lam = [abs(x) for x in params.lam]
    mu = [abs(x) for x in params.mu]
    with mpmath.workdps(WORK_DPS):
        ref = min(mu or lam, key=_order_key)
        lam_n = sorted((x / ref for x in lam), key=_order_key)
        mu_n = sorted((x / ref for x in mu), key=_order_key)
    return CWParams(lam_n, mu_n)


def _close(a: Scalar, b: Scalar) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    with mpmath.workdps(WORK_DPS):
        a, b = _order_key(a), _order_key(b)
        return abs(a - b) <= FLOAT_TOL * max(1, abs(a), abs(b))


def isometric(a: CWParams, b: CWParams) -> bool:
    """Same type and equal canonical forms (exact, or relative 1e-12 for floats)."""
    if (a.p, a.q) != (b.p, b.q):
        return False
    na, nb = normalize(a), normalize(b)
    return all(_close(x, y) for x, y in zip(na.lam + na.mu, nb.lam + nb.mu))


def metric_at(params: CWParams, point: Sequence[Any], u: Sequence[Any], v: Sequence[Any]) -> Scalar:
    """g = 2 dz dz' + sum dx_i^2 + (sum lambda_i^2 x_i^2 - sum mu_j^2 x_{p+j}^2) dz'^2.

    point = (z, x_1..x_n, z'); tangent vectors use the same coordinate order.
    """
    n = params.p + params.q
    if not (len(point) == len(u) == len(v) == n + 2):
        raise DimensionMismatch(f"expected {n + 2} coordinates")
    x = [to_scalar(c) for c in point[1 : n + 1]]
    uu = [to_scalar(c) for c in u]
    vv = [to_scalar(c) for c in v]
    pot = sum((params.lam[i] ** 2 * x[i] ** 2 for i in range(params.p)), Fraction(0))
    pot = pot - sum((params.mu[j] ** 2 * x[params.p + j] ** 2 for j in range(params.q)), Fraction(0))
    val = uu[0] * vv[-1] + uu[-1] * vv[0]
    val = val + sum((uu[1 + i] * vv[1 + i] for i in range(n)), Fraction(0))
    return val + pot * uu[-1] * vv[-1]


# ---------------------------------------------------------------- ambient


Matrix = list[list[Scalar]]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    m, k, n = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][l] * b[l][j] for l in range(k)), Fraction(0)) for j in range(n)] for i in range(m)]


def mat_vec(a: Matrix, v: Sequence[Scalar]) -> list[Scalar]:
    return [sum((a[i][l] * v[l] for l in range(len(v))), Fraction(0)) for i in range(len(a))]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)] if a else []


@dataclass
class Ambient:
    """a = C^p + C^q with the data (omega, theta_a, L) in real coordinates (x; y)."""

    lam: tuple[Scalar, ...]
    mu: tuple[Scalar, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.lam = tuple(to_scalar(x) for x in self.lam)
        self.mu = tuple(to_scalar(x) for x in self.mu)

    @classmethod
    def from_params(cls, params: CWParams) -> "Ambient":
        return cls(params.lam, params.mu)

    @property
    def p(self) -> int:
        return len(self.lam)

    @property
    def q(self) -> int:
        return len(self.mu)

    @property
    def n(self) -> int:
        return self.p + self.q

    def key(self) -> tuple:
        return (tuple(map(str, self.lam)), tuple(map(str, self.mu)))

    def coeffs(self) -> list[Scalar]:
        return list(self.lam) + list(self.mu)

    def omega_matrix(self) -> Matrix:
        n = self.n
        c = self.coeffs()
        m = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
        for j in range(n):
            m[j][n + j] = c[j]
            m[n + j][j] = -c[j]
        return m

    def omega(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
        n = self.n
        c = self.coeffs()
        return sum((c[j] * (u[j] * v[n + j] - u[n + j] * v[j]) for j in range(n)), Fraction(0))

    def L_matrix(self) -> Matrix:
        n, p = self.n, self.p
        m = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
        for j in range(p):
            m[j][n + j] = self.lam[j]
            m[n + j][j] = self.lam[j]
        for j in range(self.q):
            k = p + j
            m[k][n + k] = -self.mu[j]
            m[n + k][k] = self.mu[j]
        return m

    def theta_matrix(self) -> Matrix:
        n = self.n
        return [[Fraction(int(i == j) * (1 if i < n else -1)) for j in range(2 * n)] for i in range(2 * n)]

    def inner(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
        """<u, v>_a = -Re(u^T v) on C^p plus Re(u^T conj v) on C^q."""
        n, p = self.n, self.p
        tot = Fraction(0)
        for j in range(n):
            re = u[j] * v[j] + (u[n + j] * v[n + j] if j >= p else -u[n + j] * v[n + j])
            tot = tot + (-re if j < p else re)
        return tot

    def exp_tL(self, t: Any) -> Matrix:
        """e^{tL}: hyperbolic blocks on C^p, rotations on C^q."""
        t = to_scalar(t)
        n, p = self.n, self.p
        if t == 0:
            return identity(2 * n)
        with mpmath.workdps(WORK_DPS):
            m = [[mpmath.mpf(0)] * (2 * n) for _ in range(2 * n)]
            for j in range(p):
                a = self.lam[j] * t
                a = mpmath.mpf(a.numerator) / a.denominator if is_exact(a) else a
                ch, sh = mpmath.cosh(a), mpmath.sinh(a)
                m[j][j] = ch
                m[n + j][n + j] = ch
                m[j][n + j] = sh
                m[n + j][j] = sh
            for j in range(self.q):
                k = p + j
                a = self.mu[j] * t
                a = mpmath.mpf(a.numerator) / a.denominator if is_exact(a) else a
                c, s = mpmath.cos(a), mpmath.sin(a)
                m[k][k] = c
                m[n + k][n + k] = c
                m[k][n + k] = -s
                m[n + k][k] = s
            return m

    def lift_phi(self, r: Matrix) -> Matrix:
        """Real n x n orthogonal R acting identically on the x and y parts."""
        n = self.n
        m = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                m[i][j] = r[i][j]
                m[n + i][n + j] = r[i][j]
        return m

    def in_K(self, phi: Matrix, tol: float = 0.0) -> bool:
        """phi orthogonal, commuting with theta_a and L."""
        n2 = 2 * self.n
        if len(phi) != n2:
            return False
        checks = [
            (mat_mul(transpose(phi), phi), identity(n2)),
            (mat_mul(phi, self.theta_matrix()), mat_mul(self.theta_matrix(), phi)),
            (mat_mul(phi, self.L_matrix()), mat_mul(self.L_matrix(), phi)),
        ]
        for a, b in checks:
            for ra, rb in zip(a, b):
                for x, y in zip(ra, rb):
                    if (x != y) if tol == 0 else abs(x - y) > tol:
                        return False
        return True


# ---------------------------------------------------------- group elements


@dataclass
class GroupElement:
    z: Scalar
    a: list[Scalar]  # length 2n, (x; y)
    t: Scalar
    phi: Matrix  # 2n x 2n

    @classmethod
    def make(cls, amb: Ambient, z: Any = 0, a: Sequence[Any] | None = None, t: Any = 0, phi: Matrix | None = None) -> "GroupElement":
        n2 = 2 * amb.n
        a_s = [to_scalar(x) for x in (a if a is not None else [0] * n2)]
        if len(a_s) != n2:
            raise DimensionMismatch(f"a must have {n2} real coordinates")
        return cls(to_scalar(z), a_s, to_scalar(t), phi if phi is not None else identity(n2))

    @classmethod
    def from_complex(cls, amb: Ambient, z: Any, a: Sequence[tuple[Any, Any]], t: Any = 0, phi: Matrix | None = None) -> "GroupElement":
        re = [to_scalar(x[0]) for x in a]
        im = [to_scalar(x[1]) for x in a]
        return cls.make(amb, z, re + im, t, phi)

    def to_json(self) -> dict:
        n = len(self.a) // 2
        return {
            "z": scalar_str(self.z),
            "a": [[scalar_str(self.a[j]), scalar_str(self.a[n + j])] for j in range(n)],
            "t": scalar_str(self.t),
            "phi": [[scalar_str(x) for x in row] for row in self.phi],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GroupElement":
        a = obj["a"]
        re = [_parse_scalar(x[0]) for x in a]
        im = [_parse_scalar(x[1]) for x in a]
        phi = [[_parse_scalar(x) for x in row] for row in obj["phi"]]
        return cls(_parse_scalar(obj["z"]), re + im, _parse_scalar(obj["t"]), phi)


def _check(amb: Ambient, *gs: GroupElement) -> None:
    for g in gs:
        if len(g.a) != 2 * amb.n or len(g.phi) != 2 * amb.n:
            raise IncompatibleAmbient("group element does not live in this ambient")


def group_mul(amb: Ambient, g1: GroupElement, g2: GroupElement) -> GroupElement:
    """(z,a,t,phi)(z',a',t',phi') = (z+z'+1/2 omega(a, g a'), a + g a', t+t', phi phi'), g = e^{tL} phi."""
    _check(amb, g1, g2)
    with mpmath.workdps(WORK_DPS):
        g = mat_mul(amb.exp_tL(g1.t), g1.phi)
        ga = mat_vec(g, g2.a)
        z = g1.z + g2.z + amb.omega(g1.a, ga) / 2
        a = [x + y for x, y in zip(g1.a, ga)]
        return GroupElement(z, a, g1.t + g2.t, mat_mul(g1.phi, g2.phi))


def group_inv(amb: Ambient, g: GroupElement) -> GroupElement:
    _check(amb, g)
    with mpmath.workdps(WORK_DPS):
        phi_inv = transpose(g.phi)
        m = mat_mul(phi_inv, amb.exp_tL(-g.t))
        a = [-x for x in mat_vec(m, g.a)]
        return GroupElement(-g.z, a, -g.t, phi_inv)


def theta(amb: Ambient, g: GroupElement) -> GroupElement:
    """(z, a, t, phi) -> (-z, conj a, -t, theta phi theta)."""
    _check(amb, g)
    th = amb.theta_matrix()
    return GroupElement(-g.z, mat_vec(th, g.a), -g.t, mat_mul(mat_mul(th, g.phi), th))


def identity_element(amb: Ambient) -> GroupElement:
    return GroupElement.make(amb)


def elements_close(g1: GroupElement, g2: GroupElement, tol: float = 0.0) -> bool:
    vals1 = [g1.z, g1.t] + list(g1.a) + [x for r in g1.phi for x in r]
    vals2 = [g2.z, g2.t] + list(g2.a) + [x for r in g2.phi for x in r]
    if tol == 0:
        return all(x == y for x, y in zip(vals1, vals2))
    return all(abs(x - y) <= tol for x, y in zip(vals1, vals2))


# ------------------------------------------------------------ Lie algebra


def lie_bracket(amb: Ambient, x: tuple, y: tuple) -> tuple:
    """[(z,a,t),(z',a',t')] = (omega(a,a'), t L a' - t' L a, 0)."""
    z1, a1, t1 = x
    z2, a2, t2 = y
    lm = amb.L_matrix()
    la2 = mat_vec(lm, a2)
    la1 = mat_vec(lm, a1)
    return (amb.omega(a1, a2), [t1 * u - t2 * v for u, v in zip(la2, la1)], Fraction(0))


def algebra_inner(amb: Ambient, x: tuple, y: tuple) -> Scalar:
    """z perp z+a, a+R perp R, <z, t> = z t, and <.,.>_a on a."""
    z1, a1, t1 = x
    z2, a2, t2 = y
    return z1 * t2 + z2 * t1 + amb.inner(a1, a2)


def omega_via_L(amb: Ambient, u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    """omega(u, v) = <L u, v>_a, used to cross-check the coordinate formula."""
    return amb.inner(mat_vec(amb.L_matrix(), u), v)


def two_pi() -> mpmath.mpf:
    with mpmath.workdps(WORK_DPS):
        return 2 * mpmath.pi


__all__ = [
    "CWParams",
    "normalize",
    "isometric",
    "metric_at",
    "Ambient",
    "GroupElement",
    "group_mul",
    "group_inv",
    "theta",
    "identity_element",
    "elements_close",
    "lie_bracket",
    "algebra_inner",
    "omega_via_L",
    "to_scalar",
    "scalar_str",
    "mat_mul",
    "mat_vec",
    "identity",
    "transpose",
    "two_pi",
]
