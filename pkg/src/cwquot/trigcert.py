"""The Laurent polynomial f_C(z) = det Im(z^k C) and circle certificates.

Two certification modes are offered. Exact mode substitutes
z = (1 + iu)/(1 - iu), turning f_C on the circle minus {-1} into a real
polynomial in u whose real roots are counted exactly. Certified numeric
mode evaluates f on a uniform grid and proves the absence of zeros with a
Lipschitz bound; all bound bookkeeping is in exact rationals.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np
import sympy as sp
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from . import _kernels
from .errors import DependentColumns, InconclusiveAtResolution
from .subspace import Gauss, SubspaceMatrix, gauss_to_complex

DEFAULT_GRID_LOG2 = 14
REFINED_GRID_LOG2 = 18
ZERO_TOLERANCE = 1e-12
# a rational upper bound for pi
PI_UPPER = Fraction(355, 113)
UNIT_ROUNDOFF = Fraction(1, 2**53)


@dataclass(frozen=True)
class LaurentPoly:
    """sum_m d_m z^m with d_{-m} = conj(d_m); exact terms are Gaussian rationals."""

    terms: dict[int, Any]
    exact: bool

    def coefficient(self, m: int):
        if m in self.terms:
            return self.terms[m]
        return (Fraction(0), Fraction(0)) if self.exact else 0j

    def complex_terms(self) -> dict[int, complex]:
        if self.exact:
            return {m: gauss_to_complex(v) for m, v in self.terms.items()}
        return dict(self.terms)

    def __call__(self, z: complex) -> complex:
        return sum(c * z**m for m, c in self.complex_terms().items())

    def eval_t(self, t: float) -> float:
        return self(cmath.exp(1j * t)).real

    @property
    def bandwidth(self) -> int:
        return max((abs(m) for m in self.terms), default=0)

    def is_conjugate_symmetric(self, tol: float = 1e-12) -> bool:
        for m, c in self.terms.items():
            other = self.coefficient(-m)
            if self.exact:
                if other != (c[0], -c[1]):
                    return False
            elif abs(other - complex(c).conjugate()) > tol * (1 + abs(c)):
                return False
        return True

    def to_json(self) -> dict[str, list[str]]:
        out = {}
        for m in sorted(self.terms):
            c = self.terms[m]
            if self.exact:
                out[str(m)] = [str(c[0]), str(c[1])]
            else:
                out[str(m)] = [repr(c.real), repr(c.imag)]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPoly":
        exact = all(not any(ch in v for v in pair for ch in ".e") for pair in data.values())
        terms: dict[int, Any] = {}
        for key, (re, im) in data.items():
            if exact:
                terms[int(key)] = (Fraction(re), Fraction(im))
            else:
                terms[int(key)] = complex(float(re), float(im))
        return cls(terms, exact)


@dataclass(frozen=True)
class CircleCertificate:
    kind: str  # "no_zero" or "zero_found"
    mode: str  # "exact" or "certified_numeric"
    witness: dict = field(default_factory=dict)

    @property
    def good(self) -> bool:
        return self.kind == "no_zero"

    def to_json(self) -> dict:
        return {"kind": self.kind, "mode": self.mode, "witness": self.witness}


# ------------------------------------------------------- construction


def _qqi(g: Gauss):
    return QQ_I(QQ(g[0].numerator, g[0].denominator), QQ(g[1].numerator, g[1].denominator))


def _from_qqi(v) -> Gauss:
    re, im = v.x, v.y
    return Fraction(int(re.numerator), int(re.denominator)), Fraction(int(im.numerator), int(im.denominator))


def _gauss_det(rows: list[list[Gauss]]):
    n = len(rows)
    dm = DomainMatrix([[_qqi(v) for v in r] for r in rows], (n, n), QQ_I)
    return dm.det()


def _laurent_by_sign_expansion(k: Sequence[int], rows: list[list[Gauss]]) -> dict[int, Gauss]:
    """Multilinear expansion of det over the 2^n choices of c_j or conj(c_j) per row."""
    n = len(k)
    conj_rows = [[(v[0], -v[1]) for v in r] for r in rows]
    # Im(w) = (w - conj w) / (2i); the factor (1/(2i))^n is applied at the end
    acc: dict[int, Any] = {}
    for kappa in itertools.product((1, -1), repeat=n):
        mat = [rows[j] if kappa[j] == 1 else conj_rows[j] for j in range(n)]
        d = _gauss_det(mat)
        if d == QQ_I.zero:
            continue
        sign = -1 if sum(1 for s in kappa if s < 0) % 2 else 1
        m = sum(s * kj for s, kj in zip(kappa, k))
        acc[m] = acc.get(m, QQ_I.zero) + (d if sign == 1 else -d)
    scale = QQ_I(0, QQ(-1, 2)) ** n  # 1/(2i) = -i/2
    out = {}
    for m, v in acc.items():
        v = v * scale
        if v != QQ_I.zero:
            out[m] = _from_qqi(v)
    return out


def _rational_circle_point(j: int) -> tuple[Fraction, Fraction]:
    """Distinct rational points on the unit circle, (1-s^2, 2s)/(1+s^2) with s = j."""
    s = Fraction(j)
    den = 1 + s * s
    return (1 - s * s) / den, 2 * s / den


def _laurent_by_interpolation(k: Sequence[int], rows: list[list[Gauss]]) -> dict[int, Gauss]:
    """Exact interpolation of z^M f(z) at rational points of the unit circle."""
    n = len(k)
    big_m = sum(abs(x) for x in k)
    npts = 2 * big_m + 1
    xs, ys = [], []
    for j in range(npts):
        zr, zi = _rational_circle_point(j)
        z = QQ_I(QQ(zr.numerator, zr.denominator), QQ(zi.numerator, zi.denominator))
        mat = []
        for row, kj in zip(rows, k):
            zk = z**kj if kj >= 0 else (QQ_I.one / z) ** (-kj)
            mat.append([(zk * _qqi(v)).y for v in row])
        det = DomainMatrix(mat, (n, n), QQ).det() if n else QQ.one
        xs.append(z)
        ys.append(QQ_I(det, 0) * z**big_m)
    # Newton divided differences
    coef = list(ys)
    for level in range(1, npts):
        for i in range(npts - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    poly = [QQ_I.zero] * npts
    poly[0] = coef[-1]
    deg = 0
    for i in range(npts - 2, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [QQ_I.zero] * npts
        for d in range(deg + 1):
            new[d + 1] += poly[d]
            new[d] -= poly[d] * xs[i]
        new[0] += coef[i]
        poly = new
        deg += 1
    out = {}
    for d, v in enumerate(poly):
        if v != QQ_I.zero:
            out[d - big_m] = _from_qqi(v)
    return out


def _laurent_float(k: Sequence[int], rows: list[list[complex]]) -> dict[int, complex]:
    """Coefficients from FFT samples of det Im(z^k C); used only in float mode."""
    big_m = sum(abs(x) for x in k)
    npts = 1 << max(3, (2 * big_m + 1).bit_length())
    c = np.array(rows, dtype=complex)
    kv = np.array(k, dtype=float)
    vals = np.empty(npts)
    for j in range(npts):
        z = np.exp(2j * np.pi * j / npts)
        vals[j] = np.linalg.det(np.imag((z**kv)[:, None] * c))
    spec = np.fft.fft(vals) / npts
    out = {}
    for m in range(-big_m, big_m + 1):
        v = complex(spec[m % npts])
        if abs(v) > 1e-14 * max(1.0, np.max(np.abs(vals))):
            out[m] = v
    return out


def laurent_from_subspace(k: Sequence[int], c: SubspaceMatrix | Sequence[Sequence], exact: bool | None = None) -> LaurentPoly:
    """f_C(z) = det Im(z^k C) as a Laurent polynomial.

    Exact arithmetic is used whenever C is exact (or exact=True, which reads
    float entries as their binary values). Sign expansion handles n <= 8;
    beyond that the polynomial is interpolated at rational circle points.
    """
    if not isinstance(c, SubspaceMatrix):
        c = SubspaceMatrix(c)
    k = [int(x) for x in k]
    if len(k) != c.n:
        raise ValueError("k and C have different dimensions")
    c.check_independent()
    if exact is None:
        exact = c.exact
    if not exact:
        return LaurentPoly(_laurent_float(k, c.complex_rows()), False)
    rows = c.gauss_rows()
    if c.n <= 8:
        terms = _laurent_by_sign_expansion(k, rows)
    else:
        terms = _laurent_by_interpolation(k, rows)
    return LaurentPoly(terms, True)


def direct_value(k: Sequence[int], c: SubspaceMatrix, z: complex) -> float:
    """det Im(z^k C) evaluated directly in floating point."""
    mat = np.array(c.complex_rows(), dtype=complex)
    zk = np.array([z**kj for kj in k], dtype=complex)
    return float(np.linalg.det(np.imag(zk[:, None] * mat)))


def mean_value(lp: LaurentPoly):
    """The constant coefficient, i.e. the average of f over the circle."""
    d0 = lp.coefficient(0)
    if lp.exact:
        return d0[0]
    return complex(d0).real


# ------------------------------------------------------ trace condition


def trace_condition(k: Sequence[int]) -> list[tuple[int, ...]]:
    """All sign vectors kappa with sum kappa_j k_j = 0, '+' before '-' lexicographically."""
    k = [int(x) for x in k]
    n = len(k)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + abs(k[i])
    out: list[tuple[int, ...]] = []
    current: list[int] = []

    def rec(i: int, total: int) -> None:
        if abs(total) > suffix[i]:
            return
        if i == n:
            if total == 0:
                out.append(tuple(current))
            return
        for s in (1, -1):
            current.append(s)
            rec(i + 1, total + s * k[i])
            current.pop()

    rec(0, 0)
    return out


# -------------------------------------------------------- certification


def _qq(f: Fraction):
    return QQ(f.numerator, f.denominator)


def _real_u_polynomial(lp: LaurentPoly) -> sp.Poly:
    """(1 + u^2)^M f((1 + iu)/(1 - iu)) as a polynomial with rational coefficients.

    With a = 1 + iu and b = 1 - iu this is sum_j d_{j-M} a^j b^(2M-j),
    evaluated by Horner's rule in a with precomputed powers of b.
    """
    big_m = lp.bandwidth
    top = 2 * big_m
    zero = QQ_I.zero
    i_unit = QQ_I(0, 1)

    def times_linear(poly: list, sign: int) -> list:
        # multiply by (1 + sign * i u); coefficients lowest degree first
        out = poly + [zero]
        for d in range(len(poly) - 1, -1, -1):
            out[d + 1] += poly[d] * i_unit * sign
        return out

    bpow = [[QQ_I.one]]
    for _ in range(top):
        bpow.append(times_linear(bpow[-1], -1))
    acc = [lp.terms.get(big_m, None)]
    acc = [_qqi(acc[0])] if acc[0] is not None else [zero]
    for t in range(1, top + 1):
        acc = times_linear(acc, 1)
        c = lp.terms.get(big_m - t)
        if c is not None:
            cq = _qqi(c)
            for d, v in enumerate(bpow[t]):
                acc[d] += cq * v
    if any(cf.y != 0 for cf in acc):
        raise ValueError("substituted polynomial is not real; conjugate symmetry fails")
    real = [sp.Rational(int(cf.x.numerator), int(cf.x.denominator)) for cf in reversed(acc)]
    return sp.Poly(real or [0], sp.Symbol("u"), domain="QQ")


def _exact_value_at_minus_one(lp: LaurentPoly) -> Fraction:
    total = Fraction(0)
    for m, c in lp.terms.items():
        total += c[0] * (-1 if m % 2 else 1)
    return total


def certify_exact(lp: LaurentPoly) -> CircleCertificate:
    if not lp.exact:
        raise ValueError("exact certification needs exact coefficients")
    if not lp.is_conjugate_symmetric():
        raise ValueError("Laurent polynomial lacks conjugate symmetry")
    if not lp.terms:
        return CircleCertificate("zero_found", "exact", {"z0": [1.0, 0.0], "value": 0.0, "identically_zero": True})
    at_minus_one = _exact_value_at_minus_one(lp)
    if at_minus_one == 0:
        return CircleCertificate("zero_found", "exact", {"z0": [-1.0, 0.0], "value": 0.0})
    q = _real_u_polynomial(lp)
    sqf = sp.Poly(sp.quo(q, sp.gcd(q, q.diff())), q.gen)
    n_real = sqf.count_roots() if sqf.degree() > 0 else 0
    if n_real == 0:
        return CircleCertificate(
            "no_zero",
            "exact",
            {"u_degree": q.degree(), "real_roots": 0, "value_at_minus_one": str(at_minus_one)},
        )
    lo, hi = sqf.intervals(eps=sp.Rational(1, 10**30))[0][0]
    u0 = (lo + hi) / 2
    z0 = complex((1 + 1j * float(u0)) / (1 - 1j * float(u0)))
    return CircleCertificate(
        "zero_found",
        "exact",
        {"z0": [z0.real, z0.imag], "value": abs(lp(z0)), "u_interval": [str(lo), str(hi)], "real_roots": int(n_real)},
    )


def _abs_upper(c: Any) -> Fraction:
    """Rational upper bound for |c|."""
    if isinstance(c, tuple):
        re, im = abs(c[0]), abs(c[1])
    else:
        re, im = abs(Fraction(complex(c).real)), abs(Fraction(complex(c).imag))
    s = re * re + im * im
    if s == 0:
        return Fraction(0)
    # ceil of sqrt on a fine dyadic scale
    scale = 2**60
    root = math.isqrt(math.ceil(s * scale * scale)) + 1
    return Fraction(root, scale)


def _grid_certificate(lp: LaurentPoly, log2n: int, use_numba: bool | None):
    ct = lp.complex_terms()
    pos = sorted(m for m in ct if m > 0)
    exps = np.array(pos, dtype=np.float64)
    re = np.array([ct[m].real for m in pos])
    im = np.array([ct[m].imag for m in pos])
    d0 = ct.get(0, 0j).real
    n_points = 1 << log2n
    vals = _kernels.grid_values(exps, re, im, d0, n_points, use_numba)

    lip = sum((abs(m) * _abs_upper(c) for m, c in lp.terms.items()), Fraction(0))
    abs_sum = sum((_abs_upper(c) for c in lp.terms.values()), Fraction(0))
    n_terms = len(pos) + 1
    # floating error: coefficient rounding, argument m*t rounding, trig error, accumulation
    err = 2 * UNIT_ROUNDOFF * sum(
        (_abs_upper(c) * (8 * abs(m) + n_terms + 4) for m, c in lp.terms.items()), Fraction(0)
    ) + 2 * UNIT_ROUNDOFF * abs_sum
    h = 2 * PI_UPPER / n_points * (1 + Fraction(1, 2**40))
    return vals, lip, err, h


def certify_numeric(lp: LaurentPoly, use_numba: bool | None = None) -> CircleCertificate:
    """Grid certificate at 2^14 points, refined once to 2^18."""
    if not lp.is_conjugate_symmetric(1e-9):
        raise ValueError("Laurent polynomial lacks conjugate symmetry")
    last = None
    for log2n in (DEFAULT_GRID_LOG2, REFINED_GRID_LOG2):
        vals, lip, err, h = _grid_certificate(lp, log2n, use_numba)
        n_points = len(vals)
        idx = int(np.argmin(np.abs(vals)))
        vmin = float(vals[idx])
        if abs(vmin) <= ZERO_TOLERANCE:
            t = 2 * math.pi * idx / n_points
            return CircleCertificate(
                "zero_found",
                "certified_numeric",
                {"z0": [math.cos(t), math.sin(t)], "value": abs(vmin), "grid_log2": log2n},
            )
        signs = np.sign(vals)
        change = np.nonzero(signs != np.roll(signs, -1))[0]
        if len(change):
            j = int(change[0])
            if abs(Fraction(float(vals[j]))) > err and abs(Fraction(float(vals[(j + 1) % n_points]))) > err:
                t = 2 * math.pi * (j + 0.5) / n_points
                return CircleCertificate(
                    "zero_found",
                    "certified_numeric",
                    {
                        "z0": [math.cos(t), math.sin(t)],
                        "value": abs(lp.eval_t(t)),
                        "sign_change_between": [j, (j + 1) % n_points],
                        "grid_log2": log2n,
                    },
                )
        m = Fraction(float(np.min(np.abs(vals)))) - err
        bound = lip * h / 2
        last = (m, bound, log2n)
        if not len(change) and m > bound:
            return CircleCertificate(
                "no_zero",
                "certified_numeric",
                {
                    "grid_step": str(h),
                    "lower_bound": str(m),
                    "lipschitz_bound": str(lip),
                    "float_error_bound": str(err),
                    "margin": str(m - bound),
                    "grid_log2": log2n,
                    "sign": 1 if vals[0] > 0 else -1,
                },
            )
    raise InconclusiveAtResolution(
        f"grid minimum {float(last[0]):.3e} does not exceed Lipschitz bound {float(last[1]):.3e} at 2^{last[2]} points"
    )


def certify_no_zero_on_circle(lp: LaurentPoly, mode: str | None = None) -> CircleCertificate:
    """Decide whether f has a zero on the unit circle."""
    if mode is None:
        mode = "exact" if lp.exact else "certified_numeric"
    if mode == "exact":
        return certify_exact(lp)
    if mode == "certified_numeric":
        return certify_numeric(lp)
    raise ValueError(f"unknown mode {mode!r}")


def certified_lower_bound(lp: LaurentPoly, log2n: int = REFINED_GRID_LOG2) -> tuple[Fraction, int]:
    """Rational lower bound for min |f| on the circle together with the sign of f.

    The bound is only meaningful (positive) when f has constant sign.
    """
    vals, lip, err, h = _grid_certificate(lp, log2n, None)
    sign = 1 if vals[0] > 0 else -1
    if np.any(np.sign(vals) != sign):
        return Fraction(0), 0
    return Fraction(float(np.min(np.abs(vals)))) - err - lip * h / 2, sign


__all__ = [
    "LaurentPoly",
    "CircleCertificate",
    "DependentColumns",
    "laurent_from_subspace",
    "certify_no_zero_on_circle",
    "certify_exact",
    "certify_numeric",
    "certified_lower_bound",
    "mean_value",
    "trace_condition",
    "direct_value",
]
