"""Pell units, Salem polynomials and the moduli sets F2, F4, F6."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Any

import mpmath
import sympy as sp

from .errors import NonSymbolicInput, NotSquarefree
from .intpoly import (
    IntPolynomial,
    chebyshev_reduction,
    factor_over_rationals,
    sturm_count,
    unit_circle_root_count,
)

VALUE_DPS = 40


def _is_square(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def is_squarefree(d: int) -> bool:
    return d >= 2 and all(e == 1 for e in sp.factorint(d).values())


# -------------------------------------------------------------------- Pell


@dataclass(frozen=True)
class PellSolution:
    d: int
    k: int
    l: int
    half: bool  # nu = (k + l sqrt d)/2 when True, k + l sqrt d otherwise
    variant: str
    unit_value: tuple[Fraction, Fraction]  # certified enclosure of nu

    @property
    def norm(self) -> int:
        """N(nu) = nu * conj(nu), either +1 or -1."""
        num = self.k * self.k - self.l * self.l * self.d
        return num // 4 if self.half else num

    def minimal_polynomial(self) -> IntPolynomial:
        """x^2 - tr(nu) x + N(nu)."""
        tr = self.k if self.half else 2 * self.k
        return IntPolynomial([self.norm, -tr, 1])

    def value(self) -> mpmath.mpf:
        with mpmath.workdps(VALUE_DPS):
            v = self.k + self.l * mpmath.sqrt(self.d)
            return v / 2 if self.half else v

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "l": self.l,
            "nu": f"({self.k}+{self.l}*sqrt({self.d}))/2" if self.half else f"{self.k}+{self.l}*sqrt({self.d})",
            "variant": self.variant,
            "norm": self.norm,
            "unit_value": [str(self.unit_value[0]), str(self.unit_value[1])],
        }


def _sqrt_enclosure(d: int, bits: int = 80) -> tuple[Fraction, Fraction]:
    scale = 1 << bits
    r = isqrt(d * scale * scale)
    return Fraction(r, scale), Fraction(r + 1, scale)


def pell_fundamental_unit(d: int) -> PellSolution:
    """Lexicographically smallest (l, k) with l^2 d -+ 4 = k^2 (d = 1 mod 4) or l^2 d -+ 1 = k^2."""
    if not is_squarefree(d):
        raise NotSquarefree(f"{d} is not a squarefree integer >= 2")
    half = d % 4 == 1
    c = 4 if half else 1
    l = 1
    while True:
        for sign, label in ((-1, "-"), (1, "+")):
            k = _is_square(l * l * d + sign * c)
            if k is not None and k > 0:
                lo, hi = _sqrt_enclosure(d)
                enc = (k + l * lo, k + l * hi)
                if half:
                    enc = (enc[0] / 2, enc[1] / 2)
                return PellSolution(d, k, l, half, f"l^2 d {label} {c} = k^2", enc)
        l += 1


# ------------------------------------------------------------------- Salem


@dataclass(frozen=True)
class SalemCandidate:
    f: IntPolynomial
    degree: int
    verified: bool
    a: int | None = None
    b: int | None = None
    reading: str | None = None

    def to_json(self) -> dict:
        return {"f": self.f.to_json(), "degree": self.degree, "verified": self.verified, "a": self.a, "b": self.b, "reading": self.reading}


def salem_structure(f: IntPolynomial) -> dict[str, Any]:
    """Exact data behind is_salem: reciprocity, irreducibility, circle count and off-circle roots."""
    info: dict[str, Any] = {"degree": f.degree}
    info["reciprocal"] = f.is_monic and f.reversal() == f
    facs = factor_over_rationals(f)
    info["irreducible"] = len(facs) == 1 and facs[0][1] == 1
    info["circle_count"] = unit_circle_root_count(f)[0] if f.constant_term else None
    info["off_circle_real_pair"] = False
    if info["reciprocal"] and f.degree % 2 == 0 and f.degree >= 2:
        s = chebyshev_reduction(f)
        inside = sturm_count(s, -2, 2)
        below = sturm_count(s, -sp.oo, -2)
        above = sturm_count(s, 2, sp.oo)
        # one y-root with |y| > 2 gives a real pair x, 1/x (product exactly 1)
        info["off_circle_real_pair"] = (below + above == 1) and inside == f.degree // 2 - 1
        info["off_circle_sign"] = 1 if above else (-1 if below else 0)
    return info


def is_salem(f: IntPolynomial) -> bool:
    """Irreducible, reciprocal, degree 2k >= 4, exactly 2k-2 unit-circle roots, other two real."""
    if f.degree < 4 or f.degree % 2 or not f.is_monic:
        return False
    info = salem_structure(f)
    return bool(
        info["reciprocal"]
        and info["irreducible"]
        and info["circle_count"] == f.degree - 2
        and info["off_circle_real_pair"]
    )


def salem4_family(a: int, b: int) -> dict[str, IntPolynomial]:
    """Both readings of the quartic family: the printed one and the reciprocal one."""
    return {
        "printed": IntPolynomial([1, -a + b, 0, -a, 1]),
        "reciprocal": IntPolynomial([1, -a, b, -a, 1]),
    }


def salem4_condition(a: int, b: int) -> bool:
    return 2 * abs(a) > abs(b + 2) and b != 2 and b != a + 1 and b != -a + 1


def salem4_enumerate(bound: int) -> list[SalemCandidate]:
    """Verified quartic Salem polynomials from the family with |a|, |b| <= bound, sorted by (a, b)."""
    if not 1 <= bound <= 100:
        raise ValueError("bound must lie in 1..100")
    out = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if not salem4_condition(a, b):
                continue
            seen: set[tuple[int, ...]] = set()
            for reading, f in salem4_family(a, b).items():
                # at b = 0 both readings give the same polynomial
                if tuple(f.coeffs) in seen:
                    continue
                seen.add(tuple(f.coeffs))
                if is_salem(f):
                    out.append(SalemCandidate(f, 4, True, a, b, reading))
    out.sort(key=lambda c: (c.a, c.b, c.reading))
    return out


# -------------------------------------------------------------- membership


_LOG_FORM = re.compile(
    r"^\(?\s*(?P<r>\d+(?:/\d+)?)\s*/\s*pi\s*\)?\s*\*?\s*log\s*\(\s*\(?\s*(?P<a>-?\d+(?:/\d+)?)\s*"
    r"(?P<sign>[+-])\s*(?P<b>\d+(?:/\d+)?)?\s*\*?\s*sqrt\s*\(\s*(?P<d>\d+)\s*\)\s*\)?\s*(?:/\s*(?P<den>\d+))?\s*\)\s*$"
)


@dataclass(frozen=True)
class LogUnitForm:
    """lambda = (r/pi) * log(a + b sqrt(d)) with rational r, a, b and integer d."""

    r: Fraction
    a: Fraction
    b: Fraction
    d: int

    @classmethod
    def parse(cls, text: str) -> "LogUnitForm":
        """Accepts e.g. "1/pi*log(1+sqrt(2))" or "2/pi*log((3+sqrt(5))/2)"."""
        m = _LOG_FORM.match(text.replace(" ", ""))
        if not m:
            raise NonSymbolicInput(f"not of the form (r/pi)*log(a+b*sqrt(d)): {text!r}")
        den = Fraction(m.group("den") or 1)
        b = Fraction(m.group("b") or 1) * (-1 if m.group("sign") == "-" else 1)
        return cls(Fraction(m.group("r")), Fraction(m.group("a")) / den, b / den, int(m.group("d")))

    @classmethod
    def coerce(cls, value: Any) -> "LogUnitForm":
        if isinstance(value, LogUnitForm):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        raise NonSymbolicInput(f"{value!r} is not a symbolic (r/pi) log(unit) expression")

    def value(self) -> mpmath.mpf:
        with mpmath.workdps(VALUE_DPS):
            def mp(x: Fraction) -> mpmath.mpf:
                return mpmath.mpf(x.numerator) / x.denominator

            nu = mp(self.a) + mp(self.b) * mpmath.sqrt(self.d)
            return mp(self.r) / mpmath.pi * mpmath.log(nu)


def _reduce_surd(b: Fraction, d: int) -> tuple[Fraction, int]:
    """b sqrt(d) = b' sqrt(d') with d' squarefree."""
    s = 1
    for p, e in sp.factorint(d).items():
        s *= int(p) ** (int(e) // 2)
    return b * s, d // (s * s)


def _is_algebraic_integer(a: Fraction, b: Fraction, d: int) -> bool:
    if d % 4 == 1:
        a2, b2 = 2 * a, 2 * b
        return a2.denominator == 1 and b2.denominator == 1 and (a2.numerator - b2.numerator) % 2 == 0
    return a.denominator == 1 and b.denominator == 1


def f2_membership(value: Any) -> dict[str, Any]:
    """Decide lambda in F2 for lambda = (r/pi) log(nu) with declared r and nu (purely symbolic)."""
    form = LogUnitForm.coerce(value)
    out: dict[str, Any] = {"in_F2": False, "d": None, "reasons": []}
    if form.r <= 0:
        out["reasons"].append("r must be a positive rational")
        return out
    b, d = _reduce_surd(form.b, form.d)
    a = form.a
    if b == 0 or d == 1:
        out["reasons"].append("nu is rational, so log|nu| = 0 or nu is not a unit")
        return out
    if not _is_algebraic_integer(a, b, d):
        out["reasons"].append("nu is not an algebraic integer")
        return out
    norm = a * a - b * b * d
    if abs(norm) != 1:
        out["reasons"].append(f"norm of nu is {norm}, not a unit")
        return out
    with mpmath.workdps(VALUE_DPS):
        nu_val = a + b * mpmath.sqrt(d)
    if nu_val <= 1:
        out["reasons"].append("nu must exceed 1 for lambda > 0")
        return out
    fund = pell_fundamental_unit(d)
    # exponent m with nu = nu_d^m, by exact division in Q(sqrt d)
    fa, fb = (Fraction(fund.k, 2), Fraction(fund.l, 2)) if fund.half else (Fraction(fund.k), Fraction(fund.l))
    fn = fa * fa - fb * fb * d
    ca, cb, m = a, b, 0
    while (ca, cb) != (1, 0):
        # divide by nu_d: (ca + cb s)(fa - fb s)/fn
        ca, cb = (ca * fa - cb * fb * d) / fn, (cb * fa - ca * fb) / fn
        m += 1
        if m > 10_000:
            out["reasons"].append("unit is not a power of the fundamental unit")
            return out
    out.update({"in_F2": True, "d": d, "power_of_fundamental_unit": m, "fundamental_unit": fund.to_json()})
    out["reasons"].append(f"nu = nu_{d}^{m}, so lambda = ({form.r * m}/pi) log nu_{d}")
    return out


def f6_example() -> IntPolynomial:
    return IntPolynomial([1, 0, -1, -1, -1, 0, 1])
