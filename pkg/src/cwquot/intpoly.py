"""Exact integer polynomials and certified root-structure queries.

Polynomials are stored as tuples of Python integers, lowest degree first.
Factorization, gcd and root isolation go through sympy; the unit-circle
count is done here with an explicit Sturm sequence on the substitution
y = x + 1/x.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import sympy as sp

from .errors import NotMonic, ZeroConstantTerm

_X = sp.Symbol("x")

DEFAULT_WIDTH = Fraction(1, 2**40)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients lowest degree first."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0]
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    @property
    def constant_term(self) -> int:
        return self.coeffs[0]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def __pow__(self, e: int) -> "IntPolynomial":
        out = IntPolynomial([1])
        for _ in range(e):
            out = out * self
        return out

    def reversal(self) -> "IntPolynomial":
        """x^d f(1/x)."""
        return IntPolynomial(reversed(self.coeffs))

    def is_self_reciprocal(self) -> bool:
        """True if the reversal equals f up to sign."""
        r = self.reversal().coeffs
        return r == self.coeffs or r == tuple(-c for c in self.coeffs)

    @cached_property
    def sympy_poly(self) -> sp.Poly:
        return sp.Poly(list(reversed(self.coeffs)), _X, domain="ZZ")

    @classmethod
    def from_sympy(cls, p) -> "IntPolynomial":
        poly = sp.Poly(p, _X)
        coeffs = poly.all_coeffs()
        if any(not c.is_integer for c in coeffs):
            raise ValueError("polynomial has non-integer coefficients")
        return cls(int(c) for c in reversed(coeffs))

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        """Parse "x^2-3x+1" style text or a comma separated coefficient list."""
        text = text.strip()
        if text.startswith("["):
            text = text[1:-1]
        if "x" not in text:
            return cls(int(t) for t in text.split(","))
        expr = sp.parse_expr(
            text.replace("^", "**"),
            local_dict={"x": _X},
            transformations=sp.parsing.sympy_parser.standard_transformations
            + (sp.parsing.sympy_parser.implicit_multiplication_application,),
        )
        return cls.from_sympy(sp.expand(expr))

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self) -> str:
        return str(self.sympy_poly.as_expr()).replace("**", "^")


@dataclass(frozen=True)
class RootBox:
    """Certified isolating box for a root of an integer polynomial."""

    real_lo: Fraction
    real_hi: Fraction
    imag_lo: Fraction
    imag_hi: Fraction
    multiplicity: int
    modulus_class: str  # "inside", "on" or "outside"

    @property
    def center(self) -> complex:
        return complex(
            float((self.real_lo + self.real_hi) / 2),
            float((self.imag_lo + self.imag_hi) / 2),
        )

    @property
    def width(self) -> Fraction:
        return max(self.real_hi - self.real_lo, self.imag_hi - self.imag_lo)


def _check_constant(f: IntPolynomial) -> None:
    if f.constant_term == 0:
        raise ZeroConstantTerm(f"f(0) = 0 for {f}")


def validate_otto(f: IntPolynomial) -> bool:
    """Monic integer polynomial with constant term +-1."""
    return f.degree >= 1 and f.is_monic and abs(f.constant_term) == 1


def factor_over_rationals(f: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Irreducible factors with multiplicities; re-multiplies to f exactly."""
    content, factors = sp.factor_list(f.sympy_poly)
    out = []
    if content != 1:
        out.append((IntPolynomial([int(content)]), 1))
    for g, e in factors:
        out.append((IntPolynomial.from_sympy(g), int(e)))
    out.sort(key=lambda fe: (-fe[0].degree, fe[0].coeffs))
    return out


def multiply_all(factors: Sequence[tuple[IntPolynomial, int]]) -> IntPolynomial:
    out = IntPolynomial([1])
    for g, e in factors:
        out = out * g**e
    return out


# ---------------------------------------------------------------- Sturm


def sturm_sequence(p: sp.Poly) -> list[sp.Poly]:
    """Classical Sturm chain p, p', -rem(...), ... over QQ."""
    p = p.set_domain(sp.QQ)
    chain = [p, p.diff()]
    while not chain[-1].is_zero:
        r = -chain[-2].rem(chain[-1])
        if r.is_zero:
            break
        chain.append(r)
    return chain


def _sign_changes(values: Sequence) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _eval_chain(chain: list[sp.Poly], x) -> list:
    if x == sp.oo or x == -sp.oo:
        out = []
        for q in chain:
            lc = q.LC()
            if x == -sp.oo and q.degree() % 2 == 1:
                lc = -lc
            out.append(lc)
        return out
    return [q.eval(x) for q in chain]


def sturm_count(p: sp.Poly, a, b) -> int:
    """Number of distinct real roots of p in the half-open interval (a, b]."""
    chain = sturm_sequence(p)
    return _sign_changes(_eval_chain(chain, a)) - _sign_changes(_eval_chain(chain, b))


def chebyshev_reduction(s: IntPolynomial) -> sp.Poly:
    """For self-reciprocal s of degree 2m return S with s(x) = x^m S(x + 1/x)."""
    if s.degree % 2 or s.reversal() != s:
        raise ValueError("expected an even degree self-reciprocal polynomial")
    m = s.degree // 2
    y = sp.Symbol("y")
    d_prev, d_cur = sp.Poly(2, y, domain="QQ"), sp.Poly(y, y, domain="QQ")
    dickson = [d_prev, d_cur]
    for _ in range(2, m + 1):
        d_prev, d_cur = d_cur, d_cur * sp.Poly(y, y) - d_prev
        dickson.append(d_cur)
    total = sp.Poly(s.coeffs[m], y, domain="QQ")
    for k in range(1, m + 1):
        total += s.coeffs[m - k] * dickson[k]
    return total


@dataclass(frozen=True)
class FactorCircleData:
    factor: IntPolynomial
    multiplicity: int
    circle_roots: int  # per copy of the factor
    real_off_circle: int  # real roots of modulus != 1, per copy


def _factor_circle_data(h: IntPolynomial, e: int) -> FactorCircleData:
    if h.degree == 1:
        on = 1 if abs(h.constant_term) == 1 else 0
        return FactorCircleData(h, e, on, 1 - on)
    if h.reversal() != h:
        # irreducible and not self-reciprocal: no unimodular roots
        real = sturm_count(h.sympy_poly, -sp.oo, sp.oo)
        return FactorCircleData(h, e, 0, real)
    big_s = chebyshev_reduction(h)
    inside = sturm_count(big_s, -2, 2)
    # y-roots in (-2, 2) give conjugate unimodular pairs; |y| > 2 give real pairs
    outside = sturm_count(big_s, -sp.oo, -2) + sturm_count(big_s, 2, sp.oo)
    return FactorCircleData(h, e, 2 * inside, 2 * outside)


def circle_factor_data(f: IntPolynomial) -> list[FactorCircleData]:
    """Per irreducible factor of f: unit-circle and real root counts (exact)."""
    _check_constant(f)
    return [_factor_circle_data(h, e) for h, e in factor_over_rationals(f) if h.degree > 0]


def unit_circle_root_count(f: IntPolynomial) -> tuple[int, IntPolynomial]:
    """Exact number of roots on |x| = 1 (with multiplicity) and their factor.

    The candidates live in g = gcd(f, reversal f); each irreducible factor of
    g is Sturm-counted after the substitution y = x + 1/x. The returned
    factor is the product of the irreducible factors that carry unimodular
    roots, which is a divisor of g.
    """
    _check_constant(f)
    g = sp.gcd(f.sympy_poly, f.reversal().sympy_poly)
    g_int = IntPolynomial.from_sympy(sp.Poly(g, _X).primitive()[1])
    count = 0
    circle = IntPolynomial([1])
    if g_int.degree == 0:
        return 0, circle
    for data in circle_factor_data(g_int):
        if data.circle_roots:
            count += data.circle_roots * data.multiplicity
            circle = circle * data.factor**data.multiplicity
    if circle.coeffs[-1] < 0:
        circle = IntPolynomial(-c for c in circle.coeffs)
    return count, circle


def _totient(m: int) -> int:
    return int(sp.totient(m))


def cyclotomic(m: int) -> IntPolynomial:
    return IntPolynomial.from_sympy(sp.cyclotomic_poly(m, _X))


def has_root_of_unity_except_one(f: IntPolynomial) -> bool:
    """Some root of f is a root of unity other than 1."""
    _check_constant(f)
    _, circle = unit_circle_root_count(f)
    if circle.degree == 0:
        return False
    d = f.degree
    m = 2
    # phi(m) >= sqrt(m/2), so m <= 2 d^2 covers every phi(m) <= d
    while m <= 2 * d * d + 2:
        if _totient(m) <= d:
            if sp.rem(circle.sympy_poly, cyclotomic(m).sympy_poly).is_zero:
                return True
        m += 1
    return False


def companion_block(f: IntPolynomial) -> list[list[int]]:
    """Companion matrix: ones on the subdiagonal, last column -a_0..-a_{d-1}."""
    if not f.is_monic:
        raise NotMonic(f"{f} is not monic")
    d = f.degree
    m = [[0] * d for _ in range(d)]
    for i in range(1, d):
        m[i][i - 1] = 1
    for i in range(d):
        m[i][d - 1] = -f.coeffs[i]
    return m


def block_diagonal(blocks: Sequence[Sequence[Sequence]]) -> list[list]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[off + i][off + j] = v
        off += len(b)
    return out


def companion_matrix(f: IntPolynomial) -> list[list[int]]:
    """Integer matrix with characteristic polynomial f.

    Irreducible f gives its companion matrix; otherwise one companion block
    per irreducible factor (repeated by multiplicity), which is semisimple.
    """
    if not f.is_monic:
        raise NotMonic(f"{f} is not monic")
    factors = factor_over_rationals(f)
    if len(factors) == 1 and factors[0][1] == 1:
        return companion_block(f)
    blocks = []
    for g, e in factors:
        blocks.extend([companion_block(g)] * e)
    return block_diagonal(blocks)


def charpoly(matrix: Sequence[Sequence]) -> IntPolynomial:
    """Characteristic polynomial det(x I - M) of an integer matrix."""
    m = sp.Matrix(matrix)
    return IntPolynomial.from_sympy(m.charpoly(_X).as_expr())


# ----------------------------------------------------------- isolation


def _classify_real(lo: Fraction, hi: Fraction) -> str | None:
    if -1 < lo and hi < 1:
        return "inside"
    if hi < -1 or lo > 1:
        return "outside"
    return None


def _classify_complex(rlo, rhi, ilo, ihi) -> str | None:
    def sq_range(a, b):
        if a <= 0 <= b:
            return Fraction(0), max(a * a, b * b)
        return min(a * a, b * b), max(a * a, b * b)

    r0, r1 = sq_range(rlo, rhi)
    i0, i1 = sq_range(ilo, ihi)
    if r1 + i1 < 1:
        return "inside"
    if r0 + i0 > 1:
        return "outside"
    return None


def _frac(v) -> Fraction:
    v = sp.Rational(v)
    return Fraction(int(v.p), int(v.q))


def _isolate_factor(data: FactorCircleData, width: Fraction) -> list[RootBox]:
    h, e = data.factor, data.multiplicity
    if h.degree == 1:
        root = Fraction(-h.constant_term, h.coeffs[1])
        cls = "on" if abs(root) == 1 else ("inside" if abs(root) < 1 else "outside")
        return [RootBox(root, root, Fraction(0), Fraction(0), e, cls)]
    eps = width
    while True:
        real, cplx = h.sympy_poly.intervals(all=True, eps=sp.Rational(eps.numerator, eps.denominator))
        boxes = []
        undecided = 0
        for (lo, hi), _m in real:
            lo, hi = _frac(lo), _frac(hi)
            cls = _classify_real(lo, hi)
            if cls is None:
                undecided += 1
            boxes.append([lo, hi, Fraction(0), Fraction(0), cls])
        for (a, b), _m in cplx:
            # corners are exact Gaussian rationals; never round-trip through floats
            a, b = sp.expand(a), sp.expand(b)
            rlo, ilo = _frac(sp.re(a)), _frac(sp.im(a))
            rhi, ihi = _frac(sp.re(b)), _frac(sp.im(b))
            cls = "on" if data.circle_roots == h.degree else _classify_complex(rlo, rhi, ilo, ihi)
            boxes.append([rlo, rhi, ilo, ihi, cls])
        decided_off = sum(1 for b in boxes if b[4] in ("inside", "outside"))
        if decided_off == h.degree - data.circle_roots:
            # every remaining undecided box must be a unimodular root
            for b in boxes:
                if b[4] is None:
                    b[4] = "on"
            return [RootBox(b[0], b[1], b[2], b[3], e, b[4]) for b in boxes]
        eps = eps / 1024


def isolate_roots(f: IntPolynomial, width: Fraction = DEFAULT_WIDTH) -> list[RootBox]:
    """Disjoint certified boxes for all roots of f with their modulus class."""
    if width <= 0:
        raise ValueError("width must be positive")
    width = Fraction(width)
    if f.constant_term == 0:
        # split off the root at zero, which is inside the unit circle
        k = next(i for i, c in enumerate(f.coeffs) if c)
        rest = IntPolynomial(f.coeffs[k:])
        zero = [RootBox(Fraction(0), Fraction(0), Fraction(0), Fraction(0), k, "inside")]
        return zero + (isolate_roots(rest, width) if rest.degree else [])
    out: list[RootBox] = []
    for data in circle_factor_data(f):
        out.extend(_isolate_factor(data, width))
    return out
