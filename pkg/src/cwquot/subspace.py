"""Complex n x n matrices whose real column span is a candidate subspace of C^n.

Entries are kept exact as Gaussian rationals (pairs of Fractions) whenever
the input allows it. Floats are accepted and flagged inexact; their binary
values are still converted exactly when a certificate needs them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

import sympy as sp

from .errors import DependentColumns

Gauss = tuple[Fraction, Fraction]


def to_gauss(value: Any) -> Gauss | None:
    """Exact (re, im) pair for int/Fraction/sympy Gaussian rationals; None for floats."""
    if isinstance(value, tuple) and len(value) == 2:
        re, im = value
        if isinstance(re, float) or isinstance(im, float):
            return None
        return Fraction(re), Fraction(im)
    if isinstance(value, bool):
        return Fraction(int(value)), Fraction(0)
    if isinstance(value, (int, Fraction)):
        return Fraction(value), Fraction(0)
    if isinstance(value, (float, complex)):
        return None
    if isinstance(value, str):
        return to_gauss(sp.sympify(value.replace("i", "I")))
    if isinstance(value, sp.Basic):
        re, im = sp.re(value), sp.im(value)
        if re.is_Rational and im.is_Rational:
            return Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q))
        return None
    return None


def float_to_gauss(value: complex) -> Gauss:
    """Exact dyadic value of a float or complex number."""
    c = complex(value)
    return Fraction(c.real), Fraction(c.imag)


def gauss_to_complex(g: Gauss) -> complex:
    return complex(float(g[0]), float(g[1]))


def gauss_str(g: Gauss) -> str:
    re, im = g
    if im == 0:
        return str(re)
    if re == 0:
        return f"{im}*i"
    sign = "+" if im > 0 else "-"
    return f"{re}{sign}{abs(im)}*i"


def parse_gauss(text: str) -> Gauss:
    g = to_gauss(text)
    if g is None:
        raise ValueError(f"not a Gaussian rational: {text!r}")
    return g


@dataclass(frozen=True)
class SubspaceMatrix:
    """Complex matrix C; V_C is the real span of its columns."""

    rows: tuple[tuple[Any, ...], ...]
    exact: bool
    note: dict = field(default_factory=dict, compare=False)

    def __init__(self, rows: Iterable[Iterable[Any]], note: dict | None = None):
        converted = []
        exact = True
        for row in rows:
            out_row = []
            for v in row:
                g = to_gauss(v)
                if g is None:
                    exact = False
                    out_row.append(complex(v))
                else:
                    out_row.append(g)
            converted.append(tuple(out_row))
        if exact is False:
            converted = [
                tuple(v if isinstance(v, complex) else gauss_to_complex(v) for v in row)
                for row in converted
            ]
        n = len(converted)
        if any(len(r) != n for r in converted):
            raise ValueError("SubspaceMatrix must be square")
        object.__setattr__(self, "rows", tuple(converted))
        object.__setattr__(self, "exact", exact)
        object.__setattr__(self, "note", dict(note or {}))

    @property
    def n(self) -> int:
        return len(self.rows)

    def gauss_rows(self) -> list[list[Gauss]]:
        """Exact entries; floats are converted to their exact binary values."""
        if self.exact:
            return [list(r) for r in self.rows]
        return [[float_to_gauss(v) for v in r] for r in self.rows]

    def complex_rows(self) -> list[list[complex]]:
        if self.exact:
            return [[gauss_to_complex(v) for v in r] for r in self.rows]
        return [list(r) for r in self.rows]

    def real_stack(self) -> sp.Matrix:
        """The 2n x n exact real matrix (Re C; Im C)."""
        g = self.gauss_rows()
        re = [[sp.Rational(v[0].numerator, v[0].denominator) for v in r] for r in g]
        im = [[sp.Rational(v[1].numerator, v[1].denominator) for v in r] for r in g]
        return sp.Matrix(re + im)

    def check_independent(self) -> None:
        if self.real_stack().rank() != self.n:
            raise DependentColumns("columns of C are not R-independent")

    def permuted(self, perm: Sequence[int]) -> "SubspaceMatrix":
        """Rows reordered: new row i is old row perm[i]."""
        return SubspaceMatrix([self.rows[p] for p in perm], self.note)

    def conj_row(self, i: int) -> "SubspaceMatrix":
        rows = [list(r) for r in self.rows]
        if self.exact:
            rows[i] = [(v[0], -v[1]) for v in rows[i]]
        else:
            rows[i] = [v.conjugate() for v in rows[i]]
        return SubspaceMatrix(rows, self.note)

    def to_json(self) -> list[list[str]]:
        if self.exact:
            return [[gauss_str(v) for v in r] for r in self.rows]
        return [[repr(complex(v)) for v in r] for r in self.rows]

    @classmethod
    def from_json(cls, rows: Sequence[Sequence[str]]) -> "SubspaceMatrix":
        out = []
        for r in rows:
            out_row = []
            for s in r:
                s = str(s)
                if s.startswith("(") or "j" in s:
                    out_row.append(complex(s))
                else:
                    out_row.append(parse_gauss(s))
            out.append(out_row)
        return cls(out)


def is_complex_subspace(c: SubspaceMatrix) -> bool:
    """True when V_C is closed under multiplication by i (exact rank test)."""
    stack = c.real_stack()
    n = c.n
    # multiplication by i maps (x, y) to (-y, x)
    rotated = sp.Matrix.vstack(-stack[n:, :], stack[:n, :])
    return sp.Matrix.hstack(stack, rotated).rank() == n
