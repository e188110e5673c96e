"""Exact scalars in Q + Q*tau_1 + Q*tau_2 + ... for declared Q-independent irrationals.

A Number stores rational coordinates over the basis {1, tau_1, ...}. Symbols
may carry a numeric value (a decimal string evaluated with mpmath); this is
only used for signs and for comparison with numerically computed roots.
Equality and integrality are decided from the coordinates alone.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping

import mpmath

from .errors import NonSymbolicInput

EVAL_DPS = 60


@dataclass(frozen=True, order=True)
class Symbol:
    name: str
    value: str | None = None  # decimal digits; None while unbound

    def mpf(self) -> mpmath.mpf:
        if self.value is None:
            raise ValueError(f"symbol {self.name} has no numeric value bound")
        with mpmath.workdps(EVAL_DPS):
            return mpmath.mpf(self.value)


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*([^\d\s+\-*/][\w']*)?")


class Number:
    """Rational linear combination of 1 and declared irrational symbols."""

    __slots__ = ("rational", "coords")

    def __init__(self, rational: Any = 0, coords: Mapping[Symbol, Any] | None = None):
        if isinstance(rational, Number):
            self.rational = rational.rational
            self.coords = dict(rational.coords)
            return
        if isinstance(rational, float):
            raise NonSymbolicInput("floats are not accepted as exact parameters")
        self.rational = Fraction(rational)
        self.coords = {s: Fraction(c) for s, c in (coords or {}).items() if Fraction(c) != 0}

    # ----------------------------------------------------------- building
    @classmethod
    def symbol(cls, name: str, value: str | None = None) -> "Number":
        return cls(0, {Symbol(name, value): 1})

    @classmethod
    def coerce(cls, value: Any) -> "Number":
        if isinstance(value, Number):
            return value
        if isinstance(value, (list, tuple)):
            total = cls(0)
            for part in value:
                total = total + cls.coerce(part)
            return total
        if isinstance(value, str):
            return cls.parse(value)
        return cls(value)

    @classmethod
    def parse(cls, text: str) -> "Number":
        """Parse sums like "1/3", "2τ", "-τ", "1/2 + 3/4τ2"."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty number")
        total = cls(0)
        pos = 0
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse number {text!r}")
            sign, coef, name = m.groups()
            if coef is None and name is None:
                raise ValueError(f"cannot parse number {text!r}")
            c = Fraction(coef) if coef else Fraction(1)
            if sign == "-":
                c = -c
            total = total + (cls(0, {Symbol(name): c}) if name else cls(c))
            pos = m.end()
        return total

    # --------------------------------------------------------- inspection
    @property
    def is_rational(self) -> bool:
        return not self.coords

    def is_integer(self) -> bool:
        return self.is_rational and self.rational.denominator == 1

    def is_zero(self) -> bool:
        return self.rational == 0 and not self.coords

    def symbols(self) -> set[Symbol]:
        return set(self.coords)

    def coefficient(self, name: str) -> Fraction:
        return sum((c for s, c in self.coords.items() if s.name == name), Fraction(0))

    def to_mpf(self) -> mpmath.mpf:
        with mpmath.workdps(EVAL_DPS):
            v = mpmath.mpf(self.rational.numerator) / self.rational.denominator
            for s, c in self.coords.items():
                v += mpmath.mpf(c.numerator) / c.denominator * s.mpf()
            return v

    def __float__(self) -> float:
        return float(self.to_mpf())

    def sign(self) -> int:
        """Exact for rationals; otherwise from the bound numeric symbol values."""
        if self.is_zero():
            return 0
        if self.is_rational:
            return 1 if self.rational > 0 else -1
        v = self.to_mpf()
        if abs(v) < mpmath.mpf(10) ** (-(EVAL_DPS - 10)):
            raise ValueError("sign undecidable at working precision")
        return 1 if v > 0 else -1

    def bind(self, values: Mapping[str, str]) -> "Number":
        coords = {}
        for s, c in self.coords.items():
            if s.name in values:
                s = Symbol(s.name, values[s.name])
            coords[s] = coords.get(s, Fraction(0)) + c
        return Number(self.rational, coords)

    # ---------------------------------------------------------- arithmetic
    def __add__(self, other: Any) -> "Number":
        o = Number.coerce(other)
        coords = dict(self.coords)
        for s, c in o.coords.items():
            coords[s] = coords.get(s, Fraction(0)) + c
        return Number(self.rational + o.rational, coords)

    __radd__ = __add__

    def __neg__(self) -> "Number":
        return Number(-self.rational, {s: -c for s, c in self.coords.items()})

    def __sub__(self, other: Any) -> "Number":
        return self + (-Number.coerce(other))

    def __rsub__(self, other: Any) -> "Number":
        return Number.coerce(other) - self

    def __mul__(self, other: Any) -> "Number":
        o = Number.coerce(other)
        if o.is_rational:
            f = o.rational
            return Number(self.rational * f, {s: c * f for s, c in self.coords.items()})
        if self.is_rational:
            return o * self
        raise TypeError("product of two irrational Numbers is outside the parameter field")

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "Number":
        o = Number.coerce(other)
        if not o.is_rational or o.rational == 0:
            raise ZeroDivisionError("division only by nonzero rationals")
        return self * (1 / o.rational)

    def __eq__(self, other: Any) -> bool:
        try:
            o = Number.coerce(other)
        except (TypeError, ValueError, NonSymbolicInput):
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self) -> int:
        return hash((self.rational, frozenset(self.coords.items())))

    def __lt__(self, other: Any) -> bool:
        return (self - Number.coerce(other)).sign() < 0

    def __le__(self, other: Any) -> bool:
        return self == other or self < other

    def __gt__(self, other: Any) -> bool:
        return (self - Number.coerce(other)).sign() > 0

    def __ge__(self, other: Any) -> bool:
        return self == other or self > other

    def __abs__(self) -> "Number":
        return -self if self.sign() < 0 else self

    # -------------------------------------------------------------- output
    def __str__(self) -> str:
        parts = []
        if self.rational != 0 or not self.coords:
            parts.append(str(self.rational))
        for s in sorted(self.coords):
            c = self.coords[s]
            txt = ("" if abs(c) == 1 else str(abs(c))) + s.name
            parts.append(("-" if c < 0 else "+") + txt)
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out

    def __repr__(self) -> str:
        return f"Number({str(self)!r})"

    def to_json(self) -> str:
        return str(self)


def numbers(values: Iterable[Any]) -> tuple[Number, ...]:
    return tuple(Number.coerce(v) for v in values)


def symbol_values(nums: Iterable[Number]) -> dict[str, str | None]:
    out: dict[str, str | None] = {}
    for n in nums:
        for s in n.coords:
            if out.get(s.name) is None:
                out[s.name] = s.value
    return out
