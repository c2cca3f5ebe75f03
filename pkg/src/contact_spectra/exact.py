"""Exact rationals and first-order infinitesimals.

Rationals are plain :class:`fractions.Fraction` values.  :class:`InfRat`
models ``q + c*eps`` where ``eps`` is a positive infinitesimal: smaller than
every positive rational, so comparisons are lexicographic in ``(q, c)``.
Only first-order terms are kept; products of two infinitesimals vanish.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from .exceptions import ValidationError

Rat = Fraction
RatLike = Union[int, Fraction]

EPS_SYMBOL = "ε"

_OPS = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
    "/": operator.truediv,
}


def as_rat(x) -> Fraction:
    """Coerce ints, Fractions and "a/b" strings to a Fraction. Floats are refused."""
    if isinstance(x, bool):
        raise ValidationError(f"not a rational: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse rational {x!r}") from exc
    raise ValidationError(f"not an exact rational: {x!r}")


def rat_arith(x, y, op: str) -> Fraction:
    """Apply one of ``+ - * /`` to two exact rationals."""
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValidationError(f"unknown operator {op!r}") from None
    x, y = as_rat(x), as_rat(y)
    if op == "/" and y == 0:
        raise ZeroDivisionError("rational division by zero")
    return fn(x, y)


def format_rat(x: Fraction) -> str:
    """Render as "a/b", or "a" for integers. Never a float."""
    x = as_rat(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def floor_div(a: int, b: int) -> int:
    return a // b


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def rat_floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def rat_ceil(x: Fraction) -> int:
    return -(-x.numerator // x.denominator)


@dataclass(frozen=True, order=False)
class InfRat:
    """The quantity ``std + inf * eps`` for an infinitesimal ``eps > 0``."""

    std: Fraction
    inf: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "std", as_rat(self.std))
        object.__setattr__(self, "inf", as_rat(self.inf))

    @classmethod
    def of(cls, x) -> "InfRat":
        return x if isinstance(x, InfRat) else cls(as_rat(x), Fraction(0))

    # ordering: lexicographic, eps below every positive rational
    def _key(self):
        return (self.std, self.inf)

    def __lt__(self, other):
        return self._key() < InfRat.of(other)._key()

    def __le__(self, other):
        return self._key() <= InfRat.of(other)._key()

    def __gt__(self, other):
        return self._key() > InfRat.of(other)._key()

    def __ge__(self, other):
        return self._key() >= InfRat.of(other)._key()

    def __eq__(self, other):
        try:
            return self._key() == InfRat.of(other)._key()
        except ValidationError:
            return NotImplemented

    def __hash__(self):
        return hash(self._key())

    def __neg__(self):
        return InfRat(-self.std, -self.inf)

    def __add__(self, other):
        o = InfRat.of(other)
        return InfRat(self.std + o.std, self.inf + o.inf)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-InfRat.of(other))

    def __rsub__(self, other):
        return InfRat.of(other) - self

    def __mul__(self, other):
        o = InfRat.of(other)
        return InfRat(self.std * o.std, self.std * o.inf + self.inf * o.std)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # (a + b eps) / (c + d eps) = a/c + (b c - a d)/c^2 eps + O(eps^2)
        o = InfRat.of(other)
        if o.std == 0:
            raise ZeroDivisionError("division by an infinitesimal or zero")
        c = o.std
        return InfRat(self.std / c, (self.inf * c - self.std * o.inf) / (c * c))

    def __rtruediv__(self, other):
        return InfRat.of(other) / self

    def is_standard(self) -> bool:
        return self.inf == 0

    def sign(self) -> int:
        if self.std:
            return 1 if self.std > 0 else -1
        if self.inf:
            return 1 if self.inf > 0 else -1
        return 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def at(self, eps) -> Fraction:
        """Concrete evaluation at a rational eps."""
        return self.std + self.inf * as_rat(eps)

    def __str__(self):
        return format_infrat(self)

    def __repr__(self):
        return f"InfRat({format_rat(self.std)!r}, {format_rat(self.inf)!r})"


EPS = InfRat(Fraction(0), Fraction(1))


def inf_floor(x: InfRat) -> int:
    """Floor of ``q + c*eps`` as eps -> 0+."""
    x = InfRat.of(x)
    q = x.std
    if q.denominator != 1:
        return rat_floor(q)
    return q.numerator if x.inf >= 0 else q.numerator - 1


def inf_ceil(x: InfRat) -> int:
    """Ceiling of ``q + c*eps`` as eps -> 0+."""
    x = InfRat.of(x)
    q = x.std
    if q.denominator != 1:
        return rat_ceil(q)
    return q.numerator if x.inf <= 0 else q.numerator + 1


def gauss_pair(x: InfRat) -> int:
    """floor(x) + ceil(x), the bracket sum appearing in index formulas."""
    return inf_floor(x) + inf_ceil(x)


def format_infrat(x: InfRat) -> str:
    """Render e.g. ``2 - 2ε``, ``1/2 + ε``, ``3``."""
    x = InfRat.of(x)
    if x.inf == 0:
        return format_rat(x.std)
    mag = abs(x.inf)
    coeff = "" if mag == 1 else format_rat(mag)
    if x.std == 0:
        sign = "-" if x.inf < 0 else ""
        return f"{sign}{coeff}{EPS_SYMBOL}"
    sign = "-" if x.inf < 0 else "+"
    return f"{format_rat(x.std)} {sign} {coeff}{EPS_SYMBOL}"


def parse_infrat(text: str) -> InfRat:
    """Inverse of :func:`format_infrat`; also accepts ``eps`` for ``ε``."""
    body = str(text).replace(" ", "").replace("eps", EPS_SYMBOL)
    if not body:
        raise ValidationError("empty infinitesimal rational")
    try:
        if not body.endswith(EPS_SYMBOL):
            return InfRat(Fraction(body))
        body = body[:-1]
        cut = max(body.rfind("+"), body.rfind("-"))
        std, coeff = (body[:cut], body[cut:]) if cut > 0 else ("0", body)
        if coeff in ("", "+", "-"):
            coeff += "1"
        return InfRat(Fraction(std), Fraction(coeff))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot parse infinitesimal rational {text!r}") from exc
