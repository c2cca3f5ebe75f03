"""Input validation helpers shared by the library and the CLI."""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

from .exceptions import ValidationError


def check_int(value, name: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{name} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ValidationError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_exponents(a: Iterable[int], min_n: int = 2) -> tuple[int, ...]:
    """Return `a` as a tuple after checking every entry is an integer >= 2.

    ``min_n`` is the minimal value of n = len(a) - 1.
    """
    entries = tuple(a)
    for i, ai in enumerate(entries):
        check_int(ai, f"a_{i}", minimum=2)
    if len(entries) - 1 < min_n:
        raise ValidationError(
            f"need at least {min_n + 1} exponents (n >= {min_n}), got {len(entries)}")
    return entries


def check_odd_n(n: int, minimum: int = 5) -> int:
    check_int(n, "n", minimum=minimum)
    if n % 2 == 0:
        raise ValidationError(f"n must be odd, got {n}")
    return n


def check_odd_p(p: int, minimum: int = 3) -> int:
    check_int(p, "p", minimum=minimum)
    if p % 2 == 0:
        raise ValidationError(f"p must be odd, got {p}")
    return p


def check_sphere_exponent(p: int) -> int:
    """p must be odd, >= 3 and congruent to +-1 mod 8 (Sigma_p is a standard sphere)."""
    check_odd_p(p)
    if p % 8 not in (1, 7):
        raise ValidationError(f"p={p} is not congruent to +-1 mod 8")
    return p


def check_pairwise_coprime_odd(values: Sequence[int], name: str) -> tuple[int, ...]:
    values = tuple(values)
    for v in values:
        check_int(v, name, minimum=3)
        if v % 2 == 0:
            raise ValidationError(f"{name} entries must be odd, got {v}")
    if list(values) != sorted(set(values)):
        raise ValidationError(f"{name} must be strictly increasing, got {values}")
    for i, u in enumerate(values):
        for v in values[i + 1:]:
            if gcd(u, v) != 1:
                raise ValidationError(f"{name} must be pairwise coprime: gcd({u}, {v}) > 1")
    return values


def odd_primes_from(start: int, count: int) -> tuple[int, ...]:
    """The first `count` odd primes >= start. Convenient 'sufficiently large' exponents."""
    found = []
    candidate = max(3, start)
    if candidate % 2 == 0:
        candidate += 1
    while len(found) < count:
        if all(candidate % d for d in range(3, int(candidate ** 0.5) + 1, 2)):
            found.append(candidate)
        candidate += 2
    return tuple(found)
