"""Closed Reeb orbit strata and chain generators for the supported families.

Family descriptors are small frozen dataclasses.  ``spectrum(family, L_max)``
returns every generator ``L gamma_c`` with period parameter ``L <= L_max``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Optional, Sequence

from .exact import InfRat, format_infrat, parse_infrat
from .exceptions import ParityError, ValidationError, WindowError
from .index import IndexInput, brieskorn_degree, f_p, general_mu, perturbed_mu_cz
from .validation import (
    check_exponents,
    check_int,
    check_odd_n,
    check_odd_p,
    check_pairwise_coprime_odd,
    odd_primes_from,
)

# ---------------------------------------------------------------------------
# stratum kinds


@dataclass(frozen=True)
class StratumKind:
    """Topological type of an orbit stratum together with its Morse cells."""

    name: str
    m: int = 0
    cells: tuple[int, ...] = ()

    @staticmethod
    def sphere(dim: int) -> "StratumKind":
        check_int(dim, "sphere dimension", minimum=1)
        if dim % 2 == 0:
            raise ValidationError(f"orbit strata are odd dimensional, got S^{dim}")
        return StratumKind("sphere", dim, (0, dim))

    @staticmethod
    def unit_cotangent(m: int) -> "StratumKind":
        check_int(m, "base sphere dimension", minimum=2)
        return StratumKind("unit_cotangent", m, (0, m - 1, m, 2 * m - 1))

    @staticmethod
    def circle() -> "StratumKind":
        return StratumKind("circle", 1, (0, 1))

    @staticmethod
    def point() -> "StratumKind":
        return StratumKind("point", 0, (0,))

    @staticmethod
    def custom(cells: Iterable[int], dim: int) -> "StratumKind":
        cells = tuple(sorted(cells))
        for c in cells:
            check_int(c, "morse cell", minimum=0)
        if cells and cells[-1] > dim:
            raise ValidationError(f"morse cell {cells[-1]} exceeds dimension {dim}")
        return StratumKind("custom", dim, cells)

    @property
    def dim(self) -> int:
        if self.name == "unit_cotangent":
            return 2 * self.m - 1
        return self.m

    @property
    def morse_cells(self) -> tuple[int, ...]:
        return self.cells

    @property
    def label(self) -> str:
        return {
            "sphere": f"S^{self.m}",
            "unit_cotangent": f"S*S^{self.m}",
            "circle": "S^1",
            "point": "pt",
        }.get(self.name, f"custom({self.m})")

    def to_dict(self) -> dict:
        return {"name": self.name, "m": self.m, "cells": list(self.cells)}

    @classmethod
    def from_dict(cls, d: dict) -> "StratumKind":
        return cls(d["name"], int(d["m"]), tuple(int(c) for c in d["cells"]))


Sphere = StratumKind.sphere
UnitCotangent = StratumKind.unit_cotangent
Circle = StratumKind.circle
Point = StratumKind.point
Custom = StratumKind.custom


@dataclass(frozen=True)
class OrbitStratum:
    """A connected manifold of closed Reeb orbits sharing one period.

    ``length`` is the period in units of pi/2 and may carry an eps-shift.
    ``branch`` distinguishes the perturbed circle families ("+" and "-").
    """

    L: int
    length: InfRat
    kind: StratumKind
    dim: int
    active_coords: frozenset = frozenset()
    branch: str = ""

    def __post_init__(self):
        check_int(self.L, "L", minimum=1)
        if self.dim != self.kind.dim:
            raise ValidationError(f"dimension {self.dim} does not match {self.kind.label}")
        object.__setattr__(self, "active_coords", frozenset(self.active_coords))
        object.__setattr__(self, "length", InfRat.of(self.length))

    @property
    def key(self) -> tuple:
        return (self.L, self.branch)

    def to_dict(self) -> dict:
        return {
            "L": self.L,
            "branch": self.branch,
            "length": format_infrat(self.length),
            "kind": self.kind.to_dict(),
            "dim": self.dim,
            "active_coords": sorted(self.active_coords),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OrbitStratum":
        return cls(
            L=int(d["L"]),
            length=parse_infrat(d["length"]),
            kind=StratumKind.from_dict(d["kind"]),
            dim=int(d["dim"]),
            active_coords=frozenset(d.get("active_coords", ())),
            branch=d.get("branch", ""),
        )


@dataclass(frozen=True)
class Generator:
    """A chain generator ``L gamma_c`` with its Morse-Bott degree."""

    stratum: OrbitStratum
    morse_cell: int
    degree: int
    label: str = ""

    def __post_init__(self):
        if not self.label:
            sup = f"^{self.stratum.branch}" if self.stratum.branch else ""
            object.__setattr__(self, "label", f"{self.stratum.L}γ_{self.morse_cell}{sup}")

    @property
    def L(self) -> int:
        return self.stratum.L

    @property
    def length(self) -> InfRat:
        return self.stratum.length

    def to_dict(self) -> dict:
        return {
            "L": self.stratum.L,
            "stratum": self.stratum.kind.label,
            "cell": self.morse_cell,
            "degree": self.degree,
            "length": format_infrat(self.stratum.length),
            "label": self.label,
            "branch": self.stratum.branch,
            "detail": self.stratum.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Generator":
        return cls(OrbitStratum.from_dict(d["detail"]), int(d["cell"]), int(d["degree"]), d["label"])


# ---------------------------------------------------------------------------
# family descriptors


@dataclass(frozen=True)
class Brieskorn:
    """Sigma_a for an arbitrary exponent vector.

    ``cells`` maps the tuple of active exponents to Morse cells for strata
    whose topology is not in the built-in table.
    """

    a: tuple[int, ...]
    cells: Optional[Callable[[tuple[int, ...]], Sequence[int]]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "a", check_exponents(self.a))

    @property
    def exponents(self) -> tuple[int, ...]:
        return self.a

    @property
    def n(self) -> int:
        return len(self.a) - 1

    def to_dict(self) -> dict:
        return {"family": "brieskorn", "a": list(self.a)}


@dataclass(frozen=True)
class Ustilovsky:
    """Sigma_p with a = (2, ..., 2, p): n twos followed by p."""

    p: int
    n: int

    def __post_init__(self):
        check_odd_p(self.p)
        check_odd_n(self.n)

    @property
    def exponents(self) -> tuple[int, ...]:
        return (2,) * self.n + (self.p,)

    def to_dict(self) -> dict:
        return {"family": "ustilovsky", "p": self.p, "n": self.n}


@dataclass(frozen=True)
class UstilovskyPerturbed:
    """Sigma_p with the eps-perturbed contact form (non-periodic Reeb flow)."""

    p: int
    n: int

    def __post_init__(self):
        check_odd_p(self.p)
        check_odd_n(self.n)

    @property
    def exponents(self) -> tuple[int, ...]:
        return (2,) * self.n + (self.p,)

    def to_dict(self) -> dict:
        return {"family": "ustilovsky_perturbed", "p": self.p, "n": self.n}


@dataclass(frozen=True)
class SigmaPlus:
    """a = (2, 2, 2, a_3, ..., a_n) with odd, increasing, pairwise coprime tail."""

    n: int
    tail: tuple[int, ...]

    def __post_init__(self):
        check_int(self.n, "n", minimum=3)
        tail = check_pairwise_coprime_odd(self.tail, "a_3..a_n")
        if len(tail) != self.n - 2:
            raise ValidationError(f"need {self.n - 2} tail exponents a_3..a_n, got {len(tail)}")
        object.__setattr__(self, "tail", tail)

    @classmethod
    def auto(cls, n: int, k: int) -> "SigmaPlus":
        """Exponents large enough that degree k lies in the certified window."""
        return cls(n, odd_primes_from(max(5, k - n + 4), n - 2))

    @property
    def exponents(self) -> tuple[int, ...]:
        return (2, 2, 2) + self.tail

    @property
    def window_degree(self) -> int:
        """Orbits with L >= a_3 have degree at least this value."""
        return self.tail[0] + self.n - 3

    def to_dict(self) -> dict:
        return {"family": "sigma_plus", "n": self.n, "tail": list(self.tail)}


@dataclass(frozen=True)
class SigmaMinus:
    """a = (2, 3, a_2, ..., a_n) with odd, increasing, pairwise coprime tail."""

    n: int
    tail: tuple[int, ...]

    def __post_init__(self):
        check_int(self.n, "n", minimum=2)
        tail = check_pairwise_coprime_odd(self.tail, "a_2..a_n")
        if len(tail) != self.n - 1:
            raise ValidationError(f"need {self.n - 1} tail exponents a_2..a_n, got {len(tail)}")
        if any(t % 3 == 0 for t in tail):
            raise ValidationError("a_2..a_n must be coprime to 3")
        object.__setattr__(self, "tail", tail)

    @classmethod
    def auto(cls, n: int, k: int) -> "SigmaMinus":
        start = 7
        while True:
            fam = cls(n, odd_primes_from(start, n - 1))
            if fam.tail_sum < Fraction(1, 6) and k - 1 > fam.window_degree:
                return fam
            start = 2 * start + 1

    @property
    def exponents(self) -> tuple[int, ...]:
        return (2, 3) + self.tail

    @property
    def tail_sum(self) -> Fraction:
        return sum(Fraction(1, t) for t in self.tail)

    @property
    def window_degree(self) -> Fraction:
        """Orbits with L >= a_2 have degree at most this value."""
        return 2 * self.tail[0] * (self.tail_sum - Fraction(1, 6)) + 3 * self.n + 2

    def to_dict(self) -> dict:
        return {"family": "sigma_minus", "n": self.n, "tail": list(self.tail)}


FAMILY_TYPES = (Brieskorn, Ustilovsky, UstilovskyPerturbed, SigmaPlus, SigmaMinus)


def family_from_dict(d: dict):
    kind = d.get("family")
    if kind == "brieskorn":
        return Brieskorn(tuple(d["a"]))
    if kind == "ustilovsky":
        return Ustilovsky(int(d["p"]), int(d["n"]))
    if kind == "ustilovsky_perturbed":
        return UstilovskyPerturbed(int(d["p"]), int(d["n"]))
    if kind == "sigma_plus":
        return SigmaPlus(int(d["n"]), tuple(d["tail"]))
    if kind == "sigma_minus":
        return SigmaMinus(int(d["n"]), tuple(d["tail"]))
    raise ValidationError(f"unknown family {kind!r}")


def family_n(family) -> int:
    return family.n


# ---------------------------------------------------------------------------
# enumeration


def _is_ustilovsky_pattern(a: tuple[int, ...]) -> bool:
    return len(a) >= 3 and all(x == 2 for x in a[:-1]) and a[-1] % 2 == 1


def resolve_kind(a: tuple[int, ...], active: frozenset, cells=None) -> StratumKind:
    """Topology of the stratum {z : z_k = 0 for k not active} of Sigma_a."""
    sub = tuple(a[k] for k in sorted(active))
    dim = 2 * len(sub) - 3
    if len(sub) >= 3 and all(x == 2 for x in sub):
        return UnitCotangent(len(sub) - 1)
    if len(sub) == 2 and gcd(*sub) == 1:
        return Circle()
    if len(active) == len(a) and _is_ustilovsky_pattern(a):
        return Sphere(dim)
    if cells is not None:
        return Custom(cells(sub), dim)
    raise ValidationError(
        f"stratum topology for active exponents {sub} is not tabulated; supply morse cells")


def enumerate_brieskorn(a: Sequence[int], L_max: int, cells=None) -> list[OrbitStratum]:
    """Strata N^L for 1 <= L <= L_max: one per L with at least two a_k dividing L."""
    a = check_exponents(a)
    check_int(L_max, "L_max")
    out = []
    for L in range(1, L_max + 1):
        active = frozenset(k for k, ak in enumerate(a) if L % ak == 0)
        if len(active) < 2:
            continue
        kind = resolve_kind(a, active, cells)
        out.append(OrbitStratum(L, InfRat(L), kind, kind.dim, active))
    return out


def enumerate_ustilovsky_perturbed(p: int, n: int, L_max: int) -> list[OrbitStratum]:
    """Strata of the perturbed form, ordered by length.

    Coordinates are w_0..w_n; the eps-shifted circles live in w_0 and w_1.
    """
    check_odd_p(p)
    check_odd_n(n)
    check_int(L_max, "L_max")
    out = []
    middle = frozenset(range(2, n))
    for L in range(2, L_max + 1, 2):
        out.append(OrbitStratum(L, InfRat(L, -L), Circle(), 1, {0}, "+"))
        if L % p:
            kind = UnitCotangent(n - 3)
            out.append(OrbitStratum(L, InfRat(L), kind, kind.dim, middle))
        else:
            kind = Sphere(2 * n - 5)
            out.append(OrbitStratum(L, InfRat(L), kind, kind.dim, middle | {n}))
        out.append(OrbitStratum(L, InfRat(L, L), Circle(), 1, {1}, "-"))
    return out


def _perturbed_degree(stratum: OrbitStratum, cell: int, p: int, n: int) -> int:
    mu_cz = perturbed_mu_cz(stratum.length, p, n)
    return general_mu(mu_cz, IndexInput(stratum.L, cell, stratum.dim, 1))


@lru_cache(maxsize=256)
def _spectrum_cached(family, L_max: int) -> tuple[Generator, ...]:
    gens = []
    if isinstance(family, UstilovskyPerturbed):
        for s in enumerate_ustilovsky_perturbed(family.p, family.n, L_max):
            for c in s.kind.morse_cells:
                gens.append(Generator(s, c, _perturbed_degree(s, c, family.p, family.n)))
        return tuple(gens)

    a = family.exponents
    cells = getattr(family, "cells", None)
    for s in enumerate_brieskorn(a, L_max, cells):
        for c in s.kind.morse_cells:
            gens.append(Generator(s, c, brieskorn_degree(a, s.L, c)))
    return tuple(gens)


def check_lmax(family, L_max: int) -> None:
    """Reject windows where the stratum table for a family stops being valid."""
    if isinstance(family, SigmaPlus) and L_max >= family.tail[0]:
        raise WindowError(
            f"sigma_plus strata are tabulated only for L < a_3 = {family.tail[0]}; got L_max={L_max}")
    if isinstance(family, SigmaMinus) and L_max >= family.tail[0]:
        raise WindowError(
            f"sigma_minus strata are tabulated only for L < a_2 = {family.tail[0]}; got L_max={L_max}")


def spectrum(family, L_max: int) -> list[Generator]:
    """All generators with period parameter at most L_max, sorted by (length, cell)."""
    if not isinstance(family, FAMILY_TYPES):
        raise ValidationError(f"unsupported family descriptor {family!r}")
    check_int(L_max, "L_max")
    check_lmax(family, L_max)
    if L_max < 2:
        return []
    if getattr(family, "cells", None) is not None:
        return list(_spectrum_cached.__wrapped__(family, L_max))
    return list(_spectrum_cached(family, L_max))


def degree_lmax(family, k: int) -> int:
    """An L window containing every generator of degree <= k.

    For the Ustilovsky families the minimal degree at period L is
    ``f_p(L) - 1``, so the window ends one even step after the first L whose
    minimal degree exceeds k.
    """
    if isinstance(family, (Ustilovsky, UstilovskyPerturbed)):
        L = 2
        while f_p(family.p, L, family.n) - 1 <= k:
            L += 2
        return L + 2
    if isinstance(family, SigmaPlus):
        if k >= family.window_degree:
            raise WindowError(
                f"degree {k} not below a_3 + n - 3 = {family.window_degree}: "
                "exponents a_3..a_n are not large enough")
        return family.tail[0] - 1
    if isinstance(family, SigmaMinus):
        if family.tail_sum >= Fraction(1, 6):
            raise WindowError("sum of 1/a_k over k >= 2 must be below 1/6")
        if k <= family.window_degree:
            raise WindowError(
                f"degree {k} not above 2 a_2 (sum 1/a_k - 1/6) + 3n + 2 = {family.window_degree}: "
                "exponents a_2..a_n are not large enough")
        return family.tail[0] - 1
    return brieskorn_lmax(family.exponents, k)


def brieskorn_lmax(a: Sequence[int], k: int) -> int:
    """Generic window from linear growth of the degree in L."""
    n = len(a) - 1
    s = sum(Fraction(1, x) for x in a)
    if s == 1:
        raise WindowError("mean index vanishes (sum 1/a_k = 1): no finite degree window")
    slope = 2 * (s - 1)
    if s > 1:
        # degree >= slope*L - (n-1)
        bound = (k + n - 1) / slope
    else:
        # degree <= slope*L + 3n + 2
        bound = (k - 3 * n - 2) / slope
    return max(1, int(bound) + 1)


def handle_spectrum(n: int, k: int, count: int) -> list[int]:
    """Degrees ``(n-k)(2l-1) + {0, 1}`` for l = 1..count of a subcritical k-handle."""
    check_int(n, "n", minimum=2)
    check_int(k, "k", minimum=1)
    check_int(count, "count", minimum=0)
    if k >= n:
        raise ValidationError(f"handle index k={k} must be subcritical (k < n={n})")
    return [(n - k) * (2 * l - 1) + e for l in range(1, count + 1) for e in (0, 1)]


def appendix_a_mu(mu_cz_fix: int, fix_dim: int, morse_index: int = 0) -> int:
    """Degree ``mu_cz - dim(Fix/S^1)/2 + morse`` of an orbit of a perturbed periodic flow."""
    check_int(fix_dim, "fix_dim", minimum=1)
    check_int(morse_index, "morse_index", minimum=0)
    value = mu_cz_fix - Fraction(fix_dim - 1, 2) + morse_index
    if value.denominator != 1:
        raise ParityError(f"odd quotient dimension {fix_dim - 1} gives half-integral degree {value}")
    return int(value)
