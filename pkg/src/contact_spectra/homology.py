"""Generator counts, a.f.g. bounds and symplectic homology ranks.

Differentials are never computed.  Each family records why the differential
vanishes between its generators; where that argument does not apply the rank
is reported as an interval.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Union

from .catalog import (
    Brieskorn,
    Generator,
    SigmaMinus,
    SigmaPlus,
    Ustilovsky,
    UstilovskyPerturbed,
    degree_lmax,
    family_from_dict,
    spectrum,
)
from .exceptions import CertificateError, ValidationError, WindowError
from .index import f_p
from .validation import check_int


@dataclass(frozen=True)
class RankInterval:
    """A rank known to lie in ``[lo, hi]``.  Exact when lo == hi."""

    lo: int
    hi: int

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise ValidationError(f"bad rank interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value: int) -> "RankInterval":
        return cls(value, value)

    @classmethod
    def of(cls, value) -> "RankInterval":
        if isinstance(value, RankInterval):
            return value
        check_int(value, "rank", minimum=0)
        return cls(value, value)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int:
        if not self.is_exact:
            raise ValueError(f"rank is not determined: {self}")
        return self.lo

    def __add__(self, other):
        o = RankInterval.of(other)
        return RankInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __mul__(self, copies: int):
        check_int(copies, "copies", minimum=0)
        return RankInterval(self.lo * copies, self.hi * copies)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.is_exact and self.lo == other
        if isinstance(other, RankInterval):
            return (self.lo, self.hi) == (other.lo, other.hi)
        return NotImplemented

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __str__(self):
        return str(self.lo) if self.is_exact else f"Unknown{{{self.lo},{self.hi}}}"

    def to_json(self):
        return self.lo if self.is_exact else {"unknown": [self.lo, self.hi]}

    @classmethod
    def from_json(cls, data) -> "RankInterval":
        if isinstance(data, dict):
            lo, hi = data["unknown"]
            return cls(int(lo), int(hi))
        return cls.of(int(data))


Rank = Union[int, RankInterval]


def Unknown(lo: int = 0, hi: int = 1) -> RankInterval:
    return RankInterval(lo, hi)


class Justification(str, Enum):
    """Why the differential vanishes (or, for BOUND, that it may not)."""

    SYMMETRY = "symmetry"
    ACTION_GAP = "action-gap"
    INDEX_GAP = "index-gap"
    BOUND = "bound"


@dataclass(frozen=True)
class AfgBound:
    degree: int
    bound: int
    family: object
    window_valid_up_to: int

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "bound": self.bound,
            "family": self.family.to_dict(),
            "window_valid_up_to": self.window_valid_up_to,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AfgBound":
        return cls(int(d["degree"]), int(d["bound"]), family_from_dict(d["family"]),
                   int(d["window_valid_up_to"]))


@dataclass(frozen=True)
class RankResult:
    degree: int
    rank: RankInterval
    justification: Justification

    def to_dict(self) -> dict:
        return {"degree": self.degree, "rank": self.rank.to_json(),
                "justification": self.justification.value}

    @classmethod
    def from_dict(cls, d: dict) -> "RankResult":
        return cls(int(d["degree"]), RankInterval.from_json(d["rank"]),
                   Justification(d["justification"]))


# ---------------------------------------------------------------------------
# generator counts


def degree_counts(gens: Iterable[Generator]) -> Counter:
    return Counter(g.degree for g in gens)


def _block(p: int, l: int) -> dict[int, int]:
    """Offsets from f_p(l) and multiplicities of the perturbed count block at l."""
    if l < 2:
        return {}
    divides = (l - 1) % p == 0
    if l % 2 == 0 and not divides:
        if l == 2:
            # no orbits with period parameter 0
            return {-1: 1, 0: 1, 1: 1}
        return {-2: 1, -1: 2, 0: 2, 1: 1}
    if l % 2 == 1 and not divides:
        return {-1: 1, 0: 1}
    if l % 2 == 0 and divides:
        return {d: 1 for d in range(-4, 2)}
    return {}


def perturbed_count_closed_form(p: int, n: int, k: int) -> int:
    """Number of perturbed generators of degree k, from the block table."""
    total = 0
    l = 2
    while f_p(p, l, n) - 4 <= k:
        off = k - f_p(p, l, n)
        total += _block(p, l).get(off, 0)
        l += 1
    return total


def in_zero_region(p: int, n: int, k: int) -> bool:
    """True if k lies in one of the guaranteed-empty windows around f_p(l), 2p | l-1."""
    l = 1
    while f_p(p, l - 1, n) + 2 <= k:
        if (f_p(p, l - 1, n) + 2 <= k <= f_p(p, l - 1, n) + 5
                or f_p(p, l, n) - 3 <= k <= f_p(p, l, n)
                or f_p(p, l + 1, n) - 6 <= k <= f_p(p, l + 1, n) - 3):
            return True
        l += 2 * p
    return False


def count_in_degree(family, k: int) -> tuple[int, int]:
    """(generator count at degree k, L window used)."""
    L_max = degree_lmax(family, k)
    return sum(1 for g in spectrum(family, L_max) if g.degree == k), L_max


def afg_bound(family, k: int) -> AfgBound:
    """b_k: number of generators of degree k for the family's contact form."""
    check_int(k, "k")
    count, L_max = count_in_degree(family, k)
    if isinstance(family, UstilovskyPerturbed):
        closed = perturbed_count_closed_form(family.p, family.n, k)
        if closed != count:
            raise CertificateError(
                f"closed form {closed} disagrees with enumeration {count} at k={k}")
    return AfgBound(k, count, family, L_max)


def sh_rank_bound(k: int, b_k: AfgBound, betti_rel: int) -> int:
    """Upper bound ``b_k + rk H_{n-k}(V, dV)`` for rk SH_k of any filling."""
    check_int(betti_rel, "betti_rel", minimum=0)
    if b_k.degree != k:
        raise ValidationError(f"bound is for degree {b_k.degree}, not {k}")
    return b_k.bound + betti_rel


def sh_plus_rank_bound(b_k: AfgBound) -> int:
    return b_k.bound


# ---------------------------------------------------------------------------
# ranks


def _may_connect(x: Generator, y: Generator) -> bool:
    """Can a Floer trajectory run from x (degree d) to y (degree d-1)?

    Not if both sit on the same stratum (its Morse complex has zero
    differential in these families), and not if x has smaller action.
    """
    if x.stratum.key == y.stratum.key:
        return False
    return not x.length < y.length


def _differential_rank_bound(src: list, dst: list) -> int:
    live_src = {id(x) for x in src for y in dst if _may_connect(x, y)}
    live_dst = {id(y) for y in dst for x in src if _may_connect(x, y)}
    return min(len(live_src), len(live_dst))


def rank_from_generators(gens: list[Generator], k: int) -> tuple[RankInterval, bool]:
    """Rank interval at degree k plus whether any neighbour degree was occupied."""
    by_deg = {d: [g for g in gens if g.degree == d] for d in (k - 1, k, k + 1)}
    g = len(by_deg[k])
    r_out = _differential_rank_bound(by_deg[k], by_deg[k - 1])
    r_in = _differential_rank_bound(by_deg[k + 1], by_deg[k])
    adjacent = bool(g and (by_deg[k - 1] or by_deg[k + 1]))
    return RankInterval(max(0, g - r_out - r_in), g), adjacent


def sh_plus_rank(family, k: int) -> RankResult:
    """rk SH^+_k for the families where the differential is understood."""
    check_int(k, "k")
    if isinstance(family, SigmaPlus):
        count, _ = count_in_degree(family, k)
        return RankResult(k, RankInterval.exact(count), Justification.SYMMETRY)
    if isinstance(family, SigmaMinus):
        degree_lmax(family, k - 1)
        L_max = degree_lmax(family, k)
    elif isinstance(family, Ustilovsky):
        L_max = degree_lmax(family, k + 1)
    else:
        raise ValidationError(
            f"ranks are available for ustilovsky, sigma_plus and sigma_minus, not {family!r}")
    rank, adjacent = rank_from_generators(spectrum(family, L_max), k)
    if not rank.is_exact:
        why = Justification.BOUND
    elif adjacent:
        why = Justification.ACTION_GAP
    else:
        why = Justification.INDEX_GAP
    return RankResult(k, rank, why)


def sh_rank(family, k: int) -> RankResult:
    """rk SH_k of the Milnor-fibre filling of a Ustilovsky sphere, k >= n.

    Constant orbits only contribute in degrees at most 0, so in this range
    SH_k agrees with SH^+_k.
    """
    if not isinstance(family, Ustilovsky):
        raise ValidationError("full SH ranks are implemented for ustilovsky fillings only")
    if k < family.n:
        raise WindowError(f"degree {k} < n = {family.n}: filling topology would contribute")
    return sh_plus_rank(family, k)


def expected_ustilovsky_rank(p: int, n: int, k: int) -> RankInterval:
    """Reference rank pattern for k >= n built from f_p alone."""
    l = 1
    while f_p(p, l, n) - 2 <= k:
        off = k - f_p(p, l, n)
        if (l - 1) % p and off in (-1, 0):
            if l == 2 and off == 0:
                # the partner orbit would have period parameter 0
                return RankInterval.exact(0)
            return RankInterval.exact(1)
        if l % 2 == 0 and (l - 1) % p == 0 and off in (-2, -1):
            return Unknown()
        l += 1
    return RankInterval.exact(0)
