"""Surgery bookkeeping, connected sums and non-contactomorphism certificates."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import lcm
from typing import Iterable, Mapping, Sequence

from .catalog import Ustilovsky, UstilovskyPerturbed, degree_lmax, spectrum
from .exact import format_rat
from .exceptions import CertificateError, ValidationError
from .homology import (
    RankInterval,
    in_zero_region,
    perturbed_count_closed_form,
    rank_from_generators,
    sh_rank,
)
from .index import f_p
from .validation import check_int, check_odd_n, check_sphere_exponent

# ---------------------------------------------------------------------------
# handle and connected-sum calculus


def transport_afg(b_j: int, n: int, k_handle: int, j: int) -> int:
    """Bound in degree j after attaching a subcritical k-handle.

    The bound grows by one exactly when ``j = (n-k)(2N+1) + {0, 1}`` for some
    N >= 0, i.e. when j is a handle orbit degree.
    """
    check_int(b_j, "b_j", minimum=0)
    check_int(n, "n", minimum=2)
    check_int(k_handle, "k_handle", minimum=1)
    check_int(j, "j")
    if k_handle > n:
        raise ValidationError(f"handle index {k_handle} exceeds n={n}")
    if k_handle == 2:
        raise ValidationError("2-handles change contractibility of orbits; transport does not apply")
    d = n - k_handle
    if d == 0:
        return b_j + 1 if j in (0, 1) else b_j
    for e in (0, 1):
        q, r = divmod(j - e, d)
        if r == 0 and q >= 1 and q % 2 == 1:
            return b_j + 1
    return b_j


def connected_sum_rank(summands: Sequence[Mapping[int, object]]) -> dict[int, RankInterval]:
    """Degree-wise sum of rank tables; unknown ranks add as intervals."""
    total: dict[int, RankInterval] = {}
    for table in summands:
        for k, r in table.items():
            total[k] = total.get(k, RankInterval.exact(0)) + RankInterval.of(r)
    return total


def cor15_outcomes(rk_n_W: int, rk_n1_W: int) -> list[tuple[int, int]]:
    """Admissible (rk SH^+_n, rk SH^+_{n+1}) after a critical handle attachment."""
    check_int(rk_n_W, "rk_n_W", minimum=0)
    check_int(rk_n1_W, "rk_n1_W", minimum=0)
    out = [(rk_n_W + 1, rk_n1_W)]
    if rk_n1_W >= 1:
        out.append((rk_n_W, rk_n1_W - 1))
    return out


def thm13_sequence(b_xi: int, b_xik: int, N0: int, steps: int) -> list[int]:
    """``N_l = N0 (b+2)^l`` with ``b = max(b_xi, b_xik)``; each step separates."""
    check_int(b_xi, "b_xi", minimum=0)
    check_int(b_xik, "b_xik", minimum=0)
    check_int(N0, "N0", minimum=1)
    check_int(steps, "steps", minimum=0)
    b = max(b_xi, b_xik)
    # b_xi < N (b - b_xik + 1) is the separation at N = N0; larger N only helps.
    if steps and b_xi >= N0 * (b - b_xik + 1):
        raise ValidationError(
            f"N0={N0} too small to separate the first step (need b_xi < N0*(b-b_xik+1))")
    base = b + 2
    seq = [N0 * base ** l for l in range(steps + 1)]
    for a, b in zip(seq, seq[1:]):
        if not b_xi + a * (b_xik + 1) < b:
            raise CertificateError(f"separation fails between N={a} and N={b}")
    return seq


# ---------------------------------------------------------------------------
# mean Euler characteristic


@dataclass(frozen=True)
class MeanEuler:
    value: Fraction

    def __str__(self):
        return format_rat(self.value)


def _bracket(p: int, n: int) -> Fraction:
    return Fraction((n - 1) * p + 1, (n - 2) * p + 2)


def mean_euler(p: int, n: int) -> MeanEuler:
    """chi_m of a single Ustilovsky sphere. p = 1 is accepted as a formal limit."""
    check_int(p, "p", minimum=1)
    check_odd_n(n)
    if p % 2 == 0:
        raise ValidationError(f"p must be odd, got {p}")
    return MeanEuler(_bracket(p, n) / 2)


def mean_euler_connected_sum(values: Sequence[MeanEuler], n: int) -> MeanEuler:
    """Fold ``chi(V1 # V2) = chi1 + chi2 + (-1)^n / 2`` over the summands."""
    if not values:
        raise ValidationError("need at least one summand")
    sign = Fraction((-1) ** n, 2)
    return MeanEuler(reduce(lambda acc, v: acc + v.value + sign, values[1:], values[0].value))


def mean_euler_copies(p: int, n: int, copies: int) -> MeanEuler:
    """Closed form for the l-fold connected sum; agrees with the pairwise fold."""
    check_int(copies, "copies", minimum=1)
    s = (-1) ** n
    closed = Fraction(copies, 2) * (_bracket(p, n) + s) - Fraction(s, 2)
    folded = mean_euler_connected_sum([mean_euler(p, n)] * copies, n).value
    if closed != folded:
        raise CertificateError(f"closed form {closed} != fold {folded}")
    return MeanEuler(closed)


def cor17_solve(primes: Sequence[int], n: int) -> list[int]:
    """Smallest copy counts l_i giving all l_i * Sigma_{p_i} the same chi_m."""
    primes = list(primes)
    check_odd_n(n)
    if len(primes) < 2:
        raise ValidationError("need at least two exponents")
    for p in primes:
        check_sphere_exponent(p)
    if len(set(primes)) != len(primes):
        raise ValidationError(f"exponents must be distinct, got {primes}")
    s = (-1) ** n
    r1 = _bracket(primes[0], n) + s
    ratios = [r1 / (_bracket(p, n) + s) for p in primes]
    l1 = reduce(lcm, (q.denominator for q in ratios), 1)
    ls = [int(l1 * q) for q in ratios]
    values = {mean_euler_copies(p, n, l).value for p, l in zip(primes, ls)}
    if len(values) != 1:
        raise CertificateError(f"mean Euler characteristics differ: {values}")
    return ls


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class ContactDescriptor:
    """``copies`` fold connected sum of the Ustilovsky sphere Sigma_p."""

    copies: int
    p: int

    def __post_init__(self):
        check_int(self.copies, "copies", minimum=1)
        check_sphere_exponent(self.p)

    @classmethod
    def parse(cls, text: str) -> "ContactDescriptor":
        try:
            j, p = text.lower().replace(" ", "").split("x")
            return cls(int(j), int(p))
        except ValueError as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(f"expected 'j x p' such as 1x7, got {text!r}") from exc

    def __str__(self):
        return f"{self.copies}x{self.p}"


@dataclass(frozen=True)
class EqualParameters:
    """Returned when both sides describe the same contact structure."""

    left: ContactDescriptor
    right: ContactDescriptor

    def to_dict(self) -> dict:
        return {"equal": True, "left": str(self.left), "right": str(self.right)}


CASES = ("qGt2p1", "qLt2p1", "qEq2p1", "pEq")


@dataclass(frozen=True)
class Certificate:
    """Witness that two connected sums of Ustilovsky spheres differ.

    Every filling of ``bound_side`` has rk SH_k <= ``upper_bound`` while the
    standard filling of ``rank_side`` has rk SH_k = ``lower_rank``.
    """

    degree: int
    lower_rank: int
    upper_bound: int
    excluded_form_check: dict
    case: str
    n: int
    rank_side: str
    bound_side: str
    argument: str = "direct"
    witnesses: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return self.degree

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "lower_rank": self.lower_rank,
            "upper_bound": self.upper_bound,
            "excluded_form_check": dict(self.excluded_form_check),
            "case": self.case,
            "n": self.n,
            "rank_side": self.rank_side,
            "bound_side": self.bound_side,
            "argument": self.argument,
            "witnesses": dict(self.witnesses),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        return cls(
            degree=int(d["degree"]),
            lower_rank=int(d["lower_rank"]),
            upper_bound=int(d["upper_bound"]),
            excluded_form_check=dict(d["excluded_form_check"]),
            case=d["case"],
            n=int(d["n"]),
            rank_side=d["rank_side"],
            bound_side=d["bound_side"],
            argument=d.get("argument", "direct"),
            witnesses=dict(d.get("witnesses", {})),
        )


def handle_form_hits(k: int, n: int) -> list[int]:
    """All l >= 1 with ``k = (2l-1)(n-1) + {0, 1}``, by exhaustive scan."""
    hits = []
    for l in range(1, k // (n - 1) + 3):
        if k - (2 * l - 1) * (n - 1) in (0, 1):
            hits.append(l)
    return hits


def _excluded_form_record(k: int, n: int) -> dict:
    hits = handle_form_hits(k, n)
    return {
        "form": "(2l-1)(n-1)+{0,1}",
        "l_scanned_up_to": k // (n - 1) + 2,
        "hits": hits,
        "passed": not hits,
    }


def _normalise(left: ContactDescriptor, right: ContactDescriptor):
    if (left.p, left.copies) <= (right.p, right.copies):
        return left, right
    return right, left


def _case_degree(p: int, q: int, n: int) -> tuple[str, int, dict]:
    if q > 2 * p + 1:
        k = (2 * p + 1) * (n - 2) + 2
        return "qGt2p1", k, {"l_q": 2 * p + 2, "f_q": f_p(q, 2 * p + 2, n),
                             "f_p_minus_4": f_p(p, 2 * p + 2, n) - 4}
    if q < 2 * p + 1:
        # the even choice cannot be a handle degree when n = 1 mod 4, the odd one when n = 3 mod 4
        k = 2 * p * (n - 2) + (4 if n % 4 == 1 else 3)
        return "qLt2p1", k, {"l_q": 2 * p + 1, "f_q": f_p(q, 2 * p + 1, n),
                             "f_p": f_p(p, 2 * p + 1, n)}
    k = (4 * p + 1) * (n - 2) + 4
    return "qEq2p1", k, {"l_q": 2 * q, "f_q": f_p(q, 2 * q, n),
                         "f_p_minus_6": f_p(p, 4 * p + 2, n) - 6}


@lru_cache(maxsize=None)
def _rank_one(q: int, n: int, k: int) -> int:
    r = sh_rank(Ustilovsky(q, n), k).rank
    if not r.is_exact:
        raise CertificateError(f"rank of SH_{k} for p={q} is not determined")
    return r.value


def _equal_p_degree(p: int, n: int) -> int:
    """First degree with rk SH_k = 1, b_k = 1 and no handle-form collision."""
    l = 3
    while True:
        if l % 2 == 1 and (l - 1) % p:
            for k in (f_p(p, l, n) - 1, f_p(p, l, n)):
                if (k >= n and not handle_form_hits(k, n)
                        and perturbed_count_closed_form(p, n, k) == 1
                        and _rank_one(p, n, k) == 1):
                    return k
        l += 2


def distinguish(left: ContactDescriptor, right: ContactDescriptor, n: int):
    """Certificate separating ``j x Sigma_p`` from ``i x Sigma_q``, or EqualParameters."""
    check_odd_n(n)
    if isinstance(left, str):
        left = ContactDescriptor.parse(left)
    if isinstance(right, str):
        right = ContactDescriptor.parse(right)
    if (left.copies, left.p) == (right.copies, right.p):
        return EqualParameters(left, right)
    small, large = _normalise(left, right)
    p, q = small.p, large.p

    if p == q:
        k = _equal_p_degree(p, n)
        b_k = perturbed_count_closed_form(p, n, k)
        more, fewer = (small, large) if small.copies > large.copies else (large, small)
        cert = Certificate(
            degree=k,
            lower_rank=more.copies * _rank_one(p, n, k),
            upper_bound=fewer.copies * b_k,
            excluded_form_check=_excluded_form_record(k, n),
            case="pEq",
            n=n,
            rank_side=str(more),
            bound_side=str(fewer),
            argument="copies-threshold",
            witnesses={"b_k": b_k, "rank_per_copy": 1,
                       "threshold": f"{fewer.copies}*{b_k} < {more.copies}"},
        )
    else:
        case, k, witnesses = _case_degree(p, q, n)
        b_k = perturbed_count_closed_form(p, n, k)
        witnesses.update({"b_k": b_k, "zero_region": in_zero_region(p, n, k)})
        cert = Certificate(
            degree=k,
            lower_rank=large.copies * _rank_one(q, n, k),
            upper_bound=small.copies * b_k,
            excluded_form_check=_excluded_form_record(k, n),
            case=case,
            n=n,
            rank_side=str(large),
            bound_side=str(small),
            witnesses=witnesses,
        )
    if not (cert.upper_bound < cert.lower_rank and cert.excluded_form_check["passed"]):
        raise CertificateError(f"no separation for {left} vs {right} at n={n}: {cert}")
    return cert


@dataclass(frozen=True)
class Verification:
    ok: bool
    checks: dict

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": dict(self.checks)}


def verify_certificate(cert: Certificate) -> Verification:
    """Re-check a certificate from scratch, using enumeration instead of closed forms."""
    n, k = cert.n, cert.degree
    bound = ContactDescriptor.parse(cert.bound_side)
    ranked = ContactDescriptor.parse(cert.rank_side)
    checks = {"gap": cert.upper_bound < cert.lower_rank}

    hits = [l for l in range(1, k // (n - 1) + 3)
            if (2 * l - 1) * (n - 1) == k or (2 * l - 1) * (n - 1) + 1 == k]
    checks["excluded_form"] = not hits

    pert = UstilovskyPerturbed(bound.p, n)
    L_max = degree_lmax(pert, k)
    b_k = sum(1 for g in spectrum(pert, L_max) if g.degree == k)
    checks["upper_bound"] = bound.copies * b_k == cert.upper_bound

    fam = Ustilovsky(ranked.p, n)
    rank, _ = rank_from_generators(spectrum(fam, degree_lmax(fam, k + 1)), k)
    checks["lower_rank"] = (k >= n and rank.is_exact
                            and ranked.copies * rank.value == cert.lower_rank)
    return Verification(all(checks.values()), checks)


# ---------------------------------------------------------------------------
# sweeps


def valid_exponents(upto: int) -> list[int]:
    return [p for p in range(3, upto + 1, 2) if p % 8 in (1, 7)]


def _sweep_one(args):
    p, q, n = args
    cert = distinguish(ContactDescriptor(1, p), ContactDescriptor(1, q), n)
    return (p, q, n), cert, verify_certificate(cert)


def thread_cap() -> int:
    raw = os.environ.get("CONTACT_SPECTRA_THREADS", "")
    try:
        cap = int(raw) if raw else (os.cpu_count() or 1)
    except ValueError:
        raise ValidationError(f"CONTACT_SPECTRA_THREADS must be an integer, got {raw!r}") from None
    return max(1, cap)


def sweep(max_q: int = 49, ns: Iterable[int] = (5, 7, 9), workers: int | None = None):
    """Certificates for every pair p < q <= max_q of valid exponents and every n."""
    vals = valid_exponents(max_q)
    tasks = [(p, q, n) for n in ns for i, p in enumerate(vals) for q in vals[i + 1:]]
    workers = min(thread_cap(), workers or thread_cap())
    if workers <= 1 or len(tasks) < 8:
        return [_sweep_one(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_one, tasks, chunksize=8))
