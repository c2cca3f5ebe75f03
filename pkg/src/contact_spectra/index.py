"""Index formulas: Brieskorn Morse-Bott degrees, the general Morse-Bott grading,
mean indices and the bookkeeping function ``f_p``.

Conventions
-----------
Orbits of the Brieskorn Reeb flow are parametrised by ``L`` with period
``t = L*pi/2``.  The Hamiltonian slope sign ``hess_sign`` defaults to +1.
Another common grading convention differs from the one used here by half
the dimension of the manifold; that shift is exposed as
:func:`reference_grading_shift` and never applied implicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import InfRat, ceil_div, gauss_pair
from .exceptions import ParityError, ValidationError
from .validation import check_exponents, check_int


@dataclass(frozen=True)
class IndexInput:
    """Data of one Morse critical point on an orbit stratum."""

    L: int
    morse_index: int = 0
    stratum_dim: int | None = None
    hess_sign: int = 1

    def __post_init__(self):
        check_int(self.L, "L", minimum=1)
        check_int(self.morse_index, "morse_index", minimum=0)
        if self.stratum_dim is not None:
            check_int(self.stratum_dim, "stratum_dim", minimum=0)
            if self.morse_index > self.stratum_dim:
                raise ValidationError(
                    f"morse_index {self.morse_index} exceeds stratum dimension {self.stratum_dim}")
        if self.hess_sign not in (-1, 0, 1):
            raise ValidationError(f"hess_sign must be -1, 0 or 1, got {self.hess_sign}")


def reference_grading_shift(n: int) -> Fraction:
    """Half the dimension of a (2n-1)-dimensional Brieskorn manifold.

    Degrees in the alternative convention are obtained by adding this value.
    """
    return Fraction(2 * n - 1, 2)


def brieskorn_degree(a: Sequence[int], L: int, morse_index: int = 0, hess_sign: int = 1) -> int:
    """Morse-Bott degree of a closed Reeb orbit of period L*pi/2 on Sigma_a.

    ``2*sum(ceil(L/a_k)) - 2L + morse_index - (n-1)``; a sign other than +1
    shifts by ``(hess_sign - 1)/2``.
    """
    n = len(a) - 1
    mu = 2 * sum(ceil_div(L, ak) for ak in a) - 2 * L + morse_index - (n - 1)
    if hess_sign != 1:
        shift = Fraction(hess_sign - 1, 2)
        if shift.denominator != 1:
            raise ParityError(f"hess_sign={hess_sign} gives a half-integral degree")
        mu += int(shift)
    return mu


def brieskorn_mu(a: Sequence[int], inp: IndexInput) -> int:
    a = check_exponents(a)
    return brieskorn_degree(a, inp.L, inp.morse_index, inp.hess_sign)


def general_mu(mu_cz: int, inp: IndexInput) -> int:
    """``mu_cz + morse_index - dim/2 + hess_sign/2``; must be an integer."""
    if inp.stratum_dim is None:
        raise ValidationError("general_mu needs the stratum dimension")
    value = mu_cz + inp.morse_index + Fraction(inp.hess_sign - inp.stratum_dim, 2)
    if value.denominator != 1:
        raise ParityError(
            f"half-integral grading {value} (mu_cz={mu_cz}, dim={inp.stratum_dim}, "
            f"sign={inp.hess_sign}): inconsistent stratum data")
    return int(value)


def mean_index(a: Sequence[int], L: int) -> Fraction:
    """Linear growth coefficient ``2L(sum 1/a_k - 1)`` of the degree along iterates."""
    a = check_exponents(a, min_n=1)
    check_int(L, "L", minimum=1)
    return 2 * L * (sum(Fraction(1, ak) for ak in a) - 1)


def iteration_residual(a: Sequence[int], L: int, k: int, morse_index: int = 0) -> Fraction:
    """``mu(k-fold iterate) - k * mean_index`` as an exact rational."""
    a = check_exponents(a, min_n=1)
    check_int(k, "k", minimum=1)
    return brieskorn_degree(a, k * L, morse_index) - k * mean_index(a, L)


def f_p(p: int, l: int, n: int) -> int:
    """``(l-1)(n-2) + 2*ceil(l/p)``, strictly increasing in l for n >= 5."""
    return (l - 1) * (n - 2) + 2 * ceil_div(l, p)


def perturbed_mu_cz(T: InfRat, p: int, n: int) -> int:
    """Conley-Zehnder index of a trajectory of length T*pi/2 on a perturbed
    Ustilovsky sphere. Each bracket is evaluated with exact eps semantics."""
    T = InfRat.of(T)
    one_plus = InfRat(1, 1)
    one_minus = InfRat(1, -1)
    return (gauss_pair(T * one_plus / 2)
            + gauss_pair(T * one_minus / 2)
            + (n - 2) * gauss_pair(T / 2)
            + gauss_pair(T / p)
            - gauss_pair(T))


def perturbed_mean_index(T: InfRat, p: int, n: int) -> InfRat:
    """Growth rate ``T (n - 2 + 2/p)`` of the perturbed index."""
    return InfRat.of(T) * (Fraction(n - 2) + Fraction(2, p))
