from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from contact_spectra.exact import InfRat
from contact_spectra.exceptions import ParityError, ValidationError
from contact_spectra.index import (
    IndexInput,
    brieskorn_mu,
    f_p,
    general_mu,
    iteration_residual,
    mean_index,
    perturbed_mean_index,
    perturbed_mu_cz,
    reference_grading_shift,
)
from oracles import concrete_perturbed_cz, ustilovsky_closed_form

A7 = (2, 2, 2, 2, 2, 7)


def test_brieskorn_mu_examples():
    assert brieskorn_mu(A7, IndexInput(2, 0)) == 4
    assert brieskorn_mu(A7, IndexInput(2, 7)) == 11
    # a = (2, 3, a_2, ...) with a_2.. > 6 and n = 5: -L/3 + (n-1)
    assert brieskorn_mu((2, 3, 7, 11, 13, 17), IndexInput(6, 0)) == 2
    assert brieskorn_mu((2, 3, 7, 11, 13, 17), IndexInput(6, 1)) == 3


def test_brieskorn_mu_hess_sign_override():
    assert brieskorn_mu(A7, IndexInput(2, 0, hess_sign=-1)) == 3


def test_index_input_validation():
    with pytest.raises(ValidationError):
        IndexInput(0)
    with pytest.raises(ValidationError):
        IndexInput(2, morse_index=4, stratum_dim=3)
    with pytest.raises(ValidationError):
        IndexInput(2, hess_sign=2)


def test_general_mu_examples():
    assert general_mu(4, IndexInput(2, 0, 1, 1)) == 4
    assert general_mu(4, IndexInput(2, 3, 5, 1)) == 5
    with pytest.raises(ParityError):
        general_mu(0, IndexInput(2, 0, 0, 1))


def test_mean_index_examples():
    assert mean_index(A7, 2) == Fraction(46, 7)
    assert mean_index((2, 2), 2) == 0
    assert mean_index((2, 3, 7, 43, 1807), 6) < 0


def test_iteration_residual_examples():
    assert all(iteration_residual((2, 2), 2, k) == 0 for k in range(1, 30))
    for a, L in [(A7, 2), ((2, 3, 11, 13, 17, 19), 6)]:
        n = len(a) - 1
        assert all(abs(iteration_residual(a, L, k)) <= 2 * (n - 1) for k in range(1, 101))


def test_f_p_examples():
    assert f_p(7, 16, 5) == 51
    assert f_p(7, 1, 5) == 2
    assert f_p(23, 16, 5) == 47 == f_p(7, 16, 5) - 4


@given(st.integers(-10**4, 10**4 - 1), st.integers(1, 500).map(lambda x: 2 * x + 1),
       st.sampled_from([5, 7, 9, 11]))
def test_f_p_strictly_increasing(l, p, n):
    assert f_p(p, l + 1, n) > f_p(p, l, n)


@pytest.mark.parametrize("p", [7, 23])
@pytest.mark.parametrize("n", [5, 7])
def test_brieskorn_mu_matches_displayed_cases(p, n):
    a = (2,) * n + (p,)
    for L in range(2, 301, 2):
        cells = (0, 2 * n - 1) if L % p == 0 else (0, n - 2, n - 1, 2 * n - 3)
        for c in cells:
            assert brieskorn_mu(a, IndexInput(L, c)) == ustilovsky_closed_form(p, n, L, c)


@pytest.mark.parametrize("p, n", [(7, 5), (23, 5), (7, 9)])
def test_perturbed_cz_matches_concrete_eps(p, n):
    for L in range(2, 400, 2):
        for shift in (-1, 0, 1):
            T = InfRat(L, -shift * L)
            assert perturbed_mu_cz(T, p, n) == concrete_perturbed_cz(L, shift, p, n), (L, shift)


def test_perturbed_mean_index():
    assert perturbed_mean_index(InfRat(2), 7, 5) == InfRat(Fraction(46, 7))
    assert perturbed_mean_index(InfRat(2, -2), 7, 5).inf == Fraction(-46, 7)


def test_grading_shift_is_documented_not_applied():
    assert reference_grading_shift(5) == Fraction(9, 2)
    assert brieskorn_mu(A7, IndexInput(2, 0)) == 4
