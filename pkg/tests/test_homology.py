from collections import Counter

import pytest

from contact_spectra.catalog import (
    Brieskorn,
    SigmaMinus,
    SigmaPlus,
    Ustilovsky,
    UstilovskyPerturbed,
    spectrum,
)
from contact_spectra.exceptions import ValidationError, WindowError
from contact_spectra.homology import (
    AfgBound,
    Justification,
    RankInterval,
    RankResult,
    Unknown,
    afg_bound,
    in_zero_region,
    perturbed_count_closed_form,
    sh_plus_rank,
    sh_plus_rank_bound,
    sh_rank,
    sh_rank_bound,
)
from oracles import f, block_table, rank_pattern


@pytest.mark.parametrize("p", [7, 23, 31])
@pytest.mark.parametrize("n", [5, 9])
def test_block_table_matches_enumeration(p, n):
    table = block_table(p, n, 400)
    counts = Counter(g.degree for g in spectrum(UstilovskyPerturbed(p, n), 200))
    for k in range(0, 401):
        assert counts.get(k, 0) == table.get(k, 0) == perturbed_count_closed_form(p, n, k), k


def test_zero_regions_are_empty():
    for p, n in [(7, 5), (23, 9)]:
        table = block_table(p, n, 400)
        for l in range(1, 60, 2 * p):
            for k in [f(p, l - 1, n) + d for d in (2, 3, 4, 5)] + \
                     [f(p, l, n) + d for d in (-3, -2, -1, 0)] + \
                     [f(p, l + 1, n) + d for d in (-6, -5, -4, -3)]:
                assert table.get(k, 0) == 0
                assert in_zero_region(p, n, k)


def test_afg_examples():
    fam = UstilovskyPerturbed(7, 5)
    l = 15  # 2*7 divides l - 1
    assert afg_bound(fam, f(7, l, 5)).bound == 0
    for l in (4, 6, 10):
        assert afg_bound(fam, f(7, l, 5) - 1).bound == 2
    assert afg_bound(fam, 3).bound == 0
    assert afg_bound(Ustilovsky(7, 5), 0).bound == 0


def test_afg_window_monotone():
    fam = Ustilovsky(7, 5)
    for k in range(5, 120):
        b = afg_bound(fam, k)
        bigger = sum(1 for g in spectrum(fam, b.window_valid_up_to + 40) if g.degree == k)
        assert bigger == b.bound


def test_afg_generic_brieskorn_window():
    for a in [(2, 2, 2, 2, 3), (2, 2, 2, 2, 5)]:  # sum of reciprocals > 1
        fam = Brieskorn(a)
        for k in range(0, 40):
            b = afg_bound(fam, k)
            far = sum(1 for g in spectrum(fam, b.window_valid_up_to + 60) if g.degree == k)
            assert b.bound == far, (a, k)


def test_afg_bound_round_trip():
    b = afg_bound(UstilovskyPerturbed(7, 5), 10)
    assert AfgBound.from_dict(b.to_dict()) == b


def test_sigma_plus_ranks():
    fam = SigmaPlus.auto(5, 40)
    assert sh_plus_rank(fam, 6).rank == 2
    assert sh_plus_rank(fam, 6).justification is Justification.SYMMETRY
    assert sh_plus_rank(fam, 4).rank == 1 and sh_plus_rank(fam, 5).rank == 1
    assert all(sh_plus_rank(fam, k).rank == 2 for k in range(6, 40))


def test_sigma_minus_ranks():
    fam = SigmaMinus.auto(5, -30)
    assert sh_plus_rank(fam, 3).rank == 1
    ranks = [sh_plus_rank(fam, k).rank for k in range(-29, 4)]
    assert all(r == 1 for r in ranks)
    assert sh_plus_rank(fam, 3).justification is Justification.ACTION_GAP


def test_sigma_windows_raise():
    with pytest.raises(WindowError):
        sh_plus_rank(SigmaPlus(5, (7, 11, 13)), 9)
    with pytest.raises(WindowError):
        sh_plus_rank(SigmaMinus(5, (101, 103, 107, 109)), -40)


def test_ustilovsky_unknowns():
    fam = Ustilovsky(7, 5)
    l = 8  # 7 divides l - 1
    assert sh_plus_rank(fam, f(7, l, 5) - 1).rank == Unknown()
    assert sh_plus_rank(fam, f(7, l, 5) - 2).rank == Unknown()
    assert sh_plus_rank(fam, f(7, l, 5) - 1).justification is Justification.BOUND
    assert sh_plus_rank(fam, f(7, l, 5)).rank == 0


@pytest.mark.parametrize("p, n", [(7, 5), (23, 5), (7, 9)])
def test_ustilovsky_rank_pattern(p, n):
    fam = Ustilovsky(p, n)
    for k in range(n + 1, 250):
        expected = rank_pattern(p, n, k)
        got = sh_rank(fam, k).rank
        assert got == (Unknown() if expected == "?" else RankInterval.exact(expected)), k


def test_rank_at_n_has_no_generator():
    # degree n = f_p(2) would need an orbit with period parameter 0
    for p, n in [(7, 5), (23, 9)]:
        assert not [g for g in spectrum(Ustilovsky(p, n), 6) if g.degree == n]
        assert sh_rank(Ustilovsky(p, n), n).rank == 0


def test_sh_rank_requires_filling_window():
    with pytest.raises(WindowError):
        sh_rank(Ustilovsky(7, 5), 4)
    with pytest.raises(ValidationError):
        sh_plus_rank(Brieskorn((2, 3, 5, 7)), 4)


def test_rank_bounds():
    zero = AfgBound(3, 0, Ustilovsky(7, 5), 10)
    two = AfgBound(3, 2, Ustilovsky(7, 5), 10)
    assert sh_rank_bound(3, zero, 0) == 0
    assert sh_rank_bound(3, two, 1) == 3
    assert sh_plus_rank_bound(two) == 2
    b = afg_bound(UstilovskyPerturbed(7, 5), 47)
    assert sh_rank_bound(47, b, 0) == b.bound


def test_rank_interval_arithmetic():
    u = Unknown()
    assert u + u == RankInterval(0, 2)
    assert 3 * RankInterval.exact(1) == 3
    assert str(u) == "Unknown{0,1}"
    assert RankInterval.from_json(u.to_json()) == u
    r = RankResult(5, u, Justification.BOUND)
    assert RankResult.from_dict(r.to_dict()) == r
