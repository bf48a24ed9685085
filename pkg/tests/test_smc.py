import itertools

import pytest

from compact_ldpc.catalog import get_entry
from compact_ldpc.cycles import girth
from compact_ldpc.exponent import ExponentMatrix, ParameterError, expand_block
from compact_ldpc.smc import (
    SmcSearchConfig,
    assemble_smc,
    find_min_lifting,
    greedy_gamma_search,
    seed_column_ok,
)
from compact_ldpc.tanner import tanner_girth_oracle


def test_assemble_matches_published_matrix():
    assert assemble_smc(37, (0, 1, 27), (3, 24)) == get_entry("qc-g10-m3-n4").matrix


def test_assemble_degenerate():
    assert assemble_smc(5, (0, 1), ()).entries == ((0, 0), (0, 1))


@pytest.mark.parametrize("gammas", [(1,), (3, 3), (5, 2), (37,)])
def test_assemble_rejects_bad_coefficients(gammas):
    with pytest.raises(ParameterError):
        assemble_smc(37, (0, 1, 27), gammas)


def test_seed_check():
    assert seed_column_ok((0, 1), 5, 6)
    assert seed_column_ok((0, 1, 27), 37, 10)
    # (0,1,2): 2*(1) - (2) = 0 gives a strictly avoidable 6-cycle
    assert not seed_column_ok((0, 1, 2), 37, 10)


def test_greedy_reproduces_published_coefficients():
    assert greedy_gamma_search(SmcSearchConfig(3, 4, 10), 37, (0, 1, 27)) == (3, 24)


def test_greedy_tiny_case():
    assert greedy_gamma_search(SmcSearchConfig(2, 3, 6), 3, (0, 1)) == (2,)


def test_no_success_one_below_minimum():
    out = find_min_lifting(SmcSearchConfig(3, 4, 10, n_min=36, n_max=36))
    assert out.status == "exhausted" and out.result is None


def test_first_success_girth_ten():
    out = find_min_lifting(SmcSearchConfig(3, 4, 10))
    assert out.status == "found"
    r = out.result
    assert r.lifting == 37
    assert girth(r.matrix) >= 10 or girth(r.matrix) is None


def test_girth_six_minimum_agrees_with_exhaustive_search():
    out = find_min_lifting(SmcSearchConfig(3, 4, 6, n_max=9))
    N = out.result.lifting
    assert tanner_girth_oracle(expand_block(out.result.matrix)) >= 6
    # no 3x4 matrix at any smaller legal lifting reaches girth 6
    for M in range(4, N):
        for inner in itertools.product(range(M), repeat=6):
            P = ExponentMatrix([[0, 0, 0, 0], [0, *inner[:3]], [0, *inner[3:]]], M)
            assert tanner_girth_oracle(expand_block(P), cap=4) == 4


def test_budget_is_reported():
    out = find_min_lifting(SmcSearchConfig(3, 4, 12, max_checks=50))
    assert out.status == "budget" and out.last_lifting is not None and out.checks > 50


@pytest.mark.parametrize("kw", [dict(target_girth=7), dict(rows=4, cols=4), dict(n_min=3)])
def test_config_validation(kw):
    base = dict(rows=3, cols=4, target_girth=10)
    base.update(kw)
    with pytest.raises(ParameterError):
        SmcSearchConfig(**base)
