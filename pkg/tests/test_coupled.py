import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from compact_ldpc.catalog import get_entry
from compact_ldpc.coupled import (
    ConvolutionalCode,
    band_blocks,
    chain_matrix,
    from_symbolic,
    reduce_memory,
    to_symbolic,
    unwrap_qc,
    window_matrix,
)
from compact_ldpc.cycles import girth
from compact_ldpc.exponent import ExponentMatrix, ParameterError

from strategies import exponent_matrices


def code(rows):
    return ConvolutionalCode(ExponentMatrix(rows, None))


def test_symbolic_round_trip():
    S = to_symbolic(ExponentMatrix([[0, 1], [2, 0]], None))
    assert S.memory == 2 and S.is_monomial()
    assert S.polynomial(1, 0) == "x^2" and S.polynomial(0, 0) == "1"
    assert from_symbolic(S).base.entries == ((0, 1), (2, 0))


def test_catalog_memory():
    c = ConvolutionalCode(get_entry("sc-g10-c3-a4").matrix)
    assert c.memory == 11
    blocks = band_blocks(c)
    assert len(blocks) == 12
    assert sum(int(b.sum()) for b in blocks) == 12


def test_band_blocks_simple():
    b = band_blocks(code([[0, 1]]))
    assert b[0].tolist() == [[1, 0]] and b[1].tolist() == [[0, 1]]
    assert band_blocks(code([[0]]))[0].tolist() == [[1]]


@given(exponent_matrices(unbounded=True, max_entry=8))
def test_monomial_mass(P):
    c = ConvolutionalCode(P)
    blocks = band_blocks(c)
    total = np.sum(blocks, axis=0)
    assert (total == 1).all()


@given(exponent_matrices(unbounded=True, max_entry=6), st.integers(1, 6))
def test_chain_matches_band_structure(P, L):
    c = ConvolutionalCode(P)
    H = chain_matrix(c, L).toarray()
    blocks = band_blocks(c)
    for t in range(L):
        for s in range(L):
            blk = H[t * c.c:(t + 1) * c.c, s * c.a:(s + 1) * c.a]
            want = blocks[t - s] if 0 <= t - s <= c.memory else 0
            assert np.array_equal(blk, np.broadcast_to(want, blk.shape))


@given(exponent_matrices(unbounded=True, max_entry=6), st.integers(1, 4), st.data())
def test_window_is_chain_submatrix(P, W, data):
    c = ConvolutionalCode(P)
    L = W + data.draw(st.integers(0, 6))
    t = data.draw(st.integers(0, L - W))
    H = chain_matrix(c, L).toarray()
    win = window_matrix(c, W, t, L)
    rows = slice(t * c.c, (t + W) * c.c)
    assert np.array_equal(win.H.dense(), H[rows, t * c.a:(t + W) * c.a])
    past = {(r, col) for r, col in zip(win.past_rows.tolist(), win.past_cols.tolist())}
    want = {(r, col) for r, col in zip(*np.nonzero(H[rows, : t * c.a]))}
    assert past == want


def test_single_block_window():
    assert window_matrix(code([[0]]), 1, 0, 1).H.dense().tolist() == [[1]]
    with pytest.raises(ParameterError):
        window_matrix(code([[0]]), 3, 0, 2)


def test_full_band_window_rows_complete():
    c = ConvolutionalCode(get_entry("sc-g10-c3-a4").matrix)
    W = c.memory + 1
    win = window_matrix(c, W, 0, W)
    # the last block-row of the first full window sees its whole band
    assert (win.H.dense()[(W - 1) * c.c:].sum(axis=1) == c.a).all()


def test_large_window_size():
    c = ConvolutionalCode(get_entry("sc-g12-c3-a8").matrix)
    W = 5 * (c.memory + 1)
    assert W * c.a == 11920 and c.constraint_length == 2384


def test_unwrap():
    c = unwrap_qc(get_entry("qc-g10-m3-n4").matrix)
    assert c.memory == 27
    assert (c.girth() or 99) >= 10
    z = unwrap_qc(ExponentMatrix([[0, 0], [0, 0]], 5))
    assert z.memory == 0 and z.girth() == 4
    assert unwrap_qc(ExponentMatrix([[0, 0], [0, 1]], 5)).girth(4) is None
    with pytest.raises(ParameterError):
        unwrap_qc(ExponentMatrix([[0]], None))


def test_reduce_memory_examples():
    assert reduce_memory(code([[5, 5], [5, 6]])).base.entries == ((0, 0), (0, 1))
    z = code([[0, 0], [0, 0]])
    assert reduce_memory(z).base == z.base


@given(exponent_matrices(rows=(3, 3), cols=(5, 5), unbounded=True, max_entry=25))
def test_reduce_memory_keeps_girth(P):
    c = ConvolutionalCode(P)
    r = reduce_memory(c)
    assert r.memory <= c.memory
    assert girth(r.base) == girth(c.base)
    # row/column offsets only: every row difference pattern changes by a constant
    d = r.base.array() - c.base.array()
    assert (d - d[:, :1] - d[:1, :] + d[0, 0] == 0).all()


def _brute_memory(P):
    # column offsets are free, so for fixed row offsets the spread is the widest column
    a = np.array(P.entries)
    lim = int(a.max())
    best = int(a.max() - a.min())
    for rs in itertools.product(range(-lim, lim + 1), repeat=a.shape[0] - 1):
        shifted = a + np.array((0,) + rs)[:, None]
        best = min(best, int((shifted.max(axis=0) - shifted.min(axis=0)).max()))
    return best


@given(exponent_matrices(rows=(2, 2), cols=(3, 3), unbounded=True, max_entry=6))
def test_reduce_memory_is_optimal_on_small_bases(P):
    assert reduce_memory(ConvolutionalCode(P)).memory == _brute_memory(P)
