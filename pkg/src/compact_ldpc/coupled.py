"""Time-invariant monomial SC-LDPC convolutional codes.

The base matrix of a convolutional code is a ``c x a`` exponent matrix read
without a lifting degree: entry ``p_ij`` is the degree of the single
monomial ``x^p_ij`` in position ``(i, j)`` of the symbolic matrix.  Unrolled
in time, check ``i`` of block-row ``t`` touches symbol ``j`` of block-column
``t - p_ij``; the band blocks are ``H_d[i, j] = [p_ij == d]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.sparse as sp

from .cycles import girth
from .exponent import ExponentMatrix, ParameterError, ParityCheckMatrix


@dataclass(frozen=True)
class ConvolutionalCode:
    """Monomial SC-LDPC-CC; the base is stored shifted so its minimum is 0."""

    base: ExponentMatrix

    def __init__(self, base: ExponentMatrix):
        lo = min(v for r in base.entries for v in r)
        rows = [[v - lo for v in r] for r in base.entries]
        object.__setattr__(self, "base", ExponentMatrix(rows, None))

    @property
    def c(self) -> int:
        return self.base.rows

    @property
    def a(self) -> int:
        return self.base.cols

    @property
    def memory(self) -> int:
        return self.base.spread()

    @property
    def constraint_length(self) -> int:
        return (self.memory + 1) * self.a

    @property
    def rate(self) -> float:
        return (self.a - self.c) / self.a

    def girth(self, cap: int = 12) -> Optional[int]:
        return girth(self.base, cap)


@dataclass(frozen=True)
class SymbolicMatrix:
    """``c x a`` grid of monomial degree sets (polynomial supports)."""

    degrees: tuple

    @property
    def memory(self) -> int:
        flat = [d for row in self.degrees for s in row for d in s]
        return max(flat) - min(flat)

    def is_monomial(self) -> bool:
        return all(len(s) == 1 for row in self.degrees for s in row)

    def polynomial(self, i: int, j: int) -> str:
        terms = sorted(self.degrees[i][j])
        return " + ".join("1" if d == 0 else ("x" if d == 1 else f"x^{d}") for d in terms) or "0"


def to_symbolic(P: ExponentMatrix) -> SymbolicMatrix:
    return SymbolicMatrix(tuple(tuple(frozenset([v]) for v in row) for row in P.entries))


def from_symbolic(S: SymbolicMatrix) -> ConvolutionalCode:
    if not S.is_monomial():
        raise ParameterError("only monomial symbolic matrices describe a ConvolutionalCode")
    return ConvolutionalCode(ExponentMatrix([[next(iter(s)) for s in row] for row in S.degrees], None))


def band_blocks(code: ConvolutionalCode) -> list:
    """The ``m_h + 1`` binary ``c x a`` blocks ``H_0 .. H_{m_h}``."""
    P = code.base.array()
    return [(P == d).astype(np.uint8) for d in range(code.memory + 1)]


def chain_matrix(code: ConvolutionalCode, chain_len: int) -> sp.csr_matrix:
    """Block-banded matrix of a chain of ``chain_len`` positions, stacked from the band blocks."""
    blocks = band_blocks(code)
    grid = [[None] * chain_len for _ in range(chain_len)]
    for t in range(chain_len):
        for s in range(max(0, t - code.memory), t + 1):
            grid[t][s] = sp.csr_matrix(blocks[t - s])
    return sp.bmat(grid, format="csr", dtype=np.uint8)


@dataclass(frozen=True)
class WindowMatrix:
    """Parity checks seen by the sliding-window decoder at position ``t``.

    ``past_rows`` and ``past_cols`` list, pairwise, a local check row and the
    global symbol index of an already decided symbol it involves.
    """

    H: ParityCheckMatrix
    t: int
    blocks: int
    a: int
    c: int
    past_rows: np.ndarray
    past_cols: np.ndarray

    @property
    def target(self) -> slice:
        return slice(0, self.a)

    @property
    def rows_with_past(self) -> np.ndarray:
        return np.unique(self.past_rows)


def window_matrix(code: ConvolutionalCode, W: int, t: int, chain_len: int) -> WindowMatrix:
    """Checks of block-rows ``t..t+W-1`` restricted to block-columns ``t..t+W-1``."""
    if W < 1 or t < 0:
        raise ParameterError("need W >= 1 and t >= 0")
    if t + W > chain_len:
        raise ParameterError(f"window [{t}, {t + W}) exceeds chain of {chain_len} positions")
    c, a = code.c, code.a
    P = code.base.entries
    rows, cols, blk, sh = [], [], [], []
    prow, pcol = [], []
    for u in range(W):
        tau = t + u
        for i in range(c):
            r = u * c + i
            for j in range(a):
                s = tau - P[i][j]
                if s >= t:
                    rows.append(r)
                    cols.append((s - t) * a + j)
                    blk.append((i, j))
                    sh.append(P[i][j])
                elif s >= 0:
                    prow.append(r)
                    pcol.append(s * a + j)
    H = sp.csr_matrix(
        (np.ones(len(rows), dtype=np.uint8), (rows, cols)), shape=(W * c, W * a)
    )
    pcm = ParityCheckMatrix(H, np.array(blk, dtype=np.int64).reshape(-1, 2), np.array(sh, dtype=np.int64), None)
    return WindowMatrix(pcm, t, W, a, c, np.array(prow, dtype=np.int64), np.array(pcol, dtype=np.int64))


def unwrap_qc(P: ExponentMatrix) -> ConvolutionalCode:
    """Read a block code's exponent matrix as monomial degrees of an SC code."""
    if P.lifting is None:
        raise ParameterError("unwrap_qc expects a finite-lifting block code")
    return ConvolutionalCode(P.with_lifting(None))


def _feasible_offsets(P: list, D: int) -> Optional[list]:
    """Potentials ``x`` with ``0 <= p_ij + x_i - x_{c+j} <= D``, or None."""
    c, a = len(P), len(P[0])
    edges = []
    for i in range(c):
        for j in range(a):
            edges.append((i, c + j, P[i][j]))
            edges.append((c + j, i, D - P[i][j]))
    dist = [0] * (c + a)
    for _ in range(c + a):
        changed = False
        for u, v, w in edges:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
        if not changed:
            return dist
    return None


def reduce_memory(code: ConvolutionalCode) -> ConvolutionalCode:
    """Minimise the memory order over integer row and column offsets.

    Adding a constant to a row or a column leaves every alternating cycle sum
    unchanged, so the girth is untouched.  The smallest feasible spread ``D``
    is found by bisection; feasibility of ``0 <= p_ij + r_i + s_j <= D`` is a
    system of difference constraints solved with Bellman-Ford.
    """
    P = [list(r) for r in code.base.entries]
    c, a = len(P), len(P[0])
    lo, hi = 0, code.memory
    best = None
    while lo < hi:
        mid = (lo + hi) // 2
        x = _feasible_offsets(P, mid)
        if x is None:
            lo = mid + 1
        else:
            hi, best = mid, x
    if best is None or hi >= code.memory:
        return code
    Q = [[P[i][j] + best[i] - best[c + j] for j in range(a)] for i in range(c)]
    return ConvolutionalCode(ExponentMatrix(Q, None))
