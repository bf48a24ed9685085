"""Cycle candidates of an exponent matrix and girth computation.

A cycle candidate of length ``2k`` is a closed alternating walk
``n0 -m0- n1 -m1- ... n_{k-1} -m_{k-1}- n0`` over base-graph columns and rows
with ``m_i != m_{i+1}`` and ``n_i != n_{i+1}`` (indices mod ``k``).  It lifts
to a cycle of the Tanner graph exactly when its alternating sum
``sum_i p[m_i][n_i] - p[m_i][n_{i+1}]`` vanishes modulo ``N``; for the
convolutional interpretation the sum must vanish over the integers.

Two routes are provided.  :func:`enumerate_cycles` walks every candidate
explicitly and is meant for diagnostics and small matrices.  :func:`girth`
and :func:`shortest_cycle` instead propagate the *set* of reachable partial
sums as a bitset per walk state, which makes the tables' 4 x 12 matrices
tractable at length 12.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .exponent import ExponentMatrix, ParameterError

DEFAULT_CAP = 12


class CycleClass(enum.Enum):
    ABSENT = "absent"
    AVOIDABLE = "avoidable"
    STRICTLY_AVOIDABLE = "strictly-avoidable"


@dataclass(frozen=True)
class CycleCandidate:
    columns: tuple
    rows: tuple
    alternating_sum: int

    @property
    def length(self) -> int:
        return 2 * len(self.columns)

    def path(self) -> list:
        """Interleaved ``[("col", n0), ("row", m0), ...]`` node list."""
        out = []
        for n, m in zip(self.columns, self.rows):
            out += [("col", n), ("row", m)]
        return out


@dataclass(frozen=True)
class CycleWitness:
    candidate: CycleCandidate
    classification: CycleClass
    beta: Optional[int] = None

    @property
    def present(self) -> bool:
        return self.classification is not CycleClass.ABSENT

    @property
    def length(self) -> int:
        return self.candidate.length


def alternating_sum(P: ExponentMatrix, columns: Sequence[int], rows: Sequence[int]) -> int:
    k = len(columns)
    e = P.entries
    return sum(e[rows[i]][columns[i]] - e[rows[i]][columns[(i + 1) % k]] for i in range(k))


def is_valid_candidate(columns: Sequence[int], rows: Sequence[int]) -> bool:
    k = len(columns)
    if k < 2 or len(rows) != k:
        return False
    return all(columns[i] != columns[(i + 1) % k] and rows[i] != rows[(i + 1) % k] for i in range(k))


def classify(total: int, lifting: Optional[int]) -> tuple[CycleClass, Optional[int]]:
    if total == 0:
        return CycleClass.STRICTLY_AVOIDABLE, 0
    if lifting is not None and total % lifting == 0:
        return CycleClass.AVOIDABLE, abs(total) // lifting
    return CycleClass.ABSENT, None


def make_witness(P: ExponentMatrix, columns, rows) -> CycleWitness:
    columns, rows = tuple(columns), tuple(rows)
    if not is_valid_candidate(columns, rows):
        raise ParameterError("not a valid alternating closed walk")
    s = alternating_sum(P, columns, rows)
    cls, beta = classify(s, P.lifting)
    return CycleWitness(CycleCandidate(columns, rows, s), cls, beta)


def _check_cap(max_len: int, lo: int = 4, hi: int = DEFAULT_CAP) -> None:
    if max_len % 2 or not lo <= max_len <= hi:
        raise ParameterError(f"cycle length cap must be even and in [{lo}, {hi}], got {max_len}")


def _variants(cols, rows):
    k = len(cols)
    seq = []
    for n, m in zip(cols, rows):
        seq += [n, m]
    # reversed walk: n0, m_{k-1}, n_{k-1}, m_{k-2}, ..., n1, m0
    rev = [cols[0]]
    for i in range(k - 1, -1, -1):
        rev.append(rows[i])
        if i:
            rev.append(cols[i])
    for s in (seq, rev):
        for t in range(0, 2 * k, 2):
            yield tuple(s[t:] + s[:t])


def enumerate_cycles(
    P: ExponentMatrix, max_len: int = DEFAULT_CAP, *, min_len: int = 4
) -> Iterator[CycleWitness]:
    """Yield one witness per cycle candidate of length ``min_len..max_len``.

    Candidates are emitted once up to rotation and reflection of the closed
    walk, shortest first.  Non-adjacent revisits of rows and columns are
    allowed.  The number of candidates grows roughly like
    ``((m-1)(n-1))^k``; use :func:`girth` for anything but small matrices.
    """
    _check_cap(max_len)
    m, n = P.shape
    e = P.entries
    for k in range(max(2, min_len // 2), max_len // 2 + 1):
        for n0 in range(n):
            cols = [n0]
            rows: list = []

            def dfs(total):
                depth = len(rows)
                c = cols[-1]
                last = rows[-1] if rows else None
                for r in range(m):
                    if r == last or (depth == k - 1 and r == rows[0]):
                        continue
                    if depth == k - 1:
                        if c == n0:
                            continue
                        rows.append(r)
                        s = total + e[r][c] - e[r][n0]
                        key = tuple(x for pair in zip(cols, rows) for x in pair)
                        if key == min(_variants(cols, rows)):
                            cls, beta = classify(s, P.lifting)
                            yield CycleWitness(CycleCandidate(tuple(cols), tuple(rows), s), cls, beta)
                        rows.pop()
                        continue
                    rows.append(r)
                    for c2 in range(n0, n):
                        if c2 == c:
                            continue
                        cols.append(c2)
                        yield from dfs(total + e[r][c] - e[r][c2])
                        cols.pop()
                    rows.pop()

            yield from dfs(0)


def cycle_counts(P: ExponentMatrix, max_len: int = DEFAULT_CAP) -> dict:
    """Number of present cycle candidates per length (diagnostic only)."""
    cnt = Counter(w.length for w in enumerate_cycles(P, max_len) if w.present)
    return {L: cnt.get(L, 0) for L in range(4, max_len + 1, 2)}


class _SumSets:
    """Bitset arithmetic on sets of alternating sums.

    Finite lifting keeps residues mod ``N`` in an ``N``-bit integer and
    shifts by rotation.  The unbounded case stores integer sums offset by
    ``bias`` so that only exact zero closes a cycle.
    """

    def __init__(self, lifting: Optional[int], bias: int):
        self.N = lifting
        self.bias = 0 if lifting is not None else bias
        if lifting is not None:
            self.mask = (1 << lifting) - 1

    def single(self, d: int) -> int:
        return 1 << self.index(d)

    def index(self, s: int) -> int:
        return s % self.N if self.N is not None else s + self.bias

    def shift(self, x: int, d: int) -> int:
        if self.N is not None:
            d %= self.N
            if not d:
                return x
            return ((x << d) | (x >> (self.N - d))) & self.mask
        return x << d if d >= 0 else x >> -d

    def has(self, x: int, s: int) -> bool:
        i = self.index(s)
        return i >= 0 and (x >> i) & 1 == 1


def shortest_cycle(
    P: ExponentMatrix,
    cap: int = DEFAULT_CAP,
    *,
    through_column: Optional[int] = None,
    min_len: int = 4,
) -> Optional[CycleWitness]:
    """Return a witness of the shortest present cycle of length ``<= cap``.

    With ``through_column`` only cycles visiting that column are considered.
    Returns ``None`` when no present cycle of length ``min_len..cap`` exists.
    """
    if cap % 2 or cap < 4:
        raise ParameterError(f"cap must be even and >= 4, got {cap}")
    m, n = P.shape
    e = P.entries
    K = cap // 2
    sets = _SumSets(P.lifting, bias=K * max(1, P.spread()))
    if through_column is None:
        starts = [(n0, m0) for n0 in range(n) for m0 in range(m)]
    else:
        starts = [(through_column, m0) for m0 in range(m)]

    # per start: layers[t] maps state (column, last row) -> bitset of sums
    runs = []
    for n0, m0 in starts:
        # columns below the start may be skipped: rotate the walk to its smallest column
        lo = n0 if through_column is None else 0
        layer = {}
        for c in range(lo, n):
            if c != n0:
                layer[(c, m0)] = layer.get((c, m0), 0) | sets.single(e[m0][n0] - e[m0][c])
        runs.append([n0, m0, lo, [layer]])

    target = sets.index(0)
    for k in range(2, K + 1):
        for run in runs:
            n0, m0, lo, layers = run
            prev = layers[-1]
            nxt: dict = {}
            for (c, r), bits in prev.items():
                for r2 in range(m):
                    if r2 == r:
                        continue
                    row = e[r2]
                    for c2 in range(lo, n):
                        if c2 == c:
                            continue
                        key = (c2, r2)
                        nxt[key] = nxt.get(key, 0) | sets.shift(bits, row[c] - row[c2])
            layers.append(nxt)
        if 2 * k < min_len:
            continue
        for n0, m0, lo, layers in runs:
            last = layers[-1]
            for r in range(m):
                if r != m0 and (last.get((n0, r), 0) >> target) & 1:
                    return _backtrack(P, sets, n0, m0, r, layers)
    return None


def _backtrack(P, sets, n0, m0, r_last, layers) -> CycleWitness:
    e = P.entries
    k = len(layers)
    cols = [n0] * (k + 1)
    rows = [0] * k
    rows[k - 1] = r_last
    rows[0] = m0
    state, s = (n0, r_last), 0
    # layers[t] holds states reached after t+1 steps; walk back from the closure
    for t in range(k - 1, 0, -1):
        c, r = state
        found = None
        for (pc, pr), bits in layers[t - 1].items():
            if pr == r or pc == c:
                continue
            d = e[r][pc] - e[r][c]
            if sets.has(bits, s - d):
                found = (pc, pr, d)
                break
        assert found is not None, "inconsistent sum layers"
        pc, pr, d = found
        s -= d
        cols[t] = pc
        rows[t - 1] = pr
        state = (pc, pr)
    return make_witness(P, cols[:k], rows)


def girth(P: ExponentMatrix, cap: int = DEFAULT_CAP) -> Optional[int]:
    """Girth of the Tanner graph, or ``None`` when it exceeds ``cap``.

    Finite lifting counts cycles whose sum is ``0 mod N``; unbounded lifting
    counts only strictly avoidable ones (sum exactly zero).
    """
    w = shortest_cycle(P, cap)
    return None if w is None else w.length


def has_cycle_through(P: ExponentMatrix, column: int, max_len: int) -> bool:
    return shortest_cycle(P, max_len, through_column=column) is not None


def format_girth(g: Optional[int], cap: int = DEFAULT_CAP) -> str:
    return f">{cap}" if g is None else str(g)
