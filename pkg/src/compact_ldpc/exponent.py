"""Exponent matrices of CPM-based QC-LDPC codes and their binary expansion.

An exponent matrix holds the shift of every circulant permutation matrix
(CPM) of a fully connected base graph.  With a finite lifting degree ``N``
it describes a block code of length ``n*N``; with ``N = None`` (written
``inf`` in files) the same integers are read as the monomial degrees of a
time-invariant SC-LDPC convolutional code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np
import scipy.sparse as sp


class ParameterError(ValueError):
    """Raised when an argument violates an operation's preconditions."""


@dataclass(frozen=True)
class ExponentMatrix:
    """Immutable ``rows x cols`` matrix of CPM shifts.

    Parameters
    ----------
    entries : sequence of sequences of int
        Shift values, all non-negative.
    lifting : int or None
        Lifting degree ``N`` (block code) or ``None`` for the unbounded,
        convolutional interpretation.  No reduction is applied to the
        entries in the unbounded case.
    """

    entries: tuple
    lifting: Optional[int] = None

    def __init__(self, entries, lifting: Optional[int] = None):
        rows = tuple(tuple(int(v) for v in row) for row in entries)
        if not rows or not rows[0]:
            raise ParameterError("exponent matrix needs at least one row and one column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ParameterError("ragged exponent matrix")
        if any(v < 0 for r in rows for v in r):
            raise ParameterError("exponent entries must be non-negative")
        if lifting is not None:
            lifting = int(lifting)
            if lifting < 1:
                raise ParameterError(f"lifting degree must be >= 1, got {lifting}")
            bad = [v for r in rows for v in r if v >= lifting]
            if bad:
                raise ParameterError(f"entry {bad[0]} out of range for N={lifting}")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "lifting", lifting)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def is_finite(self) -> bool:
        return self.lifting is not None

    def array(self) -> np.ndarray:
        a = np.array(self.entries, dtype=np.int64)
        a.setflags(write=False)
        return a

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def with_lifting(self, lifting: Optional[int]) -> "ExponentMatrix":
        return ExponentMatrix(self.entries, lifting)

    def spread(self) -> int:
        """Largest difference between any two entries."""
        flat = [v for r in self.entries for v in r]
        return max(flat) - min(flat)

    def to_text(self, comment: Optional[str] = None) -> str:
        return format_exponent_matrix(self, comment)

    def __str__(self) -> str:
        return self.to_text()


def parse_exponent_matrix(text: str) -> ExponentMatrix:
    """Parse the ``m n N`` text format (``N`` may be ``inf``)."""
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append(line)
    if not lines:
        raise ParameterError("empty exponent-matrix file")
    head = lines[0].replace(",", " ").split()
    if len(head) != 3:
        raise ParameterError(f"header must be 'm n N', got {lines[0]!r}")
    try:
        m, n = int(head[0]), int(head[1])
    except ValueError as exc:
        raise ParameterError(f"bad header {lines[0]!r}") from exc
    lifting = None if head[2].lower() == "inf" else int(head[2])
    body = [ln.replace(",", " ").split() for ln in lines[1:]]
    if len(body) != m:
        raise ParameterError(f"expected {m} matrix rows, found {len(body)}")
    rows = []
    for k, tokens in enumerate(body):
        if len(tokens) != n:
            raise ParameterError(f"row {k} has {len(tokens)} entries, expected {n}")
        rows.append([int(t) for t in tokens])
    return ExponentMatrix(rows, lifting)


def format_exponent_matrix(P: ExponentMatrix, comment: Optional[str] = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    N = "inf" if P.lifting is None else str(P.lifting)
    out.append(f"{P.rows} {P.cols} {N}")
    out.extend(" ".join(str(v) for v in row) for row in P.entries)
    return "\n".join(out) + "\n"


def read_exponent_matrix(path) -> ExponentMatrix:
    return parse_exponent_matrix(Path(path).read_text())


def write_exponent_matrix(P: ExponentMatrix, path, comment: Optional[str] = None) -> None:
    Path(path).write_text(format_exponent_matrix(P, comment))


@dataclass(frozen=True)
class ParityCheckMatrix:
    """Sparse binary parity-check matrix with provenance of each one.

    ``block`` and ``shift`` are parallel to the COO coordinates of ``matrix``
    and record the base-graph block ``(i, j)`` and the CPM shift (or band
    degree) that produced each nonzero.
    """

    matrix: sp.csr_matrix
    block: np.ndarray = field(repr=False)
    shift: np.ndarray = field(repr=False)
    lifting: Optional[int] = None

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    @property
    def nnz(self) -> int:
        return int(self.matrix.nnz)

    def dense(self) -> np.ndarray:
        return self.matrix.toarray().astype(np.uint8)

    def syndrome(self, bits) -> np.ndarray:
        bits = np.asarray(bits, dtype=np.int64)
        return (self.matrix @ bits.T).T % 2


def expand_block(P: ExponentMatrix) -> ParityCheckMatrix:
    """Expand a finite-lifting exponent matrix into its ``mN x nN`` binary matrix.

    Block ``(i, j)`` is the identity with every row cyclically shifted by
    ``p_ij``: row ``r`` of the block has its one in column ``(r + p_ij) mod N``.
    """
    if P.lifting is None:
        raise ParameterError("expand_block needs a finite lifting degree")
    N = P.lifting
    m, n = P.shape
    a = P.array()
    r = np.arange(N)
    rows, cols, blk, sh = [], [], [], []
    for i in range(m):
        for j in range(n):
            rows.append(i * N + r)
            cols.append(j * N + (r + a[i, j]) % N)
            blk.append(np.tile([i, j], (N, 1)))
            sh.append(np.full(N, a[i, j]))
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    H = sp.csr_matrix((np.ones(rows.size, dtype=np.uint8), (rows, cols)), shape=(m * N, n * N))
    return ParityCheckMatrix(H, np.concatenate(blk), np.concatenate(sh), N)


def from_dense(H: Sequence[Sequence[int]]) -> ParityCheckMatrix:
    """Wrap an arbitrary binary matrix (no QC provenance)."""
    H = sp.csr_matrix(np.asarray(H, dtype=np.uint8))
    H.eliminate_zeros()
    coo = H.tocoo()
    blk = np.stack([coo.row, coo.col], axis=1)
    return ParityCheckMatrix(H, blk, np.zeros(coo.nnz, dtype=np.int64), None)


def check_design_constraints(P: ExponentMatrix) -> None:
    """Enforce ``m < n <= N`` for finite-lifting designs."""
    m, n = P.shape
    if m >= n:
        raise ParameterError(f"need m < n, got m={m}, n={n}")
    if P.lifting is not None and P.lifting < n:
        raise ParameterError(f"need n <= N, got n={n}, N={P.lifting}")


def zero_bordered(inner: Iterable[Iterable[int]], lifting: Optional[int]) -> ExponentMatrix:
    """Rebuild a full matrix from a table listing with the all-zero first row and column dropped."""
    inner = [list(r) for r in inner]
    width = len(inner[0]) + 1
    full = [[0] * width] + [[0] + r for r in inner]
    return ExponentMatrix(full, lifting)
