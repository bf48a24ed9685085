"""Linear algebra over GF(2): ranks, QC code dimension and systematic encoding.

Binary vectors and GF(2)[x] polynomials are both stored as Python ints
(bit ``i`` is coordinate ``i`` / the coefficient of ``x^i``).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .exponent import ExponentMatrix, ParameterError, expand_block


def _row_ints(H) -> list:
    if hasattr(H, "matrix"):
        H = H.matrix
    if hasattr(H, "tocsr"):
        csr = H.tocsr().copy()
        csr.data %= 2
        csr.eliminate_zeros()
        out = []
        for i in range(csr.shape[0]):
            v = 0
            for j in csr.indices[csr.indptr[i]:csr.indptr[i + 1]]:
                v |= 1 << int(j)
            out.append(v)
        return out
    a = np.asarray(H, dtype=np.int64) & 1
    return [sum(1 << int(j) for j in np.flatnonzero(row)) for row in a]


def _echelon(rows) -> dict:
    """Basis keyed by leading (highest) bit."""
    basis: dict = {}
    for v in rows:
        while v:
            h = v.bit_length() - 1
            if h in basis:
                v ^= basis[h]
            else:
                basis[h] = v
                break
    return basis


def gf2_rank(H) -> int:
    """Rank over GF(2) of a dense array, sparse matrix or ParityCheckMatrix."""
    return len(_echelon(_row_ints(H)))


# --- polynomial helpers -----------------------------------------------------

def _pdeg(a: int) -> int:
    return a.bit_length() - 1


def _pmul(a: int, b: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out ^= b << (low.bit_length() - 1)
        a ^= low
    return out


def _pdivmod(a: int, b: int) -> tuple[int, int]:
    db = _pdeg(b)
    q = 0
    while a and _pdeg(a) >= db:
        s = _pdeg(a) - db
        q |= 1 << s
        a ^= b << s
    return q, a


def _reduce_cyclic(v: int, N: int) -> int:
    mask = (1 << N) - 1
    while v >> N:
        v = (v & mask) ^ (v >> N)
    return v


def qc_code_dimension(P: ExponentMatrix) -> int:
    """Dimension ``nN - rank(H)`` of the block code of ``P``, without expanding.

    The row space of ``H`` is the image of ``u -> u A(x)`` on ``R^m`` with
    ``R = GF(2)[x]/(x^N - 1)``.  Its codimension in ``R^n`` equals the degree
    of the determinant of the lattice spanned by the rows of ``A(x)`` and of
    ``(x^N - 1) I_n`` over ``GF(2)[x]``, read off a Hermite form built
    column by column with polynomial Euclid steps.
    """
    if P.lifting is None:
        raise ParameterError("code dimension needs a finite lifting degree")
    N = P.lifting
    m, n = P.shape
    modulus = (1 << N) | 1
    rows = [[1 << p for p in row] for row in P.entries]
    k = 0
    for j in range(n):
        special = [0] * n
        special[j] = modulus
        cand = rows + [special]
        while True:
            live = [r for r in cand if r[j]]
            if len(live) <= 1:
                break
            piv = min(live, key=lambda r: _pdeg(r[j]))
            for r in live:
                if r is piv:
                    continue
                q, rem = _pdivmod(r[j], piv[j])
                r[j] = rem
                for t in range(j + 1, n):
                    if piv[t]:
                        r[t] = _reduce_cyclic(r[t] ^ _pmul(q, piv[t]), N)
        (piv,) = [r for r in cand if r[j]]
        k += _pdeg(piv[j])
        rows = [r for r in cand if r is not piv]
    return k


def effective_rate(P: ExponentMatrix) -> float:
    m, n = P.shape
    return qc_code_dimension(P) / (n * P.lifting)


class SystematicEncoder:
    """Encoder derived from the reduced row-echelon form of ``H``.

    Parity bits sit on the pivot columns; message bits fill the remaining
    ``k`` positions in increasing column order.
    """

    def __init__(self, H):
        self.n = H.shape[1]
        basis = _echelon(_row_ints(H))
        heads = sorted(basis)
        for h in heads:
            bit = 1 << h
            for h2 in heads:
                if h2 > h and basis[h2] & bit:
                    basis[h2] ^= basis[h]
        self._rows = [(h, basis[h] ^ (1 << h)) for h in heads]
        pivots = set(heads)
        self.info_positions = np.array([j for j in range(self.n) if j not in pivots], dtype=np.int64)
        self.k = self.info_positions.size

    def encode(self, message) -> np.ndarray:
        msg = np.asarray(message, dtype=np.int64).ravel()
        if msg.size != self.k:
            raise ParameterError(f"message length {msg.size} != code dimension {self.k}")
        word = 0
        for pos in self.info_positions[msg.astype(bool)]:
            word |= 1 << int(pos)
        cw = np.zeros(self.n, dtype=np.uint8)
        cw[self.info_positions] = msg
        for h, rest in self._rows:
            cw[h] = (rest & word).bit_count() & 1
        return cw


@lru_cache(maxsize=16)
def block_encoder(P: ExponentMatrix) -> SystematicEncoder:
    return SystematicEncoder(expand_block(P))


def encode_block(P: ExponentMatrix, message_bits) -> np.ndarray:
    """Systematic codeword of the block code of ``P`` carrying ``message_bits``."""
    return block_encoder(P).encode(message_bits)
