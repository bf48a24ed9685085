"""Flooding belief-propagation and sliding-window decoding.

LLRs are ``log P(bit=0)/P(bit=1)``, so a positive value favours zero.  All
decoders work on a batch of frames (``llr`` of shape ``(B, n)``) and every
operation is elementwise across frames, which keeps each frame's result
independent of what else shares its batch.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
import scipy.sparse as sp

from .coupled import ConvolutionalCode, WindowMatrix, window_matrix
from .exponent import ParameterError, ParityCheckMatrix

# pad value for unused check slots; boxplus(x, NEUTRAL) == x for |x| << NEUTRAL
NEUTRAL = 1e6


@dataclass(frozen=True)
class DecoderConfig:
    algorithm: str = "sum-product"
    max_iters: int = 100
    early_stop: bool = True
    llr_clip: float = 25.0
    scale: float = 0.75

    def __post_init__(self):
        if self.algorithm not in ("sum-product", "min-sum"):
            raise ParameterError(f"unknown algorithm {self.algorithm!r}")
        if self.max_iters < 1:
            raise ParameterError("max_iters must be >= 1")
        if not 0 < self.scale <= 1:
            raise ParameterError("min-sum scale must be in (0, 1]")
        if self.llr_clip <= 0:
            raise ParameterError("llr_clip must be positive")


@dataclass(frozen=True)
class SlidingWindowConfig:
    """Window of ``W = round(alpha * (m_h + 1))`` blocks; ``window`` overrides it."""

    alpha: float = 5.0
    iters_per_position: int = 100
    window: Optional[int] = None

    def blocks(self, memory: int) -> int:
        W = self.window if self.window is not None else int(round(self.alpha * (memory + 1)))
        if W < 1:
            raise ParameterError("window must hold at least one block")
        return W


@dataclass
class DecodeOutcome:
    hard: np.ndarray
    iterations: np.ndarray
    syndrome_ok: np.ndarray
    posterior: Optional[np.ndarray] = None


def boxplus(a, b):
    """Check-node combination of two LLRs, in the numerically stable form."""
    return (
        np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))
        + np.log1p(np.exp(-np.abs(a + b)))
        - np.log1p(np.exp(-np.abs(a - b)))
    )


class BPDecoder:
    """Flooding-schedule BP decoder bound to one parity-check matrix."""

    def __init__(self, H, cfg: DecoderConfig = DecoderConfig()):
        if isinstance(H, ParityCheckMatrix):
            H = H.matrix
        H = sp.csr_matrix(H, dtype=np.uint8)
        H.sum_duplicates()
        H.eliminate_zeros()
        self.H = H
        self.cfg = cfg
        self.m, self.n = H.shape
        coo = H.tocoo()
        order = np.lexsort((coo.col, coo.row))
        self.chk = coo.row[order].astype(np.int64)
        self.var = coo.col[order].astype(np.int64)
        E = self.chk.size
        deg = np.bincount(self.chk, minlength=self.m)
        self.dmax = int(deg.max()) if E else 0
        start = np.concatenate([[0], np.cumsum(deg)[:-1]])
        slot = np.arange(E) - start[self.chk]
        self.pad = np.full((self.m, max(self.dmax, 1)), -1, dtype=np.int64)
        self.pad[self.chk, slot] = np.arange(E)
        self.edge_slot = slot
        # edge -> variable incidence, used to sum incoming messages
        self.E2V = sp.csr_matrix((np.ones(E), (np.arange(E), self.var)), shape=(E, self.n))

    def _check_update(self, v2c, prior):
        B = v2c.shape[0]
        X = np.where(self.pad >= 0, v2c[:, np.maximum(self.pad, 0)], NEUTRAL)
        if prior is not None:
            X = np.concatenate([X, prior[:, :, None]], axis=2)
        D = X.shape[2]
        if self.cfg.algorithm == "min-sum":
            mag = np.abs(X)
            sgn = np.where(X < 0, -1.0, 1.0)
            total_sign = np.prod(sgn, axis=2, keepdims=True)
            i1 = np.argmin(mag, axis=2)[:, :, None]
            m1 = np.take_along_axis(mag, i1, axis=2)
            np.put_along_axis(mag, i1, np.inf, axis=2)
            m2 = np.min(mag, axis=2, keepdims=True)
            slots = np.arange(D)[None, None, :]
            ext = np.where(slots == i1, m2, m1) * total_sign * sgn * self.cfg.scale
        else:
            fwd = np.empty_like(X)
            bwd = np.empty_like(X)
            fwd[:, :, 0] = NEUTRAL
            bwd[:, :, D - 1] = NEUTRAL
            for k in range(1, D):
                fwd[:, :, k] = boxplus(fwd[:, :, k - 1], X[:, :, k - 1])
                bwd[:, :, D - 1 - k] = boxplus(bwd[:, :, D - k], X[:, :, D - k])
            ext = boxplus(fwd, bwd)
        return ext[:, self.chk, self.edge_slot].reshape(B, -1)

    def decode(
        self,
        llr,
        *,
        check_prior=None,
        max_iters: Optional[int] = None,
        early_stop: Optional[bool] = None,
    ) -> DecodeOutcome:
        """Decode one frame (1-D ``llr``) or a batch (2-D).

        ``check_prior`` optionally adds one fixed extra input LLR per check
        (shape ``(B, m)``); use ``+NEUTRAL`` for checks without one.  A
        negative prior counts as a one in the syndrome.
        """
        cfg = self.cfg
        llr = np.asarray(llr, dtype=np.float64)
        single = llr.ndim == 1
        if single:
            llr = llr[None, :]
        if llr.shape[1] != self.n:
            raise ParameterError(f"llr length {llr.shape[1]} != code length {self.n}")
        if check_prior is not None:
            check_prior = np.asarray(check_prior, dtype=np.float64).reshape(llr.shape[0], self.m)
        iters = cfg.max_iters if max_iters is None else int(max_iters)
        stop = cfg.early_stop if early_stop is None else early_stop
        clip = cfg.llr_clip
        B = llr.shape[0]
        ch = np.clip(llr, -clip, clip)
        post = ch.copy()
        hard = np.zeros((B, self.n), dtype=np.uint8)
        used = np.zeros(B, dtype=np.int64)
        ok = np.zeros(B, dtype=bool)
        active = np.arange(B)
        v2c = ch[:, self.var]
        pri = check_prior
        for it in range(1, iters + 1):
            c2v = np.clip(self._check_update(v2c, pri), -clip, clip)
            tot = ch[active] + np.asarray(c2v @ self.E2V)
            v2c = np.clip(tot[:, self.var] - c2v, -clip, clip)
            h = (tot < 0).astype(np.uint8)
            used[active] = it
            post[active] = tot
            hard[active] = h
            if stop:
                done = ~self._syndrome(h, pri).any(axis=1)
                if done.any():
                    ok[active[done]] = True
                    keep = ~done
                    active, v2c = active[keep], v2c[keep]
                    pri = None if pri is None else pri[keep]
                    if active.size == 0:
                        break
        if not stop:
            ok = ~self._syndrome(hard, check_prior).any(axis=1)
        out = DecodeOutcome(hard, used, ok, post)
        if single:
            out = DecodeOutcome(hard[0], int(used[0]), bool(ok[0]), post[0])
        return out

    def _syndrome(self, hard, prior) -> np.ndarray:
        s = np.asarray((self.H @ hard.T.astype(np.int64)).T) % 2
        if prior is not None:
            s ^= (prior < 0).astype(s.dtype)
        return s


def bp_decode(H, llr_in, cfg: DecoderConfig = DecoderConfig()) -> DecodeOutcome:
    return BPDecoder(H, cfg).decode(llr_in)


@lru_cache(maxsize=64)
def _saturated_boxplus(count: int, clip: float) -> float:
    v = NEUTRAL
    for _ in range(count):
        v = float(boxplus(np.float64(v), np.float64(clip)))
    return v


class SlidingWindowDecoder:
    """Sliding-window decoder for a zero-tail terminated chain.

    At every position the window decoder runs a fixed number of iterations
    with no parity-check stopping, commits its first ``a`` symbols and
    shifts by one block.  Checks touching already committed symbols receive
    them as saturated LLRs through a per-check prior.  The last window
    commits all of its symbols.
    """

    def __init__(self, code: ConvolutionalCode, swcfg: SlidingWindowConfig, cfg: DecoderConfig = DecoderConfig()):
        self.code = code
        self.swcfg = swcfg
        self.cfg = cfg
        self._cache: dict = {}

    def window_decoder(self, W: int, t: int, chain_len: int):
        key = (W, min(t, self.code.memory + 1))
        if key not in self._cache:
            win = window_matrix(self.code, W, t, chain_len)
            self._cache[key] = (win, BPDecoder(win.H, self.cfg))
        win, dec = self._cache[key]
        if win.t != t:
            # same local structure; only the global indices of past symbols move
            shift = (t - win.t) * self.code.a
            win = WindowMatrix(win.H, t, win.blocks, win.a, win.c, win.past_rows, win.past_cols + shift)
        return win, dec

    def terminate(self, llr_chain, chain_len: int) -> np.ndarray:
        llr = np.array(llr_chain, dtype=np.float64, copy=True)
        tail = self.code.memory * self.code.a
        if tail:
            llr[..., (chain_len * self.code.a) - tail:] = self.cfg.llr_clip
        return llr

    def decode(self, llr_chain, chain_len: int, *, terminated: bool = True) -> DecodeOutcome:
        code, a = self.code, self.code.a
        llr = np.asarray(llr_chain, dtype=np.float64)
        single = llr.ndim == 1
        if single:
            llr = llr[None, :]
        if llr.shape[1] != chain_len * a:
            raise ParameterError(f"chain LLRs must have length chain_len*a = {chain_len * a}")
        if terminated:
            llr = self.terminate(llr, chain_len)
        W = min(self.swcfg.blocks(code.memory), chain_len)
        B = llr.shape[0]
        clip = self.cfg.llr_clip
        decided = np.zeros((B, chain_len * a), dtype=np.uint8)
        ok = np.ones(B, dtype=bool)
        last = chain_len - W
        for t in range(last + 1):
            win, dec = self.window_decoder(W, t, chain_len)
            prior = None
            if win.past_rows.size:
                prior = np.full((B, dec.m), NEUTRAL)
                parity = np.zeros((B, dec.m), dtype=np.int64)
                np.add.at(parity.T, win.past_rows, decided[:, win.past_cols].T.astype(np.int64))
                counts = np.bincount(win.past_rows, minlength=dec.m)
                for r in np.flatnonzero(counts):
                    mag = _saturated_boxplus(int(counts[r]), clip)
                    prior[:, r] = np.where(parity[:, r] % 2, -mag, mag)
            out = dec.decode(
                llr[:, t * a:(t + W) * a],
                check_prior=prior,
                max_iters=self.swcfg.iters_per_position,
                early_stop=False,
            )
            if t < last:
                decided[:, t * a:(t + 1) * a] = out.hard[:, :a]
                ok &= ~dec._syndrome(out.hard, prior)[:, : code.c].any(axis=1)
            else:
                decided[:, t * a:] = out.hard
                ok &= out.syndrome_ok
        iters = np.full(B, self.swcfg.iters_per_position, dtype=np.int64)
        if single:
            return DecodeOutcome(decided[0], int(iters[0]), bool(ok[0]))
        return DecodeOutcome(decided, iters, ok)


def sliding_window_decode(
    code: ConvolutionalCode,
    llr_chain,
    swcfg: SlidingWindowConfig,
    cfg: DecoderConfig = DecoderConfig(),
    *,
    chain_len: Optional[int] = None,
) -> DecodeOutcome:
    llr_chain = np.asarray(llr_chain)
    if chain_len is None:
        chain_len = llr_chain.shape[-1] // code.a
    return SlidingWindowDecoder(code, swcfg, cfg).decode(llr_chain, chain_len)
