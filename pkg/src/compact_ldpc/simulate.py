"""Monte Carlo BER/BLER over BPSK on the AWGN channel.

Every trial (one codeword, or one terminated chain) draws its noise from a
generator seeded with ``(seed, trial index)``.  Trials are grouped in
fixed-size batches and the stopping rule is evaluated batch by batch in
index order, so results do not depend on how many worker threads ran the
batches.  The same trial index sees the same standard-normal draw at every
SNR point and under every decoder configuration (common random numbers).
"""

from __future__ import annotations

import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from .coupled import ConvolutionalCode, chain_matrix
from .decoder import BPDecoder, DecoderConfig, SlidingWindowConfig, SlidingWindowDecoder
from .exponent import ExponentMatrix, ParameterError, expand_block
from .gf2 import block_encoder, effective_rate

CSV_COLUMNS = ("snr_db", "bits", "bit_errors", "blocks", "block_errors", "ber", "bler", "avg_iters")


@dataclass(frozen=True)
class ChannelConfig:
    """BPSK/AWGN setup.

    ``convention`` is ``"EbN0"`` (noise variance ``1 / (2 R 10^(snr/10))``)
    or ``"EsN0"`` (``1 / (2 10^(snr/10))``).  ``rate`` overrides the code
    rate used for the Eb/N0 conversion.
    """

    snr_db: tuple
    seed: int = 1
    convention: str = "EbN0"
    rate: Optional[float] = None

    def __post_init__(self):
        if self.convention not in ("EbN0", "EsN0"):
            raise ParameterError("SNR convention must be EbN0 or EsN0")
        object.__setattr__(self, "snr_db", tuple(float(s) for s in self.snr_db))

    def noise_variance(self, snr_db: float, rate: float) -> float:
        lin = 10.0 ** (snr_db / 10.0)
        if self.convention == "EbN0":
            return 1.0 / (2.0 * rate * lin)
        return 1.0 / (2.0 * lin)

    def formula(self) -> str:
        if self.convention == "EbN0":
            return "sigma^2 = 1/(2*R*10^(snr/10))"
        return "sigma^2 = 1/(2*10^(snr/10))"


@dataclass(frozen=True)
class StopRule:
    min_block_errors: Optional[int] = 100
    max_bits: Optional[int] = 10**7
    max_blocks: Optional[int] = None
    batch_size: int = 32

    def done(self, pt: "SimPoint") -> bool:
        return (
            (self.min_block_errors is not None and pt.block_errors >= self.min_block_errors)
            or (self.max_bits is not None and pt.bits >= self.max_bits)
            or (self.max_blocks is not None and pt.blocks >= self.max_blocks)
        )


@dataclass
class SimPoint:
    snr_db: float
    bits: int = 0
    bit_errors: int = 0
    blocks: int = 0
    block_errors: int = 0
    frames: int = 0
    iterations: int = 0
    wall_time: float = 0.0

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits if self.bits else float("nan")

    @property
    def bler(self) -> float:
        return self.block_errors / self.blocks if self.blocks else float("nan")

    @property
    def avg_iters(self) -> float:
        return self.iterations / self.frames if self.frames else float("nan")

    def add(self, other: "_Tally") -> None:
        self.bits += other.bits
        self.bit_errors += other.bit_errors
        self.blocks += other.blocks
        self.block_errors += other.block_errors
        self.frames += other.frames
        self.iterations += other.iterations

    def csv_row(self) -> str:
        return (
            f"{self.snr_db:g},{self.bits},{self.bit_errors},{self.blocks},{self.block_errors},"
            f"{self.ber:.6e},{self.bler:.6e},{self.avg_iters:.4f}"
        )


@dataclass
class _Tally:
    bits: int = 0
    bit_errors: int = 0
    blocks: int = 0
    block_errors: int = 0
    frames: int = 0
    iterations: int = 0


@dataclass
class SimResult:
    points: list
    meta: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        for k, v in self.meta.items():
            buf.write(f"# {k}={v}\n")
        buf.write(",".join(CSV_COLUMNS) + "\n")
        for p in self.points:
            buf.write(p.csv_row() + "\n")
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"meta": dict(self.meta), "points": [asdict(p) for p in self.points]}

    @classmethod
    def from_dict(cls, d: dict) -> "SimResult":
        return cls([SimPoint(**p) for p in d["points"]], dict(d["meta"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_json(cls, text: str) -> "SimResult":
        return cls.from_dict(json.loads(text))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(trial)])


def bpsk_llr(bits: np.ndarray, noise: np.ndarray, sigma2: float) -> np.ndarray:
    """Channel LLRs for BPSK (0 -> +1, 1 -> -1) given unit-variance noise draws."""
    y = (1.0 - 2.0 * bits) + math.sqrt(sigma2) * noise
    return 2.0 * y / sigma2


def _run_points(channel, stop, rate, work: Callable, workers: int) -> list:
    points = []
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        for snr in channel.snr_db:
            sigma2 = channel.noise_variance(snr, rate)
            pt = SimPoint(snr)
            t0 = time.perf_counter()
            b = 0
            while not stop.done(pt):
                spans = []
                for _ in range(max(1, workers)):
                    lo = b * stop.batch_size
                    hi = lo + stop.batch_size
                    if stop.max_blocks is not None:
                        hi = min(hi, _trial_cap(stop, work))
                    if lo >= hi:
                        break
                    spans.append((lo, hi))
                    b += 1
                if not spans:
                    break
                if pool is None:
                    tallies = (work(sigma2, lo, hi) for lo, hi in spans)
                else:
                    tallies = pool.map(lambda s: work(sigma2, *s), spans)
                for tally in tallies:
                    if stop.done(pt):
                        break
                    pt.add(tally)
            pt.wall_time = time.perf_counter() - t0
            points.append(pt)
    finally:
        if pool is not None:
            pool.shutdown()
    return points


def _trial_cap(stop: StopRule, work) -> int:
    # max_blocks counts error-rate blocks; convert to trials
    per = getattr(work, "blocks_per_trial", 1)
    return -(-stop.max_blocks // per)


def run_block_sim(
    P: ExponentMatrix,
    channel: ChannelConfig,
    decoder_cfg: DecoderConfig = DecoderConfig(),
    stop_rule: StopRule = StopRule(),
    *,
    transmit: str = "zero",
    workers: int = 1,
    code_id: str = "",
) -> SimResult:
    """Simulate the block code of ``P`` with full BP decoding."""
    if transmit not in ("zero", "random"):
        raise ParameterError("transmit must be 'zero' or 'random'")
    H = expand_block(P)
    dec = BPDecoder(H, decoder_cfg)
    n = H.shape[1]
    rate = channel.rate if channel.rate is not None else effective_rate(P)
    enc = block_encoder(P) if transmit == "random" else None

    def work(sigma2, lo, hi):
        cws = np.zeros((hi - lo, n), dtype=np.uint8)
        noise = np.empty((hi - lo, n))
        for r, trial in enumerate(range(lo, hi)):
            rng = trial_rng(channel.seed, trial)
            noise[r] = rng.standard_normal(n)
            if enc is not None:
                cws[r] = enc.encode(rng.integers(0, 2, enc.k))
        out = dec.decode(bpsk_llr(cws, noise, sigma2))
        err = out.hard != cws
        return _Tally(err.size, int(err.sum()), err.shape[0], int(err.any(axis=1).sum()), err.shape[0], int(out.iterations.sum()))

    points = _run_points(channel, stop_rule, rate, work, workers)
    meta = {
        "code": code_id or f"{P.rows}x{P.cols} N={P.lifting}",
        "mode": "block",
        "decoder": decoder_cfg.algorithm,
        "max_iters": decoder_cfg.max_iters,
        "early_stop": decoder_cfg.early_stop,
        "seed": channel.seed,
        "snr_convention": channel.convention,
        "rate": f"{rate:.6f}",
        "noise": channel.formula(),
        "transmit": "all-zero" if transmit == "zero" else "random-codewords",
        "ber_basis": "codeword bits",
    }
    return SimResult(points, meta)


def run_sc_sim(
    code: ConvolutionalCode,
    channel: ChannelConfig,
    swcfg: Optional[SlidingWindowConfig],
    decoder_cfg: DecoderConfig = DecoderConfig(),
    chain_len: int = 100,
    stop_rule: StopRule = StopRule(),
    *,
    workers: int = 1,
    code_id: str = "",
) -> SimResult:
    """Simulate a zero-tail terminated chain of the SC code, all-zero transmitted.

    ``swcfg=None`` decodes the whole chain with BP (decoder_cfg's iteration and
    stopping policy); otherwise the sliding-window decoder is used.  A block
    is the ``a`` symbols committed at one window position; the last ``m_h``
    positions are the known tail and are not counted.
    """
    a, mh = code.a, code.memory
    info_pos = chain_len - mh
    if info_pos < 1:
        raise ParameterError("chain must be longer than the memory order")
    if swcfg is not None:
        W = swcfg.blocks(mh)
        if chain_len < W:
            raise ParameterError(f"chain_len {chain_len} shorter than window {W}")
        sw = SlidingWindowDecoder(code, swcfg, decoder_cfg)
        full = None
    else:
        W = chain_len
        full = BPDecoder(chain_matrix(code, chain_len), decoder_cfg)
        sw = SlidingWindowDecoder(code, SlidingWindowConfig(window=chain_len), decoder_cfg)
    rate = channel.rate if channel.rate is not None else code.rate
    nbits = chain_len * a

    def work(sigma2, lo, hi):
        noise = np.empty((hi - lo, nbits))
        for r, trial in enumerate(range(lo, hi)):
            noise[r] = trial_rng(channel.seed, trial).standard_normal(nbits)
        llr = bpsk_llr(np.zeros(nbits), noise, sigma2)
        if full is not None:
            out = full.decode(sw.terminate(llr, chain_len))
            frames, iters = hi - lo, int(out.iterations.sum())
        else:
            out = sw.decode(llr, chain_len)
            frames = (hi - lo) * (chain_len - W + 1)
            iters = frames * swcfg.iters_per_position
        err = out.hard[:, : info_pos * a].reshape(hi - lo, info_pos, a)
        blk = err.any(axis=2)
        return _Tally(err.size, int(err.sum()), blk.size, int(blk.sum()), frames, iters)

    work.blocks_per_trial = info_pos
    points = _run_points(channel, stop_rule, rate, work, workers)
    meta = {
        "code": code_id or f"{code.c}x{code.a} m_h={mh}",
        "mode": "sc-window" if swcfg is not None else "sc-full",
        "decoder": decoder_cfg.algorithm,
        "max_iters": decoder_cfg.max_iters if swcfg is None else swcfg.iters_per_position,
        "early_stop": decoder_cfg.early_stop if swcfg is None else False,
        "window_blocks": W,
        "alpha": "" if swcfg is None else (swcfg.alpha if swcfg.window is None else W / (mh + 1)),
        "chain_len": chain_len,
        "seed": channel.seed,
        "snr_convention": channel.convention,
        "rate": f"{rate:.6f}",
        "noise": channel.formula(),
        "transmit": "all-zero",
        "ber_basis": "non-tail chain bits",
    }
    return SimResult(points, meta)


def parse_snr_range(text: str) -> tuple:
    """``"a:b:step"`` (inclusive of ``b``) or a comma list."""
    if ":" in text:
        a, b, s = (float(x) for x in text.split(":"))
        if s <= 0:
            raise ParameterError("SNR step must be positive")
        count = int(math.floor((b - a) / s + 1e-9)) + 1
        return tuple(round(a + i * s, 10) for i in range(count))
    return tuple(float(x) for x in text.split(","))
