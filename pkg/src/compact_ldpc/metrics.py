"""Decoding latency, per-bit complexity and improvement ratios.

Latency is counted in received bits the decoder must buffer before it can
output a decision: the whole codeword for full BP on a block code, the
window ``W a`` with ``W = alpha (m_h + 1)`` for sliding-window decoding.
Complexity is the number of elementary operations per output bit.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from .exponent import ParameterError


def f_complexity(x: float, R: float) -> float:
    """Operations per node update, ``8 (8x + 12R - 11) + x``."""
    return 8.0 * (8.0 * x + 12.0 * R - 11.0) + x


def _positive(name, v):
    if v is None or v <= 0:
        raise ParameterError(f"{name} must be positive")


def _iavg(v):
    if v is None or v < 1:
        raise ParameterError("I_avg must be at least one iteration")


def latency_bp(n: int, N: int) -> int:
    _positive("n", n)
    _positive("N", N)
    return n * N


def complexity_bp(I_avg: float, m: int, R: float) -> float:
    _iavg(I_avg)
    _positive("m", m)
    return I_avg * f_complexity(m, R)


def latency_sw(alpha: float, m_h: int, a: int) -> float:
    _positive("alpha", alpha)
    _positive("a", a)
    if m_h < 0:
        raise ParameterError("m_h must be non-negative")
    return alpha * (m_h + 1) * a


def complexity_sw(alpha: float, m_h: int, I_avg: float, c: int, R: float) -> float:
    _positive("alpha", alpha)
    _iavg(I_avg)
    if m_h < 0:
        raise ParameterError("m_h must be non-negative")
    return alpha * (m_h + 1) * I_avg * f_complexity(c, R)


def constraint_length(m_h: int, a: int) -> int:
    """Span ``(m_h + 1) a`` in symbols covered by one check."""
    return (m_h + 1) * a


def theta_n(N_new: int, N_star: int) -> float:
    _positive("N_new", N_new)
    _positive("N_star", N_star)
    return N_new / N_star


def theta_mh(mh_new: int, mh_star: int) -> float:
    if mh_new < 0 or mh_star < 0:
        raise ParameterError("memory orders must be non-negative")
    return (mh_new + 1) / (mh_star + 1)


@dataclass
class LatencyReport:
    """One latency/complexity evaluation with its inputs.

    ``iavg_source`` says where ``I_avg`` came from (``"user"``,
    ``"full-bp-early-stop"`` or ``"sw-fixed-per-window"``) and
    ``rate_source`` whether ``R`` is the effective or the design rate.
    """

    scheme: str
    latency_bits: float
    per_bit_complexity: float
    R: float
    I_avg: float
    iavg_source: str = "user"
    rate_source: str = "effective"
    n: Optional[int] = None
    N: Optional[int] = None
    m: Optional[int] = None
    a: Optional[int] = None
    c: Optional[int] = None
    m_h: Optional[int] = None
    alpha: Optional[float] = None

    @classmethod
    def bp(cls, n, N, m, R, I_avg, **kw) -> "LatencyReport":
        return cls("BP", latency_bp(n, N), complexity_bp(I_avg, m, R), R, I_avg, n=n, N=N, m=m, **kw)

    @classmethod
    def sw(cls, alpha, m_h, a, c, R, I_avg, **kw) -> "LatencyReport":
        return cls(
            "SW", latency_sw(alpha, m_h, a), complexity_sw(alpha, m_h, I_avg, c, R), R, I_avg,
            a=a, c=c, m_h=m_h, alpha=alpha, **kw,
        )

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "LatencyReport":
        return cls(**d)
