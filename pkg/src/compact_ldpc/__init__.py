"""Compact QC-LDPC block codes and SC-LDPC convolutional codes.

Exponent-matrix design with girth control, unwrapping to convolutional
codes, BP and sliding-window decoding, Monte Carlo evaluation and latency
metrics.
"""

from .coupled import ConvolutionalCode, chain_matrix, reduce_memory, unwrap_qc, window_matrix
from .cycles import CycleClass, CycleWitness, enumerate_cycles, girth, shortest_cycle
from .decoder import BPDecoder, DecoderConfig, SlidingWindowConfig, bp_decode, sliding_window_decode
from .exponent import (
    ExponentMatrix,
    ParameterError,
    ParityCheckMatrix,
    expand_block,
    parse_exponent_matrix,
    read_exponent_matrix,
)
from .gf2 import effective_rate, encode_block, gf2_rank, qc_code_dimension
from .simulate import ChannelConfig, SimResult, StopRule, run_block_sim, run_sc_sim
from .smc import SmcSearchConfig, find_min_lifting
from .tanner import tanner_girth_oracle

__version__ = "0.1.0"

__all__ = [
    "ConvolutionalCode",
    "chain_matrix",
    "reduce_memory",
    "unwrap_qc",
    "window_matrix",
    "CycleClass",
    "CycleWitness",
    "enumerate_cycles",
    "girth",
    "shortest_cycle",
    "BPDecoder",
    "DecoderConfig",
    "SlidingWindowConfig",
    "bp_decode",
    "sliding_window_decode",
    "ExponentMatrix",
    "ParameterError",
    "ParityCheckMatrix",
    "expand_block",
    "parse_exponent_matrix",
    "read_exponent_matrix",
    "effective_rate",
    "encode_block",
    "gf2_rank",
    "qc_code_dimension",
    "ChannelConfig",
    "SimResult",
    "StopRule",
    "run_block_sim",
    "run_sc_sim",
    "SmcSearchConfig",
    "find_min_lifting",
    "tanner_girth_oracle",
]
