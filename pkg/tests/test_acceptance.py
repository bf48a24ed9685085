"""Acceptance checks; each prints one PASS/FAIL line.

The lines bypass output capture, so a plain ``pytest`` run shows them.
"""

import random
import time

import numpy as np
import pytest

from compact_ldpc.catalog import comparison_pair, load_catalog, verify_catalog
from compact_ldpc.coupled import ConvolutionalCode, chain_matrix, reduce_memory
from compact_ldpc.cycles import alternating_sum, enumerate_cycles, girth
from compact_ldpc.decoder import BPDecoder, DecoderConfig, SlidingWindowConfig, SlidingWindowDecoder
from compact_ldpc.exponent import ExponentMatrix, expand_block
from compact_ldpc.metrics import constraint_length, f_complexity, theta_mh
from compact_ldpc.simulate import ChannelConfig, StopRule, run_block_sim, run_sc_sim
from compact_ldpc.smc import SmcSearchConfig, find_min_lifting
from compact_ldpc.tanner import tanner_girth_oracle


@pytest.fixture
def report(capsys):
    def emit(name, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        assert ok, detail

    return emit


def _entry(eid):
    return next(e for e in load_catalog() if e.id == eid)


def test_block_catalog_girth(report):
    t0 = time.perf_counter()
    entries = [e for e in load_catalog() if e.kind == "block"]
    rep = verify_catalog(entries, with_rate=False)
    bad = [r.id for r in rep.entries if not r.passed]
    dt = time.perf_counter() - t0
    report("block catalog girth", not bad and dt < 300,
           f"{len(entries) - len(bad)}/{len(entries)} entries at stated N and girth in {dt:.1f} s; failing {bad}")


def test_convolutional_catalog(report):
    t0 = time.perf_counter()
    entries = [e for e in load_catalog() if e.kind == "convolutional"]
    rep = verify_catalog(entries, with_rate=False)
    bad = [r.id for r in rep.entries if not r.passed]
    dt = time.perf_counter() - t0
    report("convolutional catalog girth and m_h", not bad and dt < 300,
           f"{len(entries) - len(bad)}/{len(entries)} entries in {dt:.1f} s; failing {bad}")


def test_oracle_equivalence(report):
    rng = random.Random(2024)
    t0 = time.perf_counter()
    mismatches, count = [], 0
    while count < 120:
        m, n = rng.choice((2, 3)), rng.choice((3, 5))
        if m >= n:
            continue
        N = rng.randint(max(5, n), 16)
        P = ExponentMatrix([[rng.randrange(N) for _ in range(n)] for _ in range(m)], N)
        a, b = girth(P, 12), tanner_girth_oracle(expand_block(P), 12)
        count += 1
        if a != b:
            mismatches.append((P.entries, N, a, b))
    dt = time.perf_counter() - t0
    report("exponent-matrix girth equals Tanner BFS girth", not mismatches and dt < 120,
           f"{count} random matrices, {len(mismatches)} mismatches, {dt:.1f} s")


def test_smc_minimal_liftings(report):
    t0 = time.perf_counter()
    got = {}
    for (m, n, g), want in {(3, 4, 10): 37, (3, 5, 10): 61, (3, 4, 12): 73}.items():
        out = find_min_lifting(SmcSearchConfig(m, n, g))
        got[(m, n, g)] = (out.result.lifting if out.result else None, want)
    dt = time.perf_counter() - t0
    ok = all(a == b for a, b in got.values()) and dt < 1800
    detail = ", ".join(f"(m={k[0]},n={k[1]},g={k[2]}) N={a} want {b}" for k, (a, b) in got.items())
    report("SMC first successes", ok, f"{detail}; {dt:.1f} s")


def test_offset_invariance_and_memory_reduction(report):
    rng = random.Random(7)
    t0 = time.perf_counter()
    broken = 0
    for _ in range(1000):
        m, n = rng.choice((2, 3)), rng.choice((3, 4))
        P = ExponentMatrix([[rng.randrange(30) for _ in range(n)] for _ in range(m)], None)
        r = [rng.randrange(-30, 31) for _ in range(m)]
        c = [rng.randrange(-30, 31) for _ in range(n)]
        Q = ExponentMatrix([[P[i, j] + r[i] + c[j] + 60 for j in range(n)] for i in range(m)], None)
        for w in enumerate_cycles(P, 8):
            if alternating_sum(Q, w.candidate.columns, w.candidate.rows) != w.candidate.alternating_sum:
                broken += 1
                break
    worse = 0
    for _ in range(100):
        P = ExponentMatrix([[rng.randrange(40) for _ in range(5)] for _ in range(3)], None)
        code = ConvolutionalCode(P)
        red = reduce_memory(code)
        if red.memory > code.memory or girth(red.base) != girth(code.base):
            worse += 1
    dt = time.perf_counter() - t0
    report("offset invariance and memory reduction", broken == 0 and worse == 0 and dt < 120,
           f"1000 offset pairs, {broken} changed sums; 100 bases, {worse} with larger m_h or other girth; {dt:.1f} s")


def test_metrics_exactness(report):
    pair = comparison_pair()
    th = theta_mh(297, 652)
    vs1 = constraint_length(ConvolutionalCode(_entry(pair["new"]["id"]).matrix).memory, 8)
    vs2 = constraint_length(pair["reference"]["memory"], 8)
    spots = [(3, 0.263), (1, 11 / 12), (4, 0.5)]
    f_ok = all(f_complexity(x, R) == 8 * (8 * x + 12 * R - 11) + x for x, R in spots) and f_complexity(4, 0.5) == 220
    ok = abs(th - 0.4563) <= 1e-4 and vs1 == 2384 and vs2 == 5224 and f_ok
    report("metrics", ok, f"theta_mh={th:.6f}, v_s={vs1}/{vs2}, f spot values {'exact' if f_ok else 'wrong'}")


def test_decoder_sanity(report):
    code = ConvolutionalCode(_entry("sc-g10-c3-a4").matrix)
    L, iters = 16, 20
    rng = np.random.default_rng(99)
    sigma = 0.85
    llr = 2 * (1 + sigma * rng.standard_normal((50, L * code.a))) / sigma**2
    sw = SlidingWindowDecoder(code, SlidingWindowConfig(window=L, iters_per_position=iters))
    full = BPDecoder(chain_matrix(code, L), DecoderConfig(max_iters=iters, early_stop=False))
    same = np.array_equal(sw.decode(llr, L).hard, full.decode(sw.terminate(llr, L)).hard)

    P = _entry("qc-g10-m3-n4").matrix
    H = expand_block(P)
    noisy = 2 * (1 + 0.9 * rng.standard_normal((200, H.shape[1]))) / 0.81
    out = BPDecoder(H, DecoderConfig(max_iters=50)).decode(noisy)
    synd = (H.matrix @ out.hard.T.astype(int)).T % 2
    stop_ok = not synd[out.syndrome_ok].any()

    res = run_block_sim(P, ChannelConfig([10.0], 1), stop_rule=StopRule(None, None, 1000, 100))
    pt = res.points[0]
    ok = same and stop_ok and pt.blocks == 1000 and pt.bit_errors == 0
    report("decoder sanity", ok,
           f"(a) full window vs chain BP on 50 chains: {'identical' if same else 'DIFFER'}; "
           f"(b) early-stop syndrome zero on {int(out.syndrome_ok.sum())} stops: {stop_ok}; "
           f"(c) +10 dB, {pt.blocks} blocks, {pt.bit_errors} bit errors")


def test_window_size_ordering(report):
    code = ConvolutionalCode(_entry("sc-g10-c3-a4").matrix)
    channel = ChannelConfig([1.5], 31)
    t0 = time.perf_counter()
    # the largest window makes the fewest errors; its trial count fixes the common sample
    ref = run_sc_sim(code, channel, SlidingWindowConfig(5.0, 100), chain_len=100,
                     stop_rule=StopRule(200, None, None, 8)).points[0]
    pts = {5.0: ref}
    for alpha in (2.0, 1.0):
        pts[alpha] = run_sc_sim(code, channel, SlidingWindowConfig(alpha, 100), chain_len=100,
                                stop_rule=StopRule(None, None, ref.blocks, 8)).points[0]
    dt = time.perf_counter() - t0
    b = {a: p.ber for a, p in pts.items()}
    ok = b[5.0] <= b[2.0] <= b[1.0] and min(p.block_errors for p in pts.values()) >= 200 and dt < 3600
    report("window-size ordering", ok,
           "BER " + ", ".join(f"alpha={a:g}: {v:.3e} ({pts[a].block_errors} block errors)" for a, v in b.items())
           + f" over {ref.blocks} common window positions at 1.5 dB; {dt:.1f} s")


def test_determinism_across_workers(report):
    P = _entry("qc-g10-m3-n4").matrix
    code = ConvolutionalCode(_entry("sc-g10-c3-a4").matrix)
    ch = ChannelConfig([1.0, 2.0, 3.0], 123)
    rows = []
    for w in (1, 2, 4):
        a = run_block_sim(P, ch, DecoderConfig(max_iters=30), StopRule(30, None, 2000, 16), workers=w)
        b = run_sc_sim(code, ch, SlidingWindowConfig(1.0, 10), chain_len=40,
                       stop_rule=StopRule(30, None, 2000, 4), workers=w)
        rows.append(a.to_csv() + b.to_csv())
    ok = rows[0] == rows[1] == rows[2]
    report("determinism across worker counts", ok, f"block and SC CSV with 1/2/4 workers {'byte-identical' if ok else 'DIFFER'}")
