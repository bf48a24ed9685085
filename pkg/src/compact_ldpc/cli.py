"""Command-line interface.

Every subcommand prints a human-readable summary, or with ``--json`` a
single JSON envelope ``{"command", "ok", "result"}``.  Exit status is 0 on
success, 1 when a check fails or a search finds nothing, 2 on usage or
parameter errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import catalog as cat
from .coupled import ConvolutionalCode, reduce_memory, unwrap_qc
from .cycles import format_girth, girth, shortest_cycle
from .decoder import DecoderConfig, SlidingWindowConfig
from .exponent import ParameterError, check_design_constraints, format_exponent_matrix, read_exponent_matrix
from .gf2 import effective_rate
from .metrics import LatencyReport, theta_mh, theta_n
from .simulate import ChannelConfig, StopRule, parse_snr_range, run_block_sim, run_sc_sim
from .smc import SmcSearchConfig, find_min_lifting


class _Fail(Exception):
    """A check that ran but did not pass."""


def _witness(w):
    if w is None:
        return None
    return {
        "length": w.length,
        "columns": list(w.candidate.columns),
        "rows": list(w.candidate.rows),
        "alternating_sum": w.candidate.alternating_sum,
        "class": w.classification.value,
    }


# --- subcommands ------------------------------------------------------------

def cmd_design(args, out):
    cfg = SmcSearchConfig(
        args.rows, args.cols, args.girth, n_min=args.n_min, n_max=args.n_max,
        max_checks=args.budget, max_seconds=args.seconds,
    )
    res = find_min_lifting(cfg, collect_all=args.all)
    found = [
        {"lifting": r.lifting, "seed": list(r.seed), "gammas": list(r.gammas),
         "girth": format_girth(r.achieved_girth), "matrix": [list(x) for x in r.matrix.entries]}
        for r in res.successes
    ]
    payload = {"status": res.status, "last_lifting": res.last_lifting, "checks": res.checks,
               "seconds": round(res.seconds, 3), "codes": found}
    if res.result is not None and args.emit:
        r = res.result
        Path(args.emit).write_text(format_exponent_matrix(
            r.matrix, f"SMC design, target girth {args.girth}, seed {list(r.seed)}, coefficients {list(r.gammas)}"))
        payload["emitted"] = args.emit
    lines = [f"status: {res.status} (checks {res.checks}, {res.seconds:.1f} s)"]
    if res.status == "budget":
        lines.append(f"budget exhausted while scanning N={res.last_lifting}")
    for r in res.successes:
        lines.append(f"N={r.lifting} seed={list(r.seed)} gammas={list(r.gammas)} girth={format_girth(r.achieved_girth)}")
        lines.append(r.matrix.to_text().rstrip())
    out(payload, "\n".join(lines))
    if res.result is None:
        raise _Fail(f"no SMC code found ({res.status})")


def cmd_verify(args, out):
    P = read_exponent_matrix(args.file)
    payload = {"file": args.file, "rows": P.rows, "cols": P.cols}
    if P.is_finite:
        check_design_constraints(P)
        g = girth(P, args.cap)
        payload.update(kind="block", lifting=P.lifting, girth=g, rate=effective_rate(P))
        lines = [f"block code {P.rows}x{P.cols} N={P.lifting}: girth {format_girth(g, args.cap)}, "
                 f"effective rate {payload['rate']:.5f}"]
    else:
        code = ConvolutionalCode(P)
        g = girth(P, args.cap)
        payload.update(kind="convolutional", girth=g, memory=code.memory,
                       constraint_length=code.constraint_length)
        lines = [f"convolutional code {P.rows}x{P.cols}: girth {format_girth(g, args.cap)}, "
                 f"m_h {code.memory}, v_s {code.constraint_length}"]
    ok = True
    if args.girth is not None:
        ok = g is None or g >= args.girth
        payload["target"] = args.girth
        if not ok:
            w = shortest_cycle(P, args.girth - 2)
            payload["witness"] = _witness(w)
            lines.append(f"short cycle: length {w.length}, columns {list(w.candidate.columns)}, "
                         f"rows {list(w.candidate.rows)}, sum {w.candidate.alternating_sum}")
        lines.append("PASS" if ok else "FAIL")
    payload["pass"] = ok
    out(payload, "\n".join(lines))
    if not ok:
        raise _Fail("girth below target")


def cmd_unwrap(args, out):
    P = read_exponent_matrix(args.file)
    code = unwrap_qc(P) if P.is_finite else ConvolutionalCode(P)
    before = code.memory
    if args.reduce_memory:
        code = reduce_memory(code)
    g = code.girth(12)
    payload = {"memory_before": before, "memory": code.memory, "constraint_length": code.constraint_length,
               "girth": g, "matrix": [list(r) for r in code.base.entries]}
    if args.emit:
        Path(args.emit).write_text(format_exponent_matrix(code.base, "unwrapped convolutional code"))
        payload["emitted"] = args.emit
    text = (f"m_h {before}" + (f" -> {code.memory}" if args.reduce_memory else "")
            + f", v_s {code.constraint_length}, convolutional girth {format_girth(g)}\n" + code.base.to_text().rstrip())
    out(payload, text)


def cmd_simulate(args, out):
    if args.plot and not args.out:
        raise ParameterError("--plot needs --out")
    P = read_exponent_matrix(args.file)
    channel = ChannelConfig(parse_snr_range(args.snr), args.seed, "EsN0" if args.es_n0 else "EbN0")
    stop = StopRule(args.stop_errors, args.stop_bits, args.max_blocks, args.batch)
    dcfg = DecoderConfig(args.decoder, max_iters=args.iters)
    code_id = Path(args.file).stem
    sc = args.sc or (not args.block and not P.is_finite)
    if sc:
        code = unwrap_qc(P) if P.is_finite else ConvolutionalCode(P)
        sw = None if args.full_bp else SlidingWindowConfig(args.alpha, args.iters, args.window)
        chain = args.chain_len or max(4 * (code.memory + 1), sw.blocks(code.memory) + code.memory + 1 if sw else 0)
        res = run_sc_sim(code, channel, sw, dcfg, chain, stop, workers=args.workers, code_id=code_id)
    else:
        if not P.is_finite:
            raise ParameterError("--block needs a finite lifting degree")
        res = run_block_sim(P, channel, dcfg, stop, transmit=args.transmit, workers=args.workers, code_id=code_id)
    csv = res.to_csv()
    payload = res.to_dict()
    if args.out:
        Path(args.out).write_text(csv)
        payload["csv"] = args.out
        if args.plot:
            from .plotting import plot_error_rates

            png = Path(args.out).with_suffix(".png")
            plot_error_rates(res, png, title=code_id)
            payload["plot"] = str(png)
    out(payload, csv.rstrip())


def _report_for(P, args, rate_source):
    if P.is_finite:
        R = effective_rate(P) if rate_source == "effective" else (P.cols - P.rows) / P.cols
        reps = [LatencyReport.bp(P.cols, P.lifting, P.rows, R, args.iavg,
                                 iavg_source=args.iavg_source, rate_source=rate_source)]
        code = unwrap_qc(P)
    else:
        code = ConvolutionalCode(P)
        reps = []
    Rc = code.rate
    reps.append(LatencyReport.sw(args.alpha, code.memory, code.a, code.c, Rc, args.iavg,
                                 iavg_source=args.iavg_source, rate_source="design"))
    return reps, code


def cmd_metrics(args, out):
    P = read_exponent_matrix(args.file)
    rs = "design" if args.design_rate else "effective"
    reps, code = _report_for(P, args, rs)
    payload = {"reports": [r.to_dict() for r in reps]}
    lines = [f"{'scheme':6} {'latency':>10} {'ops/bit':>12} {'R':>7} {'I_avg':>7} source"]
    for r in reps:
        lines.append(f"{r.scheme:6} {r.latency_bits:>10g} {r.per_bit_complexity:>12.2f} {r.R:>7.4f} "
                     f"{r.I_avg:>7g} {r.iavg_source}/{r.rate_source}")
    if args.compare:
        Q = read_exponent_matrix(args.compare)
        ratios = {}
        if P.is_finite and Q.is_finite:
            ratios["theta_N"] = theta_n(P.lifting, Q.lifting)
        qcode = unwrap_qc(Q) if Q.is_finite else ConvolutionalCode(Q)
        ratios["theta_mh"] = theta_mh(code.memory, qcode.memory)
        payload["compare"] = {"file": args.compare, **ratios}
        lines += [f"{k} = {v:.4f}" for k, v in ratios.items()]
    out(payload, "\n".join(lines))


def cmd_catalog(args, out):
    if args.action == "list":
        rows = [{"id": e.id, "kind": e.kind, "rows": e.rows, "cols": e.cols, "girth": e.girth,
                 "lifting": e.lifting, "memory": e.memory, "competitor": e.competitor} for e in cat.load_catalog()]
        lines = [f"{r['id']:16} {r['kind']:13} g={r['girth']} "
                 + (f"N={r['lifting']}" if r["lifting"] else f"m_h={r['memory']}")
                 + f" (competitor {r['competitor']})" for r in rows]
        out(rows, "\n".join(lines))
    elif args.action == "show":
        e = cat.get_entry(args.id)
        payload = {"id": e.id, "kind": e.kind, "girth": e.girth, "citation": e.citation,
                   "matrix": [list(r) for r in e.matrix.entries], "lifting": e.lifting, "memory": e.memory}
        out(payload, e.matrix.to_text().rstrip())
    elif args.action == "export":
        d = Path(args.dir)
        d.mkdir(parents=True, exist_ok=True)
        for e in cat.load_catalog():
            (d / f"{e.id}.txt").write_text(e.matrix.to_text(f"{e.kind} code, claimed girth {e.girth}"))
        out({"dir": str(d), "count": len(cat.load_catalog())}, f"wrote {len(cat.load_catalog())} files to {d}")
    else:
        rep = cat.verify_catalog(with_rate=not args.no_rate)
        lines = [r.line() for r in rep.entries]
        lines += [f"min theta [{k}] = {v['theta']:.4f} ({v['id']})" for k, v in rep.theta_min.items()]
        lines.append(f"{sum(r.passed for r in rep.entries)}/{len(rep.entries)} entries pass")
        out(rep.to_dict(), "\n".join(lines))
        if not rep.passed:
            raise _Fail("catalog verification failed")


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="compact-ldpc", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("design", help="search the smallest lifting degree of an SMC code")
    d.add_argument("--rows", type=int, required=True)
    d.add_argument("--cols", type=int, required=True)
    d.add_argument("--girth", type=int, required=True, choices=(6, 8, 10, 12))
    d.add_argument("--n-min", type=int)
    d.add_argument("--n-max", type=int, default=100)
    d.add_argument("--budget", type=int, help="max coefficient checks")
    d.add_argument("--seconds", type=float, help="wall-clock budget")
    d.add_argument("--emit", help="write the first code found to this file")
    d.add_argument("--all", action="store_true", help="list every success in the range")
    d.set_defaults(func=cmd_design)

    v = sub.add_parser("verify", help="girth (and rate or m_h) of an exponent-matrix file")
    v.add_argument("--file", required=True)
    v.add_argument("--girth", type=int, help="required minimum girth")
    v.add_argument("--cap", type=int, default=12)
    v.set_defaults(func=cmd_verify)

    u = sub.add_parser("unwrap", help="read a block code as an SC-LDPC convolutional code")
    u.add_argument("--file", required=True)
    u.add_argument("--reduce-memory", action="store_true")
    u.add_argument("--emit")
    u.set_defaults(func=cmd_unwrap)

    s = sub.add_parser("simulate", help="Monte Carlo BER/BLER on BPSK/AWGN")
    s.add_argument("--file", required=True)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--sc", action="store_true", help="terminated SC chain")
    mode.add_argument("--block", action="store_true", help="block code, full BP")
    s.add_argument("--alpha", type=float, default=5.0)
    s.add_argument("--window", type=int, help="window in blocks (overrides --alpha)")
    s.add_argument("--full-bp", action="store_true", help="decode the whole SC chain at once")
    s.add_argument("--chain-len", type=int)
    s.add_argument("--iters", type=int, default=100)
    s.add_argument("--decoder", choices=("sum-product", "min-sum"), default="sum-product")
    s.add_argument("--snr", required=True, help="a:b:step or comma list, in dB")
    s.add_argument("--es-n0", action="store_true", help="SNR is Es/N0 rather than Eb/N0")
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--stop-errors", type=int, default=100)
    s.add_argument("--stop-bits", type=int, default=10**7)
    s.add_argument("--max-blocks", type=int)
    s.add_argument("--batch", type=int, default=32)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--transmit", choices=("zero", "random"), default="zero")
    s.add_argument("--out", help="CSV output file")
    s.add_argument("--plot", action="store_true", help="also write a PNG next to --out")
    s.set_defaults(func=cmd_simulate)

    m = sub.add_parser("metrics", help="latency and complexity figures")
    m.add_argument("--file", required=True)
    m.add_argument("--alpha", type=float, default=5.0)
    m.add_argument("--iavg", type=float, default=1.0)
    m.add_argument("--iavg-source", default="user")
    m.add_argument("--design-rate", action="store_true")
    m.add_argument("--compare", help="reference code file for improvement ratios")
    m.set_defaults(func=cmd_metrics)

    c = sub.add_parser("catalog", help="embedded published codes")
    csub = c.add_subparsers(dest="action", required=True)
    cv = csub.add_parser("verify")
    cv.add_argument("--no-rate", action="store_true")
    csub.add_parser("list")
    cs = csub.add_parser("show")
    cs.add_argument("id")
    ce = csub.add_parser("export")
    ce.add_argument("dir")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    emitted = []

    def out(payload, text):
        emitted.append((payload, text))

    def flush(ok):
        for payload, text in emitted:
            if args.json:
                print(json.dumps({"command": args.command, "ok": ok, "result": payload}, default=str))
            else:
                print(text)

    try:
        args.func(args, out)
    except _Fail as exc:
        flush(False)
        print(f"failed: {exc}", file=sys.stderr)
        return 1
    except (ParameterError, KeyError, FileNotFoundError) as exc:
        if args.json:
            print(json.dumps({"command": args.command, "ok": False, "error": str(exc)}))
        print(f"error: {exc}", file=sys.stderr)
        return 2
    flush(True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
