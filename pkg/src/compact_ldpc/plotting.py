"""Error-rate figures for simulation results."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_error_rates(results, path, *, labels=None, title=None) -> Path:
    """Write a semilog BER (solid) / BLER (dashed) versus SNR figure.

    Parameters
    ----------
    results : SimResult or sequence of SimResult
        One curve pair per result; points without errors are left out,
        since they have no place on a log axis.
    path : str or Path
        Output file; the format follows the suffix.
    """
    if not isinstance(results, (list, tuple)):
        results = [results]
    labels = labels or [r.meta.get("code", f"run {i}") for i, r in enumerate(results)]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for res, lab in zip(results, labels):
        snr = [p.snr_db for p in res.points]
        for attr, style, name in (("ber", "o-", "BER"), ("bler", "s--", "BLER")):
            pts = [(s, getattr(p, attr)) for s, p in zip(snr, res.points)]
            pts = [(s, v) for s, v in pts if v > 0 and not math.isnan(v)]
            if pts:
                xs, ys = zip(*pts)
                ax.semilogy(xs, ys, style, label=f"{lab} {name}")
    conv = results[0].meta.get("snr_convention", "EbN0") if results else "EbN0"
    ax.set_xlabel("Eb/N0 [dB]" if conv == "EbN0" else "Es/N0 [dB]")
    ax.set_ylabel("error rate")
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    if ax.lines:
        ax.legend(fontsize=8)
    path = Path(path)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
