"""Figure rendering for the CLI report paths (matplotlib, file output only)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .laurent import JONES_Q_STEP, JonesPoly, gap_report

__all__ = ["jones_figure", "batch_figure"]


def jones_figure(v: JonesPoly, path: str, title: str = "") -> None:
    """Stem plot of Jones coefficients against the t-exponent, with support
    gaps shaded."""
    p = v.poly
    support = p.support()
    xs = [e / 2 for e in support]
    ys = [p.terms[e] for e in support]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.axhline(0, color="0.6", lw=0.8)
    markerline, stemlines, _ = ax.stem(xs, ys)
    plt.setp(markerline, markersize=5)
    rep = gap_report(v)
    for lo, length in rep.gaps:
        ax.axvspan(lo / 2, (lo + length) / 2, color="tab:red", alpha=0.15)
    ax.set_xlabel("t exponent")
    ax.set_ylabel("coefficient")
    label = title or "Jones coefficients"
    ax.set_title(f"{label}  (det {v.determinant()}, span {v.span()}, "
                 f"max q-gap {rep.max_gap})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def batch_figure(rows: list[dict], path: str, suite: str) -> None:
    """Pass/fail bar chart for a batch run."""
    passed = sum(1 for r in rows if r.get("passed"))
    failed = len(rows) - passed
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar(["pass", "fail"], [passed, failed], color=["tab:green", "tab:red"])
    for i, v in enumerate([passed, failed]):
        ax.text(i, v, str(v), ha="center", va="bottom")
    ax.set_title(f"suite {suite}: {len(rows)} checks")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
