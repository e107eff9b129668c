"""Report emission: delimited data first, rendered figures alongside.

Every writer takes rows of plain dicts. When a report lands in a file,
a PNG of the same data is rendered next to it (same stem), so a bench or
attack run leaves both the numbers and the picture.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)


def csv_text(headers, rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(headers), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({h: _fmt(row[h]) for h in headers})
    return buf.getvalue()


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.4f}".rstrip("0").rstrip(".")
    return value


def write_csv(path: Path, headers, rows) -> None:
    Path(path).write_text(csv_text(headers, rows), encoding="utf-8")


def write_json(path: Path, payload) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                          encoding="utf-8")


def figure_path(out: Path) -> Path:
    out = Path(out)
    return out.with_suffix(".png")


def render_bench_figure(rows, out: Path) -> Path:
    """Iteration statistics of the challenge generation loop versus k."""
    ks = [r["value of k"] for r in rows]
    avg = [r["avg iteration"] for r in rows]
    lo = [r["no. of min iteration"] for r in rows]
    hi = [r["no. of max iteration"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.fill_between(ks, lo, hi, alpha=0.2, label="min..max")
    ax.plot(ks, avg, marker="o", label="mean")
    ax.set_yscale("log")
    ax.set_xlabel("sweetwords per account (k)")
    ax.set_ylabel("grid permutations until disjoint")
    ax.set_title("challenge generation effort")
    ax.legend()
    fig.tight_layout()
    target = figure_path(out)
    fig.savefig(target, dpi=130)
    plt.close(fig)
    return target


def render_trace_figure(trace, out: Path) -> Path:
    """Candidate-set shrinkage over observed sessions."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(range(len(trace)), trace, marker="o")
    ax.set_yscale("log")
    ax.set_xlabel("sessions observed")
    ax.set_ylabel("surviving candidates")
    ax.set_title("observation attack pruning")
    fig.tight_layout()
    target = figure_path(out)
    fig.savefig(target, dpi=130)
    plt.close(fig)
    return target


def render_rates_figure(labels, rates, intervals, out: Path, title: str) -> Path:
    """Bar chart of estimated rates with their 95% intervals."""
    fig, ax = plt.subplots(figsize=(6, 4))
    errs = [[r - lo for r, (lo, _) in zip(rates, intervals)],
            [hi - r for r, (_, hi) in zip(rates, intervals)]]
    ax.bar(range(len(labels)), rates, yerr=errs, capsize=4)
    ax.set_xticks(range(len(labels)), labels, rotation=20, ha="right")
    ax.set_ylabel("probability")
    ax.set_title(title)
    fig.tight_layout()
    target = figure_path(out)
    fig.savefig(target, dpi=130)
    plt.close(fig)
    return target
