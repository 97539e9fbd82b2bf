"""Report figures: density convergence, class frequencies, field degrees.

Everything renders through the Agg backend straight to PNG files so the
report directory is self-contained alongside the JSON and CSV outputs.
"""

from __future__ import annotations

import os
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  # backend must be pinned first


def _parse_frac(text: str) -> float:
    return float(Fraction(text))


def density_convergence(report, path: str) -> None:
    """Running complete-splitting frequency against the predicted density."""
    splits = [1 if rec.split else 0 for rec in report.records]
    running = []
    acc = 0
    for i, s in enumerate(splits, start=1):
        acc += s
        running.append(acc / i)
    pred = _parse_frac(report.aggregate["predicted_density"])
    lo, hi = report.aggregate["band"]
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    ax.plot(range(1, len(running) + 1), running, lw=1.2, label="observed k/n")
    ax.axhline(pred, color="tab:red", lw=1.0, label=f"predicted {report.aggregate['predicted_density']}")
    ax.axhspan(lo, hi, color="tab:red", alpha=0.12, label="3-sigma band (final n)")
    ax.set_xlabel("good primes processed")
    ax.set_ylabel("complete-splitting frequency")
    ax.set_title(f"Splitting density, N = {report.spec.n_poly.compact_str()}")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def class_frequencies(report, path: str) -> bool:
    """Observed vs predicted char-poly class frequencies; False if no table."""
    table = report.aggregate.get("class_table")
    if not table:
        return False
    labels = [row["charpoly"] for row in table]
    observed = [row["frequency"] for row in table]
    predicted = [_parse_frac(row["predicted"]) for row in table]
    err = [3.0 * (row["band"][1] - row["band"][0]) / 6.0 for row in table]
    xs = range(len(labels))
    fig, ax = plt.subplots(figsize=(max(7.0, 1.1 * len(labels)), 4.4))
    ax.bar([x - 0.2 for x in xs], predicted, width=0.4, label="predicted", color="tab:blue")
    ax.bar([x + 0.2 for x in xs], observed, width=0.4, label="observed", color="tab:orange")
    ax.errorbar([x + 0.2 for x in xs], predicted, yerr=err, fmt="none", ecolor="black", capsize=3, lw=0.8)
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=7)
    ax.set_ylabel("class frequency")
    ax.set_title("Frobenius characteristic polynomial classes")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return True


def degree_histogram(report, path: str) -> None:
    """Histogram of the torsion splitting-field degrees m."""
    ms = [rec.m for rec in report.records]
    top = max(ms)
    counts = [ms.count(v) for v in range(1, top + 1)]
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    ax.bar(range(1, top + 1), counts, color="tab:green")
    ax.set_xlabel("splitting degree m of phi[N] over F_p")
    ax.set_ylabel("primes")
    ax.set_title("Torsion field degrees")
    ax.set_xticks(range(1, top + 1))
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def render_report(report, out_dir: str) -> list:
    """Write report.json, primes.csv, and the figures; returns the paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    jpath = os.path.join(out_dir, "report.json")
    with open(jpath, "w") as fh:
        fh.write(report.to_json())
    paths.append(jpath)
    cpath = os.path.join(out_dir, "primes.csv")
    report.write_csv(cpath)
    paths.append(cpath)
    dpath = os.path.join(out_dir, "density_convergence.png")
    density_convergence(report, dpath)
    paths.append(dpath)
    fpath = os.path.join(out_dir, "class_frequencies.png")
    if class_frequencies(report, fpath):
        paths.append(fpath)
    hpath = os.path.join(out_dir, "degree_histogram.png")
    degree_histogram(report, hpath)
    paths.append(hpath)
    return paths
