# Figures from the CSV tables written by `experiment` and `sweep`.

import csv
import logging
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from fdr_forge.errors import ConfigurationError  # noqa: E402

logger = logging.getLogger(__name__)

# (table, x, y, group) for the figures generate_all_plots knows about.
STANDARD_PLOTS = (
    ("asymptotic-bh_bh.csv", "m", "mean_fdp", "generator"),
    ("asymptotic-bh_convergence.csv", "m", "sup_dev_R", "generator"),
    ("asymptotic-bh_convergence.csv", "m", "sup_dev_fdp", "generator"),
    ("fdrhat-bias_reports.csv", "fixed_t", "mean_fdr_hat", "label"),
    ("fdrhat-bias_reports.csv", "fixed_t", "mean_fdp", "label"),
)


def _read_columns(path: Path, x: str, y: str, group: str | None) -> dict[str, list[tuple[float, float]]]:
    series = defaultdict(list)
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        missing = [c for c in (x, y, group) if c and c not in (reader.fieldnames or [])]
        if missing:
            raise ConfigurationError(f"{path}: no column(s) {', '.join(missing)}")
        for row in reader:
            if row[x] == "" or row[y] == "":
                continue
            try:
                point = (float(row[x]), float(row[y]))
            except ValueError as exc:
                raise ConfigurationError(f"{path}: non-numeric value in {x!r} or {y!r}") from exc
            series[row[group] if group else y].append(point)
    if not series:
        raise ConfigurationError(f"{path}: nothing to plot")
    return series


def plot_table(table, x: str, y: str, out=None, group: str | None = None, title: str | None = None) -> Path:
    # One line per group, x on a log axis when it spans more than two decades.
    path = Path(table)
    series = _read_columns(path, x, y, group)
    fig, ax = plt.subplots(1, 1, figsize=(8, 5))
    xs_all = []
    for label, points in sorted(series.items()):
        points.sort()
        xs, ys = zip(*points)
        xs_all.extend(xs)
        ax.plot(xs, ys, marker="o", linewidth=1.5, label=label)
    if min(xs_all) > 0 and max(xs_all) / min(xs_all) > 100:
        ax.set_xscale("log")
    ax.set_xlabel(x)
    ax.set_ylabel(y)
    ax.grid(alpha=0.3)
    if len(series) > 1 or group:
        ax.legend(fontsize=8)
    ax.set_title(title or f"{y} vs {x} ({path.stem})", fontsize=12)
    fig.tight_layout()
    target = Path(out) if out else path.with_name(f"{path.stem}_{y}.png")
    fig.savefig(target, dpi=150, bbox_inches="tight")
    plt.close(fig)
    logger.info("[OK] saved %s", target)
    return target


def generate_all_plots(results_dir) -> list[Path]:
    # Every standard figure whose table exists under results_dir.
    results = Path(results_dir)
    made = []
    for table, x, y, group in STANDARD_PLOTS:
        if (results / table).exists():
            made.append(plot_table(results / table, x, y, group=group))
    if not made:
        logger.warning("[WARNING] no experiment tables under %s", results)
    return made
