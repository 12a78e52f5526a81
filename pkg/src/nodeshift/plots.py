"""SVG charts for benchmark results, drawn with matplotlib.

Box statistics use Tukey's hinges: the medians of the lower and upper
halves, both halves including the overall median when the count is odd.
Whiskers reach the most extreme values within 1.5 IQR of the hinges;
anything beyond is drawn as an outlier dot. The statistics are computed
here and handed to ``Axes.bxp`` so matplotlib's own percentile rule never
applies.

Output is deterministic: no timestamp, fixed element ids.
"""

from __future__ import annotations

import io
import statistics
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["BoxStats", "box_stats", "boxplot_svg", "bar_chart_svg",
           "emit_boxplot_svg"]

# text stays as <text> so labels remain searchable
_RC = {"svg.hashsalt": "nodeshift", "svg.fonttype": "none"}


@dataclass(frozen=True)
class BoxStats:
    median: float
    q1: float
    q3: float
    whisker_low: float
    whisker_high: float
    outliers: tuple[float, ...]


def box_stats(values: Sequence[float]) -> BoxStats:
    data = sorted(values)
    if not data:
        raise ValueError("need at least one value")
    half = (len(data) + 1) // 2
    q1 = statistics.median(data[:half])
    q3 = statistics.median(data[-half:])
    iqr = q3 - q1
    lo_fence, hi_fence = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    inside = [v for v in data if lo_fence <= v <= hi_fence]
    return BoxStats(
        median=statistics.median(data),
        q1=q1,
        q3=q3,
        whisker_low=min(inside),
        whisker_high=max(inside),
        outliers=tuple(v for v in data if v < lo_fence or v > hi_fence),
    )


def _svg(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def boxplot_svg(groups: Mapping[str, Sequence[float]], title: str = "",
                ylabel: str = "tour cost") -> str:
    """One box per group, in mapping order.

    Box ``k`` carries the SVG id ``box-<k>``, its outliers ``outliers-<k>``.
    """
    if not groups or any(len(v) == 0 for v in groups.values()):
        raise ValueError("every plotted group needs at least one value")
    stats = []
    for name, values in groups.items():
        s = box_stats(values)
        stats.append({"label": name, "med": s.median, "q1": s.q1, "q3": s.q3,
                      "whislo": s.whisker_low, "whishi": s.whisker_high,
                      "fliers": list(s.outliers)})
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(1.2 * len(stats) + 2, 4))
        parts = ax.bxp(stats, patch_artist=True,
                       flierprops={"marker": "o", "markerfacecolor": "none"})
        for k, (box, fliers) in enumerate(zip(parts["boxes"], parts["fliers"])):
            box.set_gid(f"box-{k}")
            box.set_facecolor(f"C{k % 10}")
            box.set_alpha(0.6)
            fliers.set_gid(f"outliers-{k}")
        ax.set_title(title)
        ax.set_ylabel(ylabel)
        fig.tight_layout()
        return _svg(fig)


def emit_boxplot_svg(groups: Mapping[str, Sequence[float]], path: str | Path,
                     title: str = "") -> Path:
    path = Path(path)
    path.write_text(boxplot_svg(groups, title), encoding="utf-8")
    return path


def bar_chart_svg(values: Mapping[str, Mapping[str, float]], title: str = "",
                  ylabel: str = "mean runtime (ms)") -> str:
    """Grouped bars: ``values[group][series]``, e.g. instance -> variant -> ms.

    Bars of series ``k`` share the SVG id prefix ``bars-<k>``.
    """
    series = list(dict.fromkeys(s for row in values.values() for s in row))
    if not series:
        raise ValueError("nothing to plot")
    width = 0.8 / len(series)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(1.0 * len(values) + 3, 4))
        for k, name in enumerate(series):
            xs = [g for g, row in enumerate(values.values()) if name in row]
            ys = [row[name] for row in values.values() if name in row]
            bars = ax.bar([x + (k - (len(series) - 1) / 2) * width for x in xs], ys,
                          width, label=name, color=f"C{k % 10}")
            for j, bar in enumerate(bars):
                bar.set_gid(f"bars-{k}-{j}")
        ax.set_xticks(range(len(values)), list(values))
        ax.set_title(title)
        ax.set_ylabel(ylabel)
        ax.legend(fontsize="small")
        fig.tight_layout()
        return _svg(fig)
