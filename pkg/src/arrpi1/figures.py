"""Static wiring-diagram figures.

Strands are drawn as polylines in the (re z1, re z2) projection plane.
Actual vertices get a filled dot; at each virtual vertex the strand passing
behind (smaller im z2) is broken by a small blank disc and the front strand
is redrawn over it, knot-diagram style, with the crossing sign annotated.
Output format follows the file extension (the CLI asks for .svg).
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from arrpi1.wiring import WiringResult, strand_position


def _sample_ts(result: WiringResult) -> List[Fraction]:
    ts = {t for t, _ in result.graphing_map.breakpoints}
    ts.update(ev.t for ev in result.diagram.events)
    if not ts:
        ts = {Fraction(-1), Fraction(1)}
    lo, hi = min(ts), max(ts)
    pad = max((hi - lo) / 8, Fraction(1, 2))
    ts.update((lo - pad, hi + pad))
    return sorted(ts)


def render_wiring(result: WiringResult, path: str, title: Optional[str] = None) -> None:
    """Render the diagram of a wiring result to ``path``."""
    arr = result.arrangement
    f = result.graphing_map
    ts = _sample_ts(result)
    span = float(ts[-1] - ts[0])
    gap = span / 60.0

    fig, ax = plt.subplots(figsize=(8, 4.5))
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]

    def color(line_index: int) -> str:
        return colors[(line_index - 1) % len(colors)]

    def xy(line_index: int, t) -> Tuple[float, float]:
        x2, _ = strand_position(arr.line(line_index), t, f)
        return float(t), float(x2)

    for idx in range(1, arr.n + 1):
        pts = [xy(idx, t) for t in ts]
        ax.plot(
            [p[0] for p in pts],
            [p[1] for p in pts],
            color=color(idx),
            lw=1.6,
            zorder=2,
            label=f"L{idx}",
        )

    for ev in result.diagram.events:
        if ev.is_actual:
            x2, _ = strand_position(arr.line(ev.point.incident[0]), ev.t, f)
            ax.plot([float(ev.t)], [float(x2)], "o", color="black", ms=7, zorder=5)
        else:
            # identify the two strands from the order just before the event
            order = list(result.diagram.initial_order)
            for prev in result.diagram.events:
                if prev is ev:
                    break
                order[prev.block_lo - 1 : prev.block_hi] = reversed(
                    order[prev.block_lo - 1 : prev.block_hi]
                )
            low_line = order[ev.block_lo - 1]
            high_line = order[ev.block_hi - 1]
            depths = {
                idx: strand_position(arr.line(idx), ev.t, f)[1]
                for idx in (low_line, high_line)
            }
            front = max(depths, key=lambda i: depths[i])
            t0, x0 = xy(front, ev.t)
            ax.plot([t0], [x0], "o", color="white", ms=11, zorder=3)
            seg_ts = [ev.t - Fraction(gap).limit_denominator(1000),
                      ev.t,
                      ev.t + Fraction(gap).limit_denominator(1000)]
            seg = [xy(front, t) for t in seg_ts]
            ax.plot(
                [p[0] for p in seg],
                [p[1] for p in seg],
                color=color(front),
                lw=1.6,
                zorder=4,
            )
            ax.annotate(
                "+" if ev.sign > 0 else "−",
                (t0, x0),
                textcoords="offset points",
                xytext=(5, 5),
                fontsize=9,
                zorder=6,
            )

    ax.set_xlabel("re z1")
    ax.set_ylabel("re z2")
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
