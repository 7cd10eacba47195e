from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..graphs import Drawing
from ..metrics import length_stats


@dataclass
class DrawReport:
    drawing: Drawing
    ratio: float | None
    min_len: float | None
    max_len: float | None
    theoretical_bound: float
    meta: dict = field(default_factory=dict)

    @property
    def empty_ratio(self) -> bool:
        """True for edgeless graphs, whose ratio is undefined."""
        return self.ratio is None

    @property
    def within_bound(self) -> bool:
        return self.ratio is None or self.ratio <= self.theoretical_bound * (1 + 1e-9)


def make_report(g, drawing: Drawing, bound: float, **meta) -> DrawReport:
    s = length_stats(g, drawing)
    ratio = s["ratio"]
    if ratio is not None and not math.isfinite(ratio):
        ratio = math.inf
    return DrawReport(drawing, ratio, s["min_len"], s["max_len"], bound, meta)
