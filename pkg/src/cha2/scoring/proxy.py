"""Descriptor-based drug-likeness proxy.

Each descriptor runs through an asymmetric double sigmoid desirability
curve, normalized to peak at 1.0 over the descriptor's stated range; the
score is the weighted geometric mean of the desirabilities. The proxy is
a stand-in ranking signal -- ground truth comes from the external scorer,
and the calibration report (rank correlation between the two) is part of
the acceptance output, not a claim baked into these curves.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

from ..errors import EmptyConfig
from ..molgraph.descriptors import DescriptorVector


def ads(x: float, a: float, b: float, c: float, d: float,
        e: float, f: float) -> float:
    """Asymmetric double sigmoid: a rising sigmoid at c - d/2 with slope
    scale e, times a falling sigmoid at c + d/2 with slope scale f."""
    rise = b / (1.0 + math.exp(-(x - c + d / 2.0) / e))
    fall = 1.0 - 1.0 / (1.0 + math.exp(-(x - c - d / 2.0) / f))
    return a + rise * fall


@dataclass(frozen=True)
class DesirabilityCurve:
    descriptor: str
    a: float
    b: float
    c: float
    d: float
    e: float
    f: float
    lo: float
    hi: float
    normalization: float

    @staticmethod
    def create(descriptor: str, a: float, b: float, c: float, d: float,
               e: float, f: float, lo: float, hi: float,
               grid: int = 10001) -> "DesirabilityCurve":
        """Normalization constant = max of ads over [lo, hi] on a dense
        grid (deterministic)."""
        if e <= 0 or f <= 0:
            raise ValueError("slope scales e, f must be positive")
        if hi <= lo:
            raise ValueError("empty descriptor range")
        peak = max(
            ads(lo + (hi - lo) * i / (grid - 1), a, b, c, d, e, f)
            for i in range(grid)
        )
        if peak <= 0:
            raise ValueError(f"curve for {descriptor} never positive")
        return DesirabilityCurve(descriptor, a, b, c, d, e, f, lo, hi, peak)

    def __call__(self, x: float) -> float:
        """Normalized desirability, clamped into (0, 1]."""
        val = ads(x, self.a, self.b, self.c, self.d, self.e, self.f)
        return min(max(val / self.normalization, 0.0), 1.0)


@dataclass(frozen=True)
class ProxyScoreConfig:
    curves: tuple[tuple[DesirabilityCurve, float], ...]  # (curve, weight)
    floor: float = 1e-6

    def __post_init__(self):
        if not any(w > 0 for _, w in self.curves):
            raise EmptyConfig("no positively weighted desirability curve")


def proxy_score(dv: DescriptorVector, cfg: ProxyScoreConfig) -> float:
    """Weighted geometric mean of normalized desirabilities, in (0, 1]."""
    log_sum = 0.0
    weight_sum = 0.0
    for curve, weight in cfg.curves:
        if weight <= 0:
            continue
        x = getattr(dv, curve.descriptor)
        log_sum += weight * math.log(max(cfg.floor, curve(x)))
        weight_sum += weight
    return math.exp(log_sum / weight_sum)


def load_proxy_config(path=None) -> ProxyScoreConfig:
    """Read a proxy config JSON; without a path, the bundled defaults.

    Schema: {"floor": float, "curves": [{"descriptor": str, "a": ...,
    "b": ..., "c": ..., "d": ..., "e": ..., "f": ..., "range": [lo, hi],
    "weight": float}, ...]}
    """
    if path is None:
        ref = resources.files("cha2.scoring").joinpath(
            "data/default_proxy.json"
        )
        raw = json.loads(ref.read_text(encoding="utf-8"))
    else:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    curves = []
    for spec in raw["curves"]:
        curve = DesirabilityCurve.create(
            spec["descriptor"],
            spec["a"], spec["b"], spec["c"], spec["d"],
            spec["e"], spec["f"],
            lo=spec["range"][0], hi=spec["range"][1],
        )
        curves.append((curve, float(spec.get("weight", 1.0))))
    return ProxyScoreConfig(tuple(curves), float(raw.get("floor", 1e-6)))
