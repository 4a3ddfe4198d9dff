"""Co-occurrence proximity measures: Confidence, PMI, NGD and PMING.

Raw measures raise :class:`UndefinedMeasure` when a required count is zero.
Zero co-occurrence is not an error: PMI returns ``-inf`` and the distances
return ``inf``. :func:`proximity` maps every outcome onto a nonnegative score
where larger means closer.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

from .freqsource.base import FrequencyTriple


class MeasureKind(str, enum.Enum):
    CONFIDENCE = "confidence"
    PMI = "pmi"
    NGD = "ngd"
    PMING = "pming"


class UndefinedMeasure(ArithmeticError):
    pass


class ContextError(ValueError):
    pass


def confidence(t: FrequencyTriple) -> float:
    """Confidence of the rule x -> y: the share of x's documents that also contain y."""
    if t.fx == 0:
        raise UndefinedMeasure("confidence undefined for f(x) = 0")
    return t.fxy / t.fx


def pmi(t: FrequencyTriple) -> float:
    """Pointwise mutual information in bits."""
    if t.fx == 0 or t.fy == 0:
        raise UndefinedMeasure("PMI undefined for f(x) * f(y) = 0")
    if t.fxy == 0:
        return -math.inf
    return math.log2(t.fxy * t.m / (t.fx * t.fy))


def ngd(t: FrequencyTriple, log=math.log) -> float:
    """Normalized Google distance. Any log base gives the same value."""
    if t.fx == 0 or t.fy == 0:
        raise UndefinedMeasure("NGD undefined for f(x) * f(y) = 0")
    if t.m <= min(t.fx, t.fy):
        raise UndefinedMeasure(f"NGD undefined for M = {t.m} <= min(f(x), f(y))")
    if t.fxy == 0:
        return math.inf
    lx, ly = log(t.fx), log(t.fy)
    return (max(lx, ly) - log(t.fxy)) / (log(t.m) - min(lx, ly))


@dataclass(frozen=True)
class PmingContext:
    """Context maxima of raw PMI (``mu1``) and NGD (``mu2``) plus the PMI weight ``rho``."""

    mu1: float
    mu2: float
    rho: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 <= self.rho <= 1.0:
            raise ContextError(f"rho must lie in [0, 1], got {self.rho}")
        if not (math.isfinite(self.mu1) and self.mu1 > 0):
            raise ContextError(f"mu1 must be a positive finite PMI maximum, got {self.mu1}")
        # mu2 == 0 is allowed: every NGD in the context is 0 and the NGD term vanishes
        if not (math.isfinite(self.mu2) and self.mu2 >= 0):
            raise ContextError(f"mu2 must be a finite nonnegative NGD maximum, got {self.mu2}")

    def to_dict(self) -> dict[str, float]:
        return {"mu1": self.mu1, "mu2": self.mu2, "rho": self.rho}


def build_pming_context(triples: Iterable[FrequencyTriple], rho: float = 0.5) -> PmingContext:
    """First pass of the PMING protocol: maxima of the defined, finite raw PMI and NGD."""
    mu1 = mu2 = None
    for t in triples:
        try:
            p = pmi(t)
        except UndefinedMeasure:
            p = None
        if p is not None and math.isfinite(p):
            mu1 = p if mu1 is None else max(mu1, p)
        try:
            d = ngd(t)
        except UndefinedMeasure:
            d = None
        if d is not None and math.isfinite(d):
            mu2 = d if mu2 is None else max(mu2, d)
    if mu1 is None or mu2 is None:
        raise ContextError("no pair in the context has a defined PMI and NGD")
    if mu1 <= 0:
        raise ContextError(f"no positively associated pair in the context (max PMI = {mu1})")
    return PmingContext(mu1, mu2, rho)


def pming(t: FrequencyTriple, ctx: PmingContext) -> float:
    """PMING distance: rho * (1 - PMI/mu1) + (1 - rho) * NGD/mu2."""
    if t.fx < t.fy:
        # the definition assumes f(x) >= f(y)
        t = t.swapped()
    p = pmi(t)
    d = ngd(t)
    if t.fxy == 0:
        return math.inf
    pmi_part = 1.0 - p / ctx.mu1
    ngd_part = d / ctx.mu2 if ctx.mu2 > 0 else 0.0
    return ctx.rho * pmi_part + (1.0 - ctx.rho) * ngd_part


def raw_measure(kind: MeasureKind | str, t: FrequencyTriple, ctx: PmingContext | None = None) -> float:
    kind = MeasureKind(kind)
    if kind is MeasureKind.CONFIDENCE:
        return confidence(t)
    if kind is MeasureKind.PMI:
        return pmi(t)
    if kind is MeasureKind.NGD:
        return ngd(t)
    if ctx is None:
        raise ContextError("PMING needs a PmingContext")
    return pming(t, ctx)


def _clip01(value: float) -> float:
    return min(1.0, max(0.0, value))


def proximity(kind: MeasureKind | str, t: FrequencyTriple, ctx: PmingContext | None = None) -> float:
    """Nonnegative closeness score used as a vector component before L1 normalization.

    Confidence passes through, PMI is floored at 0, and the distances NGD and
    PMING become ``1 - distance`` clipped to [0, 1]. Undefined measures and
    zero co-occurrence score 0.
    """
    kind = MeasureKind(kind)
    if kind is MeasureKind.PMING and ctx is None:
        raise ContextError("PMING needs a PmingContext")
    if t.fxy == 0:
        return 0.0
    try:
        value = raw_measure(kind, t, ctx)
    except UndefinedMeasure:
        return 0.0
    if kind is MeasureKind.CONFIDENCE:
        return _clip01(value)
    if kind is MeasureKind.PMI:
        return max(value, 0.0)
    return _clip01(1.0 - value)


def _finite_or_none(fn, *args) -> float | None:
    try:
        value = fn(*args)
    except UndefinedMeasure:
        return None
    return value if math.isfinite(value) else None


def measure_record(
    kind: MeasureKind | str, t: FrequencyTriple, ctx: PmingContext | None = None
) -> dict[str, float | None]:
    """All raw measures for one pair; ``None`` marks undefined or infinite values."""
    return {
        "confidence": _finite_or_none(confidence, t),
        "pmi_raw": _finite_or_none(pmi, t),
        "ngd_raw": _finite_or_none(ngd, t),
        "pming": _finite_or_none(pming, t, ctx) if ctx is not None else None,
        "proximity": proximity(kind, t, ctx),
    }
