"""Growth rates h: [0, inf) -> [1, inf) and the witness class for squared rates.

A growth rate is nondecreasing, bounded below by 1 and diverges at
infinity.  Divergence cannot be decided on a finite grid, so
:func:`check_growth_rate` only reports it as a heuristic flag.
"""

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainError

__all__ = [
    "GrowthRate", "RateCheck", "WitnessResult",
    "exponential", "polynomial", "logpoly", "custom", "from_table",
    "parse_rate", "eval_rate", "check_growth_rate", "class_g_witness",
    "log_weight",
]

KINDS = ("exponential", "polynomial", "logpoly", "custom")
REL_TOL = 1e-12


def log_weight(t):
    """(t + 1) ln(t + e), the weight shared by the example systems."""
    t = np.asarray(t, dtype=float)
    return (t + 1.0) * np.log(t + math.e)


@dataclass(frozen=True)
class GrowthRate:
    """Immutable growth rate.

    ``alpha`` is the rate parameter for the exponential (1/time) and
    polynomial (exponent) kinds; ``table`` holds ``(times, values)`` for the
    custom kind.
    """

    kind: str
    alpha: float = 1.0
    table: tuple = field(default=(), repr=False)
    name: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown rate kind {self.kind!r}")
        if self.kind in ("exponential", "polynomial"):
            if not (math.isfinite(self.alpha) and self.alpha > 0):
                raise DomainError(f"rate parameter must be positive, got {self.alpha}")
        if self.kind == "custom":
            ts, vs = self.table
            if len(ts) < 1 or len(ts) != len(vs):
                raise DomainError("custom rate needs a nonempty table of equal-length columns")
            if np.any(np.diff(ts) <= 0):
                raise DomainError("custom rate table times must be strictly increasing")
            if ts[0] < 0:
                raise DomainError("custom rate table starts at negative time")

    @property
    def label(self):
        if self.name:
            return self.name
        if self.kind == "exponential":
            return f"exp:{self.alpha:g}"
        if self.kind == "polynomial":
            return f"poly:{self.alpha:g}"
        return self.kind

    def __call__(self, t):
        return eval_rate(self, t)


def exponential(alpha=1.0):
    return GrowthRate("exponential", float(alpha))


def polynomial(alpha=1.0):
    return GrowthRate("polynomial", float(alpha))


def logpoly():
    return GrowthRate("logpoly")


def custom(times, values, name=""):
    ts = tuple(float(v) for v in times)
    vs = tuple(float(v) for v in values)
    return GrowthRate("custom", table=(ts, vs), name=name)


def from_table(path):
    """Read a two-column ``t,value`` CSV with a header row."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["t", "value"]:
            raise DomainError(f"{path}: expected header 't,value'")
        rows = [(float(a), float(b)) for a, b, *_ in reader if a.strip()]
    if not rows:
        raise DomainError(f"{path}: empty rate table")
    ts, vs = zip(*rows)
    return custom(ts, vs, name=f"table:{path}")


def parse_rate(spec):
    """Parse ``exp:<alpha>``, ``poly:<alpha>``, ``logpoly`` or ``table:<path.csv>``."""
    spec = spec.strip()
    head, _, arg = spec.partition(":")
    try:
        if head == "exp":
            return exponential(float(arg))
        if head == "poly":
            return polynomial(float(arg))
        if head == "logpoly" and not arg:
            return logpoly()
        if head == "table" and arg:
            return from_table(arg)
    except ValueError as exc:
        raise DomainError(f"bad rate specifier {spec!r}: {exc}") from exc
    raise DomainError(f"bad rate specifier {spec!r}")


def eval_rate(rate, t):
    """Evaluate ``rate`` at scalar or array ``t >= 0``."""
    arr = np.asarray(t, dtype=float)
    if np.any(~(arr >= 0)):
        raise DomainError(f"growth rates are defined for t >= 0 only, got {t!r}")
    if rate.kind == "exponential":
        out = np.exp(rate.alpha * arr)
    elif rate.kind == "polynomial":
        out = (arr + 1.0) ** rate.alpha
    elif rate.kind == "logpoly":
        out = log_weight(arr)
    else:
        ts, vs = rate.table
        if np.any(arr < ts[0]) or np.any(arr > ts[-1]):
            raise DomainError(f"t={t!r} outside custom table range [{ts[0]}, {ts[-1]}]")
        out = np.interp(arr, ts, vs)
    if np.ndim(t) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class RateCheck:
    passed: bool
    first_violation: float | None
    reason: str
    diverges: bool


def _as_grid(grid):
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1 or g.size == 0:
        raise DomainError("time grid must be a nonempty 1-d sequence")
    if np.any(g < 0) or np.any(np.diff(g) <= 0):
        raise DomainError("time grid must be nonnegative and strictly increasing")
    return g


def check_growth_rate(rate, grid, min_gap=1.0):
    """Check codomain and monotonicity of ``rate`` on ``grid``.

    Divergence is reported through ``diverges`` (end value exceeds the
    start value by ``min_gap``) and never fails the check.
    """
    g = _as_grid(grid)
    vals = np.atleast_1d(eval_rate(rate, g))
    below = np.nonzero(vals < 1.0 - REL_TOL)[0]
    drops = np.nonzero(np.diff(vals) < -REL_TOL * np.abs(vals[:-1]))[0] + 1
    bad = sorted(set(below.tolist()) | set(drops.tolist()))
    diverges = bool(vals[-1] >= vals[0] + min_gap)
    if not bad:
        return RateCheck(True, None, "", diverges)
    i = bad[0]
    reason = "value < 1" if i in set(below.tolist()) else "decreasing"
    return RateCheck(False, float(g[i]), reason, diverges)


@dataclass(frozen=True)
class WitnessResult:
    passed: bool
    worst_margin: float
    worst_t: float


def class_g_witness(h, g, grid):
    """Test h(t)^2 / ((t+1) ln(t+e)) >= g(t) on every grid point.

    The margin is h^2 / (r g) with r the log weight; it is 1 where the
    inequality is tight.
    """
    ts = _as_grid(grid)
    margin = np.asarray(eval_rate(h, ts)) ** 2 / (log_weight(ts) * np.asarray(eval_rate(g, ts)))
    i = int(np.argmin(margin))
    return WitnessResult(bool(margin[i] >= 1.0 - REL_TOL), float(margin[i]), float(ts[i]))
