"""Aggregates and least-squares fits used by the experiment reports."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats

from ..errors import DomainError


@dataclass(frozen=True)
class FitResult:
    base_or_slope: float
    uncertainty: float
    residual: float
    intercept: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)


def _linear_fit(x, y) -> tuple[float, float, float, float]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    res = stats.linregress(x, y)
    resid = y - (res.intercept + res.slope * x)
    rms = float(np.sqrt(np.mean(resid**2)))
    stderr = 0.0 if not np.isfinite(res.stderr) else float(res.stderr)
    return float(res.slope), stderr, rms, float(res.intercept)


def fit_exponential_base(points, reference: int = 8) -> FitResult:
    """Fit ``value = a * b**(N - reference)``; returns ``b`` and its standard error.

    The fit is ordinary least squares of ``log(value)`` on ``N - reference``;
    the error on ``b`` follows from the slope error by ``db = b * d(log b)``.
    ``residual`` is the RMS residual in log space.
    """
    pts = sorted((float(n), float(v)) for n, v in points)
    if len(pts) < 3:
        raise DomainError("need at least three points")
    ns = np.array([p[0] for p in pts])
    vals = np.array([p[1] for p in pts])
    if np.any(vals <= 0):
        raise DomainError("values must be positive")
    slope, err, rms, icpt = _linear_fit(ns - reference, np.log(vals))
    b = math.exp(slope)
    return FitResult(b, b * err, rms, math.exp(icpt))


def fit_power_law(x, y) -> FitResult:
    """Log-log slope of ``y ~ A * x**slope`` by least squares."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 3:
        raise DomainError("need at least three points")
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("power-law fit needs positive data")
    slope, err, rms, icpt = _linear_fit(np.log(x), np.log(y))
    return FitResult(slope, err, rms, math.exp(icpt))


def summarize(values) -> dict:
    """Mean, median, standard error and count of a sample."""
    v = np.asarray(values, dtype=float)
    n = int(v.size)
    if n == 0:
        return {"n": 0, "mean": None, "median": None, "sem": None}
    sem = float(v.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return {"n": n, "mean": float(v.mean()), "median": float(np.median(v)), "sem": sem}


def binomial_summary(successes: int, trials: int) -> dict:
    p = successes / trials if trials else float("nan")
    sem = math.sqrt(p * (1 - p) / trials) if trials else float("nan")
    return {"successes": int(successes), "trials": int(trials), "rate": p, "sem": sem}
