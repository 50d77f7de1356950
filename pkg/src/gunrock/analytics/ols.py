"""Simple ordinary least squares with exact inference quantities.

Closed-form normal equations for slope/intercept; the two-sided p-value
comes from the Student-t distribution evaluated through the regularized
incomplete beta function (continued fraction, 1e-10 absolute target).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from gunrock.errors import DegenerateDesignError, InsufficientDataError

_BETA_TOL = 1e-12
_BETA_MAX_ITER = 500


@dataclass(frozen=True)
class RegressionResult:
    beta: float
    se: float
    t: float
    p: float
    n: int
    intercept: float
    r_squared: float


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (Lentz's method)."""
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, _BETA_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETA_TOL:
            return h
    return h


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    # Use the symmetry relation where the continued fraction converges fast.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - math.exp(
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + b * math.log1p(-x) + a * math.log(x)
    ) * _betacf(b, a, 1.0 - x) / b


def student_t_two_sided_p(t: float, dof: int) -> float:
    """P(|T| >= |t|) for T ~ Student-t with ``dof`` degrees of freedom."""
    if dof <= 0:
        raise InsufficientDataError(f"degrees of freedom must be positive, got {dof}")
    if math.isinf(t):
        return 0.0
    if t == 0.0:
        return 1.0
    x = dof / (dof + t * t)
    return regularized_incomplete_beta(dof / 2.0, 0.5, x)


def ols_fit(x: list[float], y: list[float]) -> RegressionResult:
    """Fit y = intercept + beta * x with standard inference output.

    Conventions for degenerate residuals: a perfect fit reports p = 0;
    a zero-variance response with beta = 0 reports p = 1. Constant y
    also yields r_squared = 0 by convention.
    """
    n = len(x)
    if n != len(y):
        raise InsufficientDataError(f"length mismatch: {n} vs {len(y)}")
    if n < 3:
        raise InsufficientDataError(f"need at least 3 points, got {n}")
    mean_x = sum(x) / n
    mean_y = sum(y) / n
    sxx = sum((xi - mean_x) ** 2 for xi in x)
    if sxx == 0.0:
        raise DegenerateDesignError("predictor is constant")
    sxy = sum((xi - mean_x) * (yi - mean_y) for xi, yi in zip(x, y))
    beta = sxy / sxx
    intercept = mean_y - beta * mean_x

    sse = sum((yi - intercept - beta * xi) ** 2 for xi, yi in zip(x, y))
    sst = sum((yi - mean_y) ** 2 for yi in y)
    r_squared = 1.0 - sse / sst if sst > 0.0 else 0.0

    dof = n - 2
    s2 = sse / dof
    se = math.sqrt(s2 / sxx)
    if se == 0.0:
        t = 0.0 if beta == 0.0 else math.inf
        p = 1.0 if beta == 0.0 else 0.0
    else:
        t = beta / se
        p = student_t_two_sided_p(t, dof)
    return RegressionResult(
        beta=beta, se=se, t=t, p=p, n=n, intercept=intercept, r_squared=r_squared
    )
