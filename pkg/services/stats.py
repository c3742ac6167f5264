"""Sample summaries, Welch's t-test and the variance-ratio F-test.

The t and F distribution tails come from the regularized incomplete beta
function, evaluated with the Numerical Recipes continued fraction (modified
Lentz). No statistics package is needed at runtime.
"""

import math
from dataclasses import dataclass
from typing import FrozenSet, Optional, Sequence, Tuple

import numpy as np

from services.errors import DegenerateVarianceError, InsufficientDataError

ALPHAS = (0.05, 0.01, 0.001)

_MAX_ITERATIONS = 10000
_EPS = 1e-15
_FPMIN = 1e-300


@dataclass(frozen=True)
class SampleSummary:
    n: int
    mean: float
    stddev: Optional[float]

    @property
    def variance(self) -> Optional[float]:
        return None if self.stddev is None else self.stddev ** 2


@dataclass(frozen=True)
class TestResult:
    statistic: float
    df: Tuple[float, ...]
    p_value: float
    significant_at: FrozenSet[float]
    degenerate: bool = False

    # keep pytest from collecting this as a test class
    __test__ = False

    def is_significant(self, alpha: float) -> bool:
        return self.p_value < alpha


def _as_array(sample) -> np.ndarray:
    return np.asarray(sample, dtype=float).ravel()


def _sample_variance(values: np.ndarray, mean: float) -> float:
    return math.fsum((values - mean) ** 2) / (values.size - 1)


def summarize(sample) -> SampleSummary:
    """Exact mean and two-pass sample standard deviation (n - 1 denominator)."""
    values = _as_array(sample)
    n = int(values.size)
    if n == 0:
        raise InsufficientDataError("cannot summarize an empty sample")
    mean = math.fsum(values) / n
    stddev = math.sqrt(_sample_variance(values, mean)) if n >= 2 else None
    return SampleSummary(n=n, mean=mean, stddev=stddev)


def _significance(p_value: float) -> FrozenSet[float]:
    return frozenset(alpha for alpha in ALPHAS if p_value < alpha)


def _betacf(x: float, a: float, b: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITERATIONS + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta did not converge for x={x}, a={a}, b={b}")


def regularized_incomplete_beta(x: float, a: float, b: float) -> float:
    """I_x(a, b) for a, b > 0 and 0 <= x <= 1."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) + a * math.log(x) + b * math.log1p(-x)
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(x, a, b) / a
    return 1.0 - front * _betacf(1.0 - x, b, a) / b


def t_two_sided_p(t: float, df: float) -> float:
    if math.isinf(t):
        return 0.0
    return regularized_incomplete_beta(df / (df + t * t), df / 2.0, 0.5)


def f_cdf(f: float, dfn: float, dfd: float) -> float:
    if f <= 0:
        return 0.0
    if math.isinf(f):
        return 1.0
    return regularized_incomplete_beta(dfn * f / (dfn * f + dfd), dfn / 2.0, dfd / 2.0)


def _require_pair(a, b, what: str):
    xa, xb = _as_array(a), _as_array(b)
    if xa.size < 2 or xb.size < 2:
        raise InsufficientDataError(f"{what} needs at least two values in each sample")
    return xa, xb


def welch_t_test(a: Sequence[float], b: Sequence[float]) -> TestResult:
    """Two-sided Welch (unequal variance) t-test of mean(a) against mean(b)."""
    xa, xb = _require_pair(a, b, "t-test")
    na, nb = xa.size, xb.size
    mean_a, mean_b = math.fsum(xa) / na, math.fsum(xb) / nb
    se_a = _sample_variance(xa, mean_a) / na
    se_b = _sample_variance(xb, mean_b) / nb
    diff = mean_a - mean_b
    se2 = se_a + se_b

    if se2 == 0.0:
        if diff == 0.0:
            return TestResult(0.0, (float(na + nb - 2),), 1.0, frozenset(), degenerate=True)
        return TestResult(math.copysign(math.inf, diff), (float(na + nb - 2),), 0.0, _significance(0.0), degenerate=True)

    t = diff / math.sqrt(se2)
    df = se2 ** 2 / (se_a ** 2 / (na - 1) + se_b ** 2 / (nb - 1))
    p = 1.0 if t == 0.0 else t_two_sided_p(t, df)
    return TestResult(t, (df,), p, _significance(p))


def f_test_variance(a: Sequence[float], b: Sequence[float]) -> TestResult:
    """Two-sided F-test of var(a) / var(b); the ratio is reported as given, not flipped."""
    xa, xb = _require_pair(a, b, "F-test")
    var_a = _sample_variance(xa, math.fsum(xa) / xa.size)
    var_b = _sample_variance(xb, math.fsum(xb) / xb.size)
    if var_a == 0.0 or var_b == 0.0:
        raise DegenerateVarianceError("F-test needs nonzero variance in both samples")
    dfn, dfd = float(xa.size - 1), float(xb.size - 1)
    ratio = var_a / var_b
    cdf = f_cdf(ratio, dfn, dfd)
    p = min(1.0, 2.0 * min(cdf, 1.0 - cdf))
    return TestResult(ratio, (dfn, dfd), p, _significance(p))
