"""Statistical primitives: Spearman correlation, Student's t-tests, 2-D PCA.

Everything is self-contained: two-tailed t p-values come from the
regularized incomplete beta function (Lentz continued fraction), ranks use
average ties, and the PCA axes come from power iteration with deflation.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateInputError

logger = logging.getLogger(__name__)

STAR_LEVELS = ((0.001, "***"), (0.01, "**"), (0.05, "*"))

_CF_MAX_ITERATIONS = 300
_CF_EPSILON = 1e-15
_CF_TINY = 1e-300
_PCA_TOLERANCE = 1e-10
_PCA_MAX_ITERATIONS = 100_000
_RANK_TOLERANCE = 1e-12


def star_level(p_value: float) -> str:
    """Significance stars: *** below 0.001, ** below 0.01, * below 0.05."""
    for threshold, stars in STAR_LEVELS:
        if p_value < threshold:
            return stars
    return ""


@dataclass(frozen=True, slots=True)
class TestResult:
    """Statistic, degrees of freedom, two-tailed p-value, and star label."""

    statistic: float
    degrees_of_freedom: float
    p_value: float
    stars: str


def _make_result(statistic: float, degrees_of_freedom: float, p_value: float) -> TestResult:
    return TestResult(statistic, degrees_of_freedom, p_value, star_level(p_value))


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    """Lentz evaluation of the continued fraction for the incomplete beta."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITERATIONS + 1):
        m2 = 2 * m
        numerator = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + numerator * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + numerator / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        numerator = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + numerator * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + numerator / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPSILON:
            return h
    raise DegenerateInputError(
        f"incomplete beta continued fraction failed to converge (a={a}, b={b}, x={x})"
    )


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if a <= 0.0 or b <= 0.0:
        raise DegenerateInputError(f"beta parameters must be positive (a={a}, b={b})")
    if not 0.0 <= x <= 1.0:
        raise DegenerateInputError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def student_t_two_tailed_p(t: float, degrees_of_freedom: float) -> float:
    """Two-tailed p-value for a t statistic."""
    if degrees_of_freedom <= 0:
        raise DegenerateInputError(
            f"degrees of freedom must be positive, got {degrees_of_freedom}"
        )
    x = degrees_of_freedom / (degrees_of_freedom + t * t)
    return regularized_incomplete_beta(degrees_of_freedom / 2.0, 0.5, x)


def average_ranks(values: Sequence[float]) -> list[float]:
    """1-based ranks with tied values sharing their average rank."""
    n = len(values)
    order = sorted(range(n), key=lambda i: values[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and values[order[j + 1]] == values[order[i]]:
            j += 1
        shared = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = shared
        i = j + 1
    return ranks


def _pearson(x: Sequence[float], y: Sequence[float]) -> float:
    xs = np.asarray(x, dtype=np.float64)
    ys = np.asarray(y, dtype=np.float64)
    xd = xs - xs.mean()
    yd = ys - ys.mean()
    sxx = float(np.dot(xd, xd))
    syy = float(np.dot(yd, yd))
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateInputError("constant input: correlation is undefined")
    return float(np.dot(xd, yd) / math.sqrt(sxx * syy))


def spearman(a: Sequence[float], b: Sequence[float]) -> TestResult:
    """Spearman rank correlation with average-rank ties.

    The p-value uses the usual t approximation with n - 2 degrees of
    freedom; |rho| = 1 yields p = 0 exactly.
    """
    if len(a) != len(b):
        raise DegenerateInputError(f"length mismatch: {len(a)} vs {len(b)}")
    if len(a) < 3:
        raise DegenerateInputError(f"need at least 3 pairs, got {len(a)}")
    rho = _pearson(average_ranks(a), average_ranks(b))
    degrees_of_freedom = len(a) - 2
    if abs(rho) >= 1.0:
        p_value = 0.0
    else:
        t = rho * math.sqrt(degrees_of_freedom / (1.0 - rho * rho))
        p_value = student_t_two_tailed_p(t, degrees_of_freedom)
    return _make_result(rho, degrees_of_freedom, p_value)


def unpaired_t(a: Sequence[float], b: Sequence[float]) -> TestResult:
    """Two-sample Student's t-test with pooled variance, two-tailed."""
    if len(a) < 2 or len(b) < 2:
        raise DegenerateInputError(
            f"need at least 2 observations per group, got {len(a)} and {len(b)}"
        )
    xs = np.asarray(a, dtype=np.float64)
    ys = np.asarray(b, dtype=np.float64)
    mean_a, mean_b = float(xs.mean()), float(ys.mean())
    ss_a = float(np.dot(xs - mean_a, xs - mean_a))
    ss_b = float(np.dot(ys - mean_b, ys - mean_b))
    degrees_of_freedom = len(a) + len(b) - 2
    pooled_variance = (ss_a + ss_b) / degrees_of_freedom
    if pooled_variance == 0.0:
        if mean_a == mean_b:
            return _make_result(0.0, degrees_of_freedom, 1.0)
        raise DegenerateInputError("zero pooled variance with unequal means")
    t = (mean_a - mean_b) / math.sqrt(pooled_variance * (1.0 / len(a) + 1.0 / len(b)))
    return _make_result(t, degrees_of_freedom, student_t_two_tailed_p(t, degrees_of_freedom))


def paired_t(pairs: Sequence[tuple[float, float]]) -> TestResult:
    """Paired Student's t-test (one-sample test on differences), two-tailed."""
    if len(pairs) < 2:
        raise DegenerateInputError(f"need at least 2 pairs, got {len(pairs)}")
    diffs = np.asarray([x - y for x, y in pairs], dtype=np.float64)
    n = len(diffs)
    mean_diff = float(diffs.mean())
    ss = float(np.dot(diffs - mean_diff, diffs - mean_diff))
    degrees_of_freedom = n - 1
    if ss == 0.0:
        if mean_diff == 0.0:
            return _make_result(0.0, degrees_of_freedom, 1.0)
        raise DegenerateInputError("zero-variance differences with nonzero mean")
    t = mean_diff / math.sqrt(ss / degrees_of_freedom / n)
    return _make_result(t, degrees_of_freedom, student_t_two_tailed_p(t, degrees_of_freedom))


@dataclass(frozen=True, slots=True)
class Projection2D:
    """2-D PCA projection with per-point class labels and axis variances."""

    points: np.ndarray
    class_labels: tuple[str, ...]
    explained_variance: tuple[float, float]
    axes: np.ndarray


def _fix_sign(axis: np.ndarray) -> np.ndarray:
    for component in axis:
        if abs(component) > _RANK_TOLERANCE:
            return axis if component > 0 else -axis
    return axis


def _power_iteration(matrix: np.ndarray, orthogonal_to: np.ndarray | None) -> tuple[np.ndarray, float]:
    dimension = matrix.shape[0]
    rng = np.random.default_rng(0)
    vector = rng.standard_normal(dimension)
    if orthogonal_to is not None:
        vector -= np.dot(vector, orthogonal_to) * orthogonal_to
    norm = np.linalg.norm(vector)
    if norm == 0.0:
        vector = np.zeros(dimension)
        vector[0] = 1.0
    else:
        vector /= norm
    for _ in range(_PCA_MAX_ITERATIONS):
        step = matrix @ vector
        if orthogonal_to is not None:
            step -= np.dot(step, orthogonal_to) * orthogonal_to
        norm = np.linalg.norm(step)
        if norm < _CF_TINY:
            return np.zeros(dimension), 0.0
        step /= norm
        if np.linalg.norm(step - vector) < _PCA_TOLERANCE:
            vector = step
            break
        vector = step
    eigenvalue = float(vector @ matrix @ vector)
    return vector, eigenvalue


def pca2(
    vectors: Sequence | np.ndarray, class_labels: Sequence[str] | None = None
) -> Projection2D:
    """Project vectors onto the top two principal axes of their covariance.

    Axes are found by power iteration with deflation (tolerance 1e-10,
    deterministic initialization); each axis is sign-fixed so its first
    nonzero component is positive. Rank-deficient input gets a zero second
    axis, and identical points project to the origin.
    """
    matrix = np.asarray(vectors, dtype=np.float64)
    if matrix.ndim != 2:
        raise DegenerateInputError(f"expected a 2-D array of vectors, got ndim={matrix.ndim}")
    n, dimension = matrix.shape
    if n < 3:
        raise DegenerateInputError(f"need at least 3 vectors, got {n}")
    if dimension < 2:
        raise DegenerateInputError(f"need dimension >= 2, got {dimension}")
    labels = tuple(class_labels) if class_labels is not None else ()
    if labels and len(labels) != n:
        raise DegenerateInputError(f"got {len(labels)} labels for {n} vectors")
    centered = matrix - matrix.mean(axis=0)
    covariance = centered.T @ centered / (n - 1)
    scale = float(np.abs(covariance).max())
    if scale == 0.0:
        logger.warning("pca2: all points identical; projecting everything to the origin")
        zeros = np.zeros((n, 2))
        return Projection2D(zeros, labels, (0.0, 0.0), np.zeros((2, dimension)))
    axis1, variance1 = _power_iteration(covariance, None)
    deflated = covariance - variance1 * np.outer(axis1, axis1)
    axis2, variance2 = _power_iteration(deflated, axis1)
    if variance2 <= _RANK_TOLERANCE * variance1:
        logger.warning("pca2: input is rank deficient; second axis set to zero")
        axis2 = np.zeros(dimension)
        variance2 = 0.0
    axis1 = _fix_sign(axis1)
    axis2 = _fix_sign(axis2)
    axes = np.vstack([axis1, axis2])
    points = centered @ axes.T
    return Projection2D(points, labels, (max(variance1, 0.0), max(variance2, 0.0)), axes)
