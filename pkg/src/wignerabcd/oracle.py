"""Brute-force verification layer.

Nothing here uses the Wigner decomposition except :func:`random_sp2`, which
builds test matrices from randomly drawn decomposition parameters.  Powers
are computed by plain repeated multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .core import (
    DEFAULT_TOLERANCES,
    Decomposition,
    Elliptic,
    Hyperbolic,
    Identity,
    Mat2,
    ParabolicLower,
    ParabolicUpper,
    Tolerances,
    matrix_power,
    reconstruct,
)

__all__ = [
    "OVERFLOW_LIMIT",
    "PAIRWISE_THRESHOLD",
    "DEFAULT_WEIGHTS",
    "PARAM_RANGES",
    "ComparisonReport",
    "brute_power",
    "brute_power_batch",
    "random_decomposition",
    "random_sp2",
    "random_population",
    "compare",
    "merge_reports",
    "run_suite",
]

OVERFLOW_LIMIT = 1e300
PAIRWISE_THRESHOLD = 1000
MAX_BRUTE_N = 10**6

DEFAULT_WEIGHTS = {
    "elliptic": 1.0,
    "hyperbolic": 1.0,
    "parabolic_upper": 1.0,
    "parabolic_lower": 1.0,
}

# Magnitude ranges |param| ~ U[lo, hi], sign chosen uniformly.  Elliptic angles
# stay away from 0 and pi and hyperbolic rapidities stay small enough that
# 1000th powers remain representable.  Shears are kept short: a rounded shear
# is not exactly parabolic, and the relative error of its n-th power grows
# like n**2 * (gamma * exp|eta|)**2 * eps for brute force and closed form alike.
PARAM_RANGES = {
    "elliptic": (0.05, math.pi - 0.05),
    "hyperbolic": (0.05, 0.5),
    "parabolic_upper": (0.01, 0.1),
    "parabolic_lower": (0.01, 0.1),
}

_WIGNER_TYPES = {
    "elliptic": Elliptic,
    "hyperbolic": Hyperbolic,
    "parabolic_upper": ParabolicUpper,
    "parabolic_lower": ParabolicLower,
}


def _check_overflow(m: Mat2) -> Mat2:
    if m.max_abs() > OVERFLOW_LIMIT:
        raise OverflowError(f"entry magnitude {m.max_abs():.3e} exceeds {OVERFLOW_LIMIT:g}")
    return m


def brute_power(m: Mat2, n: int) -> Mat2:
    """``m**n`` by repeated multiplication.

    Up to ``PAIRWISE_THRESHOLD`` factors this is a left fold.  Beyond that the
    factors are combined as a balanced binary tree (the product analogue of
    pairwise summation), which keeps rounding growth logarithmic in ``n``.
    Equal subtrees are evaluated once.
    """
    if n < 0:
        raise ValueError("brute_power needs n >= 0")
    if n > MAX_BRUTE_N:
        raise ValueError(f"brute_power is capped at n = {MAX_BRUTE_N}")
    if n <= PAIRWISE_THRESHOLD:
        out = Mat2(1.0, 0.0, 0.0, 1.0)
        for _ in range(n):
            out = _check_overflow(out @ m)
        return out
    cache = {1: m}

    def tree(k):
        if k not in cache:
            half = k // 2
            cache[k] = _check_overflow(tree(half) @ tree(k - half))
        return cache[k]

    return tree(n)


def brute_power_batch(mats: np.ndarray, n: int) -> np.ndarray:
    """Left-fold powers of a stack of matrices with shape ``(k, 2, 2)``.

    Rows whose entries overflow come back non-finite; no exception is raised.
    """
    mats = np.asarray(mats, dtype=np.float64)
    out = np.broadcast_to(np.eye(2), mats.shape).copy()
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(n):
            out = out @ mats
    return out


def random_decomposition(
    seed: int,
    eta_max: float = 5.0,
    bias: Optional[Mapping[str, float]] = None,
    index: int = 0,
    negate_prob: float = 0.25,
) -> Decomposition:
    """Draw decomposition parameters.

    ``delta ~ U(-pi/2, pi/2)``, ``eta ~ U[-eta_max, eta_max]``, the Wigner
    class from the normalized ``bias`` weights, ``|param|`` uniform on
    :data:`PARAM_RANGES` with a random sign, and an overall sign flip with
    probability ``negate_prob``.  The draw depends only on ``(seed, index)``.
    """
    if not eta_max > 0:
        raise ValueError("eta_max must be positive")
    weights = dict(DEFAULT_WEIGHTS if bias is None else bias)
    names = sorted(weights)
    p = np.array([weights[k] for k in names], dtype=float)
    if (p < 0).any() or p.sum() <= 0:
        raise ValueError("class weights must be nonnegative with a positive sum")
    rng = np.random.default_rng([seed, index])
    delta = rng.uniform(-math.pi / 2, math.pi / 2)
    eta = rng.uniform(-eta_max, eta_max)
    name = names[rng.choice(len(names), p=p / p.sum())]
    magnitude = rng.uniform(*PARAM_RANGES.get(name, (0.0, 0.0)))
    param = magnitude if rng.random() < 0.5 else -magnitude
    negated = bool(rng.random() < negate_prob)
    w = Identity() if name == "identity" else _WIGNER_TYPES[name](param)
    return Decomposition(float(delta), float(eta), w, negated)


def random_sp2(
    seed: int,
    eta_max: float = 5.0,
    bias: Optional[Mapping[str, float]] = None,
    index: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Mat2:
    """Random unit-determinant matrix; see :func:`random_decomposition`."""
    return reconstruct(random_decomposition(seed, eta_max, bias, index), tol)


def random_population(seed: int, count: int, eta_max: float = 5.0, bias=None) -> list[Mat2]:
    return [random_sp2(seed, eta_max, bias, index=i) for i in range(count)]


@dataclass(frozen=True)
class ComparisonReport:
    max_abs_err: float
    max_rel_err: float
    n_trials: int
    passed: bool
    worst_case: Optional[dict] = None
    notes: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "max_abs_err": self.max_abs_err,
            "max_rel_err": self.max_rel_err,
            "n_trials": self.n_trials,
            "passed": self.passed,
            "worst_case": self.worst_case,
            "notes": list(self.notes),
        }


def _entries(m) -> np.ndarray:
    if isinstance(m, Mat2):
        return np.array(tuple(m), dtype=float)
    return np.asarray(m, dtype=float).reshape(-1)


def compare(
    closed,
    brute,
    rel_tol: float = 1e-8,
    abs_tol: float = 1e-9,
    case: Optional[dict] = None,
) -> ComparisonReport:
    """Elementwise comparison of a closed-form result against the oracle.

    ``max_rel_err`` is normwise: the largest entry difference divided by the
    largest oracle entry.  The comparison passes when every difference is at
    most ``abs_tol + rel_tol * max|brute|``.
    """
    x, y = _entries(closed), _entries(brute)
    diff = float(np.max(np.abs(x - y)))
    scale = float(np.max(np.abs(y)))
    rel = diff / scale if scale > 0 else diff
    passed = bool(diff <= abs_tol + rel_tol * scale)
    return ComparisonReport(diff, rel, 1, passed, case)


def merge_reports(reports: Iterable[ComparisonReport]) -> ComparisonReport:
    reports = list(reports)
    if not reports:
        return ComparisonReport(0.0, 0.0, 0, True)
    worst = max(reports, key=lambda r: (not r.passed, r.max_rel_err))
    notes = tuple(n for r in reports for n in r.notes)
    return ComparisonReport(
        max(r.max_abs_err for r in reports),
        max(r.max_rel_err for r in reports),
        sum(r.n_trials for r in reports),
        all(r.passed for r in reports),
        worst.worst_case,
        notes,
    )


def run_suite(
    trials: int,
    seed: int,
    eta_max: float = 5.0,
    n_list: Sequence[int] = (3, 17, 256),
    rel_tol: float = 1e-8,
    abs_tol: float = 1e-9,
    big_abs_tol: float = 1e-6,
    big_threshold: float = 1e6,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> ComparisonReport:
    """Closed-form powers against brute force over a random population.

    ``abs_tol`` is relaxed to ``big_abs_tol`` for results whose entries exceed
    ``big_threshold`` in magnitude.  Overflow on either side counts as a
    failure and is recorded in ``notes``.
    """
    if trials <= 0:
        raise ValueError("trials must be positive")
    reports = []
    for i in range(trials):
        m = random_sp2(seed, eta_max, index=i, tol=tol)
        for n in n_list:
            case = {"index": i, "n": int(n), "matrix": m.to_dict()}
            try:
                brute = brute_power(m, n)
                closed = matrix_power(m, n, tol)
            except (OverflowError, ValueError) as exc:
                kind = "overflow" if isinstance(exc, OverflowError) else "error"
                note = f"{kind} at index {i}, n={n}: {exc}"
                reports.append(ComparisonReport(math.inf, math.inf, 1, False, case, (note,)))
                continue
            atol = big_abs_tol if brute.max_abs() > big_threshold else abs_tol
            r = compare(closed, brute, rel_tol, atol)
            reports.append(
                ComparisonReport(r.max_abs_err, r.max_rel_err, 1, r.passed, case)
            )
    return merge_reports(reports)
