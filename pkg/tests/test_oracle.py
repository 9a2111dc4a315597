import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import max_diff
from wignerabcd import Mat2, MatrixClass, classify, identity, matrix_power
from wignerabcd.core import det_residual
from wignerabcd.oracle import (
    DEFAULT_WEIGHTS,
    PARAM_RANGES,
    brute_power,
    brute_power_batch,
    compare,
    merge_reports,
    random_decomposition,
    random_population,
    random_sp2,
    run_suite,
)

WORKED = Mat2(1.0, 1.0, -1.0, 0.0)


def test_brute_examples():
    assert brute_power(identity(), 1000) == identity()
    assert brute_power(Mat2(1.0, 1.0, 0.0, 1.0), 4) == Mat2(1.0, 4.0, 0.0, 1.0)
    assert brute_power(WORKED, 6) == identity()
    assert brute_power(WORKED, 0) == identity()


def test_brute_rejects_bad_n():
    with pytest.raises(ValueError):
        brute_power(WORKED, -1)
    with pytest.raises(ValueError):
        brute_power(WORKED, 10**6 + 1)


def test_brute_overflow():
    m = Mat2(math.cosh(3.0), math.sinh(3.0), math.sinh(3.0), math.cosh(3.0))
    with pytest.raises(OverflowError):
        brute_power(m, 300)


def test_pairwise_branch_matches_fold():
    m = Mat2(math.cos(0.01), -math.sin(0.01), math.sin(0.01), math.cos(0.01))
    for n in (1001, 4096, 12345):
        got = brute_power(m, n)
        want = (math.cos(0.01 * n), -math.sin(0.01 * n), math.sin(0.01 * n), math.cos(0.01 * n))
        assert max_diff(got, want) <= 1e-11


@pytest.mark.parametrize("n", [0, 1, 2, 17, 1000, 2048])
def test_batch_matches_scalar(n):
    mats = random_population(3, 20, eta_max=2.0)
    arr = np.array([[[m.a, m.b], [m.c, m.d]] for m in mats])
    out = brute_power_batch(arr, n)
    for m, o in zip(mats, out):
        if not np.all(np.isfinite(o)):
            assert classify(m) is MatrixClass.HYPERBOLIC and n > 1000
            continue
        ref = identity()
        for _ in range(n):
            ref = ref @ m
        # the two folds round differently; the gap grows with n for shears
        tol = 1e-14 * max(n, 100) * max(1.0, ref.max_abs())
        assert max_diff(o.ravel(), ref) <= tol
        if n <= 1000:
            assert max_diff(o.ravel(), brute_power(m, n)) <= tol


def test_random_sp2_determinism_and_det():
    assert random_sp2(42, 3.0) == random_sp2(42, 3.0)
    assert random_sp2(42, 3.0) != random_sp2(43, 3.0)
    assert random_sp2(42, 3.0, index=1) != random_sp2(42, 3.0, index=0)
    for seed in range(200):
        m = random_sp2(seed, 5.0)
        assert det_residual(*m, normwise=True) <= 1e-12


def test_random_sp2_rejects_bad_eta():
    with pytest.raises(ValueError):
        random_sp2(0, 0.0)
    with pytest.raises(ValueError):
        random_sp2(0, 1.0, bias={"elliptic": 0.0})


def test_draw_distributions():
    for i in range(500):
        d = random_decomposition(9, eta_max=2.0, index=i)
        assert -math.pi / 2 < d.delta <= math.pi / 2
        assert -2.0 <= d.eta <= 2.0
        lo, hi = PARAM_RANGES[d.wigner.name]
        assert lo <= abs(d.wigner.param) <= hi


def test_all_elliptic_bias():
    for i in range(1000):
        m = random_sp2(5, 3.0, bias={"elliptic": 1.0}, index=i)
        assert classify(m) is MatrixClass.ELLIPTIC


@pytest.mark.parametrize(
    "weights",
    [None, {"elliptic": 3, "hyperbolic": 1}, {"parabolic_upper": 1, "parabolic_lower": 1, "hyperbolic": 2}],
)
def test_class_frequencies(weights):
    n = 10_000
    w = dict(DEFAULT_WEIGHTS if weights is None else weights)
    total = sum(w.values())
    counts = {k: 0 for k in w}
    for i in range(n):
        counts[random_decomposition(11, bias=weights, index=i).wigner.name] += 1
    for k, v in w.items():
        p = v / total
        sigma = math.sqrt(n * p * (1 - p))
        assert abs(counts[k] - n * p) <= 3 * sigma, (k, counts[k], n * p)


def test_compare_examples():
    r = compare(WORKED, WORKED)
    assert r.max_abs_err == 0 and r.max_rel_err == 0 and r.passed
    r = compare(identity(), Mat2(1.0, 1e-12, 0.0, 1.0))
    assert r.max_abs_err == pytest.approx(1e-12, rel=1e-15)
    r = compare(identity(), Mat2(1.0, 1e-3, 0.0, 1.0), rel_tol=1e-8)
    assert not r.passed


def test_report_serializes():
    r = compare(WORKED, WORKED, case={"n": 2})
    d = r.to_dict()
    assert d["worst_case"] == {"n": 2}
    assert d["n_trials"] == 1 and d["passed"] is True


def test_merge_reports():
    a = compare(identity(), Mat2(1.0, 1e-12, 0.0, 1.0), case={"i": 0})
    b = compare(identity(), Mat2(1.0, 1e-3, 0.0, 1.0), case={"i": 1})
    m = merge_reports([a, b])
    assert m.n_trials == 2 and not m.passed
    assert m.worst_case == {"i": 1}
    assert m.max_abs_err == pytest.approx(1e-3)


def test_run_suite_passes_and_is_deterministic():
    r1 = run_suite(100, seed=7)
    assert r1.passed and r1.max_rel_err < 1e-8
    assert r1.n_trials == 300
    assert run_suite(1, seed=7) == run_suite(1, seed=7)


def test_run_suite_reports_overflow():
    r = run_suite(20, seed=7, eta_max=40.0)
    assert not r.passed
    assert any("overflow" in n or "error" in n for n in r.notes)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([3, 17, 256]))
def test_power_oracle_property(seed, n):
    m = random_sp2(seed, 5.0)
    brute = brute_power(m, n)
    atol = 1e-6 if brute.max_abs() > 1e6 else 1e-9
    assert compare(matrix_power(m, n), brute, 1e-8, atol).passed
