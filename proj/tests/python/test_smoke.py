"""Smoke tests for the python bindings."""

import math

import pytest

import ripbound as rb


def test_version():
    assert rb.__version__


def test_chi2_pipeline():
    spec = rb.quantile(0.01)
    assert spec.t == pytest.approx(6.6348966010212151, rel=1e-12)
    assert rb.survival(spec.t) == pytest.approx(0.01, rel=1e-10)
    m = rb.conditional_tail_expectation(spec.t)
    assert m.T_squared == pytest.approx(8.4491659621041461, rel=1e-10)
    assert rb.big_T(1.0).T == 1.0
    assert rb.asymptotic_t(100.0, 1.0) == pytest.approx(2 * math.log(100))


def test_chi2_errors():
    with pytest.raises(ValueError):
        rb.survival(-1.0)
    with pytest.raises(ValueError):
        rb.quantile(0.0)
    with pytest.raises(OverflowError):
        rb.conditional_tail_expectation(1500.0)


def test_order_stats():
    assert rb.top_k_rms([4.0, 1.0, 0.0, 0.0], 2).t_k == pytest.approx(
        math.sqrt(2.5), rel=1e-14
    )
    cb = rb.deviation_bound(10000, 100, 0.326)
    assert cb.prob_floor == pytest.approx(0.99015363393657825, rel=1e-10)
    assert rb.deviation_bound(10000, 100, 0.1).prob_floor == 0.0
    assert rb.relative_entropy(0.1, 0.2) == pytest.approx(0.036690014034750578)
    assert rb.dkw_bound(1000, 0.05) == pytest.approx(0.013475893998170934)
    rep = rb.mc_verify_concentration(500, 10, trials=20, seed=3)
    assert len(rep.t_k) == 20
    assert rep.cells[0].coverage >= rep.cells[0].prob_floor


def test_bounds_pipeline():
    dims = rb.ProblemDims(200, 1000, 10)
    assert dims.p == pytest.approx(0.05)
    lower = rb.lower_bound_delta_plus(dims, 0.05)
    assert lower.value == pytest.approx(0.31746608243412143, rel=1e-12)
    upper = rb.upper_bound_delta(dims, 0.05)
    assert upper.value == pytest.approx(0.73541843227690844, rel=1e-12)
    assert lower.value <= upper.value
    # invalid level for s = 1 surfaces as a flagged report, not an exception
    flagged = rb.lower_bound_delta_plus(rb.ProblemDims(200, 1000, 1), 0.05)
    assert not flagged.valid
    assert flagged.value is None
    with pytest.raises(ValueError):
        rb.ProblemDims(0, 10, 2)


def test_scans_and_algorithms():
    req = rb.algorithm_requirement("l1")
    assert req.order_multiplier == 1
    assert req.threshold(10) == pytest.approx(1 / 3)
    with pytest.raises(ValueError):
        rb.algorithm_requirement("nope")
    n_suff = rb.min_measurements_sufficient(1000, 10, 1 / 3, 0.99)
    n_nec = rb.min_measurements_necessary(1000, 10, 1 / 3, 0.99)
    assert n_nec <= n_suff


def test_curve_rows():
    rows = rb.curve(1000, 0.01, [5.0, 10.0], confidence=0.99)
    assert [r.n for r in rows] == [200, 100]
    for row in rows:
        if row.dims_valid and row.upper_new.valid and row.lower is not None:
            assert row.lower <= row.upper_new.value


def test_matrix_lab():
    a = rb.sample_matrix(6, 9, "gaussian", seed=4)
    b = rb.sample_matrix(6, 9, "gaussian", seed=4)
    assert a.entries == b.entries
    assert a[0, 0] == a.entries[0]

    cert = rb.adversarial_pair(a, 3)
    assert cert.v_plus[0] == pytest.approx(1 / math.sqrt(2))
    er = rb.exact_rip(a, 2)
    assert er.supports_checked == 36
    assert cert.delta_plus_emp <= rb.exact_rip(a, 3).delta_plus

    with pytest.raises(rb.CapExceededError):
        rb.exact_rip(rb.sample_matrix(4, 40, "gaussian", seed=1), 10, cap=100)

    summary = rb.run_experiment(rb.ProblemDims(30, 80, 4), "gaussian", 5, seed=2)
    assert len(summary.delta_plus_emp) == 5
    assert 0.0 <= summary.frac_plus_ge_bound <= 1.0
