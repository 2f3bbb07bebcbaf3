import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hkdlab.errors import DomainError, PreconditionError
from hkdlab.rates import exponential, polynomial
from hkdlab.systems import default_grid, example_gallery, split_system
from hkdlab.verify import (check_corollaries, check_primed_forms, check_theorem1,
                           check_theorem2, classify_fixed_time, classify_uniformity,
                           dichotomy_envelope, growth_envelope, running_max)

from conftest import E1, LP, r

R10 = 27.97344519650268
R20 = 65.58656931216452
G_SMALL = default_grid(4.0, 41)


def uniform_exp():
    """U = e^{-(t-s)} P + e^{t-s} Q: exponentially dichotomic with constant gain."""
    return split_system(lambda t, s: math.exp(-(t - s)), lambda t, s: math.exp(t - s),
                        np.diag([1.0, 0.0]), "uniform-exp")


@pytest.fixture(scope="module")
def env10(constant_p, grid, kernel_inverses):
    return dichotomy_envelope(constant_p, E1, E1, grid,
                              kernel_inverse=kernel_inverses["dicho-2d-constantP"])


@pytest.fixture(scope="module")
def env20(constant_p):
    return dichotomy_envelope(constant_p, E1, E1, default_grid(20.0, 201))


def test_running_max():
    np.testing.assert_array_equal(running_max([1, 3, 2, 5, 4]), [1, 3, 3, 5, 5])


def test_constant_p_envelope_values(env10, grid):
    assert env10.names == ("N1_req", "N2_req")
    np.testing.assert_allclose(env10.req_p, 1.0, atol=1e-15)
    assert env10.req_q[-1] == pytest.approx(R10, rel=1e-13)
    assert env10.argmax_q[-1] == 0.0
    # N2_req(t) = r(t) exactly: the worst past time is s = 0
    np.testing.assert_allclose(env10.req_q, r(grid), rtol=1e-13)
    np.testing.assert_allclose(env10.req_q_primed, env10.req_q, rtol=1e-13)
    assert env10.max_envelope == pytest.approx(R10, rel=1e-13)
    assert np.all(np.diff(env10.hull) >= 0)


def test_envelope_rows_and_dict(env10):
    rows = env10.rows()
    assert list(rows[0]) == ["t", "N1_req", "N2_req", "hull"]
    assert rows[0]["t"] == 0.0 and rows[-1]["t"] == 10.0
    d = env10.as_dict()
    assert d["kind"] == "dichotomy" and "N2_req_primed" in d


def test_identity_system_envelope():
    sys = split_system(lambda t, s: 1.0, lambda t, s: 1.0, np.eye(2), "identity")
    env = dichotomy_envelope(sys, E1, E1, default_grid(2.0, 21))
    np.testing.assert_allclose(env.req_p, np.exp(2.0 - env.grid), rtol=1e-13)
    assert env.clamped  # the Q-part is empty, so every t is unconstrained
    assert np.all(env.req_q == 1.0)


def test_literal_system_is_refused(gallery):
    with pytest.raises(PreconditionError) as info:
        dichotomy_envelope(gallery["dicho-2d-literal"], E1, E1, G_SMALL)
    assert info.value.where is not None


def test_nonuniform_verdict(env10, env20):
    assert classify_uniformity(env10, env20) == "nonuniform"
    assert env20.max_envelope == pytest.approx(R20, rel=1e-13)
    assert env10.uniformity == env20.uniformity == "nonuniform"


def test_uniform_verdict():
    sys = uniform_exp()
    a = dichotomy_envelope(sys, E1, E1, default_grid(5.0, 51))
    b = dichotomy_envelope(sys, E1, E1, default_grid(10.0, 101))
    assert classify_uniformity(a, b) == "uniform"
    assert a.max_envelope == pytest.approx(1.0)


def test_inconclusive_with_huge_delta(env10, env20):
    assert classify_uniformity(env10, env20, delta=10.0) == "inconclusive"


def test_classify_rejects_mismatched_reports(env10, constant_p):
    other = growth_envelope(constant_p, E1, E1, default_grid(20.0, 201))
    with pytest.raises(DomainError):
        classify_uniformity(env10, other)
    with pytest.raises(DomainError):
        classify_uniformity(env10, env10)


def test_growth_not_dicho_envelopes(gallery, grid):
    sys = gallery["growth-not-dicho"]
    grow = growth_envelope(sys, LP, LP, grid)
    assert grow.names == ("M1_req", "M2_req")
    assert np.all(grow.req_p <= r(grid) * (1 + 1e-6))
    assert np.all(grow.req_q <= r(grid) * (1 + 1e-6))
    assert grow.req_q[-1] == pytest.approx(R10, rel=1e-12)
    d10 = dichotomy_envelope(sys, LP, LP, grid)
    d20 = dichotomy_envelope(sys, LP, LP, default_grid(20.0, 201))
    assert d20.req_p[0] == pytest.approx(R20, rel=1e-12)
    assert classify_fixed_time(d10, d20, 0.0) == "growing"
    assert classify_fixed_time(grow, growth_envelope(sys, LP, LP, default_grid(20.0, 201))) == "bounded"
    assert not d10.bounded() and grow.bounded()


def test_primed_forms_agree(constant_p, gallery):
    for sys in (constant_p, gallery["dicho-2d-repaired"]):
        res = check_primed_forms(sys, None, E1, E1, G_SMALL)
        assert set(res) == {"dichotomy", "growth"}
        assert all(c.passed for c in res.values())


@pytest.mark.parametrize("name", ["dicho-2d-constantP", "dicho-2d-repaired", "scalar-ulnu"])
def test_theorem1_passes_without_slack(gallery, kernel_inverses, grid, name):
    res = check_theorem1(gallery[name], kernel_inverses[name], E1, E1, grid)
    assert res.verdict == "pass", res.reason
    assert res.hd_slack <= 1e-9 and res.kd_slack <= 1e-9
    assert res.derived_ratio <= 1e-6
    assert np.all(np.diff(res.fitted_n) >= 0)


def test_theorem1_preconditions(gallery, grid):
    assert check_theorem1(gallery["dicho-2d-literal"], None, E1, E1, G_SMALL).verdict == \
        "precondition-failed"
    res = check_theorem1(gallery["growth-not-dicho"], None, LP, LP, grid)
    assert res.verdict == "precondition-failed"
    assert not res.p_part_bounded


def test_theorem2_constant_p(constant_p, kernel_inverses, grid):
    res = check_theorem2(constant_p, kernel_inverses["dicho-2d-constantP"], E1, E1, grid)
    assert res.verdict == "pass", res.reason
    assert res.product_slack <= 1e-6 and res.sufficiency_ok
    assert np.all(res.fitted_n <= r(grid) * (1 + 1e-6))


def test_theorem2_fails_without_dichotomy(gallery):
    res = check_theorem2(gallery["growth-not-dicho"], None, LP, LP, default_grid(10.0, 51))
    assert res.verdict == "fail"
    assert "grows with the horizon" in res.reason


def test_theorem2_needs_growth():
    # the P-part grows like e^{2(t-s)} against h = e^t: no (h,k)-growth either
    sys = split_system(lambda t, s: math.exp(2 * (t - s)), lambda t, s: 1.0,
                       np.diag([1.0, 0.0]), "runaway")
    assert check_theorem2(sys, None, E1, E1, G_SMALL).verdict == "precondition-failed"


def test_corollaries_exponential():
    sys = uniform_exp()
    ok = check_corollaries(sys, None, 1.0, 1.0, G_SMALL)
    assert ok.passed and set(ok.inequalities) == {"ed1", "ed2", "ed1'", "ed2'"}
    bad = check_corollaries(sys, None, 2.0, 1.0, G_SMALL)
    assert not bad.inequalities["ed1"] and not bad.inequalities["ed1'"]
    assert bad.inequalities["ed2"]


def test_corollaries_polynomial():
    sys = example_gallery("dicho-2d-constantP", polynomial(1), polynomial(1))
    res = check_corollaries(sys, None, 1.0, 1.0, G_SMALL, flavor="polynomial")
    assert set(res.inequalities) == {"pd1", "pd2", "pd1'", "pd2'"}
    assert res.theorem1.verdict == "pass"


@pytest.mark.parametrize("alpha, beta, flavor", [(0, 1, "exponential"), (1, -1, "exponential"),
                                                 (1, 1, "logarithmic")])
def test_corollary_argument_errors(alpha, beta, flavor):
    with pytest.raises(DomainError):
        check_corollaries(uniform_exp(), None, alpha, beta, G_SMALL, flavor=flavor)


@given(st.floats(0.1, 2.0), st.floats(0.1, 2.0), st.sampled_from(["exp", "poly"]))
@settings(max_examples=15, deadline=None)
def test_growth_gains_never_exceed_dichotomy_gains(alpha, beta, family):
    make = exponential if family == "exp" else polynomial
    h, k = make(alpha), make(beta)
    sys = example_gallery("dicho-2d-constantP", h, k)
    g = default_grid(3.0, 16)
    grow, dich = growth_envelope(sys, h, k, g), dichotomy_envelope(sys, h, k, g)
    assert np.all(grow.req_p <= dich.req_p * (1 + 1e-12))
    assert np.all(grow.req_q <= dich.req_q * (1 + 1e-12))


def test_thread_count_does_not_change_results(constant_p, monkeypatch):
    outs = []
    for n in ("1", "4"):
        monkeypatch.setenv("HKDLAB_THREADS", n)
        res = check_theorem1(constant_p, None, E1, E1, G_SMALL)
        outs.append((res.hd_slack, res.kd_slack, res.fitted_n.tobytes(), res.where))
    assert outs[0] == outs[1]
