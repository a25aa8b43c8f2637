"""Theta series, closed forms, Newton fits, and the (y, q) pair tables."""

import cmath
import math
import random
from fractions import Fraction

import pytest

from somoskit import thetanum as tn
from somoskit.sequences import named_view

PI = math.pi


# ---------------------------------------------------------------------------
# series basics


def test_theta4_at_q_zero():
    assert tn.theta(4, 0, 0) == 1


def test_theta4_partial_sum_value():
    # 1 - 2q + 2q^4 - 2q^9 + ... at q = 0.1
    assert abs(tn.theta(4, 0, 0.1) - 0.800199998) < 1e-9


def test_theta4_period_pi():
    for z in (0.37, 1.91, -0.6 + 0.2j):
        assert abs(tn.theta(4, z, 0.3) - tn.theta(4, z + PI, 0.3)) < 1e-13


def test_theta_parities():
    z = 0.83 - 0.21j
    q = 0.35
    assert abs(tn.theta(1, -z, q) + tn.theta(1, z, q)) < 1e-14
    for j in (2, 3, 4):
        assert abs(tn.theta(j, -z, q) - tn.theta(j, z, q)) < 1e-14


def test_theta_rejects_bad_input():
    with pytest.raises(ValueError):
        tn.theta(5, 0, 0.3)
    with pytest.raises(ValueError):
        tn.theta(4, 0, 1.2)


def test_theta_nonconvergent_near_unit_q():
    with pytest.raises(tn.NonConvergent):
        tn.theta(3, 0, 0.9999)


def test_theta_overflow_far_from_axis():
    with pytest.raises(tn.NumericOverflow):
        tn.theta(3, 40j, 0.9)


def test_series_vs_product_agreement():
    rng = random.Random(20260816)
    for _ in range(25):
        z = rng.uniform(-3, 3) + rng.uniform(-0.3, 0.3) * 1j
        q = rng.uniform(0.02, 0.7)
        series = tn.theta(4, z, q)
        product = tn.theta4_product(z, q)
        assert abs(series - product) <= 1e-10 * max(1.0, abs(series))


def test_quasiperiod_law():
    for n in (1, 2):
        assert tn.theta1_quasiperiod_residual(0.7, 0.3, n) < 1e-9
        assert tn.theta1_quasiperiod_residual(0.3 + 0.2j, 0.25, n) < 1e-9


def test_theta1_log_matches_direct():
    for z, q in ((0.7, 0.3), (1.1 + 0.4j, 0.45)):
        direct = tn.theta(1, z, q)
        assert abs(cmath.exp(tn.theta1_log(z, q)) - direct) < 1e-12 * abs(direct)


def test_theta1_log_far_strip():
    # push z several quasiperiods away; the log form must stay consistent
    # with the transformation law applied to the in-strip value.
    q = 0.3
    y = 0.7
    m = 5
    z = y + 1j * m * math.log(q)
    expected = (
        1j * PI * m
        + 2j * m * y
        - m * m * complex(math.log(q))
        + cmath.log(tn.theta(1, y, q))
    )
    got = tn.theta1_log(z, q)
    # branches may differ by multiples of 2*pi*i
    diff = got - expected
    assert abs(diff.real) < 1e-10
    assert abs(diff.imag % (2 * PI)) < 1e-10 or abs(diff.imag % (2 * PI) - 2 * PI) < 1e-10


# ---------------------------------------------------------------------------
# closed forms against the published float rows


def _exact(name, lo, hi):
    view = named_view(name)
    return {n: Fraction(view.term(n)) for n in range(lo, hi + 1)}


def test_a_theta3_reproduces_printed_rows():
    params = tn.paper_params("a-theta3")
    for n, printed in tn.printed_values("a-theta3"):
        value = tn.closed_form_eval(params, n)
        assert abs(value - printed) <= 1e-10 * abs(printed)


def test_a_theta3_large_index():
    # The printed constants only carry ~14 digits; u**(n - 3/2)**2 amplifies
    # that truncation to tens of units by n = 18, so the half-unit check needs
    # the re-polished constants.  The printed block still gets a sanity bound.
    rough = tn.closed_form_eval(tn.paper_params("a-theta3"), 18)
    assert abs(rough - 1123424582771) < 100.0
    value = tn.closed_form_eval(tn.polished_params("a-theta3"), 18)
    assert abs(value - 1123424582771) < 0.5


def test_a_theta4_matches_a_theta3():
    p3 = tn.paper_params("a-theta3")
    p4 = tn.paper_params("a-theta4")
    for n in range(-3, 12):
        v3 = tn.closed_form_eval(p3, n)
        v4 = tn.closed_form_eval(p4, n)
        assert abs(v3 - v4) <= 1e-8 * max(1.0, abs(v3))


def test_theta4_scale_constants_match_printed():
    b, u, y, q = tn.paper_params("a-theta4").constants
    derived_b, derived_u = tn.theta4_scale_constants(y, q)
    assert abs(derived_b - b) < 1e-10
    assert abs(derived_u - u) < 1e-10


def test_a1_theta1_reproduces_printed_rows():
    params = tn.paper_params("a1-theta1")
    for n, printed in tn.printed_values("a1-theta1"):
        value = tn.closed_form_eval(params, n)
        assert abs(value - printed) <= 1e-10 * max(1.0, abs(printed))


def test_a1_theta1_against_exact_sequence():
    params = tn.paper_params("a1-theta1")
    exact = _exact("a051138", -6, 10)
    for n, want in exact.items():
        value = tn.closed_form_eval(params, n)
        assert abs(value - float(want)) <= 1e-8 * max(1.0, abs(float(want)))


def test_b5_against_exact_sequence():
    params = tn.paper_params("b5")
    exact = _exact("somos5", -1, 16)
    for n, want in exact.items():
        value = tn.closed_form_eval(params, n)
        assert abs(value - float(want)) <= 1e-9 * max(1.0, abs(float(want)))


def test_b_theta1_zero_row_is_exact():
    params = tn.paper_params("b-theta1")
    assert tn.closed_form_eval(params, 0) == 0.0


def test_b_theta1_within_printed_residuals():
    exact = _exact("eds5", -1, 22)
    polished = tn.fit_params("b-theta1", tol=1e-14).params
    for n, printed in tn.printed_values("b-theta1"):
        want = float(exact[n])
        limit = max(5 * abs(printed - want), 1e-12 * abs(want))
        value = tn.closed_form_eval(polished, n)
        assert abs(value - want) <= limit, (n, value, want, limit)


def test_b_theta1_paper_constants_midrange():
    params = tn.paper_params("b-theta1")
    value = tn.closed_form_eval(params, 15)
    assert abs(value - 8888873) <= 1e-5 * 8888873


# ---------------------------------------------------------------------------
# fitting


def test_fit_from_paper_constants_is_a_fixed_point():
    for form in tn.FORM_TAGS:
        result = tn.fit_params(form)
        assert result.iterations <= 1
        assert result.residual < 1e-12


def test_fit_a_theta3_from_rough_guess():
    result = tn.fit_params("a-theta3", guess=(1.0, 0.6, 0.05, 0.02))
    paper = tn.paper_params("a-theta3").constants
    for got, want in zip(result.params.constants, paper):
        assert abs(got - want) <= 1e-9
    assert result.iterations <= 100


def test_fit_b5_recovers_q():
    result = tn.fit_params("b5", guess=(1.0, 0.8, 0.11, 0.02))
    want_q = tn.paper_params("b5").constants[3]
    assert abs(result.params.constants[3] - want_q) <= 1e-9


def test_fit_a_theta4_two_parameter():
    result = tn.fit_params("a-theta4", guess=(2.0, 0.08))
    b, u, y, q = result.params.constants
    paper = tn.paper_params("a-theta4").constants
    assert abs(y - paper[2]) <= 1e-9
    assert abs(q - paper[3]) <= 1e-9
    assert abs(b - paper[0]) <= 1e-9
    assert abs(u - paper[1]) <= 1e-9


def test_fit_singular_jacobian():
    # y = 0 kills every theta_1 factor, so b, u and q have zero columns.
    with pytest.raises(tn.SingularJacobian):
        tn.fit_params("a1-theta1", guess=(1.0, 1.0, 0.0, 0.5))


def test_fit_no_convergence_budget():
    with pytest.raises(tn.NoConvergence):
        tn.fit_params("a-theta3", guess=(1.0, 0.6, 0.05, 0.02), max_iter=0)


def test_fit_result_dict_shape():
    result = tn.fit_params("b5")
    payload = result.as_dict()
    assert payload["form"] == "b5"
    assert len(payload["constants"]) == 4
    assert "residual" in payload and "iterations" in payload


# ---------------------------------------------------------------------------
# pair tables


def _float_targets(name, lo, hi):
    view = named_view(name)
    return [(n, float(Fraction(view.term(n)))) for n in range(lo, hi + 1)]


def test_main_pairs_reproduce_s_at_one():
    groups = tn.pair_groups()
    targets = _float_targets("a006769", 0, 10)
    for group in ("primary", "secondary"):
        for report in tn.pair_table_check(groups[group], targets):
            assert report.ok, (group, report.y, report.q, report.max_rel_err)


def test_pair_zero_row_is_exact():
    groups = tn.pair_groups()
    y, q = groups["primary"][0]
    assert tn.pair_term(y, q, 0) == 0


def test_spurious_pairs_reproduce_gauge_of_r():
    groups = tn.pair_groups()
    targets = _float_targets("r144", 0, 10)
    for report in tn.spurious_pair_check(groups["spurious"], targets):
        assert report.ok, (report.y, report.q, report.max_rel_err)


def test_spurious_pairs_do_not_match_r_directly():
    groups = tn.pair_groups()
    targets = _float_targets("r144", 0, 6)
    direct = tn.pair_table_check(groups["spurious"], targets)
    assert all(not report.ok for report in direct)
