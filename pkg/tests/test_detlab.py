"""Shifted-product determinants: exact suites, invariants, numeric modes."""

import random
from fractions import Fraction

import pytest

from somoskit.arith import NumericOverflow, PrimeField
from somoskit.detlab import (
    DetSpec,
    d_det,
    d_matrix,
    det_suite_names,
    dodgson_check,
    fourvars_check,
    fourvars_residual,
    monomial_subscripts,
    run_det_suite,
    sin_det_check,
    subscript_sum_check,
    theta_det_check,
    theta_mode_check,
)
from somoskit.sequences import GapAtIndex, named_view

H = Fraction(1, 2)
A4 = named_view("somos4")
B5 = named_view("somos5")


# -- spec validation -------------------------------------------------------------


def test_spec_rejects_mixed_parity():
    with pytest.raises(ValueError):
        DetSpec((0, 1, 2), (H, 1, 2), A4)


def test_spec_rejects_length_mismatch():
    with pytest.raises(ValueError):
        DetSpec((0, 1), (0, 1, 2), A4)


def test_spec_rejects_deep_denominator():
    with pytest.raises(ValueError):
        DetSpec((Fraction(1, 3),), (Fraction(1, 3),), A4)


def test_spec_rejects_bad_theta_pair():
    with pytest.raises(ValueError):
        DetSpec((0,), (0,), A4, theta=(1, 5))


def test_spec_accepts_half_odd_everywhere():
    spec = DetSpec((H, 3 * H), (-H, 5 * H), A4)
    assert spec.size == 2


# -- matrices and exact determinants ---------------------------------------------


def test_matrix_constant_row_order4():
    spec = DetSpec((8 - 2, 0, 1), (0, 1, 2), A4)
    assert d_matrix(spec)[1] == [1, 2, 3]


def test_matrix_bottom_rows_order5():
    spec = DetSpec((8 - 5 * H, H, 3 * H), (H, 3 * H, 5 * H), B5)
    m = d_matrix(spec)
    assert m[1] == [1, 2, 3]
    assert m[2] == [1, 1, 2]


def test_matrix_single_entry():
    spec = DetSpec((5,), (2,), A4)
    assert d_matrix(spec) == [[A4.term(3) * A4.term(7)]]


def test_defining_det_expands_to_recurrence():
    # Cofactor weights against the constant rows are (1, 1, -1), so the
    # determinant is a_{n-2}^2 + a_{n-3} a_{n-1} - a_{n-4} a_n.
    for n in (6, 8, 11):
        spec = DetSpec((n - 2, 0, 1), (0, 1, 2), A4)
        det = d_det(spec)
        a = A4.term
        assert det == a(n - 2) ** 2 + a(n - 3) * a(n - 1) - a(n - 4) * a(n)
        assert det == 0


def test_witness_values_exact():
    c6 = named_view("somos6")
    d7 = named_view("somos7")
    assert d_det(DetSpec((0, 2, 4, 6), (0, 1, 3, 4), c6)) == 80
    assert d_det(DetSpec((-H, H, 3 * H, 13 * H), (H, 3 * H, 7 * H, 5 * H), c6)) == 80
    assert d_det(DetSpec((-3 * H, H, 7 * H, 9 * H), (-3 * H, H, 5 * H, 9 * H), d7)) == 160


def test_methods_agree_on_random_specs():
    rng = random.Random(4)
    for size in (2, 3, 4, 5):
        xs = tuple(rng.randint(-6, 6) for _ in range(size))
        ys = tuple(rng.randint(-6, 6) for _ in range(size))
        spec = DetSpec(xs, ys, A4)
        assert d_det(spec, "laplace") == d_det(spec, "fraction-free")


def test_fraction_free_pivots_through_zero_entry():
    # The antisymmetric sequence puts s_0 = 0 in the corner, forcing a
    # row swap inside the elimination.
    view = named_view("a006769")
    spec = DetSpec((0, 1, 2), (0, 1, 2), view)
    assert d_matrix(spec)[0][0] == 0
    assert d_det(spec, "fraction-free") == d_det(spec, "laplace")


def test_fraction_free_detects_repeated_rows():
    spec = DetSpec((3, 3, 5), (0, 1, 2), A4)
    assert d_det(spec, "fraction-free") == 0


def test_determinant_over_prime_field():
    view = named_view("somos4", domain=PrimeField(43))
    spec = DetSpec((7, 0, 1), (0, 1, 2), view)
    assert d_det(spec) == 0


def test_gap_propagates_from_view():
    view = named_view("s6poly")
    with pytest.raises(GapAtIndex):
        d_matrix(DetSpec((-3,), (3,), view))


def test_unknown_method_rejected():
    with pytest.raises(ValueError):
        d_det(DetSpec((0,), (0,), A4), "cramer")


# -- invariants ------------------------------------------------------------------


def test_subscript_sums_integer_offsets():
    spec = DetSpec((2, 5, -1), (0, 1, 3), A4)
    monos = monomial_subscripts(spec)
    assert len(monos) == 6
    assert sum(sign for sign, _ in monos) == 0
    assert subscript_sum_check(spec)


def test_subscript_sums_half_integer_offsets():
    spec = DetSpec((H, 3 * H, 7 * H), (-H, H, 5 * H), B5)
    assert all(sum(subs) == 2 * (H + 3 * H + 7 * H)
               for _, subs in monomial_subscripts(spec))
    assert subscript_sum_check(spec)


def test_interchange_vanishes_both_ways():
    spec = DetSpec((2 + H, -1 + H, 3 + H), (1 - H, 4 - H, -2 - H), A4)
    assert d_det(spec) == 0
    assert d_det(spec.interchanged()) == 0


def test_dodgson_consistency():
    rng = random.Random(9)
    seen_nonzero_central = False
    for _ in range(12):
        xs = tuple(rng.randint(-5, 5) for _ in range(4))
        ys = tuple(rng.randint(-5, 5) for _ in range(4))
        result = dodgson_check(DetSpec(xs, ys, A4))
        assert result.consistent
        seen_nonzero_central = seen_nonzero_central or result.central_nonzero
    assert seen_nonzero_central


def test_dodgson_needs_4x4():
    with pytest.raises(ValueError):
        dodgson_check(DetSpec((0, 1, 2), (0, 1, 2), A4))


# -- suites ----------------------------------------------------------------------


def test_suite_names_cover_the_catalog():
    names = det_suite_names()
    for expected in ("conjecture4", "conjecture4.5a", "conjecture4.5b",
                     "corollary4", "somos6-witness", "somos7-witness",
                     "somos6-fivepoint", "somos7-fivepoint"):
        assert expected in names


def test_unknown_suite_rejected():
    with pytest.raises(KeyError):
        run_det_suite("conjecture5")


@pytest.mark.parametrize("name", det_suite_names())
def test_suite_holds_on_reduced_grid(name):
    grid = {}
    if name == "conjecture4":
        grid = {"small": 1, "draws": 200}
    elif name.startswith("conjecture4.5"):
        grid = {"small": 1, "draws": 150}
    elif name == "corollary4":
        grid = {"draws": 150}
    elif name.endswith("fivepoint"):
        grid = {"hi": 4}
    report = run_det_suite(name, grid)
    assert report.checked > 0
    assert report.holds, report.failures[:3]


def test_witness_suite_records_values():
    report = run_det_suite("somos6-witness")
    assert report.values == {
        "integer-offsets": "80",
        "half-integer-offsets": "80",
    }
    assert run_det_suite("somos7-witness").values == {
        "half-integer-offsets": "160",
    }


def test_fivepoint_suite_counts_expanded_parts():
    report = run_det_suite("somos6-fivepoint", {"hi": 2})
    assert report.checked == 9 * 3
    report7 = run_det_suite("somos7-fivepoint", {"hi": 2})
    assert report7.checked == 9 * 2


def test_report_dict_shape():
    d = run_det_suite("somos5-thirdorder-det").as_dict()
    assert d["holds"] is True
    assert set(d) == {"suite", "domain", "checked", "gaps", "failures",
                      "values", "holds"}


# -- numeric modes ---------------------------------------------------------------


def _random_points(rng, count, spread=2.0, tilt=0.4):
    out = []
    for _ in range(count):
        xs = [complex(rng.uniform(-spread, spread), rng.uniform(-tilt, tilt))
              for _ in range(3)]
        ys = [complex(rng.uniform(-spread, spread), rng.uniform(-tilt, tilt))
              for _ in range(3)]
        out.append((xs, ys))
    return out


def test_theta_det_vanishes_real_points():
    rng = random.Random(20260816)
    points = [([rng.uniform(-3, 3) for _ in range(3)],
               [rng.uniform(-3, 3) for _ in range(3)]) for _ in range(25)]
    report = theta_det_check(1, 1, points, q=0.3)
    assert report.ok
    assert report.max_residual < 1e-10


@pytest.mark.parametrize("pair", [(1, 2), (1, 3), (2, 4), (4, 4)])
def test_theta_det_vanishes_mixed_indices(pair):
    rng = random.Random(sum(pair))
    report = theta_det_check(*pair, _random_points(rng, 10), q=0.25)
    assert report.ok, report.max_residual


def test_theta_det_overflows_near_unit_q():
    rng = random.Random(1)
    with pytest.raises(NumericOverflow):
        theta_det_check(1, 1, _random_points(rng, 1), q=0.9999)


def test_theta_det_rejects_wrong_arity():
    with pytest.raises(ValueError):
        theta_det_check(1, 1, [([0.1, 0.2], [0.3, 0.4])], q=0.3)


def test_sin_det_vanishes_complex_points():
    rng = random.Random(6)
    report = sin_det_check(_random_points(rng, 20, spread=3.0, tilt=1.0))
    assert report.ok
    assert report.max_residual < 1e-10


def test_theta_mode_spec_check():
    spec = DetSpec((H, 5 * H, -3 * H), (3 * H, -H, 7 * H), theta=(1, 3))
    report = theta_mode_check(spec, q=0.3)
    assert report.ok


def test_theta_mode_needs_pair():
    spec = DetSpec((0, 1, 2), (0, 1, 2), A4)
    with pytest.raises(ValueError):
        theta_mode_check(spec, q=0.3)


def test_fourvars_trivial_specialization_is_exact():
    x = 0.7 + 0.2j
    res, scale = fourvars_residual(3, 0.3, x, x, 1.1, q=0.3)
    assert res == 0.0
    assert scale > 0


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_fourvars_identity_random_points(t):
    rng = random.Random(t)
    points = [tuple(complex(rng.uniform(-2, 2), rng.uniform(-0.4, 0.4))
                    for _ in range(4)) for _ in range(10)]
    report = fourvars_check(t, points, q=0.3)
    assert report.ok, report.max_residual


def test_numeric_report_dict_shape():
    rng = random.Random(2)
    d = sin_det_check(_random_points(rng, 2)).as_dict()
    assert set(d) == {"kind", "checked", "max_residual", "tol", "ok"}
