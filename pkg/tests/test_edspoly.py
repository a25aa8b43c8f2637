"""Polynomial terms: expansions, degrees, gcds, specializations, closed forms."""

import math
from fractions import Fraction

import pytest

from somoskit.arith import QQ, Polynomial, QuadExt, poly_gcd
from somoskit.data import load_fixture
from somoskit.edspoly import (
    POLY_KINDS,
    NotPolynomial,
    ToleranceExceeded,
    bridge_check,
    chebyshev_check,
    degree_check,
    degree_formula,
    kind_view,
    poly_dump,
    poly_term,
    polynomiality_check,
    progression_check,
    progression_names,
    root_proximity_check,
    specialization_matches,
    specialize,
    strong_divisibility,
    t_gauge_check,
)
from somoskit.sequences import GapAtIndex

FIX = load_fixture("polynomials")

S4OID_DEGREES = (0, 0, 0, 1, 1, 2, 3, 2, 5, 6, 7, 9, 10, 12, 14, 14, 18, 20,
                 22, 25, 27, 30, 33, 34, 39, 42, 45, 49, 52, 56, 60, 62, 68,
                 72, 76, 81)
S5OID_DEGREES = (0, 0, 0, 0, 1, 1, 0, 2, 3, 3, 4, 5, 6, 5, 8, 9, 10, 11, 13,
                 14, 14, 17, 19, 20, 22, 24, 26, 26)


# -- term generation --------------------------------------------------------------


@pytest.mark.parametrize("kind", POLY_KINDS)
def test_terms_match_fixture(kind):
    for key, coeffs in FIX[kind].items():
        want = Polynomial([Fraction(c) for c in coeffs])
        assert poly_term(kind, int(key)) == want


def test_term_examples():
    assert poly_dump(poly_term("s4oid", 9)) == [1, 3, 3, 0, -1, 1]
    assert poly_dump(poly_term("s4oid", 8)) == [0, -2, -3]
    assert poly_dump(poly_term("s5oid", 11)) == [1, -2, 0, 1, -1]
    twelve = Polynomial((-1, 1)) * Polynomial((1, 0, 1, -1, 1))
    assert poly_term("s5oid", 12) == twelve


def test_antisymmetric_negative_terms():
    assert poly_term("s4oid", -3) == -poly_term("s4oid", 3)
    assert poly_term("s5oid", -9) == -poly_term("s5oid", 9)
    assert poly_term("s4oid", 0).is_zero()


def test_backward_gaps_propagate():
    with pytest.raises(GapAtIndex):
        poly_term("s6poly", -6)
    with pytest.raises(GapAtIndex):
        poly_term("s7poly", -7)


def test_not_polynomial_carries_the_denominator():
    exc = NotPolynomial(31, Polynomial((0, 1)))
    assert exc.n == 31
    assert exc.denominator == Polynomial((0, 1))
    assert "31" in str(exc)


def test_kind_view_rejects_unknown():
    with pytest.raises(KeyError):
        kind_view("s9mystery")


@pytest.mark.parametrize("kind", ("s4oid", "s5oid"))
def test_polynomiality_to_seventy(kind):
    report = polynomiality_check(kind, 1, 70)
    assert report.holds
    assert report.checked == 70
    assert not report.gaps


# -- degrees ----------------------------------------------------------------------


def test_degree_lists():
    for n, want in enumerate(S4OID_DEGREES, start=1):
        assert poly_term("s4oid", n).degree == want
        assert degree_formula("s4oid", n) == want
    for n, want in enumerate(S5OID_DEGREES, start=1):
        assert poly_term("s5oid", n).degree == want
        assert degree_formula("s5oid", n) == want


def test_degree_formula_examples():
    assert degree_formula("s4oid", 17) == 18
    assert degree_formula("s4oid", 1) == 0
    assert degree_formula("s5oid", 28) == 26


def test_degree_reports_hold():
    r4 = degree_check("s4oid", 1, 40)
    assert r4.holds and len(r4.rows) == 40
    r5 = degree_check("s5oid", 1, 28)
    assert r5.holds and len(r5.rows) == 28


def test_degree_csv_layout():
    lines = degree_check("s4oid", 1, 4).as_csv().splitlines()
    assert lines[0] == "n,actual,formula"
    assert lines[1] == "1,0,0"
    assert lines[4] == "4,1,1"


def test_degree_check_rejects_nonpositive_start():
    with pytest.raises(ValueError):
        degree_check("s4oid", 0, 8)


def test_leading_coefficients():
    for q in range(1, 6):
        assert poly_term("s4oid", 8 * q).leading() == (-1) ** q * 3 * q
    for n in (7, 9, 23, 31, 39):
        assert abs(poly_term("s4oid", n).leading()) == 1
    for q in range(1, 5):
        assert abs(poly_term("s5oid", 7 * q).leading()) == q
    for n in (6, 13, 20, 27):
        assert abs(poly_term("s5oid", n).leading()) == 1


# -- strong divisibility ----------------------------------------------------------


def test_gcd_example_four_eight():
    report = strong_divisibility("s4oid", 4, 8)
    assert report.holds and report.matches
    assert report.gcd_index == 4
    assert poly_gcd(poly_term("s4oid", 4), poly_term("s4oid", 8)) == \
        Polynomial((0, 1))


def test_gcd_example_six_twelve():
    report = strong_divisibility("s4oid", 6, 12)
    assert report.holds and report.matches
    quotient, rem = divmod(poly_term("s4oid", 12), poly_term("s4oid", 6))
    assert rem.is_zero() and quotient.degree > 0


def test_gcd_trivial_equal_indices():
    report = strong_divisibility("s4oid", 5, 5)
    assert report.holds and report.gcd_index == 5


@pytest.mark.parametrize("kind", ("s4oid", "s5oid"))
def test_strong_divisibility_grid(kind):
    for k in range(2, 25, 3):
        for n in range(2, 25, 4):
            report = strong_divisibility(kind, k, n)
            assert report.matches, (kind, k, n)
            assert all(report.integer_ok.values()), (kind, k, n)


def test_s6poly_documented_failure():
    report = strong_divisibility("s6poly", 8, 16)
    assert not report.matches
    assert report.documented_failure
    assert report.holds


def test_integer_gcd_samples_recorded():
    report = strong_divisibility("s4oid", 6, 9)
    assert set(report.integer_ok) == {"2", "3", "5", "-7"}
    p6, p9 = poly_term("s4oid", 6), poly_term("s4oid", 9)
    g3 = poly_term("s4oid", 3)
    got = math.gcd(int(p6.evaluate(Fraction(5))), int(p9.evaluate(Fraction(5))))
    assert got == abs(g3.evaluate(Fraction(5)))


def test_divisibility_rejects_nonpositive():
    with pytest.raises(ValueError):
        strong_divisibility("s4oid", 0, 8)


# -- specialization ---------------------------------------------------------------


def test_specialized_view_is_a_homomorphism():
    assert specialization_matches("s4oid", Fraction(-5), -12, 12)
    assert specialization_matches("s4oid", Fraction(2), -12, 12)
    assert specialization_matches("s5oid", Fraction(2), -10, 10)


def test_specialize_carries_the_shape():
    view = specialize("s4oid", Fraction(-5))
    assert view.spec.order == 4
    assert view.spec.antisymmetric
    assert view.term(4) == Fraction(-5)


def test_specialize_into_prime_field():
    from somoskit.arith import PrimeField
    gf = PrimeField(43)
    view = specialize("s4oid", gf.from_int(3), gf)
    want = poly_term("s4oid", 9).evaluate(gf.from_int(3), gf)
    assert view.term(9) == want


# -- progressions -----------------------------------------------------------------


def test_progression_registry():
    assert progression_names() == [
        "s4oid-golden", "s4oid-minus-one", "s4oid-zero", "s7poly-one"]


def test_zero_point_has_period_eight():
    report = progression_check("s4oid-zero")
    assert report.holds
    assert report.period == 8
    assert report.checked == 121 and not report.gaps


def test_minus_one_point_has_period_five():
    report = progression_check("s4oid-minus-one")
    assert report.holds
    assert report.period == 5


def test_golden_point_bracket():
    report = progression_check("s4oid-golden")
    assert report.holds
    assert report.checked == 121 and not report.failures


def test_golden_value_spot_check():
    dom = QuadExt(QQ, 5)
    phi = (Fraction(1, 2), Fraction(1, 2))
    got = kind_view("s4oid").term(10).evaluate(phi, dom)
    want = dom.neg(dom.pow(phi, 8))
    assert dom.eq(got, want)


def test_s7poly_at_one_with_gaps():
    report = progression_check("s7poly-one")
    assert report.holds
    assert report.checked == 67
    assert len(report.gaps) == 54
    assert min(report.gaps) == -60 and max(report.gaps) == -7


def test_s7poly_at_one_spot_values():
    view = kind_view("s7poly")
    assert view.term(10).evaluate(Fraction(1)) == -3
    assert view.term(14).evaluate(Fraction(1)) == 4
    assert view.term(18).evaluate(Fraction(1)) == 5


def test_unknown_progression():
    with pytest.raises(KeyError):
        progression_check("s4oid-seven")


# -- bridges ----------------------------------------------------------------------


def test_bridges_to_the_integer_sequence():
    report = bridge_check(-15, 15)
    assert report.holds
    assert report.checked == 31


def test_bridge_spot_values():
    assert poly_term("s4oid", 7).evaluate(Fraction(-5)) == 129
    assert poly_term("s4oid", 14).evaluate(Fraction(1)) == 129


def test_t_gauge():
    report = t_gauge_check(-12, 12)
    assert report.holds
    assert report.checked == 24


# -- numeric closed forms ---------------------------------------------------------


def test_chebyshev_positive_branch():
    report = chebyshev_check("s4oid", "positive", 1, 30)
    assert report.holds
    assert report.x0 == pytest.approx(-4.79960475359606, abs=1e-11)
    assert report.worst < 1e-20


def test_chebyshev_negative_branch():
    report = chebyshev_check("s4oid", "negative", 1, 30)
    assert report.holds
    assert report.x0 == pytest.approx(-0.669499628215, abs=1e-11)
    assert report.worst < 1e-20


def test_chebyshev_bridge_kind():
    report = chebyshev_check("t_bridge", lo=1, hi=30)
    assert report.holds
    assert report.worst < 1e-20


def test_chebyshev_tolerance_escape():
    with pytest.raises(ToleranceExceeded) as exc:
        chebyshev_check("s4oid", "positive", 1, 10, tol=1e-60)
    assert exc.value.n >= 1
    assert exc.value.err > 1e-60


def test_chebyshev_unknown_kind():
    with pytest.raises(KeyError):
        chebyshev_check("s8oid")


def test_negative_branch_point_is_the_proximity_root():
    report = chebyshev_check("s4oid", "negative", 1, 2)
    prox = root_proximity_check(10, 11)
    assert report.x0 == pytest.approx(prox.omega, abs=1e-12)


def test_root_proximity():
    report = root_proximity_check(10, 40)
    assert report.holds
    assert len(report.rows) == 31
    assert report.omega == pytest.approx(-0.669499628215, abs=1e-11)
    by_n = {row[0]: row for row in report.rows}
    n, dist, tol, ok = by_n[40]
    assert ok and dist < 1e-20 and tol == pytest.approx(1e-10)
    assert by_n[12][3]
