"""Sequence engine tests against frozen golden data."""

from fractions import Fraction

import pytest

from somoskit.arith import PolyFracDomain, Polynomial, PrimeField, QQ, QuadExt
from somoskit.data import load_fixture
from somoskit.sequences import (
    GapAtIndex,
    check_palindrome,
    detect_period,
    elkies_constants,
    elkies_float_check,
    gauge_transform,
    golden_sign,
    heron_sides,
    is_heron_two_median,
    make_view,
    named_spec,
    named_view,
    registry_names,
    sign_rule_audit,
)

FIX = load_fixture("sequences")


def fixture_terms(name):
    entry = FIX[name]
    first = entry["first_index"]
    for offset, raw in enumerate(entry["terms"]):
        yield first + offset, Fraction(raw) if isinstance(raw, str) else Fraction(raw)


# -- golden values -------------------------------------------------------------


@pytest.mark.parametrize("name", [
    "somos4", "somos5", "somos6", "somos7", "somos8",
    "a051138", "a006769", "eds5", "eds5_even", "eds5_odd", "eds5_twist",
])
def test_golden_terms(name):
    view = named_view(name)
    for n, expected in fixture_terms(name):
        assert view.term(n) == expected, (name, n)


def test_somos4_spot_value():
    view = named_view("somos4")
    assert view.term(18) == 1123424582771


def test_a051138_spot_value():
    assert named_view("a051138").term(10) == -16264


def test_a006769_extended_tail():
    view = named_view("a006769")
    ext = FIX["a006769"]["extended"]
    for offset, expected in enumerate(ext["terms"]):
        assert view.term(ext["first_index"] + offset) == Fraction(expected)


def test_somos8_first_fraction_forward():
    view = named_view("somos8")
    for n in range(17):
        assert view.term(n).denominator == 1
    assert view.term(17) == Fraction(420514, 7)


def test_somos8_first_fraction_backward():
    view = named_view("somos8")
    for n in range(-9, 0):
        assert view.term(n).denominator == 1
    assert view.term(-10).denominator != 1


@pytest.mark.parametrize("name,bound", [
    ("somos4", 60), ("somos5", 60), ("somos6", 60), ("somos7", 60),
    ("a051138", 60), ("a006769", 60), ("eds5", 60),
])
def test_integrality_window(name, bound):
    view = named_view(name)
    for n in range(-bound, bound + 1):
        assert view.term(n).denominator == 1, (name, n)


# -- symmetry ------------------------------------------------------------------


@pytest.mark.parametrize("name,center", [
    ("somos4", Fraction(3, 2)), ("somos5", Fraction(2)),
    ("somos6", Fraction(5, 2)), ("somos7", Fraction(3)),
    ("somos8", Fraction(7, 2)),
])
def test_palindromy(name, center):
    view = named_view(name)
    assert check_palindrome(view, -8, 30, center=center) is None


@pytest.mark.parametrize("name", ["a051138", "a006769", "eds5", "eds5_even", "eds5_twist"])
def test_antisymmetry(name):
    view = named_view(name)
    for n in range(1, 21):
        assert view.term(-n) == -view.term(n), (name, n)
    assert view.term(0) == 0


def test_eds5_odd_not_antisymmetric():
    view = named_view("eds5_odd")
    assert view.term(0) == -1
    assert view.term(-1) == -1
    assert view.term(-2) == 7
    assert view.term(-3) == 1


# -- bridges between families ---------------------------------------------------


def test_a051138_bridges_a006769():
    big = named_view("a006769")
    mid = named_view("a051138")
    for n in range(-6, 13):
        assert mid.term(n) == big.term(2 * n)


def test_somos4_bridges_a006769():
    big = named_view("a006769")
    a = named_view("somos4")
    for n in range(-5, 12):
        assert big.term(2 * n + 1) == (-1) ** n * a.term(n + 2)


def test_eds5_even_odd_bridges():
    base = named_view("eds5")
    even = named_view("eds5_even")
    odd = named_view("eds5_odd")
    for n in range(-4, 12):
        assert even.term(n) == base.term(2 * n)
        assert odd.term(n) == base.term(2 * n - 1)


def test_a051138_square_identity():
    a = named_view("somos4")
    mid = named_view("a051138")
    for k in range(-4, 12):
        lhs = mid.term(k) ** 2
        rhs = a.term(k) * a.term(k + 3) - a.term(k + 1) * a.term(k + 2)
        assert lhs == rhs, k


def test_twist_magnitude_bridges():
    b = named_view("somos5")
    twist = named_view("eds5_twist")
    odd = named_view("eds5_odd")
    for n in range(1, 9):
        want = b.term(2 * n + 1) * b.term(2 * n + 3) - b.term(2 * n + 2) ** 2
        assert twist.term(n) ** 2 == want, n
        want_f = 3 * b.term(2 * n) * b.term(2 * n + 2) - 2 * b.term(2 * n + 1) ** 2
        assert odd.term(n) ** 2 == want_f, n


def test_eds5_mod19_residues():
    view = named_view("eds5")
    allowed = set(FIX["eds5"]["mod19_residues"])
    seen = {view.term(n).numerator % 19 for n in range(1, 80)}
    assert seen <= allowed
    assert seen == allowed


# -- reduction and gap handling ---------------------------------------------------


def test_reduction_homomorphism_somos4_mod43():
    exact = named_view("somos4")
    gf = PrimeField(43)
    modview = named_view("somos4", domain=gf)
    for n in range(-30, 61):
        assert modview.term(n) == exact.term(n).numerator % 43, n


def test_reduction_homomorphism_somos5_mod101():
    exact = named_view("somos5")
    gf = PrimeField(101)
    modview = named_view("somos5", domain=gf)
    for n in range(-20, 61):
        assert modview.term(n) == exact.term(n).numerator % 101, n


@pytest.mark.parametrize("p", [2, 157])
def test_span_fallback_crosses_zeros_somos4(p):
    # once some a(z) = 0 mod p, the defining four-term step cannot divide by
    # it; the longer spans must carry the extension across the zero.
    exact = named_view("somos4")
    zero_at = next(n for n in range(4, 30) if exact.term(n).numerator % p == 0)
    modview = named_view("somos4", domain=PrimeField(p))
    for n in range(-10, zero_at + 12):
        assert modview.term(n) == exact.term(n).numerator % p, n


def test_a006769_mod_p_crosses_zeros():
    exact = named_view("a006769")
    for p in (5, 7, 43):
        modview = named_view("a006769", domain=PrimeField(p))
        for n in range(0, 40):
            assert modview.term(n) == exact.term(n).numerator % p, (p, n)


def test_gap_reported_when_unreachable():
    # Somos6 has no long-span fallback registered, so crossing a prime-field
    # zero of the divisor is impossible and must surface as a gap.
    exact = named_view("somos6")
    p = None
    zero_at = None
    for cand in (5, 7, 11, 13):
        for n in range(1, 25):
            if exact.term(n).numerator % cand == 0:
                p, zero_at = cand, n
                break
        if p:
            break
    assert p is not None
    modview = named_view("somos6", domain=PrimeField(p))
    with pytest.raises(GapAtIndex):
        for n in range(zero_at + 12):
            modview.term(n)


# -- polynomial families ----------------------------------------------------------


def test_s4oid_early_terms():
    view = named_view("s4oid")
    x = Polynomial.x()
    assert view.term(4).as_poly() == x
    assert view.term(5).as_poly() == x + 1
    assert view.term(6).as_poly() == x**2 - x - 1
    assert view.term(7).as_poly() == -(x**3 + x + 1)
    assert view.term(8).as_poly() == -x * (3 * x + 2)


def test_s5oid_early_terms():
    view = named_view("s5oid")
    x = Polynomial.x()
    assert view.term(6).as_poly() == x - 1
    assert view.term(7).as_poly() == Polynomial((-1,))
    assert view.term(8).as_poly() == x**2 - x + 1
    assert view.term(9).as_poly() == -(x**3) + x**2 - 1


def test_s6poly_early_terms():
    view = named_view("s6poly")
    x = Polynomial.x()
    assert view.term(7).as_poly() == x - 1
    assert view.term(8).as_poly() == 2 * x + 3
    assert view.term(9).as_poly() == x**2 + Polynomial((5,))
    assert view.term(10).as_poly() == x**2 + x - 9


def test_s6poly_backward_gap():
    view = named_view("s6poly")
    assert view.term(-1).as_poly() == Polynomial((-1,))
    assert view.term(-2).as_poly() == Polynomial((0,))
    assert view.term(-5).as_poly() == Polynomial((1,))
    with pytest.raises(GapAtIndex):
        view.term(-6)


def test_s7poly_early_and_backward():
    view = named_view("s7poly")
    x = Polynomial.x()
    assert view.term(8).as_poly() == x - 1
    assert view.term(9).as_poly() == 2 * x - 3
    assert view.term(10).as_poly() == x - 4
    assert view.term(11).as_poly() == x**2 - 4 * x + 2
    assert view.term(0).as_poly() == Polynomial((0,))
    assert view.term(-6).as_poly() == Polynomial((1,))
    with pytest.raises(GapAtIndex):
        view.term(-7)


def test_somos4p_symmetric_window():
    view = named_view("somos4p")
    p = Polynomial.x()
    # a4 = (a3*a1 + a2^2)/a0 with window (1, p, p, 1)
    assert view.term(4).as_poly() == p**2 + p
    assert view.term(-1).as_poly() == p**2 + p
    # specializing the window to all ones recovers the integer sequence
    ints = named_view("somos4")
    for n in range(-3, 12):
        assert view.term(n).evaluate(Fraction(1)) == ints.term(n), n


def test_t_bridge_terms():
    view = named_view("t_bridge")
    y = Polynomial.x()
    assert view.term(5).as_poly() == -(y**32) - y**24
    assert view.term(2).as_poly() == y**5
    assert view.term(3).as_poly() == y**8
    assert view.term(4).as_poly() == -(y**17)


def test_t_bridge_order5_recurrence():
    # the same window also satisfies a five-term rule with weights (y^12, y^8)
    view = named_view("t_bridge")
    dom = view.domain
    y12 = dom.from_poly(Polynomial.x() ** 12)
    y8 = dom.from_poly(Polynomial.x() ** 8)
    for n in range(6, 12):
        lhs = dom.mul(view.term(n), view.term(n - 5))
        rhs = dom.add(
            dom.mul(y12, dom.mul(view.term(n - 3), view.term(n - 2))),
            dom.mul(y8, dom.mul(view.term(n - 4), view.term(n - 1))),
        )
        assert dom.eq(lhs, rhs), n


# -- quadratic extension sequence ---------------------------------------------------


def test_somos7_sqrt2_values():
    view = named_view("somos7_sqrt2")
    pairs = FIX["somos7_sqrt2"]["terms_pairs"]
    first = FIX["somos7_sqrt2"]["first_index"]
    for offset, (ra, rb) in enumerate(pairs):
        got = view.term(first + offset)
        assert got == (Fraction(ra), Fraction(rb)), first + offset


def test_somos7_sqrt2_backward():
    view = named_view("somos7_sqrt2")
    ra, rb = FIX["somos7_sqrt2"]["d_minus1_pair"]
    assert view.term(-1) == (Fraction(ra), Fraction(rb))


def test_somos7_sqrt2_d34_exact():
    view = named_view("somos7_sqrt2")
    entry = FIX["somos7_sqrt2"]
    denom = int(entry["d34_denominator"])
    want = (Fraction(int(entry["d34_num_rational"]), denom),
            Fraction(int(entry["d34_num_radical"]), denom))
    got = view.term(34)
    assert got == want
    # first index whose reduced coordinates leave the integers
    for n in range(34):
        a, b = view.term(n)
        assert a.denominator == 1 and b.denominator == 1, n


def _quad_value(pair):
    # a + b*sqrt(2) as an exact-enough Fraction; naive float conversion of the
    # coordinates loses everything to cancellation once they reach ~1e26.
    from math import isqrt
    a, b = pair
    root2 = Fraction(isqrt(2 * 10**160), 10**80)
    return a + b * root2


def test_somos7_sqrt2_d39_magnitude():
    view = named_view("somos7_sqrt2")
    value = _quad_value(view.term(39))
    assert abs(abs(value) - Fraction(FIX["somos7_sqrt2"]["d39_abs_float"])) < Fraction(1, 10**6)
    # ... and it is the first entry past d(-1) with magnitude above 2
    for n in range(39):
        assert abs(_quad_value(view.term(n))) <= 2, n


# -- gauge transforms and periodicity -------------------------------------------------


def test_gauge_geometric_preserves_recurrence():
    view = named_view("somos4")
    gauged = gauge_transform(view, Fraction(3), Fraction(1, 2), mode="geometric")
    for n in range(4, 16):
        lhs = gauged.term(n) * gauged.term(n - 4)
        rhs = gauged.term(n - 1) * gauged.term(n - 3) + gauged.term(n - 2) ** 2
        assert lhs == rhs, n


def test_gauge_quadratic_rescales_coefficients():
    view = named_view("somos4")
    r = Fraction(2)
    gauged = gauge_transform(view, Fraction(1), r, mode="quadratic")
    # s(n) -> r^(n^2) s(n) turns weights (1, 1) into (r^6, r^8)
    assert gauged.spec.coefficients == (r**6, r**8)
    for n in range(0, 10):
        assert gauged.term(n) == r ** (n * n) * view.term(n), n


def test_detect_period_s4oid_at_zero():
    view = named_view("s4oid")
    report = detect_period(
        view, max_shift=12,
        map_fn=lambda rf: rf.evaluate(Fraction(0)),
    )
    assert report["kind"] == "period"
    assert report["shift"] == 8


def test_detect_period_s4oid_at_minus_one():
    view = named_view("s4oid")
    report = detect_period(
        view, max_shift=12,
        map_fn=lambda rf: rf.evaluate(Fraction(-1)),
    )
    assert report["kind"] == "period"
    assert report["shift"] == 5


def test_detect_period_somos4p_at_minus_one():
    # the symmetric window degenerates to the pattern 1,-1,-1,1,0 repeating
    # with alternating sign: quasiperiod 5 with ratio -1, strict period 10
    view = named_view("somos4p")
    report = detect_period(
        view, max_shift=12,
        map_fn=lambda rf: rf.evaluate(Fraction(-1)),
    )
    assert report["kind"] == "quasiperiod"
    assert report["shift"] == 5
    assert report["ratio"] == -1


# -- golden-ratio sign rule ------------------------------------------------------------


def test_golden_sign_spot_values():
    # sign of phi*n minus its nearest integer
    expected = {1: -1, 2: 1, 3: -1, 4: 1, 5: 1, 6: -1, 7: 1, 8: -1, 9: -1, 10: 1}
    for n, want in expected.items():
        assert golden_sign(n) == want, n


def test_golden_sign_matches_float():
    import math
    phi = (1 + math.sqrt(5)) / 2
    for n in range(1, 200):
        diff = phi * n - round(phi * n)
        assert golden_sign(n) == (1 if diff > 0 else -1), n


def test_sign_rule_audit_first_failure():
    view = named_view("somos4")
    assert sign_rule_audit(view, lo=2, hi=50) == 39


# -- triangle report ---------------------------------------------------------------------


def test_heron_triangle_from_window():
    big = named_view("eds5")
    small = named_view("somos5")
    sides = heron_sides(big, small, 1)
    want = [Fraction(v) for v in FIX["heron"]["i1_sides"]]
    ratio = want[1] / sides[1]
    assert [s * ratio for s in sides] == want
    report = is_heron_two_median(tuple(want))
    assert report["is_heron"]
    assert report["area"] == Fraction(FIX["heron"]["i1_area"])
    assert report["rational_median_count"] == 2
    medians = sorted(report["rational_medians"])
    assert medians == sorted(Fraction(v) for v in FIX["heron"]["i1_rational_medians"])


def test_heron_rival_power_changes_third_side():
    big = named_view("eds5")
    small = named_view("somos5")
    base = heron_sides(big, small, 1)
    rival = heron_sides(big, small, 1, b_power=2)
    assert rival[0] == base[0] and rival[1] == base[1]
    ratio = Fraction(FIX["heron"]["i1_sides"][1]) / rival[1]
    assert rival[2] * ratio == Fraction(FIX["heron"]["rival_third_side"])


def test_equilateral_is_not_two_median():
    report = is_heron_two_median((Fraction(1), Fraction(1), Fraction(1)))
    assert not report["is_heron"]
    assert report["rational_median_count"] == 0


def test_classical_heron_control():
    report = is_heron_two_median((Fraction(13), Fraction(14), Fraction(15)))
    assert report["is_heron"]
    assert report["area"] == 84


def test_degenerate_triangle_flagged():
    report = is_heron_two_median((Fraction(1), Fraction(2), Fraction(3)))
    assert report["degenerate"]
    assert not report["is_heron"]


# -- gauged float identity -----------------------------------------------------------------


def test_elkies_constants_exact():
    view = named_view("somos5")
    report = elkies_constants(view)
    assert report["even"] == (Fraction(2), Fraction(-1))
    assert report["odd"] == (Fraction(3), Fraction(-1))


def test_elkies_float_floor_remainder_holds():
    view = named_view("somos5")
    assert elkies_float_check(view, 0, 20, remainder="floor") == []


def test_elkies_float_trunc_remainder_fails_near_zero():
    # truncated remainder mis-gauges the odd negative indices pulled in by
    # the identity's two-wide reach, so exactly n = 0 and n = 1 break
    view = named_view("somos5")
    assert elkies_float_check(view, 0, 20, remainder="trunc") == [0, 1]


# -- registry hygiene -------------------------------------------------------------------------


def test_registry_names_stable():
    names = registry_names()
    for required in ("somos4", "somos5", "somos6", "somos7", "somos8",
                     "a051138", "a006769", "eds5", "r144", "s4oid",
                     "s5oid", "s6poly", "s7poly", "t_bridge", "somos7_sqrt2"):
        assert required in names


def test_named_spec_round_trip():
    spec = named_spec("somos4")
    view = make_view(spec)
    assert view.term(10) == 1529


def test_r144_factored_terms():
    view = named_view("r144")
    first = FIX["r144"]["first_index"]
    for offset, (v2, v3, cof) in enumerate(FIX["r144"]["factored"]):
        n = first + offset
        assert view.term(n) == Fraction(2) ** v2 * Fraction(3) ** v3 * cof, n
        assert view.term(-n) == -view.term(n), n
