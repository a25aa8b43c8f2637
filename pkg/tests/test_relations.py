"""Catalog-wide relation checks plus targeted evaluator behavior."""

from fractions import Fraction

import pytest

from somoskit.arith import PrimeField
from somoskit.relations import (
    F,
    Relation,
    T,
    TransformedView,
    catalog,
    catalog_names,
    grid,
    relation_residual,
    run_entry,
    verify_relation,
)
from somoskit.sequences import named_view


@pytest.mark.parametrize("name", catalog_names())
def test_catalog_entry(name):
    entry = catalog()[name]
    report = run_entry(name)
    assert report.checked > 0
    assert report.holds == entry.expect_holds, report.failures[:3]


def test_catalog_breadth():
    names = catalog_names()
    assert len(names) >= 20
    total = sum(run_entry(name).checked for name in names)
    assert total >= 2000


def test_documented_failure_witness():
    entry = catalog()["even-subsequence-not-somos4"]
    report = run_entry("even-subsequence-not-somos4")
    assert not report.holds
    hits = [f for f in report.failures if f["case"] == entry.witness["case"]]
    assert hits and hits[0]["residual"] == entry.witness["residual"]


def test_even_subsequence_residual_value():
    entry = catalog()["even-subsequence-not-somos4"]
    residual = relation_residual(entry.relation, entry.views(), {"n": 3})
    assert residual == Fraction(-30)


def test_mixed_three_term_residual_zero():
    entry = catalog()["mixed-three-term"]
    assert relation_residual(entry.relation, entry.views(), {"n": 1}) == 0


def test_defining_relation_over_prime_field():
    rel = catalog()["somos4-defining"].relation
    views = {"somos4": named_view("somos4", domain=PrimeField(43))}
    report = verify_relation(rel, views, grid(n=range(4, 40)))
    assert report.holds
    assert report.domain == "gfp"
    assert report.checked == 36


def test_gap_cases_are_skipped_not_failed():
    # mod 5 the order-6 sequence hits a zero divisor with no long-span
    # fallback, so late cases must be reported as gaps
    rel = catalog()["somos6-defining"].relation
    views = {"somos6": named_view("somos6", domain=PrimeField(5))}
    report = verify_relation(rel, views, grid(n=range(6, 17)))
    assert report.failures == []
    assert report.gaps
    assert report.checked + len(report.gaps) == 11


def test_transformed_view_squares():
    base = named_view("somos4")
    squares = TransformedView(base, value_fn=lambda d, v: d.mul(v, v))
    assert squares.term(9) == Fraction(314) ** 2


def test_transformed_view_reindex():
    doubled = TransformedView(named_view("a051138"), index_fn=lambda n: 2 * n)
    assert doubled.term(3) == Fraction(29)


def test_relation_report_shape():
    report = run_entry("somos4-span5")
    data = report.as_dict()
    assert data["holds"] is True
    assert data["name"] == "somos4-span5"
    assert data["checked"] == report.checked
    assert data["failures"] == []


def test_verify_relation_counts_match_cases():
    rel = Relation("toy-palindrome", ("a",), ("n",), (
        T(1, F("a", n=1)),
        T(-1, F("a", const=3, n=-1)),
    ))
    report = verify_relation(rel, {"a": named_view("somos4")},
                             grid(n=range(-5, 9)))
    assert report.holds and report.checked == 14
