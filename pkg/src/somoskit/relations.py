"""Bilinear and polynomial identities between sequence terms.

A Relation is a sum of terms that must vanish.  Each term is a coefficient
times a product of sequence factors; a factor names a slot (which sequence
fills it), an index that is an integer combination of the relation's
parameters, and a power.  One evaluator instantiates any relation over any
domain, so the same catalog entry can be checked over the rationals, a prime
field, or a rational function field.

The catalog at the bottom pairs each relation with default views and a
default parameter grid.  A few entries are recorded *because* they fail;
those carry expect_holds=False and a witness case.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .arith import Polynomial
from .sequences import GapAtIndex, named_view


def F(slot, const=0, power=1, **coefs):
    """Factor spec: slot, index offset, per-parameter index weights, power."""
    return (slot, const, tuple(sorted(coefs.items())), power)


def T(coeff, *factors):
    """Term spec: coefficient (number or callable(domain, case)) and factors."""
    return (coeff, factors)


@dataclass(frozen=True)
class Relation:
    name: str
    slots: tuple
    params: tuple
    terms: tuple
    note: str = ""

    def arity(self):
        return len(self.params)


@dataclass
class RelationReport:
    name: str
    domain: str
    checked: int = 0
    gaps: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def holds(self):
        return self.checked > 0 and not self.failures

    def as_dict(self):
        return {
            "name": self.name,
            "domain": self.domain,
            "checked": self.checked,
            "gaps": self.gaps,
            "failures": self.failures,
            "holds": self.holds,
        }


def _coeff_value(domain, coeff, case):
    if callable(coeff):
        return coeff(domain, case)
    if isinstance(coeff, Fraction):
        return domain.from_fraction(coeff)
    return domain.from_int(coeff)


def relation_residual(rel, views, case):
    """Evaluate the relation's term sum at one parameter assignment."""
    domain = views[rel.slots[0]].domain
    total = domain.zero
    for coeff, factors in rel.terms:
        value = _coeff_value(domain, coeff, case)
        for slot, const, coefs, power in factors:
            index = const + sum(w * case[p] for p, w in coefs)
            t = views[slot].term(index)
            if power != 1:
                t = domain.pow(t, power)
            value = domain.mul(value, t)
        total = domain.add(total, value)
    return total


def verify_relation(rel, views, cases):
    """Check the relation over a case list; gaps are skipped, not failed."""
    domain = views[rel.slots[0]].domain
    report = RelationReport(name=rel.name, domain=domain.name)
    for case in cases:
        try:
            residual = relation_residual(rel, views, case)
        except GapAtIndex as exc:
            report.gaps.append({"case": dict(case), "reason": str(exc)})
            continue
        report.checked += 1
        if not domain.is_zero(residual):
            report.failures.append({
                "case": dict(case),
                "residual": domain.serialize(residual),
            })
    return report


class TransformedView:
    """Re-index and/or re-map another view's terms (e.g. squares, stride 2)."""

    def __init__(self, base, index_fn=None, value_fn=None):
        self.base = base
        self.domain = base.domain
        self._index_fn = index_fn
        self._value_fn = value_fn

    def term(self, n):
        value = self.base.term(self._index_fn(n) if self._index_fn else n)
        if self._value_fn:
            value = self._value_fn(self.domain, value)
        return value


# -- parameter grids -------------------------------------------------------------


def grid(**ranges):
    """Cartesian product of named integer ranges as a list of case dicts."""
    names = list(ranges)
    out = []
    for combo in product(*(ranges[name] for name in names)):
        out.append(dict(zip(names, combo)))
    return out


def _ypow(k):
    def coeff(domain, case):
        return domain.from_poly(Polynomial((0,) * k + (1,)))
    return coeff


def _case_poly(expr):
    """Coefficient callable computed from the case's integer parameters."""
    def coeff(domain, case):
        return domain.from_int(expr(case))
    return coeff


@dataclass(frozen=True)
class CatalogEntry:
    relation: Relation
    views: object          # callable -> dict slot -> view
    cases: object          # callable -> list of case dicts
    expect_holds: bool = True
    witness: dict = None
    note: str = ""


def _defining(name, seq, order, weights, lo, hi, note=""):
    terms = [T(1, F(seq, n=1), F(seq, const=-order, n=1))]
    for i, w in enumerate(weights, start=1):
        j = order - i
        if i < j:
            terms.append(T(-w, F(seq, const=-i, n=1), F(seq, const=-j, n=1)))
        elif i == j:
            terms.append(T(-w, F(seq, const=-i, n=1, power=2)))
    rel = Relation(name=name, slots=(seq,), params=("n",), terms=tuple(terms),
                   note=note)
    return CatalogEntry(
        relation=rel,
        views=lambda seq=seq: {seq: named_view(seq)},
        cases=lambda lo=lo, hi=hi: grid(n=range(lo, hi + 1)),
    )


def _entry(rel, view_names, cases, expect_holds=True, witness=None, note=""):
    def views(view_names=tuple(view_names.items())):
        return {slot: named_view(name) for slot, name in view_names}
    return CatalogEntry(relation=rel, views=views,
                        cases=lambda cases=cases: cases,
                        expect_holds=expect_holds, witness=witness, note=note)


def _build_catalog():
    entries = {}

    def add(entry):
        entries[entry.relation.name] = entry

    # defining recurrences
    add(_defining("somos4-defining", "somos4", 4, (1, 1), -6, 24))
    add(_defining("somos5-defining", "somos5", 5, (1, 1), -6, 24))
    add(_defining("somos6-defining", "somos6", 6, (1, 1, 1), -4, 22))
    add(_defining("somos7-defining", "somos7", 7, (1, 1, 1), -4, 22))
    add(_defining("eds5-defining", "eds5", 5, (1, 1), -10, 22,
                  note="four-term near-addition shape with unit weights"))
    add(_defining("eds5-even-defining", "eds5_even", 5, (-8, 57), -4, 12))
    add(_defining("eds5-odd-defining", "eds5_odd", 5, (-8, 57), -2, 12))
    add(_defining("eds5-twist-defining", "eds5_twist", 5, (-8, -57), -4, 12))
    add(_defining("r144-defining", "r144", 4, (144, 432), -8, 16))

    # longer spans with constant weights
    add(_entry(
        Relation("somos4-span5", ("a",), ("n",), (
            T(1, F("a", n=1), F("a", const=-5, n=1)),
            T(-5, F("a", const=-3, n=1), F("a", const=-2, n=1)),
            T(1, F("a", const=-4, n=1), F("a", const=-1, n=1)),
        )),
        {"a": "somos4"}, grid(n=range(5, 26))))
    add(_entry(
        Relation("somos4-span8", ("a",), ("m",), (
            T(1, F("a", m=1), F("a", const=-8, m=1)),
            T(-25, F("a", const=-2, m=1), F("a", const=-6, m=1)),
            T(29, F("a", const=-4, m=1, power=2)),
        )),
        {"a": "somos4"}, grid(m=range(8, 26))))
    add(_entry(
        Relation("somos4-span12", ("a",), ("m",), (
            T(1, F("a", m=1), F("a", const=-12, m=1)),
            T(-841, F("a", const=-3, m=1), F("a", const=-9, m=1)),
            T(3689, F("a", const=-6, m=1, power=2)),
        )),
        {"a": "somos4"}, grid(m=range(12, 28))))
    add(_entry(
        Relation("somos5-span10", ("b",), ("m",), (
            T(1, F("b", m=1), F("b", const=-10, m=1)),
            T(-57, F("b", const=-4, m=1), F("b", const=-6, m=1)),
            T(8, F("b", const=-2, m=1), F("b", const=-8, m=1)),
        )),
        {"b": "somos5"}, grid(m=range(10, 28))))
    add(_entry(
        Relation("somos5-span15", ("b",), ("m",), (
            T(1, F("b", m=1), F("b", const=-15, m=1)),
            T(-391, F("b", const=-3, m=1), F("b", const=-12, m=1)),
            T(2794, F("b", const=-6, m=1), F("b", const=-9, m=1)),
        )),
        {"b": "somos5"}, grid(m=range(15, 32))))
    add(_entry(
        Relation("eds4-span8", ("s",), ("m",), (
            T(1, F("s", m=1), F("s", const=-8, m=1)),
            T(-1, F("s", const=-2, m=1), F("s", const=-6, m=1)),
            T(-1, F("s", const=-4, m=1, power=2)),
        )),
        {"s": "a006769"}, grid(m=range(-6, 26))))
    add(_entry(
        Relation("eds4-span12", ("s",), ("m",), (
            T(1, F("s", m=1), F("s", const=-12, m=1)),
            T(-1, F("s", const=-3, m=1), F("s", const=-9, m=1)),
            T(-7, F("s", const=-6, m=1, power=2)),
        )),
        {"s": "a006769"}, grid(m=range(-6, 26))))
    add(_entry(
        Relation("somos6-span9", ("c",), ("n",), (
            T(1, F("c", n=1), F("c", const=-9, n=1)),
            T(1, F("c", const=-1, n=1), F("c", const=-8, n=1)),
            T(1, F("c", const=-2, n=1), F("c", const=-7, n=1)),
            T(-1, F("c", const=-3, n=1), F("c", const=-6, n=1)),
            T(-34, F("c", const=-4, n=1), F("c", const=-5, n=1)),
        )),
        {"c": "somos6"}, grid(n=range(9, 26))))
    add(_entry(
        Relation("somos7-span11", ("d",), ("k",), (
            T(1, F("d", const=-11, k=1), F("d", k=1)),
            T(1, F("d", const=-10, k=1), F("d", const=-1, k=1)),
            T(1, F("d", const=-7, k=1), F("d", const=-4, k=1)),
            T(-61, F("d", const=-6, k=1), F("d", const=-5, k=1)),
        )),
        {"d": "somos7"}, grid(k=range(11, 28))))

    # two-parameter span-8 family and its squares sibling
    add(CatalogEntry(
        relation=Relation("somos4-span8-pencil", ("a",), ("n", "t", "u"), (
            T(1, F("a", n=1), F("a", const=-8, n=1)),
            T(_case_poly(lambda c: -(c["t"] - 7)),
              F("a", const=-1, n=1), F("a", const=-7, n=1)),
            T(_case_poly(lambda c: -(c["u"] - 5 * c["t"] + 31)),
              F("a", const=-2, n=1), F("a", const=-6, n=1)),
            T(_case_poly(lambda c: -(4 * c["t"] - c["u"] + 1)),
              F("a", const=-3, n=1), F("a", const=-5, n=1)),
            T(_case_poly(lambda c: c["u"]), F("a", const=-4, n=1, power=2)),
        ), note="every (t, u) gives a valid weight assignment"),
        views=lambda: {"a": named_view("somos4")},
        cases=lambda: grid(n=range(8, 18), t=(-2, 0, 7, 13), u=(-5, 0, 29)),
    ))
    add(CatalogEntry(
        relation=Relation("somos4-squares-pencil", ("q",), ("n", "t"), (
            T(1, F("q", n=1), F("q", const=-8, n=1)),
            T(_case_poly(lambda c: -(6 - c["t"])),
              F("q", const=-1, n=1), F("q", const=-7, n=1)),
            T(_case_poly(lambda c: -(5 * c["t"] - 130)),
              F("q", const=-2, n=1), F("q", const=-6, n=1)),
            T(_case_poly(lambda c: -(749 - 4 * c["t"])),
              F("q", const=-3, n=1), F("q", const=-5, n=1)),
            T(_case_poly(lambda c: -(20 * c["t"] - 4)),
              F("q", const=-4, n=1, power=2)),
        ), note="the squared terms satisfy their own one-parameter span-8 pencil"),
        views=lambda: {"q": TransformedView(
            named_view("somos4"), value_fn=lambda d, v: d.mul(v, v))},
        cases=lambda: grid(n=range(8, 18), t=(-1, 0, 2, 25)),
    ))

    # quartic window identity, integer and symbolic-window forms
    add(_entry(
        Relation("somos4-window-quartic", ("a",), ("x",), (
            T(1, F("a", const=-1, x=1, power=2), F("a", const=2, x=1, power=2)),
            T(1, F("a", x=1, power=3), F("a", const=2, x=1)),
            T(1, F("a", const=-1, x=1), F("a", const=1, x=1, power=3)),
            T(1, F("a", x=1, power=2), F("a", const=1, x=1, power=2)),
            T(-4, F("a", const=-1, x=1), F("a", x=1), F("a", const=1, x=1),
              F("a", const=2, x=1)),
        )),
        {"a": "somos4"}, grid(x=range(-4, 22))))
    add(CatalogEntry(
        relation=Relation("somos4-window-quartic-symmetric", ("a",), ("k",), (
            T(_ypow(2), F("a", const=-1, k=1, power=2), F("a", const=2, k=1, power=2)),
            T(_ypow(2), F("a", k=1, power=3), F("a", const=2, k=1)),
            T(_ypow(2), F("a", const=-1, k=1), F("a", const=1, k=1, power=3)),
            T(_ypow(2), F("a", k=1, power=2), F("a", const=1, k=1, power=2)),
            T(lambda d, c: d.neg(d.from_poly(Polynomial((1, 0, 0, 2, 1)))),
              F("a", const=-1, k=1), F("a", k=1), F("a", const=1, k=1),
              F("a", const=2, k=1)),
        ), note="same window identity over the symmetric two-sided window"),
        views=lambda: {"a": named_view("somos4p")},
        cases=lambda: grid(k=range(-2, 10)),
    ))

    # third-order consequences of the window quartic
    add(_entry(
        Relation("somos4-third-order-a", ("a",), ("k",), (
            T(4, F("a", const=-2, k=1), F("a", k=1), F("a", const=2, k=1)),
            T(-3, F("a", const=-1, k=1, power=2), F("a", const=2, k=1)),
            T(-3, F("a", const=-2, k=1), F("a", const=1, k=1, power=2)),
            T(8, F("a", const=-1, k=1), F("a", k=1), F("a", const=1, k=1)),
            T(-7, F("a", k=1, power=3)),
        )),
        {"a": "somos4"}, grid(k=range(-2, 22))))
    add(_entry(
        Relation("somos4-third-order-b", ("a",), ("k",), (
            T(1, F("a", const=-2, k=1), F("a", k=1), F("a", const=2, k=1)),
            T(-1, F("a", const=-1, k=1, power=2), F("a", const=2, k=1)),
            T(-1, F("a", const=-2, k=1), F("a", const=1, k=1, power=2)),
            T(3, F("a", const=-1, k=1), F("a", k=1), F("a", const=1, k=1)),
            T(-2, F("a", k=1, power=3)),
        )),
        {"a": "somos4"}, grid(k=range(-2, 22))))

    # quadratics satisfied by the doubled indices
    add(_entry(
        Relation("somos4-doubling-back", ("a",), ("x",), (
            T(1, F("a", const=-1, x=1), F("a", const=-1, x=2, power=2)),
            T(-2, F("a", x=1), F("a", const=-1, x=1, power=2),
              F("a", const=1, x=1, power=2), F("a", const=-1, x=2)),
            T(1, F("a", const=-1, x=1), F("a", x=1, power=3),
              F("a", const=1, x=1), F("a", const=-1, x=2)),
            T(-1, F("a", x=1, power=5), F("a", const=-1, x=2)),
            T(1, F("a", const=-1, x=1, power=4), F("a", const=1, x=1, power=5)),
            T(-4, F("a", const=-1, x=1, power=3), F("a", x=1, power=2),
              F("a", const=1, x=1, power=4)),
            T(8, F("a", const=-1, x=1, power=2), F("a", x=1, power=4),
              F("a", const=1, x=1, power=3)),
            T(-6, F("a", const=-1, x=1), F("a", x=1, power=6),
              F("a", const=1, x=1, power=2)),
            T(2, F("a", x=1, power=8), F("a", const=1, x=1)),
        )),
        {"a": "somos4"}, grid(x=range(2, 14))))
    add(_entry(
        Relation("somos4-doubling-center", ("a",), ("x",), (
            T(1, F("a", const=-1, x=1, power=3), F("a", x=2, power=2)),
            T(2, F("a", x=1), F("a", const=-1, x=1, power=3),
              F("a", const=1, x=1, power=3), F("a", x=2)),
            T(-11, F("a", x=1, power=3), F("a", const=-1, x=1, power=2),
              F("a", const=1, x=1, power=2), F("a", x=2)),
            T(7, F("a", x=1, power=5), F("a", const=-1, x=1),
              F("a", const=1, x=1), F("a", x=2)),
            T(-1, F("a", x=1, power=7), F("a", x=2)),
            T(1, F("a", const=-1, x=1, power=4), F("a", const=1, x=1, power=7)),
            T(-8, F("a", const=-1, x=1, power=3), F("a", x=1, power=2),
              F("a", const=1, x=1, power=6)),
            T(20, F("a", const=-1, x=1, power=2), F("a", x=1, power=4),
              F("a", const=1, x=1, power=5)),
            T(-14, F("a", const=-1, x=1), F("a", x=1, power=6),
              F("a", const=1, x=1, power=4)),
            T(3, F("a", x=1, power=8), F("a", const=1, x=1, power=3)),
        )),
        {"a": "somos4"}, grid(x=range(2, 14))))
    add(_entry(
        Relation("somos4-doubling-forward", ("a",), ("x",), (
            T(1, F("a", const=-1, x=1, power=5), F("a", const=1, x=2, power=2)),
            T(-8, F("a", x=1), F("a", const=-1, x=1, power=4),
              F("a", const=1, x=1, power=4), F("a", const=1, x=2)),
            T(18, F("a", x=1, power=3), F("a", const=-1, x=1, power=3),
              F("a", const=1, x=1, power=3), F("a", const=1, x=2)),
            T(-22, F("a", x=1, power=5), F("a", const=-1, x=1, power=2),
              F("a", const=1, x=1, power=2), F("a", const=1, x=2)),
            T(9, F("a", x=1, power=7), F("a", const=-1, x=1),
              F("a", const=1, x=1), F("a", const=1, x=2)),
            T(-1, F("a", x=1, power=9), F("a", const=1, x=2)),
            T(4, F("a", const=-1, x=1, power=4), F("a", const=1, x=1, power=9)),
            T(-12, F("a", const=-1, x=1, power=3), F("a", x=1, power=2),
              F("a", const=1, x=1, power=8)),
            T(20, F("a", const=-1, x=1, power=2), F("a", x=1, power=4),
              F("a", const=1, x=1, power=7)),
            T(-16, F("a", const=-1, x=1), F("a", x=1, power=6),
              F("a", const=1, x=1, power=6)),
            T(7, F("a", x=1, power=8), F("a", const=1, x=1, power=5)),
        )),
        {"a": "somos4"}, grid(x=range(2, 14))))

    # near-addition: combine windows at K and J
    add(_entry(
        Relation("somos4-near-addition", ("a",), ("K", "J"), (
            T(-1, F("a", K=1, J=1), F("a", const=1, K=1, J=-1)),
            T(1, F("a", const=-1, K=1), F("a", const=2, K=1), F("a", J=1),
              F("a", const=2, J=1)),
            T(-1, F("a", const=-1, K=1), F("a", const=2, K=1),
              F("a", const=1, J=1, power=2)),
            T(-1, F("a", K=1), F("a", const=1, K=1), F("a", J=1),
              F("a", const=2, J=1)),
            T(2, F("a", K=1), F("a", const=1, K=1),
              F("a", const=1, J=1, power=2)),
        )),
        {"a": "somos4"}, grid(K=range(3, 12), J=range(1, 8))))
    add(_entry(
        Relation("somos5-near-addition", ("b",), ("K", "J"), (
            T(-1, F("b", const=1, K=1, J=-1), F("b", K=1, J=1)),
            T(2, F("b", K=1), F("b", const=1, K=1), F("b", const=1, J=1),
              F("b", const=2, J=1)),
            T(-1, F("b", K=1), F("b", const=1, K=1), F("b", J=1),
              F("b", const=3, J=1)),
            T(-1, F("b", const=-1, K=1), F("b", const=2, K=1),
              F("b", const=1, J=1), F("b", const=2, J=1)),
            T(1, F("b", const=-1, K=1), F("b", const=2, K=1), F("b", J=1),
              F("b", const=3, J=1)),
        )),
        {"b": "somos5"}, grid(K=range(3, 12), J=range(1, 8))))

    # mixed identities joining the antisymmetric and symmetric families
    add(_entry(
        Relation("mixed-three-term", ("A", "a"), ("n",), (
            T(1, F("A", n=1), F("a", n=1)),
            T(-1, F("A", const=-1, n=1), F("a", const=1, n=1)),
            T(1, F("A", const=-2, n=1), F("a", const=2, n=1)),
        )),
        {"A": "a051138", "a": "somos4"}, grid(n=range(-8, 16))))
    add(_entry(
        Relation("mixed-general", ("A", "a"), ("n", "k"), (
            T(1, F("A", n=1), F("a", k=1), F("a", const=-3, k=1, n=-1)),
            T(-1, F("A", const=1, n=1), F("a", const=-1, k=1),
              F("a", const=-2, k=1, n=-1)),
            T(1, F("A", const=2, n=1), F("a", const=-2, k=1),
              F("a", const=-1, k=1, n=-1)),
        )),
        {"A": "a051138", "a": "somos4"},
        grid(n=range(-4, 8), k=range(-2, 10))))
    add(_entry(
        Relation("mixed-general-k", ("A", "a"), ("n", "k"), (
            T(1, F("A", n=1), F("a", const=-2, k=1), F("a", const=1, k=1, n=-1)),
            T(-1, F("A", const=-1, n=1), F("a", const=-1, k=1),
              F("a", k=1, n=-1)),
            T(1, F("A", const=-2, n=1), F("a", k=1),
              F("a", const=-1, k=1, n=-1)),
        )),
        {"A": "a051138", "a": "somos4"},
        grid(n=range(-4, 8), k=range(-2, 10))))
    add(_entry(
        Relation("mixed-speedup", ("A", "a"), ("n", "k"), (
            T(1, F("A", k=1, power=2), F("a", n=1), F("a", n=1, k=4)),
            T(-1, F("A", k=2, power=2), F("a", n=1, k=1), F("a", n=1, k=3)),
            T(1, F("A", k=1), F("A", k=3), F("a", n=1, k=2, power=2)),
        )),
        {"A": "a051138", "a": "somos4"},
        grid(n=range(-3, 8), k=range(1, 6))))
    add(_entry(
        Relation("mixed-trivariate", ("A", "a"), ("n", "k", "j"), (
            T(1, F("A", j=1), F("A", k=1), F("a", n=1),
              F("a", n=1, k=-1, j=-3)),
            T(-1, F("A", j=2), F("A", k=1, j=1), F("a", n=1, j=-1),
              F("a", n=1, k=-1, j=-2)),
            T(1, F("A", j=1), F("A", k=1, j=2), F("a", n=1, j=-2),
              F("a", n=1, k=-1, j=-1)),
        )),
        {"A": "a051138", "a": "somos4"},
        grid(n=range(0, 7), k=range(1, 5), j=range(1, 4))))
    add(_entry(
        Relation("pure-trivariate", ("A",), ("n", "k", "j"), (
            T(1, F("A", j=1), F("A", k=1), F("A", n=1),
              F("A", n=1, k=-1, j=-3)),
            T(-1, F("A", j=2), F("A", k=1, j=1), F("A", n=1, j=-1),
              F("A", n=1, k=-1, j=-2)),
            T(1, F("A", j=1), F("A", k=1, j=2), F("A", n=1, j=-2),
              F("A", n=1, k=-1, j=-1)),
        )),
        {"A": "a051138"},
        grid(n=range(0, 7), k=range(1, 5), j=range(1, 4))))
    add(_entry(
        Relation("pure-balanced", ("A",), ("n", "k", "j"), (
            T(1, F("A", j=-1), F("A", j=1, k=-1), F("A", j=1, n=-1),
              F("A", n=1, k=1, j=1)),
            T(1, F("A", j=2), F("A", k=-1), F("A", n=-1), F("A", n=1, k=1)),
            T(-1, F("A", j=-1), F("A", k=1, j=1), F("A", n=-1, k=-1, j=1),
              F("A", n=1, j=1)),
        )),
        {"A": "a051138"},
        grid(n=range(-3, 5), k=range(-3, 5), j=range(1, 4))))
    add(_entry(
        Relation("mixed-four-point", ("A", "a"), ("i", "j", "k", "n"), (
            T(1, F("A", k=1, i=-1), F("a", k=1, i=1), F("A", j=1, n=-1),
              F("a", n=1, j=1)),
            T(-1, F("A", j=1, i=-1), F("a", j=1, i=1), F("A", k=1, n=-1),
              F("a", n=1, k=1)),
            T(-1, F("A", k=1, j=-1), F("a", k=1, j=1), F("A", i=1, n=-1),
              F("a", n=1, i=1)),
        )),
        {"A": "a051138", "a": "somos4"},
        grid(i=(0, 1), j=(2, 3), k=(4, 5), n=(-1, 0, 6))))
    add(_entry(
        Relation("pure-four-point", ("A",), ("i", "j", "k", "n"), (
            T(1, F("A", k=1, i=-1), F("A", k=1, i=1), F("A", j=1, n=-1),
              F("A", n=1, j=1)),
            T(-1, F("A", j=1, i=-1), F("A", j=1, i=1), F("A", k=1, n=-1),
              F("A", n=1, k=1)),
            T(-1, F("A", k=1, j=-1), F("A", k=1, j=1), F("A", i=1, n=-1),
              F("A", n=1, i=1)),
        )),
        {"A": "a051138"},
        grid(i=(0, 1), j=(2, 3), k=(4, 5), n=(-1, 0, 6))))
    add(_entry(
        Relation("square-window-bridge", ("A", "a"), ("k",), (
            T(1, F("A", k=1, power=2)),
            T(-1, F("a", k=1), F("a", const=3, k=1)),
            T(1, F("a", const=1, k=1), F("a", const=2, k=1)),
        )),
        {"A": "a051138", "a": "somos4"}, grid(k=range(-8, 14))))

    # elliptic divisibility identities on the unit-weight family
    add(_entry(
        Relation("eds-determinant", ("s",), ("n", "y"), (
            T(-1, F("s", n=1, y=-1), F("s", n=1, y=1)),
            T(-1, F("s", n=1, power=2), F("s", const=-1, y=1),
              F("s", const=1, y=1)),
            T(1, F("s", const=-1, n=1), F("s", const=1, n=1),
              F("s", y=1, power=2)),
        )),
        {"s": "a006769"}, grid(n=range(-4, 12), y=range(0, 8))))
    add(_entry(
        Relation("eds-two-point", ("s",), ("a", "b"), (
            T(1, F("s", b=1, a=-1), F("s", b=1, a=1)),
            T(-1, F("s", a=1, power=2), F("s", const=-1, b=1),
              F("s", const=1, b=1)),
            T(1, F("s", const=-1, a=1), F("s", const=1, a=1),
              F("s", b=1, power=2)),
        )),
        {"s": "a006769"}, grid(a=range(-3, 8), b=range(-3, 8))))
    add(_entry(
        Relation("eds-speedup", ("s",), ("n", "k"), (
            T(1, F("s", k=1, power=2), F("s", n=1), F("s", n=1, k=4)),
            T(-1, F("s", k=2, power=2), F("s", n=1, k=1), F("s", n=1, k=3)),
            T(1, F("s", k=1), F("s", k=3), F("s", n=1, k=2, power=2)),
        )),
        {"s": "a006769"}, grid(n=range(-5, 8), k=range(1, 6))))
    add(_entry(
        Relation("eds-four-point", ("s",), ("i", "j", "k", "n"), (
            T(1, F("s", k=1, i=-1), F("s", k=1, i=1), F("s", j=1, n=-1),
              F("s", n=1, j=1)),
            T(-1, F("s", j=1, i=-1), F("s", j=1, i=1), F("s", k=1, n=-1),
              F("s", n=1, k=1)),
            T(-1, F("s", k=1, j=-1), F("s", k=1, j=1), F("s", i=1, n=-1),
              F("s", n=1, i=1)),
        )),
        {"s": "a006769"},
        grid(i=(0, 1), j=(2, 3), k=(4, 5), n=(-1, 0, 6))))
    add(_entry(
        Relation("eds-trivariate", ("s",), ("j", "k", "n"), (
            T(-1, F("s", j=2), F("s", k=1), F("s", n=1), F("s", n=1, k=1)),
            T(1, F("s", j=1), F("s", k=1, j=-1), F("s", n=1, j=-1),
              F("s", n=1, k=1, j=1)),
            T(1, F("s", j=1), F("s", k=1, j=1), F("s", n=1, j=1),
              F("s", n=1, k=1, j=-1)),
        )),
        {"s": "a006769"},
        grid(j=range(1, 5), k=range(-3, 6), n=range(-3, 6))))
    add(_entry(
        Relation("eds-balanced", ("s",), ("j", "k", "n"), (
            T(-1, F("s", j=2), F("s", k=1, j=1), F("s", n=-1, k=-1, j=-1),
              F("s", n=1)),
            T(1, F("s", j=-1), F("s", k=-1), F("s", j=1, n=-1),
              F("s", n=1, k=1, j=2)),
            T(-1, F("s", j=-1), F("s", k=1, j=2), F("s", n=-1, k=-1),
              F("s", n=1, j=1)),
        )),
        {"s": "a006769"},
        grid(j=range(1, 4), k=range(-3, 5), n=range(-3, 5))))
    add(_entry(
        Relation("eds-doubling-odd", ("s",), ("n",), (
            T(-1, F("s", const=-1, n=2)),
            T(1, F("s", const=-1, n=1, power=3), F("s", const=1, n=1)),
            T(-1, F("s", const=-2, n=1), F("s", n=1, power=3)),
        )),
        {"s": "a006769"}, grid(n=range(-6, 13))))
    add(_entry(
        Relation("eds-doubling-even", ("s",), ("n",), (
            T(-1, F("s", n=2)),
            T(1, F("s", const=-1, n=1, power=2), F("s", const=2, n=1),
              F("s", n=1)),
            T(-1, F("s", const=-2, n=1), F("s", const=1, n=1, power=2),
              F("s", n=1)),
        )),
        {"s": "a006769"}, grid(n=range(-6, 13))))

    # even-index structure of the order-five family
    add(_entry(
        Relation("somos5-even-fourth-a", ("b",), ("k",), (
            T(1, F("b", const=2, k=2), F("b", const=-1, k=2, power=2)),
            T(-1, F("b", const=2, k=2), F("b", k=2), F("b", const=-2, k=2)),
            T(1, F("b", const=-2, k=2), F("b", const=1, k=2, power=2)),
            T(-3, F("b", k=2), F("b", const=-1, k=2), F("b", const=1, k=2)),
            T(2, F("b", k=2, power=3)),
        )),
        {"b": "somos5"}, grid(k=range(1, 12))))
    add(_entry(
        Relation("somos5-even-fourth-b", ("b",), ("k",), (
            T(3, F("b", const=-1, k=2, power=2), F("b", const=2, k=2)),
            T(-4, F("b", k=2), F("b", const=-2, k=2), F("b", const=2, k=2)),
            T(3, F("b", const=-2, k=2), F("b", const=1, k=2, power=2)),
            T(-7, F("b", k=2), F("b", const=-1, k=2), F("b", const=1, k=2)),
            T(5, F("b", k=2, power=3)),
        )),
        {"b": "somos5"}, grid(k=range(1, 12))))
    add(_entry(
        Relation("somos5-third-order-odd", ("b",), ("k",), (
            T(1, F("b", const=-2, k=2, power=2), F("b", const=1, k=2, power=2)),
            T(2, F("b", const=-1, k=2, power=3), F("b", const=1, k=2)),
            T(-5, F("b", k=2), F("b", const=-2, k=2), F("b", const=-1, k=2),
              F("b", const=1, k=2)),
            T(-1, F("b", k=2, power=2), F("b", const=-1, k=2, power=2)),
            T(3, F("b", k=2, power=3), F("b", const=-2, k=2)),
        )),
        {"b": "somos5"}, grid(k=range(1, 12))))
    add(_entry(
        Relation("somos5-third-order-even", ("b",), ("k",), (
            T(2, F("b", const=-3, k=2), F("b", const=-1, k=2, power=3)),
            T(-1, F("b", const=-2, k=2, power=2), F("b", const=-1, k=2, power=2)),
            T(-5, F("b", k=2), F("b", const=-3, k=2), F("b", const=-2, k=2),
              F("b", const=-1, k=2)),
            T(3, F("b", k=2), F("b", const=-2, k=2, power=3)),
            T(1, F("b", k=2, power=2), F("b", const=-3, k=2, power=2)),
        )),
        {"b": "somos5"}, grid(k=range(2, 13))))

    # duplication quartics indexed by residue class
    add(_entry(
        Relation("somos5-duplication-4x-1", ("b",), ("x",), (
            T(1, F("b", const=2, x=2, power=2), F("b", const=-1, x=4, power=2)),
            T(6, F("b", x=2, power=3), F("b", const=2, x=2, power=3),
              F("b", const=-1, x=4)),
            T(-21, F("b", x=2, power=2), F("b", const=1, x=2, power=2),
              F("b", const=2, x=2, power=2), F("b", const=-1, x=4)),
            T(16, F("b", x=2), F("b", const=1, x=2, power=4),
              F("b", const=2, x=2), F("b", const=-1, x=4)),
            T(-4, F("b", const=1, x=2, power=6), F("b", const=-1, x=4)),
            T(9, F("b", x=2, power=6), F("b", const=2, x=2, power=4)),
            T(-36, F("b", x=2, power=5), F("b", const=1, x=2, power=2),
              F("b", const=2, x=2, power=3)),
            T(57, F("b", x=2, power=4), F("b", const=1, x=2, power=4),
              F("b", const=2, x=2, power=2)),
            T(-36, F("b", x=2, power=3), F("b", const=1, x=2, power=6),
              F("b", const=2, x=2)),
            T(8, F("b", x=2, power=2), F("b", const=1, x=2, power=8)),
        )),
        {"b": "somos5"}, grid(x=range(1, 8))))
    add(_entry(
        Relation("somos5-duplication-4x", ("b",), ("x",), (
            T(-3, F("b", x=2, power=2), F("b", const=2, x=2, power=2)),
            T(4, F("b", x=2), F("b", const=1, x=2, power=2),
              F("b", const=2, x=2)),
            T(-2, F("b", const=1, x=2, power=4)),
            T(1, F("b", x=4)),
        )),
        {"b": "somos5"}, grid(x=range(0, 9))))
    add(_entry(
        Relation("somos5-duplication-4x+1", ("b",), ("x",), (
            T(1, F("b", x=2, power=2), F("b", const=1, x=4, power=2)),
            T(6, F("b", x=2, power=3), F("b", const=2, x=2, power=3),
              F("b", const=1, x=4)),
            T(-21, F("b", x=2, power=2), F("b", const=1, x=2, power=2),
              F("b", const=2, x=2, power=2), F("b", const=1, x=4)),
            T(16, F("b", x=2), F("b", const=1, x=2, power=4),
              F("b", const=2, x=2), F("b", const=1, x=4)),
            T(-4, F("b", const=1, x=2, power=6), F("b", const=1, x=4)),
            T(9, F("b", x=2, power=4), F("b", const=2, x=2, power=6)),
            T(-36, F("b", x=2, power=3), F("b", const=1, x=2, power=2),
              F("b", const=2, x=2, power=5)),
            T(57, F("b", x=2, power=2), F("b", const=1, x=2, power=4),
              F("b", const=2, x=2, power=4)),
            T(-36, F("b", x=2), F("b", const=1, x=2, power=6),
              F("b", const=2, x=2, power=3)),
            T(8, F("b", const=1, x=2, power=8), F("b", const=2, x=2, power=2)),
        )),
        {"b": "somos5"}, grid(x=range(1, 8))))
    add(_entry(
        Relation("somos5-duplication-4x+2", ("b",), ("x",), (
            T(1, F("b", x=2, power=4), F("b", const=2, x=4, power=2)),
            T(-6, F("b", x=2, power=4), F("b", const=2, x=2, power=4),
              F("b", const=2, x=4)),
            T(32, F("b", x=2, power=3), F("b", const=1, x=2, power=2),
              F("b", const=2, x=2, power=3), F("b", const=2, x=4)),
            T(-62, F("b", x=2, power=2), F("b", const=1, x=2, power=4),
              F("b", const=2, x=2, power=2), F("b", const=2, x=4)),
            T(40, F("b", x=2), F("b", const=1, x=2, power=6),
              F("b", const=2, x=2), F("b", const=2, x=4)),
            T(-8, F("b", const=1, x=2, power=8), F("b", const=2, x=4)),
            T(9, F("b", x=2, power=4), F("b", const=2, x=2, power=8)),
            T(-48, F("b", x=2, power=3), F("b", const=1, x=2, power=2),
              F("b", const=2, x=2, power=7)),
            T(86, F("b", x=2, power=2), F("b", const=1, x=2, power=4),
              F("b", const=2, x=2, power=6)),
            T(-56, F("b", x=2), F("b", const=1, x=2, power=6),
              F("b", const=2, x=2, power=5)),
            T(12, F("b", const=1, x=2, power=8), F("b", const=2, x=2, power=4)),
        )),
        {"b": "somos5"}, grid(x=range(0, 8))))

    # mixed identities for the order-five pair
    add(_entry(
        Relation("mixed5-general", ("B", "b"), ("n", "k"), (
            T(1, F("B", n=2), F("b", k=1), F("b", const=-3, k=1, n=-2)),
            T(-1, F("B", const=1, n=2), F("b", const=-1, k=1),
              F("b", const=-2, k=1, n=-2)),
            T(1, F("B", const=2, n=2), F("b", const=-2, k=1),
              F("b", const=-1, k=1, n=-2)),
        )),
        {"B": "eds5", "b": "somos5"},
        grid(n=range(-3, 6), k=range(-2, 10))))
    add(_entry(
        Relation("mixed5-speedup", ("B", "b"), ("n", "k"), (
            T(1, F("B", k=1), F("B", k=2), F("b", n=1), F("b", n=1, k=5)),
            T(-1, F("B", k=2), F("B", k=3), F("b", n=1, k=1),
              F("b", n=1, k=4)),
            T(1, F("B", k=1), F("B", k=4), F("b", n=1, k=2),
              F("b", n=1, k=3)),
        )),
        {"B": "eds5", "b": "somos5"},
        grid(n=range(-3, 7), k=range(1, 5))))
    add(_entry(
        Relation("mixed5-trivariate", ("B", "b"), ("n", "k", "j"), (
            T(1, F("B", j=1), F("B", k=2), F("b", n=1),
              F("b", n=1, k=-2, j=-3)),
            T(-1, F("B", j=2), F("B", k=2, j=1), F("b", n=1, j=-1),
              F("b", n=1, k=-2, j=-2)),
            T(1, F("B", j=1), F("B", k=2, j=2), F("b", n=1, j=-2),
              F("b", n=1, k=-2, j=-1)),
        )),
        {"B": "eds5", "b": "somos5"},
        grid(n=range(0, 6), k=range(1, 4), j=range(1, 4))))
    add(_entry(
        Relation("pure5-trivariate", ("B",), ("n", "k", "j"), (
            T(1, F("B", j=1), F("B", k=2), F("B", n=1),
              F("B", n=1, k=-2, j=-3)),
            T(-1, F("B", j=2), F("B", k=2, j=1), F("B", n=1, j=-1),
              F("B", n=1, k=-2, j=-2)),
            T(1, F("B", j=1), F("B", k=2, j=2), F("B", n=1, j=-2),
              F("B", n=1, k=-2, j=-1)),
        )),
        {"B": "eds5"},
        grid(n=range(0, 6), k=range(1, 4), j=range(1, 4))))

    # seventh-order family: the index-doubling sixth-degree relation
    t2_monos = (
        (1, {6: 2, 5: 1, 3: 1, 1: 1}), (1, {6: 1, 5: 2, 4: 1, 1: 1}),
        (1, {6: 1, 5: 2, 3: 1, 2: 1}), (1, {5: 3, 4: 1, 2: 1}),
        (1, {6: 2, 3: 3}), (2, {6: 1, 5: 1, 4: 1, 3: 2}),
        (1, {5: 2, 4: 2, 3: 1}),
    )
    t1_monos = (
        (1, {6: 2, 5: 1, 2: 1, 1: 2}), (1, {6: 2, 4: 1, 3: 1, 1: 2}),
        (2, {6: 1, 5: 1, 4: 2, 1: 2}), (2, {6: 1, 5: 2, 2: 2, 1: 1}),
        (2, {6: 2, 3: 2, 2: 1, 1: 1}),
        (-56, {6: 1, 5: 1, 4: 1, 3: 1, 2: 1, 1: 1}),
        (2, {5: 2, 4: 2, 2: 1, 1: 1}), (2, {6: 1, 4: 2, 3: 2, 1: 1}),
        (2, {5: 1, 4: 3, 3: 1, 1: 1}), (1, {5: 3, 2: 3}),
        (2, {6: 1, 5: 1, 3: 2, 2: 2}), (3, {5: 2, 4: 1, 3: 1, 2: 2}),
        (2, {6: 1, 4: 1, 3: 3, 2: 1}), (2, {5: 1, 4: 2, 3: 2, 2: 1}),
    )
    t0_monos = (
        (1, {6: 2, 4: 1, 2: 1, 1: 3}), (1, {6: 1, 4: 3, 1: 3}),
        (1, {6: 2, 3: 1, 2: 2, 1: 2}), (2, {6: 1, 5: 1, 4: 1, 2: 2, 1: 2}),
        (3, {6: 1, 4: 2, 3: 1, 2: 1, 1: 2}), (1, {5: 1, 4: 3, 2: 1, 1: 2}),
        (1, {4: 4, 3: 1, 1: 2}), (2, {6: 1, 5: 1, 3: 1, 2: 3, 1: 1}),
        (1, {5: 2, 4: 1, 2: 3, 1: 1}), (2, {6: 1, 4: 1, 3: 2, 2: 2, 1: 1}),
        (3, {5: 1, 4: 2, 3: 1, 2: 2, 1: 1}), (2, {4: 3, 3: 2, 2: 1, 1: 1}),
        (1, {5: 2, 3: 1, 2: 4}), (2, {5: 1, 4: 1, 3: 2, 2: 3}),
        (1, {4: 2, 3: 3, 2: 2}),
    )

    def _d7_terms():
        terms = []
        for head_power, monos in ((2, t2_monos), (1, t1_monos), (0, t0_monos)):
            for coeff, exps in monos:
                factors = []
                if head_power:
                    factors.append(F("d", k=1, power=head_power))
                for j, e in sorted(exps.items()):
                    factors.append(F("d", const=-j, k=1, power=e))
                terms.append(T(coeff, *factors))
        return tuple(terms)

    add(_entry(
        Relation("somos7-index-double", ("d",), ("k",), _d7_terms(),
                 note="degree-seven relation binding a term to its six"
                      " predecessors, quadratic in the newest term"),
        {"d": "somos7"}, grid(k=range(7, 18))))

    # symbolic bridge family over QQ(y)
    add(_entry(
        Relation("bridge-order4", ("t",), ("n",), (
            T(1, F("t", n=1), F("t", const=-4, n=1)),
            T(lambda d, c: d.neg(d.from_poly(Polynomial((0,) * 10 + (1,)))),
              F("t", const=-3, n=1), F("t", const=-1, n=1)),
            T(_ypow(8), F("t", const=-2, n=1, power=2)),
        )),
        {"t": "t_bridge"}, grid(n=range(5, 13))))
    add(_entry(
        Relation("bridge-order5", ("t",), ("n",), (
            T(1, F("t", n=1), F("t", const=-5, n=1)),
            T(lambda d, c: d.neg(d.from_poly(Polynomial((0,) * 12 + (1,)))),
              F("t", const=-3, n=1), F("t", const=-2, n=1)),
            T(lambda d, c: d.neg(d.from_poly(Polynomial((0,) * 8 + (1,)))),
              F("t", const=-4, n=1), F("t", const=-1, n=1)),
        )),
        {"t": "t_bridge"}, grid(n=range(6, 13))))
    add(_entry(
        Relation("bridge-elimination", ("t",), ("n",), (
            T(_ypow(10), F("t", const=-2, n=1, power=3), F("t", n=1)),
            T(_ypow(10), F("t", const=-3, n=1), F("t", const=-1, n=1, power=3)),
            T(_ypow(4), F("t", const=-3, n=1), F("t", const=-2, n=1),
              F("t", const=-1, n=1), F("t", n=1)),
            T(1, F("t", const=-3, n=1, power=2), F("t", n=1, power=2)),
            T(lambda d, c: d.neg(d.from_poly(Polynomial((0,) * 12 + (1,)))),
              F("t", const=-3, n=1), F("t", const=-2, n=1),
              F("t", const=-1, n=1), F("t", n=1)),
            T(lambda d, c: d.neg(d.from_poly(Polynomial((0,) * 8 + (1,)))),
              F("t", const=-2, n=1, power=2), F("t", const=-1, n=1, power=2)),
        ), note="eliminating the weight between the order-4 and order-5 rules"),
        {"t": "t_bridge"}, grid(n=range(5, 12))))

    # documented failure: the even-index subsequence of the antisymmetric
    # order-4 family is *not* itself a unit-weight order-4 sequence
    add(CatalogEntry(
        relation=Relation("even-subsequence-not-somos4", ("E",), ("n",), (
            T(1, F("E", n=1), F("E", const=-4, n=1)),
            T(-1, F("E", const=-1, n=1), F("E", const=-3, n=1)),
            T(-1, F("E", const=-2, n=1, power=2)),
        )),
        views=lambda: {"E": TransformedView(named_view("a051138"),
                                            index_fn=lambda n: 2 * n)},
        cases=lambda: grid(n=range(2, 10)),
        expect_holds=False,
        witness={"case": {"n": 3}, "residual": "-30"},
        note="kept because the analogous odd/even splits do hold elsewhere",
    ))

    return entries


_CATALOG = None


def catalog():
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
    return _CATALOG


def catalog_names():
    return sorted(catalog())


def run_entry(name):
    """Verify one catalog entry by name and return its report."""
    entry = catalog()[name]
    return verify_relation(entry.relation, entry.views(), entry.cases())


def run_catalog(names=None):
    """Verify a set of entries (default: all) and return reports in order."""
    picked = catalog_names() if names is None else list(names)
    return [run_entry(name) for name in picked]
