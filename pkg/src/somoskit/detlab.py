"""Determinants of shifted-term products, exact and numeric.

The central object is the n x n determinant whose (i, j) entry is
s_{x_i - y_j} * s_{x_i + y_j} for a bound sequence s and offset vectors
xs, ys.  Offsets may be half-integers as long as every x_i +- y_j lands
on a whole number, which is exactly the condition DetSpec validates.

Exact determinants run over whatever domain the bound view carries
(rationals, prime fields, quadratic extensions, rational functions),
using fraction-free elimination by default and cofactor expansion as an
independent cross-check.  A registry of suites replays the vanishing
and witness identities over exhaustive small grids plus seeded random
draws; the five-point suites also re-check their expanded addition
formulas term by term.

The numeric half evaluates the same determinant shapes with Jacobi
theta factors (any index pair) or plain sines at complex points, scaled
relative tolerance 1e-10, plus the three-term four-variable identity
that specializing one row yields.
"""

import cmath
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

from .arith import ComplexDomain, NumericOverflow
from .relations import F, Relation, T, relation_residual
from .sequences import GapAtIndex, named_view
from .thetanum import NonConvergent, theta

_HALF = Fraction(1, 2)
_CDOM = ComplexDomain()


def _offset(value, what):
    fr = Fraction(value)
    if fr.denominator > 2:
        raise ValueError("%s offset %s has denominator > 2" % (what, fr))
    return fr


@dataclass(frozen=True)
class DetSpec:
    """Offset vectors, the sequence view they act on, and an optional
    theta index pair (s, t) for the numeric mixed mode."""

    xs: tuple
    ys: tuple
    view: object = None
    theta: tuple = None

    def __post_init__(self):
        xs = tuple(_offset(x, "row") for x in self.xs)
        ys = tuple(_offset(y, "column") for y in self.ys)
        if len(xs) != len(ys):
            raise ValueError("offset vectors differ in length: %d vs %d"
                             % (len(xs), len(ys)))
        if not xs:
            raise ValueError("empty offset vectors")
        for x in xs:
            for y in ys:
                if (x - y).denominator != 1:
                    raise ValueError(
                        "x - y = %s is not an integer for x=%s, y=%s"
                        % (x - y, x, y))
        if self.theta is not None:
            pair = tuple(self.theta)
            if len(pair) != 2 or not all(j in (1, 2, 3, 4) for j in pair):
                raise ValueError("theta pair must be two indices in 1..4")
            object.__setattr__(self, "theta", pair)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @property
    def size(self):
        return len(self.xs)

    def interchanged(self):
        """The same spec with row and column offsets swapped."""
        return DetSpec(self.ys, self.xs, self.view, self.theta)


def d_matrix(spec):
    """The matrix of s_{x-y} s_{x+y} products over the view's domain."""
    view = spec.view
    if view is None:
        raise ValueError("spec has no sequence view bound")
    dom = view.domain
    return [
        [dom.mul(view.term(int(x - y)), view.term(int(x + y)))
         for y in spec.ys]
        for x in spec.xs
    ]


def _laplace(rows, dom):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = dom.zero
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = dom.mul(rows[0][j], _laplace(minor, dom))
        total = dom.add(total, term) if j % 2 == 0 else dom.sub(total, term)
    return total


def _fraction_free(rows, dom):
    """Bareiss elimination; all divisions are exact in an integral domain."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = dom.one
    for k in range(n - 1):
        if dom.is_zero(m[k][k]):
            swap = next((i for i in range(k + 1, n)
                         if not dom.is_zero(m[i][k])), None)
            if swap is None:
                return dom.zero
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = dom.sub(dom.mul(m[k][k], m[i][j]),
                              dom.mul(m[i][k], m[k][j]))
                m[i][j] = dom.div(num, prev)
            m[i][k] = dom.zero
        prev = m[k][k]
    out = m[n - 1][n - 1]
    return dom.neg(out) if sign < 0 else out


def d_det(spec, method=None):
    """Exact determinant of d_matrix(spec).

    method: None picks cofactor expansion up to 3x3 and fraction-free
    elimination above that; "laplace" or "fraction-free" force one.
    """
    rows = d_matrix(spec)
    dom = spec.view.domain
    if method is None:
        method = "laplace" if len(rows) <= 3 else "fraction-free"
    if method == "laplace":
        return _laplace(rows, dom)
    if method == "fraction-free":
        return _fraction_free(rows, dom)
    raise ValueError("unknown method %r" % method)


def monomial_subscripts(spec):
    """(sign, subscripts) per permutation of the expanded determinant.

    Subscripts stay symbolic (just the integers x_i -+ y_sigma(i)), so the
    bookkeeping invariant is visible without evaluating any sequence term.
    """
    n = spec.size
    out = []
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        subs = []
        for i, x in enumerate(spec.xs):
            y = spec.ys[perm[i]]
            subs.append(x - y)
            subs.append(x + y)
        out.append((sign, tuple(subs)))
    return out


def subscript_sum_check(spec):
    """Every expanded monomial's subscript sum equals 2 * sum(xs)."""
    want = 2 * sum(spec.xs)
    return all(sum(subs) == want for _, subs in monomial_subscripts(spec))


@dataclass(frozen=True)
class DodgsonResult:
    consistent: bool
    central_nonzero: bool


def dodgson_check(spec):
    """Condensation consistency for a 4x4 spec.

    det(A) * det(central 2x2) must equal the 3x3 corner-minor cross
    difference; the division form of the rule additionally needs the
    central minor nonzero, which the result reports alongside.
    """
    if spec.size != 4:
        raise ValueError("condensation check needs a 4x4 spec")
    m = d_matrix(spec)
    dom = spec.view.domain
    inner = _laplace([r[1:3] for r in m[1:3]], dom)
    tl = _laplace([r[0:3] for r in m[0:3]], dom)
    br = _laplace([r[1:4] for r in m[1:4]], dom)
    tr = _laplace([r[1:4] for r in m[0:3]], dom)
    bl = _laplace([r[0:3] for r in m[1:4]], dom)
    lhs = dom.mul(_laplace(m, dom), inner)
    rhs = dom.sub(dom.mul(tl, br), dom.mul(tr, bl))
    return DodgsonResult(consistent=dom.eq(lhs, rhs),
                         central_nonzero=not dom.is_zero(inner))


# -- expanded addition formulas -------------------------------------------------

# Cofactor expansions of the five-point determinants along their variable
# column, one relation per spelling.  Each non-pivot term is an integer
# coefficient times an x-indexed product pair times a y-indexed pair.

def _expansion(name, slot, pivot, x_pairs, y_rows, note):
    terms = [T(pivot[0], F(slot, pivot[1], x=1, y=-1), F(slot, 0, x=1, y=1))]
    for (ya, yb), coeffs in y_rows:
        for (xa, xb), coef in zip(x_pairs, coeffs):
            if coef == 0:
                continue
            terms.append(T(coef,
                           F(slot, xa, x=1), F(slot, xb, x=1),
                           F(slot, ya, y=1), F(slot, yb, y=1)))
    return Relation(name=name, slots=(slot,), params=("x", "y"),
                    terms=tuple(terms), note=note)


SOMOS6_FIVEPOINT_V1 = _expansion(
    "somos6-fivepoint-v1", "c", (80, 0),
    x_pairs=((-4, 4), (-3, 3), (-1, 1), (0, 0)),
    y_rows=(
        ((-1, 6), (4, 12, -52, -44)),
        ((1, 4), (-16, -88, 328, 176)),
        ((3, 2), (-28, -44, 284, 188)),
        ((5, 0), (8, 24, -144, -48)),
    ),
    note="integer-offset spelling; sum vanishes on the sequence",
)

SOMOS6_FIVEPOINT_V2 = _expansion(
    "somos6-fivepoint-v2", "c", (80, 1),
    x_pairs=((-3, 4), (-2, 3), (-1, 2), (0, 1)),
    y_rows=(
        ((-2, 6), (4, 8, -16, -28)),
        ((-1, 5), (-32, -24, 88, 144)),
        ((0, 4), (44, 48, -176, -188)),
        ((1, 3), (-8, -96, 152, 96)),
    ),
    note="half-integer spelling, four right-hand clusters",
)

SOMOS7_FIVEPOINT = _expansion(
    "somos7-fivepoint", "d", (160, 1),
    x_pairs=((-4, 5), (-2, 3), (-1, 2), (0, 1)),
    y_rows=(
        ((-2, 7), (4, 12, -28, -44)),
        ((0, 5), (12, 36, -164, -52)),
        ((1, 4), (-28, -164, 356, 228)),
        ((2, 3), (-44, -52, 228, 324)),
    ),
    note="order-7 analogue of the half-integer spelling",
)


# -- suite registry --------------------------------------------------------------


@dataclass
class DetReport:
    suite: str
    domain: str
    checked: int = 0
    gaps: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    values: dict = field(default_factory=dict)

    @property
    def holds(self):
        return self.checked > 0 and not self.failures

    def as_dict(self):
        return {
            "suite": self.suite,
            "domain": self.domain,
            "checked": self.checked,
            "gaps": self.gaps,
            "failures": self.failures,
            "values": self.values,
            "holds": self.holds,
        }


def _c4_cases(small, draws, box, seed):
    for combo in product(range(-small, small + 1), repeat=6):
        yield combo
    rng = random.Random(seed)
    for _ in range(draws):
        yield tuple(rng.randint(-box, box) for _ in range(6))


def _conjecture4(seq="somos4", small=2, draws=10000, box=8, seed=20260816,
                 shift=0):
    view = named_view(seq)
    def items():
        for combo in _c4_cases(small, draws, box, seed):
            case = dict(zip("uvwxyz", combo))
            xs = tuple(v + shift * _HALF for v in combo[:3])
            ys = tuple(v - shift * _HALF for v in combo[3:])
            yield case, DetSpec(xs, ys, view), 0
    return view, items()


def _conjecture45a(**kw):
    kw.setdefault("small", 1)
    kw.setdefault("draws", 2000)
    kw.setdefault("box", 6)
    return _conjecture4(seq="somos4", shift=1, **kw)


def _conjecture45b(**kw):
    kw.setdefault("small", 1)
    kw.setdefault("draws", 2000)
    kw.setdefault("box", 6)
    return _conjecture4(seq="somos5", shift=1, **kw)


def _corollary4(draws=2000, box=6, seed=20260816):
    view = named_view("somos4")
    def items():
        rng = random.Random(seed)
        for _ in range(draws):
            combo = tuple(rng.randint(-box, box) for _ in range(8))
            case = dict(zip("stuvwxyz", combo))
            yield case, DetSpec(combo[:4], combo[4:], view), 0
    return view, items()


def _defining_somos4(lo=-6, hi=20):
    view = named_view("somos4")
    def items():
        for n in range(lo, hi + 1):
            yield {"n": n}, DetSpec((n - 2, 0, 1), (0, 1, 2), view), 0
    return view, items()


def _defining_somos5(lo=-4, hi=20):
    view = named_view("somos5")
    def items():
        for n in range(lo, hi + 1):
            xs = (n - 5 * _HALF, _HALF, 3 * _HALF)
            yield {"n": n}, DetSpec(xs, (_HALF, 3 * _HALF, 5 * _HALF), view), 0
    return view, items()


def _defining_somos6(lo=2, hi=20):
    view = named_view("somos6")
    def items():
        for n in range(lo, hi + 1):
            yield {"n": n}, DetSpec((n - 3, 0, 1, 2), (0, 1, 2, 3), view), 0
    return view, items()


def _defining_somos7(lo=2, hi=20):
    view = named_view("somos7")
    def items():
        for n in range(lo, hi + 1):
            xs = (n - 7 * _HALF, _HALF, 3 * _HALF, 5 * _HALF)
            ys = (_HALF, 3 * _HALF, 5 * _HALF, 7 * _HALF)
            yield {"n": n}, DetSpec(xs, ys, view), 0
    return view, items()


def _witness_somos6():
    view = named_view("somos6")
    def items():
        yield ({"label": "integer-offsets"},
               DetSpec((0, 2, 4, 6), (0, 1, 3, 4), view), 80)
        xs = (-_HALF, _HALF, 3 * _HALF, 13 * _HALF)
        ys = (_HALF, 3 * _HALF, 7 * _HALF, 5 * _HALF)
        yield {"label": "half-integer-offsets"}, DetSpec(xs, ys, view), 80
    return view, items()


def _witness_somos7():
    view = named_view("somos7")
    def items():
        xs = (-3 * _HALF, _HALF, 7 * _HALF, 9 * _HALF)
        ys = (-3 * _HALF, _HALF, 5 * _HALF, 9 * _HALF)
        yield {"label": "half-integer-offsets"}, DetSpec(xs, ys, view), 160
    return view, items()


def _fivepoint_somos6(lo=0, hi=9):
    view = named_view("somos6")
    def items():
        for x in range(lo, hi + 1):
            for y in range(lo, hi + 1):
                case = {"x": x, "y": y}
                yield (dict(case, part="det5"),
                       DetSpec((x, 0, 2, 4, 6), (y, 0, 1, 3, 4), view), 0)
                for rel in (SOMOS6_FIVEPOINT_V1, SOMOS6_FIVEPOINT_V2):
                    yield (dict(case, part=rel.name),
                           _residual_fn(rel, view, case), 0)
    return view, items()


def _fivepoint_somos7(lo=0, hi=9):
    view = named_view("somos7")
    def items():
        for x in range(lo, hi + 1):
            for y in range(lo, hi + 1):
                case = {"x": x, "y": y}
                xs = (x + _HALF, -3 * _HALF, _HALF, 7 * _HALF, 9 * _HALF)
                ys = (y - _HALF, -3 * _HALF, _HALF, 5 * _HALF, 9 * _HALF)
                yield dict(case, part="det5"), DetSpec(xs, ys, view), 0
                yield (dict(case, part=SOMOS7_FIVEPOINT.name),
                       _residual_fn(SOMOS7_FIVEPOINT, view, case), 0)
    return view, items()


def _residual_fn(rel, view, case):
    views = {rel.slots[0]: view}
    return lambda: relation_residual(rel, views, case)


def _doubling_somos4(lo=2, hi=12):
    view = named_view("somos4")
    def items():
        for x in range(lo, hi + 1):
            yield ({"x": x, "part": "even"},
                   DetSpec((x + 1, 0, 1), (x - 1, 0, 1), view), 0)
            yield ({"x": x, "part": "odd"},
                   DetSpec((x + _HALF, _HALF, 3 * _HALF),
                           (x - 3 * _HALF, 3 * _HALF, -_HALF), view), 0)
    return view, items()


def _doubling_somos5(lo=2, hi=12):
    view = named_view("somos5")
    def items():
        for x in range(lo, hi + 1):
            yield ({"x": x, "part": "even"},
                   DetSpec((x + _HALF, 3 * _HALF, _HALF),
                           (x - _HALF, -_HALF, -3 * _HALF), view), 0)
            yield ({"x": x, "part": "odd"},
                   DetSpec((x + _HALF, _HALF, 3 * _HALF),
                           (x - 3 * _HALF, 3 * _HALF, -_HALF), view), 0)
    return view, items()


def _addition_somos4(n_hi=4, x_lo=2, x_hi=6):
    view = named_view("somos4")
    def items():
        for n in range(1, n_hi + 1):
            for x in range(x_lo, x_hi + 1):
                yield ({"n": n, "x": x},
                       DetSpec((n * x + 1, 0, 1),
                               ((n + 1) * x - 1, 0, 1), view), 0)
    return view, items()


def _addition_somos5(n_hi=4, x_lo=2, x_hi=6):
    view = named_view("somos5")
    def items():
        for n in range(1, n_hi + 1):
            for x in range(x_lo, x_hi + 1):
                yield ({"n": n, "x": x},
                       DetSpec(((n + 1) * x + _HALF, _HALF, 3 * _HALF),
                               (n * x - _HALF, -3 * _HALF, -_HALF), view), 0)
    return view, items()


def _thirdorder_somos5(lo=1, hi=10):
    view = named_view("somos5")
    def items():
        for k in range(lo, hi + 1):
            xs = (k - _HALF, k + _HALF, k + 3 * _HALF)
            ys = (k - _HALF, k + _HALF, k - 3 * _HALF)
            yield {"k": k}, DetSpec(xs, ys, view), 0
    return view, items()


_SUITES = {
    "conjecture4": _conjecture4,
    "conjecture4.5a": _conjecture45a,
    "conjecture4.5b": _conjecture45b,
    "corollary4": _corollary4,
    "somos4-defining-det": _defining_somos4,
    "somos5-defining-det": _defining_somos5,
    "somos6-defining-det": _defining_somos6,
    "somos7-defining-det": _defining_somos7,
    "somos6-witness": _witness_somos6,
    "somos7-witness": _witness_somos7,
    "somos6-fivepoint": _fivepoint_somos6,
    "somos7-fivepoint": _fivepoint_somos7,
    "somos4-doubling-dets": _doubling_somos4,
    "somos5-doubling-dets": _doubling_somos5,
    "somos4-addition-dets": _addition_somos4,
    "somos5-addition-dets": _addition_somos5,
    "somos5-thirdorder-det": _thirdorder_somos5,
}


def det_suite_names():
    return sorted(_SUITES)


def run_det_suite(suite, grid=None):
    """Run one registered suite; failures are data, not exceptions.

    grid: optional dict of keyword overrides for the suite builder
    (ranges, draw counts, seed), mainly to scale runs down.
    """
    try:
        builder = _SUITES[suite]
    except KeyError:
        raise KeyError("unknown det suite %r (have: %s)"
                       % (suite, ", ".join(det_suite_names())))
    view, items = builder(**(grid or {}))
    dom = view.domain
    report = DetReport(suite=suite, domain=dom.name)
    for case, payload, want in items:
        try:
            got = d_det(payload) if isinstance(payload, DetSpec) else payload()
        except GapAtIndex as exc:
            report.gaps.append({"case": case, "reason": str(exc)})
            continue
        report.checked += 1
        want_el = dom.from_fraction(Fraction(want))
        if not dom.eq(got, want_el):
            report.failures.append({
                "case": case,
                "got": dom.serialize(got),
                "want": dom.serialize(want_el),
            })
        elif want != 0:
            report.values[case.get("label", str(case))] = dom.serialize(got)
    return report


# -- numeric theta and sine modes ------------------------------------------------


@dataclass
class NumericDetReport:
    kind: str
    checked: int
    max_residual: float
    tol: float
    worst: tuple = None

    @property
    def ok(self):
        return self.checked > 0 and self.max_residual < self.tol

    def as_dict(self):
        return {
            "kind": self.kind,
            "checked": self.checked,
            "max_residual": self.max_residual,
            "tol": self.tol,
            "ok": self.ok,
        }


def _scaled_det(rows):
    det = _laplace(rows, _CDOM)
    scale = 1.0
    for row in rows:
        scale *= max(abs(e) for e in row)
    return abs(det) / scale if scale > 0 else abs(det)


def _point_loop(kind, points, entry, tol):
    worst = -1.0
    at = None
    count = 0
    for xs, ys in points:
        if len(xs) != 3 or len(ys) != 3:
            raise ValueError("numeric checks are 3x3: need 3 + 3 points")
        rows = [[entry(x, y) for y in ys] for x in xs]
        res = _scaled_det(rows)
        count += 1
        if res > worst:
            worst, at = res, (tuple(xs), tuple(ys))
    return NumericDetReport(kind=kind, checked=count, max_residual=worst,
                            tol=tol, worst=at)


def theta_det_check(s, t, points, q, tol=1e-10, series_tol=1e-16):
    """Max scaled |det| of [theta_s(x-y) theta_t(x+y)] over point sets.

    points: iterable of (xs, ys) pairs, three complex numbers each.
    Raises NumericOverflow when the series cannot converge (|q| near 1).
    """
    def entry(x, y):
        return theta(s, x - y, q, series_tol) * theta(t, x + y, q, series_tol)
    try:
        return _point_loop("theta-%d-%d" % (s, t), points, entry, tol)
    except NonConvergent as exc:
        raise NumericOverflow("theta series stalled at |q|=%.6f" % abs(q)) from exc


def sin_det_check(points, tol=1e-10):
    """Same 3x3 vanishing with sin in place of every theta factor."""
    def entry(x, y):
        return cmath.sin(x - y) * cmath.sin(x + y)
    return _point_loop("sin", points, entry, tol)


def theta_mode_check(spec, q, tol=1e-10, series_tol=1e-16):
    """Numeric determinant of a rational-offset spec via its theta pair."""
    if spec.theta is None:
        raise ValueError("spec has no theta index pair")
    s, t = spec.theta
    xs = [complex(x) for x in spec.xs]
    ys = [complex(y) for y in spec.ys]
    return theta_det_check(s, t, [(xs, ys)], q, tol, series_tol)


def fourvars_residual(t, w, x, y, z, q, series_tol=1e-16):
    """(scaled residual, scale) of the three-term four-variable identity."""
    def half(j, u, v):
        return theta(1, u, q, series_tol) * theta(j, v, q, series_tol)
    t1 = half(t, x - w, x + w) * half(t, z - y, z + y)
    t2 = half(t, y - w, y + w) * half(t, z - x, z + x)
    t3 = half(t, y - x, y + x) * half(t, z - w, z + w)
    scale = max(abs(t1), abs(t2), abs(t3))
    resid = t1 - t2 + t3
    return (abs(resid) / scale if scale > 0 else abs(resid)), scale


def fourvars_check(t, points, q, tol=1e-10, series_tol=1e-16):
    """Max scaled three-term residual over (w, x, y, z) tuples."""
    worst = -1.0
    at = None
    count = 0
    try:
        for w, x, y, z in points:
            res, _ = fourvars_residual(t, w, x, y, z, q, series_tol)
            count += 1
            if res > worst:
                worst, at = res, (w, x, y, z)
    except NonConvergent as exc:
        raise NumericOverflow("theta series stalled at |q|=%.6f" % abs(q)) from exc
    return NumericDetReport(kind="fourvars-t%d" % t, checked=count,
                            max_residual=worst, tol=tol, worst=at)
