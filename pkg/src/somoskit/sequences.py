"""Bidirectional Somos-style sequences over pluggable exact domains.

A SomosSpec pins down a quadratic recurrence of the folded form

    s(n) * s(n-k) = sum_i  c_i * s(n-i) * s(n-(k-i)),      1 <= i <= k//2,

together with an initial window and optional structural facts (palindrome
center, antisymmetry, longer-span identities usable when the defining
recurrence divides by zero).  A SequenceView memoizes terms in both
directions over any Domain from .arith, so the same spec runs over the
rationals, a prime field, a quadratic extension, or a rational function
field.

Terms that no available identity can reach are recorded as gaps and
reported via GapAtIndex; they are never silently filled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import (
    Domain,
    PolyFracDomain,
    Polynomial,
    QQ,
    QuadExt,
    RationalFunction,
)


class GapAtIndex(ArithmeticError):
    """Raised when a requested term is unreachable by any registered identity."""

    def __init__(self, index, reason="division by zero with no usable fallback"):
        self.index = index
        self.reason = reason
        super().__init__("term %s unreachable: %s" % (index, reason))


class NotASquare(ArithmeticError):
    """A value expected to be a perfect square is not."""

    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__("value at %s is not a perfect square: %s" % (index, value))


class DegenerateTriangle(ValueError):
    """Triangle inequality fails for a proposed side triple."""


def coerce(domain, value):
    """Map an int, Fraction, or Polynomial literal into `domain`.

    Values of any other type are assumed to already be domain elements.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a sequence value")
    if isinstance(value, int):
        return domain.from_int(value)
    if isinstance(value, Fraction):
        return domain.from_fraction(value)
    if isinstance(value, Polynomial) and isinstance(domain, PolyFracDomain):
        return domain.from_poly(value)
    return value


@dataclass(frozen=True)
class SomosSpec:
    """Recurrence order, folded coefficients, and an initial window.

    coefficients[i-1] multiplies s(n-i)*s(n-(order-i)); for even order the
    final coefficient multiplies the middle square once.  window[j] seeds
    index start+j.  center, when set, asserts the palindrome s(n) =
    s(2*center - n); antisymmetric asserts s(0) = 0 and s(-n) = -s(n) and
    requires start == 1.  long_spans lists wider identities
    (span, ((coeff, off_a, off_b), ...)) meaning

        s(n) * s(n-span) = sum  coeff * s(n-off_a) * s(n-off_b)

    with off_a + off_b == span for every summand, so the same table serves
    both directions.
    """

    name: str
    order: int
    coefficients: tuple
    start: int
    window: tuple
    center: Fraction | None = None
    antisymmetric: bool = False
    long_spans: tuple = ()

    def __post_init__(self):
        if len(self.window) != self.order:
            raise ValueError("window length must equal order")
        if len(self.coefficients) != self.order // 2:
            raise ValueError("need order//2 folded coefficients")
        if self.antisymmetric and self.start != 1:
            raise ValueError("antisymmetric specs anchor their window at 1")
        for span, terms in self.long_spans:
            if span <= self.order:
                raise ValueError("long spans must exceed the order")
            for _, off_a, off_b in terms:
                if off_a + off_b != span:
                    raise ValueError("span summand offsets must add to the span")

    def defining_pairs(self):
        """(coeff, off_a, off_b) triples of the order-k recurrence."""
        k = self.order
        return tuple(
            (self.coefficients[i - 1], i, k - i) for i in range(1, k // 2 + 1)
        )


class SequenceView:
    """Memoized bidirectional evaluation of a SomosSpec over a Domain."""

    def __init__(self, spec: SomosSpec, domain: Domain = QQ):
        self.spec = spec
        self.domain = domain
        self._coeffs = tuple(coerce(domain, c) for c in spec.coefficients)
        self._span_tables = tuple(
            (span, tuple((coerce(domain, c), a, b) for c, a, b in terms))
            for span, terms in spec.long_spans
        )
        self._memo = {}
        for off, v in enumerate(spec.window):
            self._memo[spec.start + off] = coerce(domain, v)
        self._lo = spec.start
        self._hi = spec.start + spec.order - 1
        self._gaps = set()
        self._dead_fwd = None
        self._dead_bwd = None
        self._max_back = max(
            [spec.order] + [span for span, _ in spec.long_spans]
        )

    # -- lookups -----------------------------------------------------------

    def _get(self, i):
        """Memoized value at i, honoring antisymmetry; None when unknown."""
        if self.spec.antisymmetric:
            if i == 0:
                return self.domain.zero
            if i < 0:
                v = self._memo.get(-i)
                return None if v is None else self.domain.neg(v)
        return self._memo.get(i)

    def _formulas(self):
        yield self.spec.order, tuple(
            (self._coeffs[i - 1], i, self.spec.order - i)
            for i in range(1, self.spec.order // 2 + 1)
        )
        yield from self._span_tables

    def _value_at(self, m, forward):
        """Try every identity at index m; None when all divisors vanish."""
        d = self.domain
        sgn = 1 if forward else -1
        for span, pairs in self._formulas():
            div = self._get(m - sgn * span)
            if div is None or d.is_zero(div):
                continue
            acc = d.zero
            usable = True
            for coeff, off_a, off_b in pairs:
                va = self._get(m - sgn * off_a)
                vb = self._get(m - sgn * off_b)
                if va is None or vb is None:
                    usable = False
                    break
                acc = d.add(acc, d.mul(coeff, d.mul(va, vb)))
            if usable:
                return d.div(acc, div)
        return None

    def _extend_to(self, n):
        while self._hi < n:
            if self._dead_fwd is not None:
                raise GapAtIndex(n, "forward extension exhausted at %d" % self._dead_fwd)
            m = self._hi + 1
            v = self._value_at(m, forward=True)
            if v is None:
                self._gaps.add(m)
                if all(m - j in self._gaps for j in range(self._max_back)):
                    self._dead_fwd = m
            else:
                self._memo[m] = v
            self._hi = m
        while self._lo > n:
            if self._dead_bwd is not None:
                raise GapAtIndex(n, "backward extension exhausted at %d" % self._dead_bwd)
            m = self._lo - 1
            v = self._value_at(m, forward=False)
            if v is None:
                self._gaps.add(m)
                if all(m + j in self._gaps for j in range(self._max_back)):
                    self._dead_bwd = m
            else:
                self._memo[m] = v
            self._lo = m

    def term(self, n):
        """The exact term at integer index n.

        Raises GapAtIndex when the index is unreachable.
        """
        spec = self.spec
        if spec.antisymmetric:
            if n == 0:
                return self.domain.zero
            if n < 0:
                return self.domain.neg(self.term(-n))
        v = self._memo.get(n)
        if v is not None:
            return v
        if n in self._gaps:
            raise GapAtIndex(n)
        self._extend_to(n)
        if n in self._gaps:
            raise GapAtIndex(n)
        return self._memo[n]

    def terms(self, lo, hi):
        """List of terms for lo..hi inclusive."""
        return [self.term(i) for i in range(lo, hi + 1)]

    def known_gaps(self):
        return frozenset(self._gaps)

    def __repr__(self):
        return "SequenceView(%s over %s)" % (self.spec.name, self.domain.name)


def make_view(spec, domain=None):
    return SequenceView(spec, QQ if domain is None else domain)


def term(view, n):
    return view.term(n)


# -- structural checks ------------------------------------------------------


def check_palindrome(view, lo, hi, center=None, sign=1):
    """Verify s(n) == sign * s(2*center - n) on lo..hi.

    Returns None on success, else the first offending index.
    """
    c2 = 2 * (center if center is not None else view.spec.center)
    if c2 != int(c2):
        raise ValueError("reflection requires 2*center to be an integer")
    c2 = int(c2)
    d = view.domain
    for n in range(lo, hi + 1):
        mirrored = view.term(c2 - n)
        if sign < 0:
            mirrored = d.neg(mirrored)
        if not d.eq(view.term(n), mirrored):
            return n
    return None


def gauge_transform(view, c, r, mode):
    """A new view of the gauged sequence c * r^w(n) * s(n).

    mode 'geometric' uses w(n) = n and keeps the recurrence coefficients;
    mode 'quadratic' uses w(n) = n*n and multiplies coefficient i by
    r^(2*i*(order-i)).
    """
    d = view.domain
    spec = view.spec
    c = coerce(d, c)
    r = coerce(d, r)
    start = spec.start
    if mode == "geometric":
        new_window = tuple(
            d.mul(c, d.mul(d.pow(r, start + j), w))
            for j, w in enumerate(
                coerce(d, v) for v in spec.window
            )
        )
        new_coeffs = tuple(coerce(d, v) for v in spec.coefficients)
    elif mode == "quadratic":
        new_window = tuple(
            d.mul(c, d.mul(d.pow(r, (start + j) ** 2), w))
            for j, w in enumerate(
                coerce(d, v) for v in spec.window
            )
        )
        k = spec.order
        new_coeffs = tuple(
            d.mul(coerce(d, spec.coefficients[i - 1]), d.pow(r, 2 * i * (k - i)))
            for i in range(1, k // 2 + 1)
        )
    else:
        raise ValueError("mode must be 'geometric' or 'quadratic'")
    gauged = SomosSpec(
        name="%s/%s-gauge" % (spec.name, mode),
        order=spec.order,
        coefficients=new_coeffs,
        start=spec.start,
        window=new_window,
        center=None,
        antisymmetric=False,
        long_spans=(),
    )
    return SequenceView(gauged, d)


def detect_period(view, max_shift, probe=24, map_fn=None):
    """Look for an exact period or a constant-ratio quasiperiod.

    Scans shifts 1..max_shift over a probe window starting at the spec
    window.  map_fn, when given, transforms each term before comparison
    (useful for specializing a rational-function view at a point).  Returns
    {'kind': 'period'|'quasiperiod'|'none', ...}.
    """
    start = view.spec.start
    count = max(probe, 2 * max_shift + 2 * view.spec.order)
    vals = [view.term(start + i) for i in range(count + max_shift)]
    if map_fn is not None:
        vals = [map_fn(v) for v in vals]
        def eq(a, b):
            return a == b
        def is_zero(a):
            return a == 0
        def ratio(a, b):
            return a / b
        def mul(a, b):
            return a * b
    else:
        d = view.domain
        eq, is_zero, ratio, mul = d.eq, d.is_zero, d.div, d.mul
    for shift in range(1, max_shift + 1):
        if all(eq(vals[i + shift], vals[i]) for i in range(count)):
            return {"kind": "period", "shift": shift}
        lam = None
        consistent = True
        for i in range(count):
            a, b = vals[i], vals[i + shift]
            if is_zero(a) != is_zero(b):
                consistent = False
                break
            if is_zero(a):
                continue
            q = ratio(b, a)
            if lam is None:
                lam = q
            elif not eq(lam, q):
                consistent = False
                break
        if consistent and lam is not None:
            return {"kind": "quasiperiod", "shift": shift, "ratio": lam}
    return {"kind": "none"}


# -- integer square roots over the rationals --------------------------------


def _fraction_sqrt(fr):
    """Exact square root of a nonnegative Fraction, or None."""
    if fr < 0:
        return None
    num, den = fr.numerator, fr.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


def sqrt_sequence(view, expr, lo, hi):
    """Exact square roots of expr(view, n) for n in lo..hi.

    expr must return a Fraction.  Raises NotASquare at the first value
    without an exact rational square root.
    """
    out = []
    for n in range(lo, hi + 1):
        value = expr(view, n)
        root = _fraction_sqrt(Fraction(value))
        if root is None:
            raise NotASquare(n, value)
        out.append(root)
    return out


# -- golden-rotation sign rule ----------------------------------------------

_PHI_NUM = 5


def golden_sign(m):
    """Sign of phi*m minus its nearest integer, computed exactly."""
    if m == 0:
        raise ValueError("sign undefined at 0")
    t = 5 * m * m
    s = math.isqrt(t)
    fl = (m + s) // 2
    # phi*m < fl + 1/2  <=>  sqrt(t) < 2*fl + 1 - m
    r = fl if t < (2 * fl + 1 - m) ** 2 else fl + 1
    rhs = 2 * r - m
    if rhs < 0:
        return 1
    if t > rhs * rhs:
        return 1
    if t < rhs * rhs:
        return -1
    raise ArithmeticError("phi*m landed on an integer; impossible for m != 0")


def sign_rule_audit(view, lo=2, hi=50):
    """First index where the golden-rotation branch rule mispredicts.

    Each term of a Somos4 sequence solves a quadratic whose other data are
    the three preceding terms; the rule predicts which root via the sign of
    phi*(x-1) minus its nearest integer.  The orientation is calibrated on
    the first index and the audit returns the first x in lo..hi where the
    calibrated prediction fails, or None.
    """
    orientation = None
    for x in range(lo, hi + 1):
        p = Fraction(view.term(x - 3))
        q = Fraction(view.term(x - 2))
        r = Fraction(view.term(x - 1))
        s = Fraction(view.term(x))
        A = p * p
        B = q ** 3 - 4 * p * q * r
        C = p * r ** 3 + q * q * r * r
        disc = B * B - 4 * A * C
        root = _fraction_sqrt(disc)
        if root is None:
            raise NotASquare(x, disc)
        if root == 0:
            continue
        lhs = 2 * A * s + B
        if abs(lhs) != root:
            raise ArithmeticError("quadratic does not reproduce term %d" % x)
        actual = 1 if lhs > 0 else -1
        predicted = golden_sign(x - 1)
        agree = 1 if actual == predicted else -1
        if orientation is None:
            orientation = agree
        elif agree != orientation:
            return x
    return None


# -- Heron triangles from paired sequences -----------------------------------


def heron_sides(big, small, i, b_power=4):
    """Side triple built from an order-5 antisymmetric sequence and Somos5.

    big and small are views (the B-like and b-like sequences).  b_power
    selects the exponent on the trailing small-sequence factor of the third
    side; 4 is the displayed reading, 2 the rival one.  Returns absolute
    values as Fractions.
    """
    B = lambda k: Fraction(big.term(k))
    b = lambda k: Fraction(small.term(k))
    side1 = B(i + 3) * (
        B(i) ** 2 * b(i + 3) ** 2 * b(i + 4) ** 4
        + B(i + 1) ** 2 * b(i + 2) ** 2 * B(i + 2) ** 4
    ) * b(i + 5)
    side2 = B(i + 2) * b(i + 4) * (
        B(i) ** 2 * b(i + 2) ** 2 * B(i + 3) ** 2 * b(i + 5) ** 2
        + B(i + 1) ** 2 * B(i + 2) ** 2 * b(i + 3) ** 2 * b(i + 4) ** 2
    )
    side3 = B(i + 1) * b(i + 3) * (
        B(i) ** 2 * 4 ** ((i + 1) % 2) * B(i + 2) ** 4 * b(i + 5) ** 2
        + 4 ** (i % 2) * b(i + 2) ** 2 * B(i + 3) ** 2 * b(i + 4) ** b_power
    )
    return tuple(abs(s) for s in (side1, side2, side3))


def is_heron_two_median(sides, raise_on_degenerate=False):
    """Report on a triangle: rational area and count of rational medians."""
    a, b, c = (Fraction(s) for s in sides)
    report = {"sides": (a, b, c)}
    degenerate = min(a, b, c) <= 0 or a + b <= c or b + c <= a or a + c <= b
    report["degenerate"] = degenerate
    if degenerate:
        if raise_on_degenerate:
            raise DegenerateTriangle(str(sides))
        report.update(
            area=None, area_is_rational=False,
            rational_medians=[], rational_median_count=0,
            is_heron=False, is_two_median=False,
        )
        return report
    area_sq = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c) / 16
    area = _fraction_sqrt(area_sq)
    medians = []
    for opposite, e, f in ((a, b, c), (b, a, c), (c, a, b)):
        m_sq = (2 * e * e + 2 * f * f - opposite * opposite) / 4
        medians.append(_fraction_sqrt(m_sq))
    rational = [m for m in medians if m is not None]
    report.update(
        area_sq=area_sq,
        area=area,
        area_is_rational=area is not None,
        medians=medians,
        rational_medians=rational,
        rational_median_count=len(rational),
        is_heron=area is not None,
        is_two_median=area is not None and len(rational) >= 2,
    )
    return report


# -- parity-gauged three-term audit ------------------------------------------


def elkies_constants(view, lo=2, hi=24):
    """Solve s(n-2)s(n+2) = c1 s(n-1)s(n+1) + c2 s(n)^2 per parity class.

    Uses exact linear algebra on the first two instances of each parity in
    lo..hi, then verifies the rest.  Returns constants and the verified
    range; raises ArithmeticError when no consistent pair exists.
    """
    out = {}
    for parity in (0, 1):
        rows = []
        ns = [n for n in range(lo, hi + 1) if n % 2 == parity]
        for n in ns:
            lhs = Fraction(view.term(n - 2)) * Fraction(view.term(n + 2))
            u = Fraction(view.term(n - 1)) * Fraction(view.term(n + 1))
            v = Fraction(view.term(n)) ** 2
            rows.append((u, v, lhs))
        solved = None
        for idx in range(len(rows) - 1):
            (u1, v1, w1), (u2, v2, w2) = rows[idx], rows[idx + 1]
            det = u1 * v2 - u2 * v1
            if det != 0:
                c1 = (w1 * v2 - w2 * v1) / det
                c2 = (u1 * w2 - u2 * w1) / det
                solved = (c1, c2)
                break
        if solved is None:
            raise ArithmeticError("parity class %d has no solvable pair" % parity)
        c1, c2 = solved
        for (u, v, w), n in zip(rows, ns):
            if u * c1 + v * c2 != w:
                raise ArithmeticError("constants fail at n = %d" % n)
        out["even" if parity == 0 else "odd"] = (c1, c2)
    out["verified_range"] = (lo, hi)
    return out


def elkies_float_check(view, lo=0, hi=20, remainder="floor", tol=1e-9):
    """Numeric audit of the sqrt(6) three-term form under a parity gauge.

    The gauge multiplies term n by (2/3)^(p/4) where p is n reduced mod 2.
    remainder 'floor' keeps p in {0, 1}; 'trunc' mimics C-style signed
    remainders, so p is -1 at negative odd n.  Returns the list of failing
    indices (empty means the identity held everywhere on lo..hi).
    """
    if remainder not in ("floor", "trunc"):
        raise ValueError("remainder must be 'floor' or 'trunc'")

    def gauge(n):
        p = n % 2 if remainder == "floor" else math.fmod(n, 2)
        return (2.0 / 3.0) ** (p / 4.0) * float(Fraction(view.term(n)))

    failures = []
    sqrt6 = math.sqrt(6.0)
    for n in range(lo, hi + 1):
        lhs = gauge(n - 2) * gauge(n + 2)
        rhs = sqrt6 * gauge(n - 1) * gauge(n + 1) - gauge(n) ** 2
        scale = max(1.0, abs(lhs), abs(rhs))
        if abs(lhs - rhs) > tol * scale:
            failures.append(n)
    return failures


# -- named registry -----------------------------------------------------------

_SOMOS4_SPANS = (
    (8, ((25, 2, 6), (-29, 4, 4))),
    (12, ((841, 3, 9), (-3689, 6, 6))),
)
_SOMOS5_SPANS = (
    (10, ((57, 4, 6), (-8, 2, 8))),
    (15, ((391, 3, 12), (-2794, 6, 9))),
)
_EDS4_SPANS = (
    (8, ((1, 2, 6), (1, 4, 4))),
    (12, ((1, 3, 9), (7, 6, 6))),
)


def _poly(*coeffs):
    return Polynomial(coeffs)


def _registry():
    x = Polynomial.x()
    reg = {}

    def add(spec, domain_factory=None):
        reg[spec.name] = (spec, domain_factory)

    add(SomosSpec("somos4", 4, (1, 1), 0, (1,) * 4,
                  center=Fraction(3, 2), long_spans=_SOMOS4_SPANS))
    add(SomosSpec("somos5", 5, (1, 1), 0, (1,) * 5,
                  center=Fraction(2), long_spans=_SOMOS5_SPANS))
    add(SomosSpec("somos6", 6, (1, 1, 1), 0, (1,) * 6, center=Fraction(5, 2)))
    add(SomosSpec("somos7", 7, (1, 1, 1), 0, (1,) * 7, center=Fraction(3)))
    add(SomosSpec("somos8", 8, (1, 1, 1, 1), 0, (1,) * 8, center=Fraction(7, 2)))
    add(SomosSpec("a051138", 4, (1, 1), 1, (1, 1, -1, -5), antisymmetric=True))
    add(SomosSpec("a006769", 4, (1, 1), 1, (1, 1, -1, 1),
                  antisymmetric=True, long_spans=_EDS4_SPANS))
    add(SomosSpec("eds5", 5, (1, 1), 1, (1, 1, 1, -1, -7), antisymmetric=True))
    add(SomosSpec("eds5_even", 5, (-8, 57), 1, (1, -1, -8, 57, 455),
                  antisymmetric=True))
    add(SomosSpec("eds5_odd", 5, (-8, 57), 1, (1, 1, -7, -1, 391)))
    add(SomosSpec("eds5_twist", 5, (-8, -57), 1, (-1, 1, 8, 57, -455),
                  antisymmetric=True))
    add(SomosSpec("r144", 4, (144, 432), 1, (1, 12, -432, 93312),
                  antisymmetric=True))

    p = Polynomial.x()
    add(SomosSpec("somos4p", 4, (1, 1), 0, (1, p, p, 1), center=Fraction(3, 2)),
        lambda: PolyFracDomain("p"))
    add(SomosSpec("s4oid", 4, (1, 1), 1, (1, 1, -1, x), antisymmetric=True),
        lambda: PolyFracDomain("x"))
    add(SomosSpec("s5oid", 5, (1, 1), 1, (1, 1, 1, -1, x), antisymmetric=True),
        lambda: PolyFracDomain("x"))
    add(SomosSpec("s6poly", 6, (1, 1, 1), 1, (1, 1, 1, 1, -2, x)),
        lambda: PolyFracDomain("x"))
    add(SomosSpec("s7poly", 7, (1, 1, 1), 1, (1, 1, 1, 1, 1, -2, x)),
        lambda: PolyFracDomain("x"))

    y10 = _poly(*([0] * 10 + [1]))
    y8 = _poly(*([0] * 8 + [1]))
    y5 = _poly(*([0] * 5 + [1]))
    y17 = _poly(*([0] * 17 + [1]))
    add(SomosSpec("t_bridge", 4, (y10, -y8), 1, (1, y5, y8, -y17),
                  antisymmetric=True),
        lambda: PolyFracDomain("y"))

    def sqrt2_domain():
        return QuadExt(QQ, 2)

    root2 = (Fraction(0), Fraction(-1))
    add(SomosSpec("somos7_sqrt2", 7, (1, 1, 1), 0,
                  (1, 1, 1, 1, 1, 1, root2)),
        sqrt2_domain)
    return reg


_REGISTRY = _registry()


def registry_names():
    return sorted(_REGISTRY)


def named_spec(name):
    try:
        spec, _ = _REGISTRY[name]
    except KeyError:
        raise KeyError("unknown sequence %r; see registry_names()" % name)
    return spec


def named_view(name, domain=None):
    """Build the named sequence over `domain` (default: its natural field)."""
    spec, domain_factory = _REGISTRY[name]
    if domain is None:
        domain = domain_factory() if domain_factory is not None else QQ
    return SequenceView(spec, domain)
