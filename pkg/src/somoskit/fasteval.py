"""Double-and-add ladders for sequence terms at large index multiples.

A Window holds a short run of consecutive terms around index m*x.  One
doubling step turns the window at multiple m into the window at 2m using
the division-free order-4/order-5 expansions (plus a single recurrence
extension); one addition step combines the windows at m and m+1 into the
window at 2m+1, solving a near-addition determinant with exactly one
unknown per entry.  Walking the bits of n then reaches multiple n in
O(log n) steps, each costing a bounded number of ring operations, which
a CountingDomain wrapper tallies.

The expansions encode the canonical normalizations (the four terms
around index 0 equal to 1), so the ladders check that before running.
An antisymmetric variant keeps a nine-wide window and needs no division
at all.  The order-7 doubling formulas are too long to ladder with but
are replayed verbatim against naive generation by somos7_double_check.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import CountingDomain
from .sequences import named_view


class LadderDegenerate(ArithmeticError):
    """A ladder step divided by zero; carries the unreachable index."""

    def __init__(self, index, reason="zero divisor"):
        self.index = index
        super().__init__("cannot reach index %s: %s" % (index, reason))


@dataclass(frozen=True)
class Window:
    """Consecutive terms around index multiple*x: values[i] = s_{M+lo+i}."""

    multiple: int
    values: tuple
    lo: int = -1


@dataclass
class LadderResult:
    value: object
    window: Window
    multiple: int
    x: int
    steps: int
    ops: dict
    fallbacks: list = field(default_factory=list)

    def as_dict(self, domain=None):
        out = {
            "multiple": self.multiple,
            "x": self.x,
            "steps": self.steps,
            "ops": self.ops,
            "fallbacks": self.fallbacks,
        }
        if domain is not None:
            out["value"] = domain.serialize(self.value)
        return out


def window_recurrence_ok(window, dom, order):
    """Every full recurrence instance inside the window run holds.

    Vacuously true when the run is shorter than order + 1 values; the
    nine-wide antisymmetric window gives five real instances.
    """
    v = window.values
    for i in range(len(v) - order):
        if order == 4:
            rhs = dom.add(dom.mul(v[i + 1], v[i + 3]),
                          dom.mul(v[i + 2], v[i + 2]))
        elif order == 5:
            rhs = dom.add(dom.mul(v[i + 1], v[i + 4]),
                          dom.mul(v[i + 2], v[i + 3]))
        else:
            raise ValueError("unsupported order %d" % order)
        if not dom.eq(dom.mul(v[i], v[i + order]), rhs):
            return False
    return True


# -- order 4 ---------------------------------------------------------------------


def _ext4(dom, run, index):
    """Append one forward term to a consecutive order-4 run."""
    if dom.is_zero(run[-4]):
        raise LadderDegenerate(index)
    num = dom.add(dom.mul(run[-1], run[-3]), dom.mul(run[-2], run[-2]))
    return dom.div(num, run[-4])


def _f_even4(dom, p, q, r, s):
    """a_{2x} from (a_{x-1}, a_x, a_{x+1}, a_{x+2})."""
    t1 = dom.mul(q, s)
    t2 = dom.mul(r, r)
    u = dom.sub(t1, t2)
    v = dom.sub(u, t2)
    return dom.sub(dom.mul(dom.mul(p, s), u), dom.mul(dom.mul(q, r), v))


def _f_odd4(dom, p, q, r, s):
    """a_{2x-1} from the same four values."""
    t1 = dom.mul(p, r)
    t2 = dom.mul(q, q)
    u = dom.sub(t1, t2)
    v = dom.sub(u, t2)
    return dom.sub(dom.mul(dom.mul(p, s), u), dom.mul(dom.mul(q, r), v))


def somos4_double(window, dom):
    """Window at multiple m -> window at 2m; one division (the extension)."""
    m = window.multiple
    p, q, r, s = window.values
    t = _ext4(dom, window.values, "%d*x+3" % m)
    return Window(2 * m, (
        _f_odd4(dom, p, q, r, s),
        _f_even4(dom, p, q, r, s),
        _f_odd4(dom, q, r, s, t),
        _f_even4(dom, q, r, s, t),
    ))


def _solve4(dom, jrun, ka, kb, divisor, index):
    """One near-addition unknown: numerator from the J run and the two
    K-side products, divided by the base-table factor."""
    a_j, a_j1, a_j2 = jrun
    t1 = dom.mul(a_j, a_j2)
    t2 = dom.mul(a_j1, a_j1)
    u = dom.sub(t2, t1)
    v = dom.add(u, t2)
    if dom.is_zero(divisor):
        raise LadderDegenerate(index)
    return dom.div(dom.sub(dom.mul(ka, v), dom.mul(kb, u)), divisor)


def somos4_add(low, high, base, x, dom, cross_check=False):
    """Windows at multiples n and n+1 -> window at 2n+1.

    Each of the four produced values solves a vanishing determinant with
    one unknown; the divisors a_{x+1-delta} come from the base table.
    With cross_check, the center value is re-solved with the window
    roles mirrored (divisor a_{1-x}) and the two must agree.
    """
    if high.multiple != low.multiple + 1:
        raise ValueError("windows must sit at consecutive multiples")
    n = low.multiple
    run = list(low.values)
    run.append(_ext4(dom, run, "%d*x+3" % n))
    run.append(_ext4(dom, run, "%d*x+4" % n))
    ka = dom.mul(high.values[2], high.values[1])
    kb = dom.mul(high.values[3], high.values[0])
    target = 2 * n + 1
    values = []
    for delta in (-1, 0, 1, 2):
        jrun = run[delta + 1:delta + 4]
        values.append(_solve4(dom, jrun, ka, kb, base[x + 1 - delta],
                              "(2*%d+1)*x%+d" % (n, delta)))
    if cross_check:
        ka_m = dom.mul(low.values[2], low.values[1])
        kb_m = dom.mul(low.values[3], low.values[0])
        mirror = _solve4(dom, high.values[1:4], ka_m, kb_m, base[1 - x],
                         "(2*%d+1)*x" % n)
        if not dom.eq(mirror, values[1]):
            raise ArithmeticError(
                "window cross-check failed at multiple %d" % target)
    return Window(target, tuple(values))


# -- order 5 ---------------------------------------------------------------------


def _ext5(dom, run, index):
    if dom.is_zero(run[-5]):
        raise LadderDegenerate(index)
    num = dom.add(dom.mul(run[-1], run[-4]), dom.mul(run[-2], run[-3]))
    return dom.div(num, run[-5])


def _g_even5(dom, p, q, r, s, t):
    """b_{2x} from (b_{x-1} .. b_{x+3})."""
    u1 = dom.mul(r, s)
    u2 = dom.mul(q, t)
    w1 = dom.sub(dom.add(u1, u1), u2)
    w2 = dom.sub(u1, u2)
    return dom.sub(dom.mul(dom.mul(q, r), w1), dom.mul(dom.mul(p, s), w2))


def _g_odd5(dom, p, q, r, s):
    """b_{2x-1} from (b_{x-1} .. b_{x+2})."""
    t1 = dom.mul(p, s)
    t2 = dom.mul(q, r)
    u = dom.sub(t1, t2)
    v = dom.sub(u, t2)
    return dom.sub(dom.mul(t1, u), dom.mul(t2, v))


def somos5_double(window, dom):
    """Window at multiple m -> window at 2m; one division."""
    m = window.multiple
    p, q, r, s, t = window.values
    u = _ext5(dom, window.values, "%d*x+4" % m)
    return Window(2 * m, (
        _g_odd5(dom, p, q, r, s),
        _g_even5(dom, p, q, r, s, t),
        _g_odd5(dom, q, r, s, t),
        _g_even5(dom, q, r, s, t, u),
        _g_odd5(dom, r, s, t, u),
    ))


def _solve5(dom, jrun, u1, u2, divisor, index):
    b_j, b_j1, b_j2, b_j3 = jrun
    w1 = dom.sub(u1, u2)
    w2 = dom.sub(w1, u2)
    num = dom.sub(dom.mul(dom.mul(b_j, b_j3), w1),
                  dom.mul(dom.mul(b_j1, b_j2), w2))
    if dom.is_zero(divisor):
        raise LadderDegenerate(index)
    return dom.div(num, divisor)


def somos5_add(low, high, base, x, dom, cross_check=False):
    """Windows at multiples n and n+1 -> window at 2n+1 (five values).

    The first two unknowns pair the J run against the K window at
    (n+1)x, the last three against the K window shifted by one; the
    divisors b_{x-delta+1} and b_{x+3-delta} come from the base table.
    """
    if high.multiple != low.multiple + 1:
        raise ValueError("windows must sit at consecutive multiples")
    n = low.multiple
    run = list(low.values)
    run.append(_ext5(dom, run, "%d*x+4" % n))
    run.append(_ext5(dom, run, "%d*x+5" % n))
    hv = high.values
    u1 = dom.mul(hv[0], hv[3])
    u2 = dom.mul(hv[1], hv[2])
    u1s = dom.mul(hv[1], hv[4])
    u2s = dom.mul(hv[2], hv[3])
    target = 2 * n + 1
    values = []
    for delta in (-1, 0, 1, 2, 3):
        index = "(2*%d+1)*x%+d" % (n, delta)
        if delta <= 0:
            jrun = run[delta + 1:delta + 5]
            values.append(_solve5(dom, jrun, u1, u2,
                                  base[x - delta + 1], index))
        else:
            jrun = run[delta:delta + 4]
            values.append(_solve5(dom, jrun, u1s, u2s,
                                  base[x + 3 - delta], index))
    if cross_check:
        u1_m = dom.mul(low.values[0], low.values[3])
        u2_m = dom.mul(low.values[1], low.values[2])
        mirror = _solve5(dom, hv[1:5], u1_m, u2_m, base[1 - x],
                         "(2*%d+1)*x" % n)
        if not dom.eq(mirror, values[1]):
            raise ArithmeticError(
                "window cross-check failed at multiple %d" % target)
    return Window(target, tuple(values))


# -- the shared ladder loop ------------------------------------------------------


class LadderState:
    """Pair of windows at consecutive multiples plus the base table.

    Mutable and single-owner; advance() consumes one bit of the target
    multiple.  The op counter lives in the wrapped domain.
    """

    def __init__(self, kind, view, x):
        if kind == "somos4":
            self.order, self._double, self._add = 4, somos4_double, somos4_add
        elif kind == "somos5":
            self.order, self._double, self._add = 5, somos5_double, somos5_add
        else:
            raise ValueError("unknown ladder kind %r" % kind)
        for value in view.terms(0, 2):
            if not view.domain.eq(value, view.domain.one):
                raise ValueError(
                    "ladder formulas need the canonical normalization "
                    "(terms 0..2 equal to 1)")
        self.kind = kind
        self.view = view
        self.x = x
        self.dom = CountingDomain(view.domain)
        self.base = {i: view.term(i) for i in range(x - 4, x + 6)}
        self.base[1 - x] = view.term(1 - x)
        self.low = Window(1, tuple(self.base[x + o]
                                   for o in range(-1, self.order - 1)))
        self.high = None
        self.steps = 0
        self.fallbacks = []
        self.cross_check = False
        self.fallback = False

    def _naive_window(self, multiple, exc):
        if not self.fallback:
            raise exc
        self.fallbacks.append({"multiple": multiple, "index": exc.index})
        m = multiple * self.x
        return Window(multiple, tuple(self.view.term(m + o)
                                      for o in range(-1, self.order - 1)))

    def start(self):
        try:
            self.high = self._double(self.low, self.dom)
        except LadderDegenerate as exc:
            self.high = self._naive_window(2, exc)
        self.steps += 1

    def advance(self, bit):
        try:
            added = self._add(self.low, self.high, self.base, self.x,
                              self.dom, self.cross_check)
        except LadderDegenerate as exc:
            added = self._naive_window(2 * self.low.multiple + 1, exc)
        if bit:
            try:
                doubled = self._double(self.high, self.dom)
            except LadderDegenerate as exc:
                doubled = self._naive_window(2 * self.high.multiple, exc)
            self.low, self.high = added, doubled
        else:
            try:
                doubled = self._double(self.low, self.dom)
            except LadderDegenerate as exc:
                doubled = self._naive_window(2 * self.low.multiple, exc)
            self.low, self.high = doubled, added
        self.steps += 1
        if self.high.multiple != self.low.multiple + 1:
            raise AssertionError("ladder windows out of lockstep")

    def ops(self):
        return {"adds": self.dom.adds, "muls": self.dom.muls,
                "invs": self.dom.invs, "total": self.dom.total}


def _run_ladder(kind, view, x, n, cross_check, fallback):
    if n < 1:
        raise ValueError("multiple n must be positive")
    state = LadderState(kind, view, x)
    state.cross_check = cross_check
    state.fallback = fallback
    if n > 1:
        state.start()
        for shift in range(n.bit_length() - 2, -1, -1):
            state.advance((n >> shift) & 1)
    return LadderResult(
        value=state.low.values[1],
        window=state.low,
        multiple=n,
        x=x,
        steps=state.steps,
        ops=state.ops(),
        fallbacks=state.fallbacks,
    )


def somos4_ladder(view, x, n, cross_check=False, fallback=False):
    """Term at index n*x in O(log n) ladder steps; x >= 4 recommended
    so the windows stay clear of the base table."""
    return _run_ladder("somos4", view, x, n, cross_check, fallback)


def somos5_ladder(view, x, n, cross_check=False, fallback=False):
    return _run_ladder("somos5", view, x, n, cross_check, fallback)


# -- antisymmetric (division-free) ladder ----------------------------------------


def eds_double(window, dom):
    """(s_{2n-1}, s_{2n}) from the five values s_{n-2} .. s_{n+2}."""
    a, b, c, d, e = window.values
    sq_b = dom.mul(b, b)
    cu_b = dom.mul(sq_b, b)
    sq_c = dom.mul(c, c)
    cu_c = dom.mul(sq_c, c)
    odd = dom.sub(dom.mul(cu_b, d), dom.mul(a, cu_c))
    sq_d = dom.mul(d, d)
    even = dom.mul(dom.sub(dom.mul(sq_b, e), dom.mul(a, sq_d)), c)
    return odd, even


def eds_ladder(view, n):
    """s_n by walking the bits of n with a nine-wide window.

    Five doubling centers per step produce ten consecutive values, which
    contain both candidate successor windows, so no addition step and no
    division is ever needed.
    """
    if n < 1:
        raise ValueError("index n must be positive")
    dom = CountingDomain(view.domain)
    window = Window(1, tuple(view.term(i) for i in range(-2, 7)), lo=-3)
    steps = 0
    for shift in range(n.bit_length() - 2, -1, -1):
        m = window.multiple
        run = []
        for center in range(5):
            five = Window(m + center - 1, window.values[center:center + 5],
                          lo=-2)
            odd, even = eds_double(five, dom)
            run.extend((odd, even))
        bit = (n >> shift) & 1
        window = Window(2 * m + bit, tuple(run[bit:bit + 9]), lo=-3)
        steps += 1
    return LadderResult(
        value=window.values[3],
        window=window,
        multiple=n,
        x=1,
        steps=steps,
        ops={"adds": dom.adds, "muls": dom.muls, "invs": dom.invs,
             "total": dom.total},
    )


# -- index-jumping solves --------------------------------------------------------

_CANONICAL = {}


def _canon(name):
    if name not in _CANONICAL:
        _CANONICAL[name] = named_view(name)
    return _CANONICAL[name]


def speedup_step(kind, k, n, views=None):
    """Solve the four-term jump identity for its extreme term.

    kind "a": A_k^2 a_n a_{n+4k} = A_{2k}^2 a_{n+k} a_{n+3k}
              - A_k A_{3k} a_{n+2k}^2, solved for a_{n+4k}.
    kind "s": the same shape with one antisymmetric sequence in both
              roles.
    kind "b": B_k B_{2k} b_n b_{n+5k} = B_{2k} B_{3k} b_{n+k} b_{n+4k}
              - B_k B_{4k} b_{n+2k} b_{n+3k}, solved for b_{n+5k}.

    views: optional (outer, inner) pair; defaults to the canonical
    rational views.  Raises ZeroInverse when the divisor vanishes.
    """
    if views is not None:
        outer, inner = views
    elif kind == "a":
        outer, inner = _canon("a051138"), _canon("somos4")
    elif kind == "s":
        outer = inner = _canon("a006769")
    elif kind == "b":
        outer, inner = _canon("eds5"), _canon("somos5")
    else:
        raise ValueError("unknown kind %r" % kind)
    dom = inner.domain
    A, a = outer.term, inner.term
    if kind in ("a", "s"):
        lhs_coef = dom.mul(dom.mul(A(k), A(k)), a(n))
        rhs = dom.sub(
            dom.mul(dom.mul(A(2 * k), A(2 * k)),
                    dom.mul(a(n + k), a(n + 3 * k))),
            dom.mul(dom.mul(A(k), A(3 * k)),
                    dom.mul(a(n + 2 * k), a(n + 2 * k))))
        return dom.div(rhs, lhs_coef)
    lhs_coef = dom.mul(dom.mul(A(k), A(2 * k)), a(n))
    rhs = dom.sub(
        dom.mul(dom.mul(A(2 * k), A(3 * k)),
                dom.mul(a(n + k), a(n + 4 * k))),
        dom.mul(dom.mul(A(k), A(4 * k)),
                dom.mul(a(n + 2 * k), a(n + 3 * k))))
    return dom.div(rhs, lhs_coef)


def mixed_step(k, views=None):
    """a_k from the unsquared mixed identity
    A_1 a_{k-4} a_k = A_2 a_{k-3} a_{k-1} - A_3 a_{k-2}^2."""
    if views is not None:
        outer, inner = views
    else:
        outer, inner = _canon("a051138"), _canon("somos4")
    dom = inner.domain
    A, a = outer.term, inner.term
    rhs = dom.sub(dom.mul(A(2), dom.mul(a(k - 3), a(k - 1))),
                  dom.mul(A(3), dom.mul(a(k - 2), a(k - 2))))
    return dom.div(rhs, dom.mul(A(1), a(k - 4)))


# -- order-7 doubling spot checks -------------------------------------------------


@dataclass
class DoubleCheckReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def holds(self):
        return self.checked > 0 and not self.failures

    def as_dict(self):
        return {"name": self.name, "checked": self.checked,
                "failures": self.failures, "holds": self.holds}


def _d7_odd(d, k):
    s = (d(k-5)*d(k-2)*d(k+4)*d(k+7) + 3*d(k-3)*d(k-2)*d(k+2)*d(k+7)
         - 7*d(k-2)**2*d(k+1)*d(k+7) - 11*d(k-2)*d(k-1)*d(k)*d(k+7)
         + 3*d(k-5)*d(k)*d(k+4)*d(k+5) + 9*d(k-3)*d(k)*d(k+2)*d(k+5)
         - 41*d(k-2)*d(k)*d(k+1)*d(k+5) - 13*d(k-1)*d(k)**2*d(k+5)
         - 7*d(k-5)*d(k+1)*d(k+4)**2 - 11*d(k-5)*d(k+2)*d(k+3)*d(k+4)
         - 41*d(k-3)*d(k+1)*d(k+2)*d(k+4) + 89*d(k-2)*d(k+1)**2*d(k+4)
         + 57*d(k-1)*d(k)*d(k+1)*d(k+4) - 13*d(k-3)*d(k+2)**2*d(k+3)
         + 57*d(k-2)*d(k+1)*d(k+2)*d(k+3) + 81*d(k-1)*d(k)*d(k+2)*d(k+3))
    return -s / Fraction(40)


def _d7_even_a(d, k):
    s = (d(k-6)*d(k-1)*d(k+5)*d(k+8) - 3*d(k-4)*d(k-1)*d(k+3)*d(k+8)
         + 11*d(k-2)*d(k-1)*d(k+1)*d(k+8) - 47*d(k-1)**2*d(k)*d(k+8)
         + 3*d(k-6)*d(k+1)*d(k+5)*d(k+6) - 9*d(k-4)*d(k+1)*d(k+3)*d(k+6)
         + 53*d(k-2)*d(k+1)**2*d(k+6) - 161*d(k-1)*d(k)*d(k+1)*d(k+6)
         - 7*d(k-6)*d(k+2)*d(k+5)**2 - 11*d(k-6)*d(k+3)*d(k+4)*d(k+5)
         + 41*d(k-4)*d(k+2)*d(k+3)*d(k+5) - 137*d(k-2)*d(k+1)*d(k+2)*d(k+5)
         + 329*d(k-1)*d(k)*d(k+2)*d(k+5) + 13*d(k-4)*d(k+3)**2*d(k+4)
         - 81*d(k-2)*d(k+1)*d(k+3)*d(k+4) + 577*d(k-1)*d(k)*d(k+3)*d(k+4))
    return s / Fraction(120)


def _d7_even_b(d, k):
    s = (d(k-6)*d(k-1)*d(k+5)*d(k+8) - 3*d(k-3)*d(k-1)*d(k+2)*d(k+8)
         + 8*d(k-2)*d(k-1)*d(k+1)*d(k+8) - 50*d(k-1)**2*d(k)*d(k+8)
         + 3*d(k-6)*d(k+1)*d(k+5)*d(k+6) - 9*d(k-3)*d(k+1)*d(k+2)*d(k+6)
         + 44*d(k-2)*d(k+1)**2*d(k+6) - 170*d(k-1)*d(k)*d(k+1)*d(k+6)
         - 7*d(k-6)*d(k+2)*d(k+5)**2 - 11*d(k-6)*d(k+3)*d(k+4)*d(k+5)
         + 41*d(k-3)*d(k+2)**2*d(k+5) - 96*d(k-2)*d(k+1)*d(k+2)*d(k+5)
         + 370*d(k-1)*d(k)*d(k+2)*d(k+5) + 13*d(k-3)*d(k+2)*d(k+3)*d(k+4)
         - 68*d(k-2)*d(k+1)*d(k+3)*d(k+4) + 590*d(k-1)*d(k)*d(k+3)*d(k+4))
    return s / Fraction(120)


def somos7_double_check(lo=6, hi=20, view=None):
    """Replay the three long doubling formulas against naive terms.

    The odd formula carries denominator 40, the two even variants 120;
    the report records any k where a formula misses or the variants
    disagree.  Needs an exact rational view.
    """
    view = view or _canon("somos7")
    if view.domain.name != "rational":
        raise ValueError("doubling formulas need the exact rational view")
    d = view.term
    report = DoubleCheckReport(name="somos7-doubling")
    for k in range(lo, hi + 1):
        for label, fn, target in (
            ("odd/40", _d7_odd, 2 * k - 1),
            ("even/120-a", _d7_even_a, 2 * k),
            ("even/120-b", _d7_even_b, 2 * k),
        ):
            got = fn(d, k)
            want = d(target)
            report.checked += 1
            if got != want:
                report.failures.append({
                    "k": k, "formula": label,
                    "got": str(got), "want": str(want),
                })
        report.checked += 1
        if _d7_even_a(d, k) != _d7_even_b(d, k):
            report.failures.append({"k": k, "formula": "variants-differ"})
    return report
