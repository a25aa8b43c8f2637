"""Numeric Jacobi theta functions and theta-product closed forms.

Everything here is double precision on purpose.  The series are summed
symmetrically with an envelope-based cutoff, so arguments far from the
real axis (where early terms grow before they decay) still truncate at
the right place or fail loudly.  A log-scale variant of theta_1 keeps
the quasiperiod reduction exact when plain evaluation would overflow.

On top of the series sit the closed forms b * u^((n-c)^2) * theta(...)
that reproduce whole Somos-style sequences to near machine precision,
plus a small Newton fitter that recovers each form's constants from a
handful of exact terms, and a checker for the (y, q) pair tables whose
theta quotients hit the integer sequences dead on.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from mpmath import mp

from .arith import NumericOverflow
from .data import load_fixture

SERIES_CAP = 200
_EXP_CAP = 700.0
_ROOT6_EIGHTH = 6.0 ** 0.125


class NonConvergent(ArithmeticError):
    """A q-series or q-product failed to settle within SERIES_CAP terms."""

    def __init__(self, what="series"):
        self.what = what
        super().__init__("%s did not converge within %d terms" % (what, SERIES_CAP))


class NoConvergence(ArithmeticError):
    """Newton iteration missed its residual target within the budget."""


class SingularJacobian(ArithmeticError):
    """The finite-difference Jacobian was singular at the requested point."""


def _cexp(exponent):
    if exponent.real > _EXP_CAP:
        raise NumericOverflow("term exponent %.1f exceeds double range"
                              % exponent.real)
    return cmath.exp(exponent)


def theta(j, z, q, tol=1e-16):
    """Jacobi theta_j(z, q) for j in 1..4, complex z and q, |q| < 1.

    Terms are added in symmetric pairs (k with -k, or k with -k-1 for the
    half-integer characteristics) and the loop stops once the pair's
    magnitude envelope is past its peak and below tol times the largest
    envelope seen.  Fractional powers of q take the principal branch,
    consistently across all terms, which cancels out of every quotient
    this module forms.
    """
    if j not in (1, 2, 3, 4):
        raise ValueError("theta index must be 1, 2, 3 or 4, got %r" % (j,))
    zc = complex(z)
    qc = complex(q)
    aq = abs(qc)
    if aq >= 1.0:
        raise ValueError("need |q| < 1, got |q| = %r" % aq)
    if aq == 0.0:
        return 1 + 0j if j in (3, 4) else 0j
    logq = cmath.log(qc)
    ltol = math.log(tol)
    if j in (3, 4):
        total = 1 + 0j
        peak = 0.0
        k = 1
    else:
        total = 0j
        peak = -math.inf
        k = 0
    prev = math.inf
    while k <= SERIES_CAP:
        if j in (3, 4):
            base = (k * k) * logq
            w = (2 * k) * 1j * zc
            pair = _cexp(base + w) + _cexp(base - w)
            if j == 4 and k % 2:
                pair = -pair
        else:
            base = ((k + 0.5) * (k + 0.5)) * logq
            w = (2 * k + 1) * 1j * zc
            if j == 1:
                pair = -1j * (_cexp(base + w) - _cexp(base - w))
                if k % 2:
                    pair = -pair
            else:
                pair = _cexp(base + w) + _cexp(base - w)
        total += pair
        env = base.real + abs(w.real)
        peak = max(peak, env)
        if env < prev and env <= peak + ltol:
            return total
        prev = env
        k += 1
    raise NonConvergent("theta_%d series" % j)


def theta4_product(z, q, tol=1e-16):
    """theta_4 via its infinite product, for cross-checking the series."""
    zc = complex(z)
    qc = complex(q)
    if abs(qc) >= 1.0:
        raise ValueError("need |q| < 1")
    c2 = cmath.cos(2 * zc)
    total = 1 + 0j
    for n in range(1, SERIES_CAP + 1):
        q_even = qc ** (2 * n)
        q_odd = qc ** (2 * n - 1)
        total *= (1 - q_even) * (1 - 2 * q_odd * c2 + q_odd * q_odd)
        deviation = abs(q_even) + abs(q_odd) * (2 * abs(c2) + abs(q_odd))
        if deviation < tol:
            return total
    raise NonConvergent("theta_4 product")


def theta1_log(z, q, tol=1e-16):
    """log theta_1(z, q), reduced to the fundamental strip first.

    The quasiperiod law theta_1(y + i*m*log q) = (-1)^m e^(2imy)
    theta_1(y) / q^(m^2) turns a wild imaginary part into an exact log
    multiplier, so the returned value is finite even where theta_1
    itself overflows.  The branch of the log is not normalized.
    """
    zc = complex(z)
    qc = complex(q)
    aq = abs(qc)
    if aq >= 1.0 or aq == 0.0:
        raise ValueError("need 0 < |q| < 1")
    logq = cmath.log(qc)
    m = round(zc.imag / math.log(aq))
    y = zc - 1j * m * logq
    inner = theta(1, y, q, tol)
    return (1j * math.pi) * m + (2j * m) * y - (m * m) * logq + cmath.log(inner)


def theta1_quasiperiod_residual(y, q, n, tol=1e-16):
    """Relative defect of the theta_1 quasiperiod law at shift i*n*log q."""
    qc = complex(q)
    shifted = theta(1, complex(y) + 1j * n * cmath.log(qc), q, tol)
    base = theta(1, y, q, tol)
    expected = (-1) ** n * cmath.exp(2j * n * complex(y)) * base / qc ** (n * n)
    scale = max(abs(shifted), abs(expected), 1e-300)
    return abs(shifted - expected) / scale


# ---------------------------------------------------------------------------
# Closed forms


def _zsum(t, z, q, tol=1e-16):
    # sum over all integers k of q^(k^2) * z^(k*t), for real 0 < z, q < 1.
    if not 0.0 < q < 1.0 or not 0.0 < z < 1.0:
        raise ValueError("z-form sum needs real z, q in (0, 1)")
    lz = math.log(z)
    lq = math.log(q)
    ltol = math.log(tol)
    total = 1.0
    peak = 0.0
    prev = math.inf
    k = 1
    while k <= SERIES_CAP:
        fwd = k * k * lq + k * t * lz
        bwd = k * k * lq - k * t * lz
        env = max(fwd, bwd)
        if env > _EXP_CAP:
            raise NumericOverflow("z-form term exponent %.1f" % env)
        total += math.exp(fwd) + math.exp(bwd)
        peak = max(peak, env)
        if env < prev and env <= peak + ltol:
            return total
        prev = env
        k += 1
    raise NonConvergent("theta_3 z-form")


def _quarter_sum(nz, q, tol=1e-16):
    # sum over k >= 0 of (-1)^k q^((2k+1)^2) sin((2k+1)*nz), real q, |q| < 1.
    # q may be negative; the exponents are odd integers, so the sign of q
    # rides along exactly as written.
    aq = abs(q)
    if aq >= 1.0:
        raise ValueError("need |q| < 1")
    if aq == 0.0:
        return 0.0
    ltol = math.log(tol)
    laq = math.log(aq)
    total = 0.0
    peak = -math.inf
    for k in range(SERIES_CAP + 1):
        odd = 2 * k + 1
        env = odd * odd * laq
        term = q ** (odd * odd) * math.sin(odd * nz)
        if k % 2:
            term = -term
        total += term
        peak = max(peak, env)
        if env <= peak + ltol:
            return total
    raise NonConvergent("theta_1 quarter-characteristic sum")


def _eval_a_theta3(constants, n, tol):
    b, u, z, q = constants
    t = n - 1.5
    return b * u ** (t * t) * _zsum(t, z, q, tol)


def _eval_a_theta4(constants, n, tol):
    b, u, y, q = constants
    t = n - 1.5
    return b * u ** (t * t) * theta(4, t * y, q, tol).real


def _eval_a1_theta1(constants, n, tol):
    b, u, y, q = constants
    return -2.0 * b * u ** (n * n) * _quarter_sum(n * y, q, tol)


def _eval_b5(constants, n, tol):
    b, u, z, q = constants
    t = n - 2
    return 1.5 ** ((n % 2) / 4.0) * b * u ** (t * t) * _zsum(t, z, q, tol)


def _eval_b_theta1(constants, n, tol):
    b, u, y, q = constants
    prefactor = 1.0 / _ROOT6_EIGHTH if n % 2 == 0 else -_ROOT6_EIGHTH
    return b * prefactor * u ** (n * n) * _quarter_sum(n * y, q, tol)


FORM_CONSTANT_NAMES = {
    "a-theta3": ("b", "u", "z", "q"),
    "a-theta4": ("b", "u", "y", "q"),
    "a1-theta1": ("b", "u", "y", "q"),
    "b5": ("b", "u", "z", "q"),
    "b-theta1": ("b", "u", "y", "q"),
}

FORM_TAGS = tuple(FORM_CONSTANT_NAMES)

_FORM_EVAL = {
    "a-theta3": _eval_a_theta3,
    "a-theta4": _eval_a_theta4,
    "a1-theta1": _eval_a1_theta1,
    "b5": _eval_b5,
    "b-theta1": _eval_b_theta1,
}

# Exact low-index targets each form is fitted against.  The fourth-power
# scale form has only two free constants (y, q); b and u follow from them.
_FIT_SYSTEMS = {
    "a-theta3": ((2, 1.0), (3, 1.0), (4, 2.0), (5, 3.0)),
    "a-theta4": ((4, 2.0), (5, 3.0)),
    "a1-theta1": ((1, 1.0), (2, 1.0), (3, -1.0), (4, -5.0)),
    "b5": ((2, 1.0), (3, 1.0), (4, 1.0), (5, 2.0)),
    "b-theta1": ((1, 1.0), (2, 1.0), (3, 1.0), (4, -1.0)),
}


@dataclass(frozen=True)
class ThetaParams:
    """A registered closed form together with its constant block."""

    form: str
    constants: tuple

    def named(self):
        return dict(zip(FORM_CONSTANT_NAMES[self.form], self.constants))

    def as_dict(self):
        return {"form": self.form, "constants": list(self.constants)}


def _check_form(form):
    if form not in _FORM_EVAL:
        raise ValueError("unknown closed form %r (have %s)"
                         % (form, ", ".join(FORM_TAGS)))


def paper_params(form):
    """The published constant block for a registered form."""
    _check_form(form)
    return ThetaParams(form, tuple(load_fixture("theta")["constants"][form]))


@lru_cache(maxsize=None)
def polished_params(form):
    """The published constants re-fit to machine precision.

    The printed blocks carry about fourteen digits, which is plenty near
    the fitting window but not at large n, where the u^(n^2) factor
    amplifies the truncation (tens of units at n = 18 for the order-4
    z-form).  One or two Newton steps from the printed block restore the
    full double-precision constants.
    """
    return fit_params(form, tol=1e-14).params


def printed_values(form, key=None):
    """Published (n, float) test rows for a form, as a list of pairs."""
    rows = load_fixture("theta")["printed"][key or form]
    return [(int(n), float(v)) for n, v in rows]


def closed_form_eval(params, n, tol=1e-16):
    """Evaluate a closed form at integer n, exactly as displayed."""
    _check_form(params.form)
    return _FORM_EVAL[params.form](params.constants, n, tol)


def theta4_scale_constants(y, q, tol=1e-16):
    """The (b, u) pair that normalizes the theta_4 form to 1 at n = 2, 3."""
    half = theta(4, 0.5 * y, q, tol).real
    three_half = theta(4, 1.5 * y, q, tol).real
    b = three_half ** 0.125 / half ** 1.125
    u = math.sqrt(half / three_half)
    return b, u


def _pack_constants(form, free):
    if form == "a-theta4":
        y, q = free
        b, u = theta4_scale_constants(y, q)
        return (b, u, y, q)
    return tuple(free)


def _free_constants(form, constants):
    if form == "a-theta4":
        return constants[2:]
    return tuple(constants)


@dataclass(frozen=True)
class FitResult:
    params: ThetaParams
    residual: float
    iterations: int

    def as_dict(self):
        out = self.params.as_dict()
        out["residual"] = self.residual
        out["iterations"] = self.iterations
        return out


def fit_params(form, targets=None, guess=None, tol=1e-12, max_iter=100):
    """Newton-fit a form's constants to exact sequence values.

    targets is a sequence of (n, value) pairs; the default is the form's
    registered low-index system.  guess is the free-constant vector (the
    published constants when omitted).  The Jacobian is finite-difference
    with a 1e-7 relative step.  Raises NoConvergence or SingularJacobian.
    """
    _check_form(form)
    system = tuple(targets) if targets is not None else _FIT_SYSTEMS[form]
    if guess is not None:
        x = [float(v) for v in guess]
    else:
        x = list(_free_constants(form, paper_params(form).constants))
    if len(system) != len(x):
        raise ValueError("need as many targets as free constants (%d vs %d)"
                         % (len(system), len(x)))

    def residuals(vec):
        constants = _pack_constants(form, vec)
        evaluate = _FORM_EVAL[form]
        return [evaluate(constants, n, 1e-16) - want for n, want in system]

    current = residuals(x)
    size = max(abs(v) for v in current)
    iterations = 0
    while size > tol:
        if iterations >= max_iter:
            raise NoConvergence("residual %.3e after %d iterations"
                                % (size, iterations))
        columns = []
        for idx in range(len(x)):
            h = 1e-7 * abs(x[idx]) or 1e-7
            bumped = list(x)
            bumped[idx] += h
            shifted = residuals(bumped)
            columns.append([(shifted[row] - current[row]) / h
                            for row in range(len(current))])
        matrix = mp.matrix([[columns[c][r] for c in range(len(x))]
                            for r in range(len(current))])
        rhs = mp.matrix([-v for v in current])
        try:
            delta = mp.lu_solve(matrix, rhs)
        except (ZeroDivisionError, TypeError):
            # mpmath signals an exactly-zero pivot column with a TypeError
            # from deep inside its pivot search; both mean the same thing.
            raise SingularJacobian("at iteration %d" % iterations) from None
        step = [float(v) for v in delta]
        scale = 1.0
        while True:
            trial = [x[i] + scale * step[i] for i in range(len(x))]
            try:
                candidate = residuals(trial)
                cand_size = max(abs(v) for v in candidate)
            except (ValueError, ArithmeticError):
                cand_size = math.inf
            if cand_size < size:
                break
            scale *= 0.5
            if scale < 1.0 / 1024.0:
                raise NoConvergence("line search stalled at iteration %d"
                                    % iterations)
        x, current, size = trial, candidate, cand_size
        iterations += 1
    return FitResult(ThetaParams(form, _pack_constants(form, x)),
                     size, iterations)


# ---------------------------------------------------------------------------
# (y, q) pair tables


def pair_groups():
    """The published (y, q) pairs as {group: [(y, q), ...]} complex pairs."""
    raw = load_fixture("theta")["pairs"]
    return {
        group: [(complex(yr, yi), complex(qr, qi)) for yr, yi, qr, qi in rows]
        for group, rows in raw.items()
    }


def pair_scale_logs(y, q, tol=1e-16):
    """log b and log u for a pair, from theta_1 at y, 2y and 3y.

    b = -theta_1(2y)^3 / (theta_1(y)^3 theta_1(3y)) and
    u = -theta_1(y)^2 theta_1(3y) / theta_1(2y)^3; the i*pi terms carry
    the leading minus signs so everything stays in log scale.
    """
    l1 = theta1_log(y, q, tol)
    l2 = theta1_log(2 * y, q, tol)
    l3 = theta1_log(3 * y, q, tol)
    log_b = 1j * math.pi + 3 * l2 - 3 * l1 - l3
    log_u = 1j * math.pi + 2 * l1 + l3 - 3 * l2
    return log_b, log_u


def pair_term(y, q, n, tol=1e-16, scale_logs=None):
    """b * u^(n^2) * theta_1(n*y, q) for one pair, evaluated in log scale."""
    if n == 0:
        return 0j
    log_b, log_u = scale_logs or pair_scale_logs(y, q, tol)
    exponent = log_b + (n * n) * log_u + theta1_log(n * y, q, tol)
    if exponent.real > _EXP_CAP:
        raise NumericOverflow("pair term exponent %.1f" % exponent.real)
    return cmath.exp(exponent)


@dataclass(frozen=True)
class PairReport:
    y: complex
    q: complex
    rows: tuple
    max_rel_err: float
    ok: bool


def pair_table_check(pairs, targets, tol=1e-6, series_tol=1e-16):
    """Check that each (y, q) pair reproduces the integer targets.

    targets is a list of (n, exact value); the comparison is relative to
    max(1, |value|) so the n = 0 zero row is compared absolutely.
    Mismatches are reported, not raised.
    """
    reports = []
    for y, q in pairs:
        logs = pair_scale_logs(y, q, series_tol)
        rows = []
        worst = 0.0
        for n, want in targets:
            got = pair_term(y, q, n, series_tol, scale_logs=logs)
            err = abs(got - want) / max(1.0, abs(want))
            worst = max(worst, err)
            rows.append((n, got, want, err))
        reports.append(PairReport(y, q, tuple(rows), worst, worst <= tol))
    return reports


def spurious_pair_check(pairs, targets, tol=1e-6, series_tol=1e-16):
    """Check pairs that hit a rescaled gauge of their target sequence.

    The theta-quotient normalization in pair_scale_logs pins v_1 = 1 but
    can differ from the integer gauge by a constant c, with
    target_n = v_n * c^(n^2 - 1).  c is solved (as a positive real) from
    the first target of magnitude > 1, and every row is then compared
    with signs intact, so a sign defect still fails the check.
    """
    reports = []
    for y, q in pairs:
        logs = pair_scale_logs(y, q, series_tol)
        values = {}
        for n, _ in targets:
            values[n] = pair_term(y, q, n, series_tol, scale_logs=logs)
        gauge = 1.0
        for n, want in targets:
            if n > 1 and abs(want) > 1 and values[n] != 0:
                gauge = (abs(want) / abs(values[n])) ** (1.0 / (n * n - 1))
                break
        rows = []
        worst = 0.0
        for n, want in targets:
            got = values[n] * gauge ** (n * n - 1)
            err = abs(got - want) / max(1.0, abs(want))
            worst = max(worst, err)
            rows.append((n, got, want, err))
        reports.append(PairReport(y, q, tuple(rows), worst, worst <= tol))
    return reports
