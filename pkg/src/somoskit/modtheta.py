"""Theta-function tables over GF(p): seeded propagation, quasiperiods,
modular sn/cn/dn, the curve check, and unit-circle amplitudes.

A table holds the four theta columns at integer arguments.  Two seed
rows are validated against the classical identities, then propagation
fills later rows: odd-index first-column entries come from the addition
identity with shift 1 (shift 2 when the divisor vanishes), even-index
ones from the product duplication, and the other three columns from
their addition identities.  Every new row is cross-checked against the
four-term quartic, so a drifting identity set fails loudly rather than
filling the table with plausible junk.
"""

from dataclasses import dataclass, field

from .arith import PrimeField, QuadExt, ZeroInverse, is_prime


class SeedInconsistent(ArithmeticError):
    """A seed (or propagated) row violates a registered identity."""

    def __init__(self, identity):
        self.identity = identity
        super().__init__("identity %s fails" % identity)


class PropagationStuck(ArithmeticError):
    """Every registered identity for one column has a zero divisor."""

    def __init__(self, n, j):
        self.n = n
        self.j = j
        super().__init__("no usable identity for column %d at row %d" % (j, n))


class SingularSystem(ArithmeticError):
    """The recurrence-coefficient solve has no unique solution."""


class NotOnCircle(ArithmeticError):
    def __init__(self, n):
        self.n = n
        super().__init__("cn^2 + sn^2 != 1 at row %d" % n)


class NotAPower(ArithmeticError):
    def __init__(self, n):
        self.n = n
        super().__init__("cn + i*sn at row %d is not a generator power" % n)


@dataclass
class ThetaTable:
    """Rows n -> (theta_1(n), ..., theta_4(n)) in GF(p), with a log of the
    identity that produced each row."""

    modulus: int
    rows: list
    log: list
    degenerate: bool = False

    def __post_init__(self):
        self.field = PrimeField(self.modulus)

    def __len__(self):
        return len(self.rows)

    def theta(self, j, n):
        """Column j in 1..4 at row n."""
        return self.rows[n][j - 1]

    def as_dict(self):
        return {"modulus": self.modulus, "degenerate": self.degenerate,
                "rows": [list(r) for r in self.rows], "log": list(self.log)}


@dataclass
class SeedReport:
    p: int
    checks: dict
    degenerate: bool

    @property
    def holds(self):
        return all(self.checks.values())

    def as_dict(self):
        return {"modulus": self.p, "checks": self.checks,
                "degenerate": self.degenerate, "holds": self.holds}


def _pow4(gf, a):
    return gf.mul(gf.mul(a, a), gf.mul(a, a))


def _sq(gf, a):
    return gf.mul(a, a)


def _quartic_balanced(gf, row):
    lhs = gf.add(_pow4(gf, row[0]), _pow4(gf, row[2]))
    rhs = gf.add(_pow4(gf, row[1]), _pow4(gf, row[3]))
    return gf.eq(lhs, rhs)


def _row2_from(gf, row0, row1):
    """Row 2 from the registered identities, straight off the seed pair."""
    den0 = gf.mul(gf.mul(row0[1], row0[2]), row0[3])
    if gf.is_zero(den0):
        raise SeedInconsistent("duplication-denominator")
    prod1 = gf.mul(gf.mul(row1[0], row1[1]), gf.mul(row1[2], row1[3]))
    t1 = gf.div(gf.add(prod1, prod1), den0)
    sq40_2 = _sq(gf, _sq(gf, row0[3]))
    pieces = []
    for j, alt in ((1, 2), (2, 1)):
        num = gf.sub(gf.mul(_sq(gf, row1[j]), _sq(gf, row1[3])),
                     gf.mul(_sq(gf, row1[alt]), _sq(gf, row1[0])))
        pieces.append(gf.div(num, gf.mul(row0[j], _sq(gf, row0[3]))))
    t4 = gf.div(gf.sub(_pow4(gf, row1[3]), _pow4(gf, row1[0])),
                gf.mul(row0[3], _sq(gf, row0[3])))
    return (t1, pieces[0], pieces[1], t4)


def seed_validate(row0, row1, p):
    """Check the seed pair against the identity set; raise on the first miss.

    The three-term quartic is a z = 0 statement, so it is checked on row
    0 only; the balanced quartic holds at every argument and is checked
    on both seed rows; the duplication identities tie the pair together
    through the row they generate.  A repeated row with a vanishing
    first column is a valid degenerate seed and is flagged as such.
    """
    if not is_prime(p) or p % 4 != 3:
        raise ValueError("modulus must be a prime congruent to 3 mod 4")
    gf = PrimeField(p)
    row0 = tuple(gf.from_int(v) for v in row0)
    row1 = tuple(gf.from_int(v) for v in row1)
    checks = {}

    def record(identity, ok):
        checks[identity] = bool(ok)
        if not ok:
            raise SeedInconsistent(identity)

    record("first-column-vanishes-at-zero", gf.is_zero(row0[0]))
    record("fourth-column-unit", not gf.is_zero(row0[3]))
    record("three-term-quartic-row0",
           gf.eq(gf.add(_pow4(gf, row0[1]), _pow4(gf, row0[3])),
                 _pow4(gf, row0[2])))
    record("balanced-quartic-row0", _quartic_balanced(gf, row0))
    record("balanced-quartic-row1", _quartic_balanced(gf, row1))
    record("duplication-row2", _quartic_balanced(gf, _row2_from(gf, row0, row1)))
    degenerate = row1 == row0 and gf.is_zero(row1[0])
    return SeedReport(p=p, checks=checks, degenerate=degenerate)


def seed_table(row0, row1, p):
    """Validated two-row table ready for propagation."""
    report = seed_validate(row0, row1, p)
    gf = PrimeField(p)
    rows = [tuple(gf.from_int(v) for v in row0),
            tuple(gf.from_int(v) for v in row1)]
    return ThetaTable(modulus=p, rows=rows, log=["seed", "seed"],
                      degenerate=report.degenerate)


# addition identity right-hand sides: column j at y+z pairs with column j
# at y-z; the squared partner column depends on j
_ADDITION_PARTNER = {1: (1, 4, 4, 1), 2: (2, 4, 3, 1), 3: (3, 4, 2, 1),
                     4: (4, 4, 1, 1)}


def _addition_value(table, t, j, z):
    """Solve the shift-z addition identity for column j at row t.

    Returns None when the divisor vanishes (the caller tries the next
    registered identity).
    """
    gf = table.field
    y = t - z
    if y - z < 0 or z >= len(table.rows):
        return None
    a, b, c, d = _ADDITION_PARTNER[j]
    num = gf.sub(
        gf.mul(_sq(gf, table.theta(a, y)), _sq(gf, table.theta(b, z))),
        gf.mul(_sq(gf, table.theta(c, y)), _sq(gf, table.theta(d, z))))
    den = gf.mul(table.theta(j, y - z), _sq(gf, table.theta(4, 0)))
    if gf.is_zero(den):
        return None
    return gf.div(num, den)


def _duplication_value(table, t):
    """First column at an even row from the product duplication."""
    gf = table.field
    if t % 2:
        return None
    y = t // 2
    den = gf.mul(gf.mul(table.theta(2, 0), table.theta(3, 0)),
                 table.theta(4, 0))
    if gf.is_zero(den):
        return None
    prod = gf.mul(gf.mul(table.theta(1, y), table.theta(2, y)),
                  gf.mul(table.theta(3, y), table.theta(4, y)))
    return gf.div(gf.add(prod, prod), den)


def propagate(table, n_max):
    """Fill rows up to n_max in place; returns the same table.

    Each column tries its registered identities in order (duplication
    first for the first column at even rows, then the shift-1 and
    shift-2 addition identities); if every divisor vanishes the
    propagation is stuck.  Every completed row must re-satisfy the
    balanced quartic.
    """
    gf = table.field
    for t in range(len(table.rows), n_max + 1):
        row = []
        how = []
        for j in (1, 2, 3, 4):
            value = None
            if j == 1:
                value = _duplication_value(table, t)
                if value is not None:
                    how.append("duplication")
            if value is None:
                for z in (1, 2):
                    value = _addition_value(table, t, j, z)
                    if value is not None:
                        how.append("addition-z%d" % z)
                        break
            if value is None:
                raise PropagationStuck(t, j)
            row.append(value)
        row = tuple(row)
        if not _quartic_balanced(gf, row):
            raise SeedInconsistent("balanced-quartic-row%d" % t)
        table.rows.append(row)
        table.log.append(",".join(how))
    return table


# -- quasiperiod structure ----------------------------------------------------------


@dataclass
class ShiftPattern:
    shift: int
    signs: tuple
    lambdas: list

    def as_dict(self):
        return {"shift": self.shift, "signs": list(self.signs),
                "lambdas": list(self.lambdas)}


@dataclass
class QuasiperiodReport:
    shifts: list
    true_period: int | None

    def by_shift(self, s):
        for pat in self.shifts:
            if pat.shift == s:
                return pat
        return None

    def as_dict(self):
        return {"shifts": [p.as_dict() for p in self.shifts],
                "true_period": self.true_period}


def _shift_pattern(table, s):
    """Sign vector and per-row multipliers for one shift, or None."""
    gf = table.field
    overlap = len(table.rows) - s
    candidates = []
    for bits in range(16):
        candidates.append(tuple(1 if bits & (1 << j) == 0 else -1
                                for j in range(4)))
    survivors = []
    for signs in candidates:
        lambdas = []
        ok = True
        for n in range(overlap):
            lam = None
            for j in range(4):
                base, target = table.rows[n][j], table.rows[n + s][j]
                if gf.is_zero(base):
                    if not gf.is_zero(target):
                        ok = False
                        break
                    continue
                ratio = gf.div(target, base)
                if signs[j] < 0:
                    ratio = gf.neg(ratio)
                if lam is None:
                    lam = ratio
                elif not gf.eq(lam, ratio):
                    ok = False
                    break
            if not ok:
                break
            lambdas.append(lam)
        if ok and any(lam is not None for lam in lambdas):
            survivors.append((signs, lambdas))
    if not survivors:
        return None
    # a pattern and its global negation both survive; keep the one whose
    # first defined multiplier has the smaller representative
    def sort_key(entry):
        first = next(l for l in entry[1] if l is not None)
        return (first, entry[0])
    signs, lambdas = min(survivors, key=sort_key)
    return ShiftPattern(shift=s, signs=signs, lambdas=lambdas)


def quasiperiod_scan(table):
    """All shifts carrying a consistent signed-ratio pattern, plus the
    minimal exact period when one exists inside the table."""
    patterns = []
    true_period = None
    for s in range(1, len(table.rows) - 1):
        pat = _shift_pattern(table, s)
        if pat is None:
            continue
        patterns.append(pat)
        gf = table.field
        if (true_period is None and all(v > 0 for v in pat.signs)
                and all(lam is None or gf.eq(lam, gf.one)
                        for lam in pat.lambdas)):
            true_period = s
    return QuasiperiodReport(shifts=patterns, true_period=true_period)


# -- the Somos-like recurrence on the first column ----------------------------------


@dataclass
class RecurrenceReport:
    solved: tuple
    signed: tuple
    valid_from: int
    valid_to: int
    failures: list
    literal: tuple
    literal_fails_at: int | None

    @property
    def holds(self):
        return not self.failures

    def as_dict(self):
        return {"solved": list(self.solved), "signed": list(self.signed),
                "valid_from": self.valid_from, "valid_to": self.valid_to,
                "failures": self.failures, "literal": list(self.literal),
                "literal_fails_at": self.literal_fails_at,
                "holds": self.holds}


def _recurrence_residual(table, n, c1, c2):
    gf = table.field
    lhs = _sq(gf, table.theta(1, n))
    rhs = gf.add(
        gf.mul(c1, gf.mul(table.theta(1, n + 1), table.theta(1, n - 1))),
        gf.mul(c2, gf.mul(table.theta(1, n + 2), table.theta(1, n - 2))))
    return gf.sub(lhs, rhs)


def discover_recurrence(table, rows=(2, 3), literal=(8, 1)):
    """Solve the two-coefficient square recurrence on the first column from
    two rows, then validate it everywhere the five-row window fits.

    The solved pair is also reported centered around zero, and the
    provided literal pair is tested alongside it (first failing row
    recorded, None when it never fails).
    """
    gf = table.field
    if len(table.rows) < max(rows) + 3:
        raise ValueError("table too short for the requested solve rows")
    eqs = []
    for n in rows:
        eqs.append((gf.mul(table.theta(1, n + 1), table.theta(1, n - 1)),
                    gf.mul(table.theta(1, n + 2), table.theta(1, n - 2)),
                    _sq(gf, table.theta(1, n))))
    (a11, a12, b1), (a21, a22, b2) = eqs
    det = gf.sub(gf.mul(a11, a22), gf.mul(a12, a21))
    if gf.is_zero(det):
        raise SingularSystem("solve rows give determinant 0 mod %d"
                             % table.modulus)
    inv_det = gf.inv(det)
    c1 = gf.mul(inv_det, gf.sub(gf.mul(b1, a22), gf.mul(a12, b2)))
    c2 = gf.mul(inv_det, gf.sub(gf.mul(a11, b2), gf.mul(b1, a21)))
    lo, hi = 2, len(table.rows) - 3
    failures = [n for n in range(lo, hi + 1)
                if not gf.is_zero(_recurrence_residual(table, n, c1, c2))]
    lit = tuple(gf.from_int(c) for c in literal)
    literal_fails_at = next(
        (n for n in range(lo, hi + 1)
         if not gf.is_zero(_recurrence_residual(table, n, *lit))), None)

    def centered(c):
        return c - table.modulus if c > table.modulus // 2 else c

    return RecurrenceReport(
        solved=(c1, c2), signed=(centered(c1), centered(c2)),
        valid_from=lo, valid_to=hi, failures=failures,
        literal=literal, literal_fails_at=literal_fails_at)


# -- modular Jacobi functions --------------------------------------------------------


@dataclass
class JacobiRow:
    n: int
    sn: int
    cn: int
    dn: int
    k2: int

    def as_dict(self):
        return {"n": self.n, "sn": self.sn, "cn": self.cn, "dn": self.dn,
                "k2": self.k2}


def curve_parameter(table):
    """k^2 from the first row where sn is invertible: (1 - dn^2)/sn^2."""
    gf = table.field
    for n in range(len(table.rows)):
        if gf.is_zero(table.theta(1, n)) or gf.is_zero(table.theta(4, n)):
            continue
        sn, _, dn = _sn_cn_dn(table, n)
        return gf.div(gf.sub(gf.one, _sq(gf, dn)), _sq(gf, sn))
    raise ZeroInverse("no row with invertible sn")


def _sn_cn_dn(table, n):
    gf = table.field
    t4n = table.theta(4, n)
    if gf.is_zero(t4n):
        raise ZeroInverse("fourth column vanishes at row %d" % n)
    inv4 = gf.inv(t4n)
    sn = gf.mul(gf.div(table.theta(3, 0), table.theta(2, 0)),
                gf.mul(table.theta(1, n), inv4))
    cn = gf.mul(gf.div(table.theta(4, 0), table.theta(2, 0)),
                gf.mul(table.theta(2, n), inv4))
    dn = gf.mul(gf.div(table.theta(4, 0), table.theta(3, 0)),
                gf.mul(table.theta(3, n), inv4))
    return sn, cn, dn


def jacobi_from_theta(table, n):
    """Normalized quotients sn, cn, dn at row n plus the curve parameter."""
    sn, cn, dn = _sn_cn_dn(table, n)
    return JacobiRow(n=n, sn=sn, cn=cn, dn=dn, k2=curve_parameter(table))


@dataclass
class CurveReport:
    k2: int
    rows: list
    failures: list

    @property
    def holds(self):
        return bool(self.rows) and not self.failures

    def as_dict(self):
        return {"k2": self.k2, "checked": len(self.rows),
                "failures": self.failures, "holds": self.holds}


def curve_check(table, lo=0, hi=23):
    """X = sn, Y = cn*dn land on Y^2 = (1 - X^2)(1 - k^2 X^2) at every row."""
    gf = table.field
    k2 = curve_parameter(table)
    report = CurveReport(k2=k2, rows=[], failures=[])
    for n in range(lo, hi + 1):
        row = jacobi_from_theta(table, n)
        x, y = row.sn, gf.mul(row.cn, row.dn)
        lhs = _sq(gf, y)
        rhs = gf.mul(gf.sub(gf.one, _sq(gf, x)),
                     gf.sub(gf.one, gf.mul(k2, _sq(gf, x))))
        report.rows.append((n, x, y, lhs))
        if not gf.eq(lhs, rhs):
            report.failures.append({"n": n, "lhs": lhs, "rhs": rhs})
    return report


@dataclass
class AmReport:
    generator: tuple
    order: int
    values: list

    def as_dict(self):
        return {"generator": list(self.generator), "order": self.order,
                "values": list(self.values)}


def unit_circle_am(table, generator, hi=None):
    """Amplitudes: the discrete log of cn + i*sn against a norm-1 generator.

    The generator must lie on the unit circle of GF(p)(i) and its order
    must divide p + 1 (the circle group's size).  Rows whose Jacobi pair
    leaves the circle or misses the generator's orbit raise.
    """
    gf = table.field
    ext = QuadExt(gf, -1)
    g = ext.make(gf.from_int(generator[0]), gf.from_int(generator[1]))
    if not gf.eq(ext.norm(g), gf.one):
        raise ValueError("generator is not on the unit circle")
    powers = {}
    acc = ext.one
    order = 0
    for k in range(table.modulus + 1):
        key = acc
        if key in powers:
            break
        powers[key] = k
        acc = ext.mul(acc, g)
        order = k + 1
    if not ext.eq(acc, ext.one) or (table.modulus + 1) % order:
        raise ValueError("generator order does not divide p + 1")
    if hi is None:
        hi = len(table.rows) - 1
    values = []
    for n in range(hi + 1):
        row = jacobi_from_theta(table, n)
        z = ext.make(row.cn, row.sn)
        if not gf.eq(ext.norm(z), gf.one):
            raise NotOnCircle(n)
        if z not in powers:
            raise NotAPower(n)
        values.append(powers[z])
    return AmReport(generator=(g[0], g[1]), order=order, values=values)
