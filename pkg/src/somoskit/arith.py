"""Exact coefficient domains: rationals, prime fields, quadratic extensions,
univariate rational functions, and an approximate complex domain.

All arithmetic used by the sequence, determinant, and ladder code goes through
a Domain object so the same generic routine can run over any of these value
kinds, zero divisions surface uniformly as ZeroInverse, and ring operations
can be counted by wrapping a domain (see CountingDomain).
"""

from fractions import Fraction
import cmath


class ZeroInverse(ZeroDivisionError):
    """Raised when inverting zero in any domain."""


class NumericOverflow(ArithmeticError):
    """Raised when a floating-point operation leaves the finite range."""


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for n < 2**64."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Domain:
    """Common operation set. Elements are plain immutable values."""

    name = "?"
    exact = True

    def from_int(self, n):
        raise NotImplementedError

    def from_fraction(self, fr):
        return self.div(self.from_int(fr.numerator), self.from_int(fr.denominator))

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        raise NotImplementedError

    def eq(self, a, b):
        raise NotImplementedError

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def pow(self, a, n):
        """Square-and-multiply; negative n goes through inv."""
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def serialize(self, a):
        return str(a)


class RationalDomain(Domain):
    """Exact rationals backed by fractions.Fraction."""

    name = "rational"

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, fr):
        return fr

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroInverse("1/0 over the rationals")
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def serialize(self, a):
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return "%d/%d" % (a.numerator, a.denominator)


class PrimeField(Domain):
    """GF(p) with p prime, p < 2**64. Elements are ints in [0, p)."""

    name = "gfp"

    def __init__(self, p):
        if p >= 1 << 64:
            raise ValueError("modulus too large: only moduli below 2**64 are supported")
        if not is_prime(p):
            raise ValueError("modulus %d is not prime" % p)
        self.p = p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroInverse("1/0 in GF(%d)" % self.p)
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def serialize(self, a):
        return "%d mod %d" % (a % self.p, self.p)


class QuadExt(Domain):
    """Quadratic extension base(sqrt(d)): elements are (a, b) pairs meaning
    a + b*sqrt(d). d must be a non-square in the base field. Over a prime
    field with p = 3 mod 4, d = -1 gives the field of "complex" residues
    a + b*i."""

    name = "quadext"

    def __init__(self, base, d):
        self.base = base
        self.d = base.from_int(d) if isinstance(d, int) else d
        self.d_int = d if isinstance(d, int) else None

    def from_int(self, n):
        return (self.base.from_int(n), self.base.zero)

    def from_base(self, a):
        return (a, self.base.zero)

    def make(self, a, b):
        return (a, b)

    def add(self, x, y):
        return (self.base.add(x[0], y[0]), self.base.add(x[1], y[1]))

    def sub(self, x, y):
        return (self.base.sub(x[0], y[0]), self.base.sub(x[1], y[1]))

    def mul(self, x, y):
        a, b = x
        c, e = y
        bd = self.base
        return (bd.add(bd.mul(a, c), bd.mul(self.d, bd.mul(b, e))),
                bd.add(bd.mul(a, e), bd.mul(b, c)))

    def neg(self, x):
        return (self.base.neg(x[0]), self.base.neg(x[1]))

    def conj(self, x):
        return (x[0], self.base.neg(x[1]))

    def norm(self, x):
        """a**2 - d*b**2 in the base field."""
        a, b = x
        bd = self.base
        return bd.sub(bd.mul(a, a), bd.mul(self.d, bd.mul(b, b)))

    def inv(self, x):
        n = self.norm(x)
        if self.base.is_zero(n):
            raise ZeroInverse("zero or non-invertible quadratic element")
        ninv = self.base.inv(n)
        a, b = self.conj(x)
        return (self.base.mul(a, ninv), self.base.mul(b, ninv))

    def is_zero(self, x):
        return self.base.is_zero(x[0]) and self.base.is_zero(x[1])

    def eq(self, x, y):
        return self.base.eq(x[0], y[0]) and self.base.eq(x[1], y[1])

    def serialize(self, x):
        a = self.base.serialize(x[0])
        b = self.base.serialize(x[1])
        if self.d_int == -1:
            return "%s+%s*i" % (a, b)
        return "%s+%s*sqrt(%s)" % (a, b, self.d_int if self.d_int is not None
                                   else self.base.serialize(self.d))


def quad_norm(domain, x):
    """Norm form a**2 - d*b**2 of a quadratic-extension element."""
    return domain.norm(x)


def _cnorm(c):
    # Integer-valued coefficients are stored as int so the common all-integer
    # case runs on machine integers instead of Fraction objects.
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return c.numerator
        return c
    return c


class Polynomial:
    """Dense univariate polynomial, exact rational coefficients ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_cnorm(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = Polynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        """Field division: exact quotient and remainder over the rationals."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dg, dd = len(rem) - 1, other.degree
        if dg < dd:
            return Polynomial(), self
        lead = other.coeffs[-1]
        inv_lead = Fraction(1) / lead
        quot = [0] * (dg - dd + 1)
        for i in range(dg, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = _cnorm(c * inv_lead)
            quot[i - dd] = f
            for j, oc in enumerate(other.coeffs):
                rem[i - dd + j] -= f * oc
        return Polynomial(quot), Polynomial(rem)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial((other,))
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def monic(self):
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        inv_lead = Fraction(1) / lead
        return Polynomial([c * inv_lead for c in self.coeffs])

    def evaluate(self, x0, domain=None):
        """Horner evaluation; with a domain, coefficients are mapped into it."""
        if domain is None:
            acc = 0
            for c in reversed(self.coeffs):
                acc = acc * x0 + c
            return acc
        acc = domain.zero
        for c in reversed(self.coeffs):
            acc = domain.add(domain.mul(acc, x0), domain.from_fraction(Fraction(c)))
        return acc

    def __repr__(self):
        if self.is_zero():
            return "Polynomial(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("%s*x" % c)
            else:
                parts.append("%s*x^%d" % (c, i))
        return "Polynomial(%s)" % " + ".join(parts)


def _int_content(cs):
    from math import gcd
    g = 0
    for c in cs:
        g = gcd(g, abs(c))
        if g == 1:
            return 1
    return g


def poly_gcd(f, g):
    """Monic gcd of two polynomials; gcd(0, 0) = 0.

    Uses a primitive-remainder Euclid over the integers (clearing
    denominators and stripping content each round) to keep coefficient
    growth in check, then normalizes the result monic.
    """
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()

    def primitive_int(p):
        den = 1
        for c in p.coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // _gcd_int(den, c.denominator)
        cs = [int(c * den) for c in p.coeffs]
        cont = _int_content(cs)
        if cont > 1:
            cs = [c // cont for c in cs]
        return cs

    def _gcd_int(a, b):
        from math import gcd
        return gcd(a, b)

    a = primitive_int(f)
    b = primitive_int(g)
    if len(a) < len(b):
        a, b = b, a
    while b:
        # pseudo-remainder of a by b
        rem = list(a)
        lead = b[-1]
        db = len(b) - 1
        while len(rem) - 1 >= db and rem:
            if rem[-1] == 0:
                rem.pop()
                continue
            shift = len(rem) - 1 - db
            top = rem[-1]
            rem = [c * lead for c in rem]
            for j, bc in enumerate(b):
                rem[shift + j] -= top * bc
            while rem and rem[-1] == 0:
                rem.pop()
        cont = _int_content(rem)
        if cont > 1:
            rem = [c // cont for c in rem]
        a, b = b, rem
    return Polynomial(a).monic()


class RationalFunction:
    """Reduced quotient of polynomials; denominator monic and nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if not isinstance(num, Polynomial):
            num = Polynomial.const(num) if not isinstance(num, (tuple, list)) else Polynomial(num)
        if den is None:
            den = Polynomial((1,))
        elif not isinstance(den, Polynomial):
            den = Polynomial.const(den) if not isinstance(den, (tuple, list)) else Polynomial(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Polynomial((1,))
        elif reduce:
            # factor the powers of x out of both sides entirely; sequence
            # generation mostly produces Laurent-style denominators, and the
            # x-free parts then divide exactly without ever needing a gcd
            vn = next(i for i, c in enumerate(num.coeffs) if c != 0)
            vd = next(i for i, c in enumerate(den.coeffs) if c != 0)
            if vn:
                num = Polynomial(num.coeffs[vn:])
            if vd:
                den = Polynomial(den.coeffs[vd:])
            shift = vn - vd
            if den.degree > 0:
                # one side usually divides the other exactly; try both long
                # divisions before falling back to the gcd
                q, r = divmod(num, den)
                if r.is_zero():
                    num, den = q, Polynomial((1,))
                else:
                    q2, r2 = divmod(den, num)
                    if r2.is_zero():
                        num, den = Polynomial((1,)), q2
                    else:
                        g = poly_gcd(num, den)
                        if g.degree > 0:
                            num = divmod(num, g)[0]
                            den = divmod(den, g)[0]
            if shift > 0:
                num = Polynomial((0,) * shift + num.coeffs)
            elif shift < 0:
                den = Polynomial((0,) * (-shift) + den.coeffs)
            lead = den.coeffs[-1]
            if lead != 1:
                inv_lead = Fraction(1) / lead
                num = Polynomial([c * inv_lead for c in num.coeffs])
                den = Polynomial([c * inv_lead for c in den.coeffs])
        self.num = num
        self.den = den

    def is_poly(self):
        return self.den.degree == 0

    def as_poly(self):
        """The underlying polynomial, or None if the denominator is nontrivial."""
        if self.den.degree == 0:
            return self.num
        return None

    def is_zero(self):
        return self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other, reduce=False)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(Polynomial.const(other), reduce=False)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_poly() and other.is_poly():
            return RationalFunction(self.num + other.num, reduce=False)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_poly() and other.is_poly():
            return RationalFunction(self.num * other.num, reduce=False)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroInverse("division by the zero rational function")
        if self.is_poly() and other.is_poly():
            # exact long division first: the generic case in sequence
            # generation divides exactly and never needs a gcd
            q, r = divmod(self.num, other.num)
            if r.is_zero():
                return RationalFunction(q, reduce=False)
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, n):
        if n < 0:
            return RationalFunction(self.den, self.num) ** (-n)
        return RationalFunction(self.num ** n, self.den ** n, reduce=False)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, x0, domain=None):
        nv = self.num.evaluate(x0, domain)
        dv = self.den.evaluate(x0, domain)
        if domain is None:
            if dv == 0:
                raise ZeroInverse("denominator vanishes at the evaluation point")
            if isinstance(nv, (int, Fraction)) and isinstance(dv, (int, Fraction)):
                return Fraction(nv) / Fraction(dv)
            return nv / dv
        return domain.div(nv, dv)

    def __repr__(self):
        if self.is_poly():
            return repr(self.num)
        return "(%r)/(%r)" % (self.num, self.den)


class PolyFracDomain(Domain):
    """Field of univariate rational functions over the rationals.

    The variable name is cosmetic (serialization only); elements are
    RationalFunction values. Division tries exact polynomial long division
    before falling back to gcd reduction.
    """

    name = "polyfrac"

    def __init__(self, var="x"):
        self.var = var

    def from_int(self, n):
        return RationalFunction(Polynomial.const(n), reduce=False)

    def from_fraction(self, fr):
        return RationalFunction(Polynomial.const(fr), reduce=False)

    def gen(self):
        """The variable itself as a domain element."""
        return RationalFunction(Polynomial.x(), reduce=False)

    def from_poly(self, p):
        return RationalFunction(p, reduce=False)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a.is_zero():
            raise ZeroInverse("1/0 in the rational-function field")
        return RationalFunction(a.den, a.num)

    def div(self, a, b):
        if b.is_zero():
            raise ZeroInverse("division by zero in the rational-function field")
        return a / b

    def is_zero(self, a):
        return a.is_zero()

    def eq(self, a, b):
        return a == b

    def serialize(self, a):
        num = [RationalDomain().serialize(Fraction(c)) for c in a.num.coeffs]
        if a.is_poly():
            return {"num": num}
        den = [RationalDomain().serialize(Fraction(c)) for c in a.den.coeffs]
        return {"num": num, "den": den}


class ComplexDomain(Domain):
    """Double-precision complex numbers; results must stay finite."""

    name = "complex"
    exact = False

    def from_int(self, n):
        return complex(n)

    def from_fraction(self, fr):
        return complex(fr.numerator / fr.denominator)

    def _check(self, z):
        if not (cmath.isfinite(z)):
            raise NumericOverflow("non-finite complex result")
        return z

    def add(self, a, b):
        return self._check(a + b)

    def sub(self, a, b):
        return self._check(a - b)

    def mul(self, a, b):
        return self._check(a * b)

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroInverse("1/0 over the complex numbers")
        return self._check(1 / a)

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def serialize(self, a):
        return [a.real, a.imag]


class CountingDomain(Domain):
    """Wraps a domain and counts ring operations (add/sub/neg one counter,
    mul another, inv/div a third). Elements pass through unchanged."""

    def __init__(self, inner):
        self.inner = inner
        self.name = "counting(%s)" % inner.name
        self.exact = inner.exact
        self.adds = 0
        self.muls = 0
        self.invs = 0

    @property
    def total(self):
        return self.adds + self.muls + self.invs

    def reset(self):
        self.adds = self.muls = self.invs = 0

    def from_int(self, n):
        return self.inner.from_int(n)

    def from_fraction(self, fr):
        return self.inner.from_fraction(fr)

    def add(self, a, b):
        self.adds += 1
        return self.inner.add(a, b)

    def sub(self, a, b):
        self.adds += 1
        return self.inner.sub(a, b)

    def mul(self, a, b):
        self.muls += 1
        return self.inner.mul(a, b)

    def neg(self, a):
        self.adds += 1
        return self.inner.neg(a)

    def inv(self, a):
        self.invs += 1
        return self.inner.inv(a)

    def div(self, a, b):
        self.invs += 1
        return self.inner.div(a, b)

    def is_zero(self, a):
        return self.inner.is_zero(a)

    def eq(self, a, b):
        return self.inner.eq(a, b)

    def serialize(self, a):
        return self.inner.serialize(a)


QQ = RationalDomain()


def inv(domain, x):
    """Multiplicative inverse in the given domain; ZeroInverse on zero."""
    return domain.inv(x)
