"""Exact arithmetic in the field Q(q) of rational functions in q.

Scalars are fractions of Laurent polynomials kept in a canonical reduced
form, so equality of two scalars is plain structural comparison:

* the denominator is a genuine polynomial in q (lowest exponent 0) with
  integer coefficients of content 1 and positive leading coefficient;
* numerator and denominator share no polynomial factor;
* any unit power of q is absorbed into the numerator.

Coefficients are arbitrary-precision rationals.  The backend is
``gmpy2.mpq`` when importable (much faster) and ``fractions.Fraction``
otherwise; set QDUAL_RATIONAL=fractions|gmpy2 to force one.  No floating
point is used anywhere.
"""

from __future__ import annotations

import os
from functools import lru_cache
from math import gcd as _int_gcd

from .errors import DivisionByZero, InvalidArgument, SpecializationSingular

_FORCED = os.environ.get("QDUAL_RATIONAL", "").strip().lower()
if _FORCED == "fractions":
    from fractions import Fraction as QQ

    RATIONAL_BACKEND = "fractions"
else:
    try:
        from gmpy2 import mpq as QQ  # type: ignore[no-redef]

        RATIONAL_BACKEND = "gmpy2"
    except ImportError:
        if _FORCED == "gmpy2":
            raise
        from fractions import Fraction as QQ  # type: ignore[no-redef]

        RATIONAL_BACKEND = "fractions"

_QQ0 = QQ(0)
_QQ1 = QQ(1)


def rational(num, den=1):
    """Build a backend rational from integers (or backend rationals)."""
    return QQ(num) / QQ(den) if den != 1 else QQ(num)


class LaurentPoly:
    """A Laurent polynomial in q with rational coefficients.

    Immutable by convention.  ``coeffs`` maps exponent -> nonzero rational.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                if c:
                    clean[int(e)] = c if type(c) is type(_QQ1) else QQ(c)
        self.coeffs = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero():
        return _L_ZERO

    @staticmethod
    def one():
        return _L_ONE

    @staticmethod
    def q_power(e):
        return LaurentPoly({e: _QQ1})

    @staticmethod
    def const(c):
        return LaurentPoly({0: QQ(c)})

    # -- structure ----------------------------------------------------

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def is_one(self):
        return self.coeffs == {0: _QQ1}

    def min_exp(self):
        return min(self.coeffs) if self.coeffs else 0

    def max_exp(self):
        return max(self.coeffs) if self.coeffs else 0

    def n_terms(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ({0: QQ(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, _QQ0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return _wrap({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return _L_ZERO
            return _wrap({e: c * other for e, c in self.coeffs.items()})
        if not isinstance(other, LaurentPoly):
            return _wrap({e: c * other for e, c in self.coeffs.items()})
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _L_ZERO
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                s = out.get(e, _QQ0) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return _wrap(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise InvalidArgument("negative power of a Laurent polynomial")
        out = _L_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shifted(self, k):
        """Multiply by q^k."""
        if k == 0:
            return self
        return _wrap({e + k: c for e, c in self.coeffs.items()})

    def scaled(self, c):
        if not c:
            return _L_ZERO
        return _wrap({e: v * c for e, v in self.coeffs.items()})

    # -- q -> 1/q symmetry ---------------------------------------------

    def bar(self):
        """The image under q -> q^-1 (exponent reflection)."""
        return _wrap({-e: c for e, c in self.coeffs.items()})

    def is_bar_symmetric(self):
        return all(self.coeffs.get(-e) == c for e, c in self.coeffs.items())

    # -- evaluation & rendering ----------------------------------------

    def evaluate(self, x):
        """Exact value at a nonzero rational q = x."""
        if not x:
            raise SpecializationSingular("q = 0 is not a legal specialization")
        total = _QQ0
        for e, c in self.coeffs.items():
            total += c * x**e
        return total

    def render(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            neg = c < 0
            mag = -c if neg else c
            if e == 0:
                body = str(mag)
            else:
                qs = "q" if e == 1 else f"q^{e}"
                body = qs if mag == 1 else f"{mag}{qs}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.render()})"

def _content_free(p: LaurentPoly):
    """Split p as q^shift * content * primitive.

    The primitive part has integer coefficients with gcd 1, positive
    leading coefficient, and lowest exponent 0.
    """
    if not p.coeffs:
        return p, _QQ1, 0
    shift = p.min_exp()
    num_gcd = 0
    den_lcm = 1
    for c in p.coeffs.values():
        num_gcd = _int_gcd(num_gcd, abs(int(c.numerator)))
        d = int(c.denominator)
        den_lcm = den_lcm // _int_gcd(den_lcm, d) * d
    content = QQ(num_gcd, den_lcm)
    lead = p.coeffs[p.max_exp()]
    if lead < 0:
        content = -content
    prim = _wrap({e - shift: c / content for e, c in p.coeffs.items()})
    return prim, content, shift


def _wrap(coeffs):
    p = LaurentPoly.__new__(LaurentPoly)
    p.coeffs = coeffs
    return p


_L_ZERO = _wrap({})
_L_ONE = _wrap({0: _QQ1})


# -- genuine-polynomial helpers (lowest exponent 0) ---------------------


def _to_dense(p: LaurentPoly):
    """Dense coefficient list [c_0, ..., c_deg] of a genuine polynomial."""
    deg = p.max_exp()
    out = [_QQ0] * (deg + 1)
    for e, c in p.coeffs.items():
        out[e] = c
    return out


def _from_dense(lst):
    return _wrap({e: c for e, c in enumerate(lst) if c})


def _dense_divmod(a, b):
    """Polynomial division with remainder over Q; dense lists."""
    a = list(a)
    db = len(b) - 1
    while b and not b[db]:
        db -= 1
    quo = [_QQ0] * max(len(a) - db, 1)
    lead = b[db]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if not c:
            continue
        f = c / lead
        quo[i - db] = f
        for j in range(db + 1):
            a[i - db + j] -= f * b[j]
    while len(a) > 1 and not a[-1]:
        a.pop()
    return quo, a


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """gcd of two Laurent polynomials, as a primitive genuine polynomial.

    Unit powers of q are discarded first, so q^k never divides the result.
    """
    if a.is_zero:
        return _content_free(b)[0]
    if b.is_zero:
        return _content_free(a)[0]
    x = _to_dense(_content_free(a)[0])
    y = _to_dense(_content_free(b)[0])
    while any(y):
        _, r = _dense_divmod(x, y)
        x, y = y, r
        if len(y) == 1 and not y[0]:
            break
    g = _from_dense(x)
    return _content_free(g)[0]


def poly_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact division a / b; raises if the division leaves a remainder."""
    if b.is_zero:
        raise DivisionByZero("polynomial division by zero")
    if a.is_zero:
        return _L_ZERO
    sa, sb = a.min_exp(), b.min_exp()
    quo, rem = _dense_divmod(_to_dense(a.shifted(-sa)), _to_dense(b.shifted(-sb)))
    if any(rem):
        raise InvalidArgument("inexact polynomial division")
    return _from_dense(quo).shifted(sa - sb)


class RatScalar:
    """An element of Q(q) in canonical reduced form.  Immutable."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _canonical=False):
        if isinstance(num, int):
            num = LaurentPoly.const(num)
        if den is None:
            den = _L_ONE
        elif isinstance(den, int):
            den = LaurentPoly.const(den)
        if _canonical:
            self.num = num
            self.den = den
            return
        self.num, self.den = _canonicalize(num, den)

    # -- structure ------------------------------------------------------

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_polynomial(self):
        return self.den.is_one

    def __bool__(self):
        return not self.num.is_zero

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def as_laurent(self) -> LaurentPoly:
        if not self.den.is_one:
            raise InvalidArgument("scalar is not a Laurent polynomial")
        return self.num

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one and other.den.is_one:
            return RatScalar(self.num + other.num, _L_ONE, _canonical=True)
        return RatScalar(self.num * other.den + other.num * self.den,
                         self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatScalar(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one and other.den.is_one:
            return RatScalar(self.num * other.num, _L_ONE, _canonical=True)
        return RatScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise DivisionByZero("division by zero in Q(q)")
        return RatScalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def inv(self):
        if self.is_zero:
            raise DivisionByZero("inverse of zero in Q(q)")
        return RatScalar(self.den, self.num)

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = R_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- evaluation & rendering -------------------------------------------

    def specialize(self, x):
        """Exact rational value at q = x (a nonzero rational)."""
        d = self.den.evaluate(x)
        if not d:
            raise SpecializationSingular(f"denominator vanishes at q = {x}")
        return self.num.evaluate(x) / d

    def render(self):
        if self.den.is_one:
            return self.num.render()
        ns = self.num.render()
        ds = self.den.render()
        if self.num.n_terms() > 1:
            ns = f"({ns})"
        if self.den.n_terms() > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"RatScalar({self.render()})"

    def __str__(self):
        return self.render()


def _coerce(x):
    if isinstance(x, RatScalar):
        return x
    if isinstance(x, int):
        return RatScalar(LaurentPoly.const(x), _L_ONE, _canonical=True)
    if isinstance(x, LaurentPoly):
        return RatScalar(x)
    return NotImplemented


def _canonicalize(num: LaurentPoly, den: LaurentPoly):
    if den.is_zero:
        raise DivisionByZero("zero denominator in Q(q)")
    if num.is_zero:
        return _L_ZERO, _L_ONE
    if den.n_terms() == 1:
        e, c = next(iter(den.coeffs.items()))
        return num.shifted(-e).scaled(_QQ1 / c), _L_ONE
    g = poly_gcd(num, den)
    if not g.is_one:
        num = poly_exact_div(num, g)
        den = poly_exact_div(den, g)
    if den.n_terms() == 1:
        e, c = next(iter(den.coeffs.items()))
        return num.shifted(-e).scaled(_QQ1 / c), _L_ONE
    dprim, dcont, dshift = _content_free(den)
    num = num.shifted(-dshift).scaled(_QQ1 / dcont)
    return num, dprim


# -- convenient constants and constructors ------------------------------

R_ZERO = RatScalar(0)
R_ONE = RatScalar(1)


def rs_int(k: int) -> RatScalar:
    return RatScalar(k)


def rs_rational(num, den=1) -> RatScalar:
    return RatScalar(LaurentPoly({0: QQ(num, den) if den != 1 else QQ(num)}))


def q_power(e: int) -> RatScalar:
    """The monomial q^e."""
    return RatScalar(LaurentPoly.q_power(e), _L_ONE, _canonical=True)


R_Q = q_power(1)
R_QINV = q_power(-1)


def laurent(coeffs) -> RatScalar:
    """A scalar from {exponent: rational coefficient}."""
    return RatScalar(LaurentPoly(coeffs))


# -- quantum combinatorics ----------------------------------------------


@lru_cache(maxsize=None)
def qint(r: int) -> RatScalar:
    """The balanced quantum integer [r] = (q^r - q^-r)/(q - q^-1).

    [0] = 0, [-r] = -[r]; the value is a bar-symmetric Laurent polynomial
    (antisymmetric for negative r only through the overall sign).
    """
    if r < 0:
        return -qint(-r)
    return RatScalar(LaurentPoly({r - 1 - 2 * k: _QQ1 for k in range(r)}),
                     _L_ONE, _canonical=True)


@lru_cache(maxsize=None)
def qfact(r: int) -> RatScalar:
    """The quantum factorial [r]! = [1][2]...[r], for r >= 0."""
    if r < 0:
        raise InvalidArgument(f"quantum factorial of negative {r}")
    if r == 0:
        return R_ONE
    return qfact(r - 1) * qint(r)


@lru_cache(maxsize=None)
def qbinom(m: int, r: int) -> RatScalar:
    """The quantum binomial [m]! / ([r]! [m-r]!), for 0 <= r <= m."""
    if not 0 <= r <= m:
        raise InvalidArgument(f"quantum binomial out of range: ({m}, {r})")
    return qfact(m) / (qfact(r) * qfact(m - r))
