"""Exact arithmetic in the rational function field Q(s), with s = q^(1/2).

A QScalar is stored as s^shift * num(s) / den(s), where num and den are
polynomials with rational coefficients (tuples, lowest degree first) whose
constant terms are nonzero, den is monic and gcd(num, den) = 1.  Zero is
the unique value with an empty numerator.  Pulling the powers of s out of
both polynomials makes Laurent polynomials (the common case: every
coefficient produced by the commutation relations is one) cheap, since they
never need a gcd.

The public `numerator` / `denominator` properties give the plain
monic-denominator form.
"""

from fractions import Fraction
from functools import lru_cache
import math


class DomainError(ValueError):
    """Raised when q lies outside the open interval (0, 1)."""


class DenominatorZero(ZeroDivisionError):
    """Raised when a denominator vanishes at the evaluation point."""


class DivisionByZero(ZeroDivisionError):
    """Raised on division by the zero element."""


# ---------------------------------------------------------------------------
# dense polynomial helpers: tuples of Fractions, lowest degree first,
# no trailing zeros, () is the zero polynomial

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(p, r):
    if len(p) < len(r):
        p, r = r, p
    out = list(p)
    for i, c in enumerate(r):
        out[i] += c
    return _trim(out)


def _pneg(p):
    return tuple(-c for c in p)


def _pmul(p, r):
    if not p or not r:
        return ()
    if len(p) == 1:
        c = p[0]
        return tuple(c * x for x in r)
    if len(r) == 1:
        c = r[0]
        return tuple(c * x for x in p)
    out = [Fraction(0)] * (len(p) + len(r) - 1)
    for i, x in enumerate(p):
        if x:
            for k, y in enumerate(r):
                out[i + k] += x * y
    return tuple(out)


def _pdivmod(p, r):
    if not r:
        raise DivisionByZero("polynomial division by zero")
    p = list(p)
    lead = r[-1]
    dr = len(r) - 1
    if len(p) <= dr:
        return (), _trim(p)
    quot = [Fraction(0)] * (len(p) - dr)
    for i in range(len(p) - 1, dr - 1, -1):
        c = p[i] / lead
        if c:
            quot[i - dr] = c
            for k in range(dr + 1):
                p[i - dr + k] -= c * r[k]
    return _trim(quot), _trim(p[:dr])


def _monic(p):
    lead = p[-1]
    if lead == 1:
        return p
    return tuple(c / lead for c in p)


def _pgcd(p, r):
    while r:
        p, r = r, _pdivmod(p, r)[1]
    return _monic(p) if p else p


def _strip_s(p):
    """Split p = s^k * p' with p'(0) != 0; returns (p', k)."""
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    return p[k:], k


def _as_poly(coeffs):
    return _trim(Fraction(c) for c in coeffs)


_ONE_POLY = (Fraction(1),)


class QScalar:
    """Element of Q(s) in canonical form; immutable and hashable."""

    __slots__ = ("num", "den", "shift", "_hash")

    def __init__(self, num=(), den=_ONE_POLY, shift=0, _canonical=False):
        if _canonical:
            self.num, self.den, self.shift = num, den, shift
        else:
            self.num, self.den, self.shift = _canonicalize(
                _as_poly(num), _as_poly(den), shift)
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_rational(cls, x):
        x = Fraction(x)
        if x == 0:
            return ZERO
        return cls((x,), _ONE_POLY, 0, _canonical=True)

    @classmethod
    def s_power(cls, k):
        """s^k for any integer k."""
        return cls(_ONE_POLY, _ONE_POLY, int(k), _canonical=True)

    @classmethod
    def q_power(cls, x):
        """q^x for x in (1/2)Z (int, Fraction, float or HalfInt)."""
        return cls.s_power(HalfInt.from_value(x).twice)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, QScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.from_rational(x)
        return NotImplemented

    # -- views --------------------------------------------------------------
    @property
    def numerator(self):
        """Numerator polynomial (tuple of Fractions, lowest degree first)."""
        if self.shift > 0:
            return (Fraction(0),) * self.shift + self.num
        return self.num

    @property
    def denominator(self):
        if self.shift < 0:
            return (Fraction(0),) * (-self.shift) + self.den
        return self.den

    def is_zero(self):
        return not self.num

    def is_laurent(self):
        return len(self.den) == 1

    def laurent_terms(self):
        """{power of s: coefficient} for a Laurent polynomial."""
        if not self.is_laurent():
            raise ValueError("not a Laurent polynomial in s")
        return {self.shift + i: c for i, c in enumerate(self.num) if c}

    def as_rational(self):
        """The value as a Fraction if it is a constant, else None."""
        if not self.num:
            return Fraction(0)
        if len(self.num) == 1 and len(self.den) == 1 and self.shift == 0:
            return self.num[0]
        return None

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = QScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        if len(self.den) == 1 and len(other.den) == 1:
            lo = min(self.shift, other.shift)
            a = (Fraction(0),) * (self.shift - lo) + self.num
            b = (Fraction(0),) * (other.shift - lo) + other.num
            n, k = _strip_s(_padd(a, b))
            if not n:
                return ZERO
            return QScalar(n, _ONE_POLY, lo + k, _canonical=True)
        # general case: s^e1 n1/d1 + s^e2 n2/d2
        lo = min(self.shift, other.shift)
        a = (Fraction(0),) * (self.shift - lo) + self.num
        b = (Fraction(0),) * (other.shift - lo) + other.num
        if self.den == other.den:
            return QScalar(_padd(a, b), self.den, lo)
        a = _pmul(a, other.den)
        b = _pmul(b, self.den)
        return QScalar(_padd(a, b), _pmul(self.den, other.den), lo)

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        return QScalar(_pneg(self.num), self.den, self.shift, _canonical=True)

    def __sub__(self, other):
        other = QScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = QScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = QScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        shift = self.shift + other.shift
        if len(self.den) == 1 and len(other.den) == 1:
            return QScalar(_pmul(self.num, other.num), _ONE_POLY, shift,
                           _canonical=True)
        # cross-cancel before multiplying keeps the gcds small
        g1 = _pgcd(self.num, other.den)
        g2 = _pgcd(other.num, self.den)
        n1, d2 = self.num, other.den
        if len(g1) > 1:
            n1, d2 = _pdivmod(n1, g1)[0], _pdivmod(d2, g1)[0]
        n2, d1 = other.num, self.den
        if len(g2) > 1:
            n2, d1 = _pdivmod(n2, g2)[0], _pdivmod(d1, g2)[0]
        num = _pmul(n1, n2)
        den = _pmul(d1, d2)
        lead = den[-1]
        if lead != 1:
            num = tuple(c / lead for c in num)
            den = tuple(c / lead for c in den)
        return QScalar(num, den, shift, _canonical=True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        lead = self.num[-1]
        return QScalar(tuple(c / lead for c in self.den),
                       tuple(c / lead for c in self.num), -self.shift,
                       _canonical=True)

    def __truediv__(self, other):
        other = QScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = QScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        other = QScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.shift == other.shift and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den, self.shift))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    # -- evaluation and rendering -------------------------------------------
    def eval_at(self, q):
        return eval_at(self, q)

    def __float__(self):
        raise TypeError("QScalar has no float value without a choice of q; "
                        "use eval_at")

    def __repr__(self):
        return f"QScalar({render(self)})"

    def __str__(self):
        return render(self)


def _canonicalize(num, den, shift):
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return (), _ONE_POLY, 0
    num, k1 = _strip_s(num)
    den, k2 = _strip_s(den)
    shift += k1 - k2
    if len(den) > 1:
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
    lead = den[-1]
    if lead != 1:
        num = tuple(c / lead for c in num)
        den = tuple(c / lead for c in den)
    return num, den, shift


ZERO = QScalar((), _ONE_POLY, 0, _canonical=True)
ONE = QScalar(_ONE_POLY, _ONE_POLY, 0, _canonical=True)


class HalfInt:
    """A number in (1/2)Z stored as twice its value."""

    __slots__ = ("twice",)

    def __init__(self, twice):
        if not isinstance(twice, int):
            raise TypeError("HalfInt takes the integer 2x")
        self.twice = twice

    @classmethod
    def from_value(cls, x):
        if isinstance(x, HalfInt):
            return x
        t = Fraction(x) * 2
        if t.denominator != 1:
            raise ValueError(f"{x} is not a half-integer")
        return cls(int(t))

    def __add__(self, other):
        other = HalfInt.from_value(other)
        return HalfInt(self.twice + other.twice)

    __radd__ = __add__

    def __sub__(self, other):
        other = HalfInt.from_value(other)
        return HalfInt(self.twice - other.twice)

    def __rsub__(self, other):
        return HalfInt.from_value(other) - self

    def __neg__(self):
        return HalfInt(-self.twice)

    def __eq__(self, other):
        try:
            other = HalfInt.from_value(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.twice == other.twice

    def __hash__(self):
        return hash(("HalfInt", self.twice))

    def __lt__(self, other):
        return self.twice < HalfInt.from_value(other).twice

    def __le__(self, other):
        return self.twice <= HalfInt.from_value(other).twice

    def __float__(self):
        return self.twice / 2

    def as_fraction(self):
        return Fraction(self.twice, 2)

    def is_integer(self):
        return self.twice % 2 == 0

    def __repr__(self):
        return f"HalfInt({self})"

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


# ---------------------------------------------------------------------------
# named constants

def q():
    return QScalar.s_power(2)


def s():
    return QScalar.s_power(1)


def q_pow(x):
    return QScalar.q_power(x)


@lru_cache(maxsize=None)
def _qnum_twice(twice):
    # [x] = (s^{2x} - s^{-2x}) / (s^2 - s^{-2}); multiply through by s^{2x}
    # and s^2 to get polynomials in s
    if twice == 0:
        return ZERO
    if twice < 0:
        return -_qnum_twice(-twice)
    t = twice
    num = [Fraction(0)] * (2 * t + 1)
    num[2 * t] = Fraction(1)
    num[0] = Fraction(-1)
    den = (Fraction(-1), Fraction(0), Fraction(0), Fraction(0), Fraction(1))
    # value = s^{-2x} (s^{4x} - 1) / (s^{-2}(s^4 - 1)) = s^{2 - 2x} * ...
    return QScalar(num, den, 2 - t)


def qnum(x):
    """The q-number [x] = (q^x - q^-x) / (q - q^-1) for x in (1/2)Z."""
    return _qnum_twice(HalfInt.from_value(x).twice)


def mu():
    """q + q^-1."""
    return QScalar((Fraction(1), Fraction(0), Fraction(0), Fraction(0),
                    Fraction(1)), _ONE_POLY, -2, _canonical=True)


def nu():
    """q - q^-1."""
    return QScalar((Fraction(-1), Fraction(0), Fraction(0), Fraction(0),
                    Fraction(1)), _ONE_POLY, -2, _canonical=True)


def simplify(num, den):
    """Canonical QScalar for num(s)/den(s); coefficient sequences are
    lowest degree first."""
    den = _as_poly(den)
    if not den:
        raise DivisionByZero("zero denominator")
    return QScalar(num, den, 0)


def _horner(p, x):
    acc = 0.0
    for c in reversed(p):
        acc = acc * x + float(c)
    return acc


def eval_at(v, q_value):
    """Numeric value of v at s = sqrt(q), 0 < q < 1."""
    q_value = float(q_value)
    if not (0.0 < q_value < 1.0) or math.isnan(q_value):
        raise DomainError(f"q = {q_value} is outside (0, 1)")
    v = QScalar.coerce(v)
    if not v.num:
        return 0.0
    sv = math.sqrt(q_value)
    d = _horner(v.den, sv)
    if d == 0.0:
        raise DenominatorZero(f"denominator vanishes at q = {q_value}")
    out = sv ** v.shift * _horner(v.num, sv) / d
    if not math.isfinite(out):
        raise OverflowError(f"non-finite value at q = {q_value}")
    return out


# ---------------------------------------------------------------------------
# rendering

def _render_exponent(k):
    # k is a power of s, i.e. q^(k/2)
    if k % 2 == 0:
        e = k // 2
        if e == 1:
            return "q"
        return f"q^{e}"
    return f"q^({k}/2)"


def _render_laurent(terms):
    """terms: {power of s: Fraction}; highest power first."""
    if not terms:
        return "0"
    parts = []
    for k in sorted(terms, reverse=True):
        c = terms[k]
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if k == 0:
            body = str(c)
        elif c == 1:
            body = _render_exponent(k)
        else:
            body = f"{c}*{_render_exponent(k)}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _needs_parens(text):
    return " + " in text or " - " in text or "/" in text.replace("/2)", "")


def render(v):
    """Laurent-style text in q and half-integer powers of q, parseable by
    the expression parser (e.g. ``q^-1 + 2*q^(3/2)``)."""
    v = QScalar.coerce(v)
    if not v.num:
        return "0"
    num_terms = {v.shift + i: c for i, c in enumerate(v.num) if c}
    if len(v.den) == 1:
        return _render_laurent(num_terms)
    den_terms = {i: c for i, c in enumerate(v.den) if c}
    n = _render_laurent(num_terms)
    d = _render_laurent(den_terms)
    if _needs_parens(n) or n.startswith("-"):
        n = f"({n})"
    return f"{n}/({d})"


def to_qscalar(x):
    out = QScalar.coerce(x)
    if out is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to QScalar")
    return out
