"""The rational-function field Q(s) with s**2 = q.

Every scalar in the library is a :class:`FieldElem`.  Elements are kept
permanently reduced, so equality is structural and removable
singularities (a factor 1/lambda**2 that cancels, say) disappear at
construction time.  Internally a value is ``num/den`` with integer
coefficient polynomials; the canonical form has coprime polynomials,
coprime joint content and a positive leading denominator coefficient.
The monic-denominator view over Q is available via :meth:`FieldElem.monic`.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

from . import poly as P

__all__ = [
    "DenominatorVanishes",
    "FieldElem",
    "ONE",
    "ZERO",
    "S",
    "Q",
    "LAM",
    "fsum",
    "qnum",
    "qnum_sq",
    "parse_rational",
]


class DenominatorVanishes(ZeroDivisionError):
    """Evaluation hit a genuine pole of a reduced rational function."""


def _normalize(num, den):
    if not den:
        raise ZeroDivisionError("rational function with zero denominator")
    if not num:
        return P.ZERO, P.ONE
    v = min(P.valuation(num), P.valuation(den))
    if v:
        num, den = P.shift(num, -v), P.shift(den, -v)
    if len(den) > 1 and len(num) > 1:
        # a bare power of s left in either part cannot share a factor
        if not (P.valuation(den) == len(den) - 1 or P.valuation(num) == len(num) - 1):
            g = P.gcd_poly(num, den)
            if len(g) > 1:
                num, den = P.exquo(num, g), P.exquo(den, g)
    c = gcd(P.content(num), P.content(den))
    if den[-1] < 0:
        c = -c
    if c != 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    return num, den


class FieldElem:
    """An element of Q(s), immutable and hashable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=P.ZERO, den=P.ONE, _reduced=False):
        if not _reduced:
            num, den = _normalize(P.strip(num), P.strip(den))
        self.num = num
        self.den = den
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def coerce(cls, x):
        if isinstance(x, FieldElem):
            return x
        if isinstance(x, int):
            return cls((x,) if x else (), P.ONE, _reduced=True)
        if isinstance(x, Rational):
            x = Fraction(x)
            return cls((x.numerator,) if x else (), (x.denominator,), _reduced=True)
        raise TypeError(f"cannot coerce {type(x).__name__} to FieldElem")

    @classmethod
    def from_laurent(cls, coeffs, low):
        """Element sum(coeffs[i] * s**(low + i)) with rational coefficients."""
        fr = [Fraction(c) for c in coeffs]
        d = 1
        for c in fr:
            d = d * c.denominator // gcd(d, c.denominator)
        ints = tuple(int(c * d) for c in fr)
        num, den = (ints, (d,))
        if low >= 0:
            num = P.shift(P.strip(num), low)
        else:
            den = P.shift(den, -low)
        return cls(num, den)

    @classmethod
    def monomial(cls, k, c=1):
        """c * s**k."""
        if k >= 0:
            return cls(P.shift((c,), k), P.ONE)
        return cls((c,), P.shift(P.ONE, -k))

    # predicates ---------------------------------------------------------
    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.num == P.ONE and self.den == P.ONE

    def is_constant(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def is_laurent(self):
        """True if the denominator is a single power of s."""
        return P.valuation(self.den) == len(self.den) - 1

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, FieldElem):
            try:
                other = FieldElem.coerce(other)
            except TypeError:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return FieldElem(P.add(self.num, other.num), self.den)
        if len(self.den) == 1 and len(other.den) == 1:
            a, b = self.den[0], other.den[0]
            return FieldElem(P.add(P.scale(self.num, b), P.scale(other.num, a)), (a * b,))
        return FieldElem(
            P.add(P.mul(self.num, other.den), P.mul(other.num, self.den)),
            P.mul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(P.neg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        if not isinstance(other, FieldElem):
            try:
                other = FieldElem.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return FieldElem.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, FieldElem):
            try:
                other = FieldElem.coerce(other)
            except TypeError:
                return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if other.den == P.ONE and len(other.num) == 1:
            c = other.num[0]
            if c == 1:
                return self
            return FieldElem(P.scale(self.num, c), self.den)
        if self.den == P.ONE and len(self.num) == 1:
            return other * self
        return FieldElem(P.mul(self.num, other.num), P.mul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(s)")
        num, den = self.den, self.num
        if den[-1] < 0:
            num, den = P.neg(num), P.neg(den)
        return FieldElem(num, den, _reduced=True)

    def __truediv__(self, other):
        if not isinstance(other, FieldElem):
            try:
                other = FieldElem.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return FieldElem.coerce(other) * self.inverse()

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
            n >>= 1
            if n:
                base = base * base
        return result

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FieldElem):
            try:
                other = FieldElem.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # substitution and evaluation -------------------------------------------
    def __call__(self, s0):
        return self.eval(s0)

    def eval(self, s0):
        """Exact value at s = s0 (a rational number)."""
        s0 = Fraction(s0)
        n, d = s0.numerator, s0.denominator
        # homogenize: p(n/d) * d**deg
        top = max(len(self.num), len(self.den)) - 1
        num = _hom_eval(self.num, n, d, top)
        den = _hom_eval(self.den, n, d, top)
        if den == 0:
            raise DenominatorVanishes(f"pole at s = {s0}: {self}")
        return Fraction(num, den)

    def evalf(self, s0):
        """Floating value at s = s0 (a float); no exactness claimed."""
        num = sum(c * s0**i for i, c in enumerate(self.num))
        den = sum(c * s0**i for i, c in enumerate(self.den))
        if den == 0:
            raise DenominatorVanishes(f"pole at s = {s0}: {self}")
        return num / den

    def invert_s(self):
        """The image under s -> 1/s (equivalently q -> 1/q)."""
        n = max(len(self.num), len(self.den)) - 1
        return FieldElem(P.reverse(self.num, n), P.reverse(self.den, n))

    def subs_power(self, k):
        """The image under s -> s**k, k >= 1."""
        return FieldElem(P.compose_power(self.num, k), P.compose_power(self.den, k))

    def monic(self):
        """(num, den) as Fraction coefficient lists with a monic denominator."""
        lc = self.den[-1]
        return (
            [Fraction(c, lc) for c in self.num],
            [Fraction(c, lc) for c in self.den],
        )

    # rendering ----------------------------------------------------------------
    def __repr__(self):
        return f"FieldElem({self})"

    def __str__(self):
        return render(self, "s")

    def to_q_string(self):
        return render(self, "q")


def _hom_eval(p, n, d, top):
    acc = 0
    dp = 1
    # sum c_i n^i d^(top-i), accumulated from the top degree down
    for i in range(top, -1, -1):
        c = p[i] if i < len(p) else 0
        acc += c * n**i * dp
        dp *= d
    return acc


def _render_poly(coeffs, var, low=0, step=1):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        e = (low + i) // step if step > 1 else low + i
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            pw = var if e == 1 else f"{var}^{e}" if e > 0 else f"{var}^({e})"
            body = pw if mag == 1 else f"{mag}*{pw}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def render(x, var="s"):
    """Readable form: a Laurent polynomial when the denominator is c*s**k.

    With ``var='q'`` the exponents are halved when they are all even, giving
    the usual q-notation; otherwise the s-form is used.
    """
    if not x.num:
        return "0"
    step = 1
    if var == "q":
        exps = [i for i, c in enumerate(x.num) if c] + [i for i, c in enumerate(x.den) if c]
        if all(e % 2 == 0 for e in exps):
            step = 2
        else:
            var = "s"
    if x.is_laurent():
        k = len(x.den) - 1
        c = Fraction(1, x.den[-1])
        coeffs = [Fraction(a) * c for a in x.num]
        if all(f.denominator == 1 for f in coeffs):
            return _render_poly([int(f) for f in coeffs], var, -k, step)
        d = x.den[-1]
        body = _render_poly(list(x.num), var, -k, step)
        return f"({body})/{d}"
    num = _render_poly(list(x.num), var, 0, step)
    den = _render_poly(list(x.den), var, 0, step)
    return f"({num})/({den})"


ZERO = FieldElem(P.ZERO, P.ONE, _reduced=True)
ONE = FieldElem(P.ONE, P.ONE, _reduced=True)
S = FieldElem((0, 1), P.ONE, _reduced=True)
Q = S * S
LAM = Q - Q.inverse()


def fsum(items):
    """Sum of field elements, grouping equal denominators first."""
    groups = {}
    for x in items:
        if x.num:
            acc = groups.get(x.den)
            groups[x.den] = x.num if acc is None else P.add(acc, x.num)
    if not groups:
        return ZERO
    total = ZERO
    for den, num in groups.items():
        if num:
            total = total + FieldElem(num, den)
    return total


def _twice(n):
    f = Fraction(n)
    if (2 * f).denominator != 1:
        raise ValueError(f"q-number argument must be a half-integer, got {n}")
    return int(2 * f)


@lru_cache(maxsize=None)
def _qnum_cached(two_n, step):
    # (s^(2n*step) - s^(-2n*step)) / (s^(2*step) - s^(-2*step)) with 2n = two_n
    a = two_n * step
    b = 2 * step
    top = FieldElem.monomial(a) - FieldElem.monomial(-a)
    bot = FieldElem.monomial(b) - FieldElem.monomial(-b)
    return top / bot


def qnum(n):
    """The q-integer [n]_q = (q**n - q**-n)/(q - 1/q); n may be a half-integer."""
    return _qnum_cached(_twice(n), 1)


def qnum_sq(n):
    """The base-q**2 q-integer [n]_{q^2}; n may be a half-integer."""
    return _qnum_cached(_twice(n), 2)


def parse_rational(text):
    """Parse a rational literal such as ``3/2``, ``-1`` or ``0.5``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc
