"""Dense univariate polynomials over the integers.

A polynomial is a tuple of Python ints, lowest degree first, with no
trailing zeros.  The zero polynomial is the empty tuple.  These helpers
are the arithmetic core of :mod:`qdirac.field`; they never see rational
coefficients because field elements keep integer numerators and
denominators with a shared content normalization.
"""

from math import gcd

ZERO = ()
ONE = (1,)


def strip(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def degree(p):
    return len(p) - 1


def valuation(p):
    """Exponent of the largest power of s dividing ``p`` (0 for zero)."""
    for i, c in enumerate(p):
        if c:
            return i
    return 0


def shift(p, k):
    """Multiply by s**k (k may be negative if the low coefficients vanish)."""
    if not p or k == 0:
        return p
    if k > 0:
        return (0,) * k + p
    return p[-k:]


def add(p, r):
    if len(p) < len(r):
        p, r = r, p
    if not r:
        return p
    out = list(p)
    for i, c in enumerate(r):
        out[i] += c
    if len(p) == len(r):
        return strip(out)
    return tuple(out)


def neg(p):
    return tuple(-c for c in p)


def sub(p, r):
    return add(p, neg(r))


def scale(p, c):
    if not c:
        return ZERO
    return tuple(c * x for x in p)


def mul(p, r):
    if not p or not r:
        return ZERO
    if len(p) == 1:
        return scale(r, p[0])
    if len(r) == 1:
        return scale(p, r[0])
    out = [0] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(r):
                out[i + j] += a * b
    return tuple(out)


def content(p):
    g = 0
    for c in p:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive(p):
    """Primitive part with positive leading coefficient."""
    if not p:
        return p
    c = content(p)
    if p[-1] < 0:
        c = -c
    if c == 1:
        return p
    return tuple(x // c for x in p)


def exquo(p, d):
    """Exact quotient p / d in Z[s]; raises ArithmeticError if inexact."""
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    if not p:
        return ZERO
    if len(d) == 1:
        c = d[0]
        out = []
        for x in p:
            q, r = divmod(x, c)
            if r:
                raise ArithmeticError("inexact polynomial division")
            out.append(q)
        return tuple(out)
    rem = list(p)
    dl = len(d)
    lc = d[-1]
    n = len(p) - dl + 1
    if n <= 0:
        raise ArithmeticError("inexact polynomial division")
    quo = [0] * n
    for i in range(n - 1, -1, -1):
        c, r = divmod(rem[i + dl - 1], lc)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quo[i] = c
        if c:
            for j in range(dl):
                rem[i + j] -= c * d[j]
    if any(rem[: dl - 1]):
        raise ArithmeticError("inexact polynomial division")
    return tuple(quo)


def divides(d, p):
    try:
        exquo(p, d)
    except ArithmeticError:
        return False
    return True


def pseudo_rem(p, d):
    """Pseudo-remainder of p by d (leading coefficient powers absorbed)."""
    rem = list(p)
    dl = len(d)
    lc = d[-1]
    while len(rem) >= dl and rem:
        c = rem[-1]
        k = len(rem) - dl
        rem = [lc * x for x in rem]
        for j in range(dl):
            rem[k + j] -= c * d[j]
        rem = list(strip(rem))
    return tuple(rem)


def _prs_gcd(p, r):
    p, r = primitive(p), primitive(r)
    if len(p) < len(r):
        p, r = r, p
    while r:
        p, r = r, primitive(pseudo_rem(p, r))
    return primitive(p)


def _eval_int(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _interpolate(h, x):
    # symmetric-digit expansion of the integer h in base x
    out = []
    half = x // 2
    while h:
        d = h % x
        if d > half:
            d -= x
        out.append(d)
        h = (h - d) // x
    return strip(out)


def _heu_gcd(p, r):
    bound = min(max(abs(c) for c in p), max(abs(c) for c in r))
    xi = 2 * bound + 29
    for _ in range(6):
        hp, hr = _eval_int(p, xi), _eval_int(r, xi)
        if hp and hr:
            h = gcd(hp, hr)
            cand = primitive(_interpolate(h, xi))
            if cand and divides(cand, p) and divides(cand, r):
                return cand
        xi = xi * 73794 // 27011 + 1
    return None


def gcd_poly(p, r):
    """Primitive gcd of two integer polynomials (positive leading coeff)."""
    if not p:
        return primitive(r)
    if not r:
        return primitive(p)
    if len(p) == 1 or len(r) == 1:
        return ONE
    p, r = primitive(p), primitive(r)
    if p == r:
        return p
    g = _heu_gcd(p, r)
    if g is None:
        g = _prs_gcd(p, r)
    return g


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def reverse(p, n):
    """s**n * p(1/s) for n >= degree(p)."""
    out = [0] * (n + 1)
    for i, c in enumerate(p):
        out[n - i] = c
    return strip(out)


def compose_power(p, k):
    """p(s**k) for k >= 1."""
    if k == 1 or len(p) <= 1:
        return p
    out = [0] * ((len(p) - 1) * k + 1)
    for i, c in enumerate(p):
        out[i * k] = c
    return tuple(out)
