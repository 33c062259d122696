"""Dense matrices over Q(s) with tensor-factor bookkeeping."""

from . import poly as P
from .field import ONE, ZERO, FieldElem, Q, fsum


class ShapeMismatch(ValueError):
    pass


def _fe(x):
    return x if isinstance(x, FieldElem) else FieldElem.coerce(x)


class ExactMatrix:
    """Row-major dense matrix of :class:`FieldElem`.

    ``factor_shape`` records how the row space splits as a tensor product;
    it multiplies out to ``rows``.  Matrices are treated as immutable.
    """

    __slots__ = ("rows", "cols", "entries", "factor_shape")

    def __init__(self, rows, cols, entries, factor_shape=None):
        if len(entries) != rows * cols:
            raise ShapeMismatch(f"{rows}x{cols} matrix needs {rows * cols} entries")
        if factor_shape is not None:
            factor_shape = tuple(factor_shape)
            prod = 1
            for f in factor_shape:
                prod *= f
            if prod != rows:
                raise ShapeMismatch(f"factor_shape {factor_shape} does not multiply to {rows}")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self.factor_shape = factor_shape

    # constructors -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows, factor_shape=None):
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if n else 0
        if any(len(r) != m for r in rows):
            raise ShapeMismatch("ragged rows")
        return cls(n, m, [_fe(x) for r in rows for x in r], factor_shape)

    @classmethod
    def zeros(cls, rows, cols=None, factor_shape=None):
        cols = rows if cols is None else cols
        return cls(rows, cols, [ZERO] * (rows * cols), factor_shape)

    @classmethod
    def identity(cls, n, factor_shape=None):
        ent = [ZERO] * (n * n)
        for i in range(n):
            ent[i * n + i] = ONE
        return cls(n, n, ent, factor_shape)

    @classmethod
    def diag(cls, values):
        values = [_fe(v) for v in values]
        n = len(values)
        ent = [ZERO] * (n * n)
        for i, v in enumerate(values):
            ent[i * n + i] = v
        return cls(n, n, ent)

    @classmethod
    def blocks(cls, grid):
        """Assemble a matrix from a square grid of equal-size square blocks.

        The grid index becomes the leading tensor factor, so a 2x2 grid of
        d x d blocks has factor_shape (2, d).
        """
        g = len(grid)
        d = grid[0][0].rows
        n = g * d
        ent = [ZERO] * (n * n)
        for bi in range(g):
            for bj in range(g):
                b = grid[bi][bj]
                if b.rows != d or b.cols != d:
                    raise ShapeMismatch("blocks must share one square size")
                for i in range(d):
                    row = (bi * d + i) * n + bj * d
                    ent[row : row + d] = b.entries[i * d : (i + 1) * d]
        inner = grid[0][0].factor_shape or (d,)
        return cls(n, n, ent, (g,) + tuple(inner))

    # access ---------------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j):
        return self.entries[j :: self.cols]

    def tolist(self):
        return [self.row(i) for i in range(self.rows)]

    def block(self, bi, bj, size):
        """The (bi, bj) sub-block of side ``size``."""
        ent = []
        for i in range(size):
            start = (bi * size + i) * self.cols + bj * size
            ent.extend(self.entries[start : start + size])
        return ExactMatrix(size, size, ent)

    def with_shape(self, factor_shape):
        return ExactMatrix(self.rows, self.cols, self.entries, factor_shape)

    def is_square(self):
        return self.rows == self.cols

    def is_zero(self):
        return not any(x.num for x in self.entries)

    def is_scalar(self):
        """The scalar c if self == c*I, otherwise None."""
        if not self.is_square():
            return None
        n = self.rows
        c = self.entries[0] if n else ZERO
        for i in range(n):
            for j in range(n):
                x = self.entries[i * n + j]
                if i == j:
                    if x != c:
                        return None
                elif x.num:
                    return None
        return c

    def first_difference(self, other):
        """First (i, j, self_ij, other_ij) where the matrices differ, or None."""
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")
        for idx, (a, b) in enumerate(zip(self.entries, other.entries)):
            if a != b:
                return idx // self.cols, idx % self.cols, a, b
        return None

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"

    def pretty(self, var="q"):
        return "\n".join(
            "[" + ", ".join(x.to_q_string() if var == "q" else str(x) for x in self.row(i)) + "]"
            for i in range(self.rows)
        )

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        return mat_add(self, other)

    def __sub__(self, other):
        return mat_add(self, -other)

    def __neg__(self):
        return ExactMatrix(self.rows, self.cols, [-x for x in self.entries], self.factor_shape)

    def __mul__(self, c):
        return mat_scale(self, c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return mat_mul(self, other)

    def transpose(self):
        ent = [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)]
        return ExactMatrix(self.cols, self.rows, ent)

    T = property(transpose)

    def map(self, fn):
        return ExactMatrix(self.rows, self.cols, [fn(x) for x in self.entries], self.factor_shape)

    def eval(self, s0):
        """Entrywise exact evaluation at s = s0: a list of Fraction rows."""
        return [[x.eval(s0) for x in self.row(i)] for i in range(self.rows)]

    def evalf(self, s0):
        return [[x.evalf(s0) for x in self.row(i)] for i in range(self.rows)]

    def inverse(self):
        return mat_inverse(self)

    def trace(self):
        return fsum(self.entries[i * self.cols + i] for i in range(min(self.rows, self.cols)))


def mat_add(a, b):
    if a.shape != b.shape:
        raise ShapeMismatch(f"cannot add {a.shape} and {b.shape}")
    return ExactMatrix(
        a.rows, a.cols, [x + y for x, y in zip(a.entries, b.entries)], a.factor_shape or b.factor_shape
    )


def mat_scale(a, c):
    c = _fe(c)
    if c.is_one():
        return a
    return ExactMatrix(a.rows, a.cols, [c * x for x in a.entries], a.factor_shape)


def mat_mul(a, b):
    """Exact product, skipping structural zeros on both sides."""
    if a.cols != b.rows:
        raise ShapeMismatch(f"cannot multiply {a.shape} by {b.shape}")
    n, m, p = a.rows, a.cols, b.cols
    be = b.entries
    brows = []
    for k in range(m):
        brows.append([(j, x) for j, x in enumerate(be[k * p : (k + 1) * p]) if x.num])
    out = [ZERO] * (n * p)
    ae = a.entries
    for i in range(n):
        acc = {}
        for k in range(m):
            x = ae[i * m + k]
            if not x.num:
                continue
            for j, y in brows[k]:
                acc.setdefault(j, []).append(x * y)
        base = i * p
        for j, terms in acc.items():
            out[base + j] = terms[0] if len(terms) == 1 else fsum(terms)
    return ExactMatrix(n, p, out, a.factor_shape)


def kron(a, b):
    """Kronecker product a (x) b; factor shapes concatenate."""
    n = a.rows * b.rows
    m = a.cols * b.cols
    out = [ZERO] * (n * m)
    for i in range(a.rows):
        for j in range(a.cols):
            x = a.entries[i * a.cols + j]
            if not x.num:
                continue
            for k in range(b.rows):
                row = (i * b.rows + k) * m + j * b.cols
                for l in range(b.cols):
                    y = b.entries[k * b.cols + l]
                    if y.num:
                        out[row + l] = x * y
    fa = a.factor_shape or (a.rows,)
    fb = b.factor_shape or (b.rows,)
    shape = tuple(fa) + tuple(fb) if a.rows == a.cols and b.rows == b.cols else None
    return ExactMatrix(n, m, out, shape)


def commutator(a, b):
    return mat_mul(a, b) - mat_mul(b, a)


def mat_inverse(a):
    """Inverse by Gauss-Jordan elimination over Q(s)."""
    if not a.is_square():
        raise ShapeMismatch("inverse of a non-square matrix")
    n = a.rows
    rows = [list(a.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c].num), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        rows[c], rows[piv] = rows[piv], rows[c]
        inv = rows[c][c].inverse()
        rows[c] = [x * inv for x in rows[c]]
        for r in range(n):
            f = rows[r][c]
            if r != c and f.num:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return ExactMatrix(n, n, [x for r in rows for x in r[n:]], a.factor_shape)


def qtrace2(x):
    """Partial trace over the leading 2-dimensional factor weighted by diag(q, 1/q).

    For a 2d x 2d matrix split as 2x2 blocks this is q*X11 + X22/q, a
    d x d matrix (1x1 for a plain 2x2 input).
    """
    if not x.is_square() or x.rows % 2:
        raise ShapeMismatch(f"q-trace needs a square matrix with leading factor 2, got {x.shape}")
    if x.factor_shape is not None and x.factor_shape[0] != 2:
        raise ShapeMismatch(f"leading tensor factor is {x.factor_shape[0]}, not 2")
    d = x.rows // 2
    top = x.block(0, 0, d)
    bot = x.block(1, 1, d)
    out = mat_add(mat_scale(top, Q), mat_scale(bot, Q.inverse()))
    rest = x.factor_shape[1:] if x.factor_shape is not None and len(x.factor_shape) > 1 else None
    return out.with_shape(rest)


# -- fraction-free elimination -------------------------------------------------


def _row_to_poly(row):
    """Clear denominators of a row of FieldElems: a list of integer polys."""
    den = P.ONE
    for x in row:
        if x.num and x.den != P.ONE and x.den != den:
            g = P.gcd_poly(den, x.den)
            den = P.mul(den, P.exquo(x.den, g)) if len(g) > 1 else P.mul(den, x.den)
    out = []
    for x in row:
        if not x.num:
            out.append(P.ZERO)
        else:
            out.append(P.exquo(P.mul(x.num, den), x.den))
    return out


def echelon_ff(m):
    """Fraction-free (Bareiss) row echelon form over Z[s].

    Returns (rows, pivot_columns) where rows are integer polynomial lists.
    Every division performed is exact; an inexact one would raise.
    """
    a = [_row_to_poly(m.row(i)) for i in range(m.rows)]
    nrows, ncols = m.rows, m.cols
    prev = P.ONE
    r = 0
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            newrow = []
            for j in range(ncols):
                if j < c:
                    newrow.append(P.ZERO)
                    continue
                v = P.sub(P.mul(p, a[i][j]), P.mul(f, a[r][j]))
                newrow.append(P.exquo(v, prev) if prev != P.ONE else v)
            a[i] = newrow
        prev = p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a[:r], pivots


def rank(m):
    return len(echelon_ff(m)[1])


def kernel_basis(m):
    """Basis of the right kernel of ``m`` as lists of FieldElem."""
    rows, pivots = echelon_ff(m)
    n = m.cols
    free = [c for c in range(n) if c not in set(pivots)]
    fe_rows = [[FieldElem(x) for x in row] for row in rows]
    basis = []
    for fcol in free:
        vec = [ZERO] * n
        vec[fcol] = ONE
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            row = fe_rows[r]
            acc = fsum(row[j] * vec[j] for j in range(c + 1, n) if row[j].num and vec[j].num)
            vec[c] = -acc / row[c]
        basis.append(vec)
    return basis


def mat_vec(m, v):
    return [
        fsum(m.entries[i * m.cols + j] * v[j] for j in range(m.cols) if v[j].num and m.entries[i * m.cols + j].num)
        for i in range(m.rows)
    ]


def kernel_dim(m):
    return m.cols - rank(m)
