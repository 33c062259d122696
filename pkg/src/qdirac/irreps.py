"""Spin-l representations of su_q(2) and the operator identities they satisfy.

Representations use a rescaled basis |l,m>, m = l, l-1, ..., -l, in which

    k|l,m> = q^-m |l,m>,  e|l,m> = [l-m] |l,m+1>,  f|l,m> = [l+m] |l,m-1>.

It is diagonally similar to the unitary basis (whose matrix elements carry
square roots), so traces, spectra and commutation relations are unchanged
while every entry stays in Q(s).  Operator-valued 2x2 matrices are flattened
with the auxiliary C^2 as the leading tensor factor.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering

import numpy as np

from .constants import PERM, braid_rmatrix
from .field import LAM, Q, S, FieldElem, qnum, qnum_sq
from .matrix import ExactMatrix, kernel_dim, kron, qtrace2
from .report import NotScalar, VerificationError, matrix_witness, require, run_check

Q_INV = Q.inverse()
S_INV = S.inverse()
QN2 = qnum(2)


@total_ordering
class HalfInt:
    """A non-negative half-integer spin, stored as twice its value."""

    __slots__ = ("twice",)

    def __init__(self, twice):
        if not isinstance(twice, int) or twice < 0:
            raise ValueError(f"spin must be a non-negative half-integer, got twice={twice!r}")
        self.twice = twice

    @classmethod
    def parse(cls, value):
        if isinstance(value, HalfInt):
            return value
        f = Fraction(value.strip()) if isinstance(value, str) else Fraction(value)
        t = 2 * f
        if t.denominator != 1 or t < 0:
            raise ValueError(f"not a non-negative half-integer: {value!r}")
        return cls(int(t))

    @property
    def value(self):
        return Fraction(self.twice, 2)

    @property
    def dim(self):
        return self.twice + 1

    def weights(self):
        """m = l, l-1, ..., -l (the basis order)."""
        return [Fraction(self.twice - 2 * i, 2) for i in range(self.dim)]

    def __eq__(self, other):
        return isinstance(other, HalfInt) and self.twice == other.twice

    def __lt__(self, other):
        return self.twice < other.twice

    def __hash__(self):
        return hash(("HalfInt", self.twice))

    def __str__(self):
        return str(self.value)

    __repr__ = __str__


def spins_upto(lmax):
    lmax = HalfInt.parse(lmax)
    return [HalfInt(t) for t in range(lmax.twice + 1)]


def q_power(m):
    """q**m for half-integer m, i.e. s**(2m)."""
    return FieldElem.monomial(int(2 * Fraction(m)))


@dataclass(frozen=True)
class Irrep:
    l: HalfInt
    k: ExactMatrix
    kinv: ExactMatrix
    e: ExactMatrix
    f: ExactMatrix
    basis_convention: str = "rational"

    @property
    def dim(self):
        return self.l.dim

    def identity(self):
        return ExactMatrix.identity(self.dim)


def relation_witness(k, kinv, e, f, label=""):
    """First failing su_q(2) defining relation, or None."""
    n = k.rows
    ident = ExactMatrix.identity(n)
    checks = (
        ("k k^-1 = I", k @ kinv, ident),
        ("k^-1 k = I", kinv @ k, ident),
        ("e k = q k e", e @ k, (k @ e) * Q),
        ("k f = q f k", k @ f, (f @ k) * Q),
        ("k^2 - k^-2 = lam (fe - ef)", k @ k - kinv @ kinv, (f @ e - e @ f) * LAM),
    )
    for name, lhs, rhs in checks:
        w = matrix_witness(lhs, rhs)
        if w:
            return f"{label}{name}: {w}"
    return None


@lru_cache(maxsize=None)
def _make_irrep(twice):
    l = HalfInt(twice)
    lv = l.value
    ms = l.weights()
    d = l.dim
    k = ExactMatrix.diag([q_power(-m) for m in ms])
    kinv = ExactMatrix.diag([q_power(m) for m in ms])
    e = ExactMatrix.zeros(d).entries[:]
    f = ExactMatrix.zeros(d).entries[:]
    for i, m in enumerate(ms):
        if i > 0:
            e[(i - 1) * d + i] = qnum(lv - m)
        if i < d - 1:
            f[(i + 1) * d + i] = qnum(lv + m)
    rep = Irrep(l, k, kinv, ExactMatrix(d, d, e), ExactMatrix(d, d, f))
    w = relation_witness(rep.k, rep.kinv, rep.e, rep.f, f"spin {l}: ")
    if w:
        raise VerificationError(w)
    return rep


def make_irrep(l):
    """The spin-l representation; its defining relations are checked on construction."""
    return _make_irrep(HalfInt.parse(l).twice)


def casimir_matrix(r):
    return (r.k @ r.k) * Q_INV + (r.kinv @ r.kinv) * Q + (r.f @ r.e) * (LAM * LAM)


def casimir(r):
    """Scalar of (1/q)k^2 + q k^-2 + lam^2 fe on an irreducible representation."""
    c = casimir_matrix(r).is_scalar()
    if c is None:
        raise NotScalar(f"Casimir is not scalar on spin {r.l}")
    return c


def casimir_value(l):
    """q^(2l+1) + q^-(2l+1)."""
    t = HalfInt.parse(l).twice
    return FieldElem.monomial(2 * (t + 1)) + FieldElem.monomial(-2 * (t + 1))


def laplace_value(l):
    """[l]_{q^2} [l+1]_{q^2}."""
    lv = HalfInt.parse(l).value
    return qnum_sq(lv) * qnum_sq(lv + 1)


@dataclass(frozen=True)
class LqOps:
    plus: ExactMatrix
    minus: ExactMatrix
    three: ExactMatrix


def lq_from(k, e, f):
    plus = (k @ e) * S
    minus = (f @ k) * S
    three = ((e @ f) * Q - (f @ e) * Q_INV) * QN2.inverse()
    return LqOps(plus, minus, three)


def lq_bracket_witness(ops, c):
    """The three q-commutation relations of l_{q+-}, l_{q3} with Casimir scalar c."""
    lp, lm, l3 = ops.plus, ops.minus, ops.three
    cc = c / QN2
    checks = (
        ("q l3 l+ - l+ l3/q = C/[2] l+", (l3 @ lp) * Q - (lp @ l3) * Q_INV, lp * cc),
        (
            "lam l3^2 + (l+ l- - l- l+)/[2] = C/[2] l3",
            (l3 @ l3) * LAM + (lp @ lm - lm @ lp) * QN2.inverse(),
            l3 * cc,
        ),
        ("q l- l3 - l3 l-/q = C/[2] l-", (lm @ l3) * Q - (l3 @ lm) * Q_INV, lm * cc),
    )
    for name, lhs, rhs in checks:
        w = matrix_witness(lhs, rhs)
        if w:
            return f"{name}: {w}"
    return None


def lq_operators(r):
    """l_{q+} = sqrt(q) k e, l_{q-} = sqrt(q) f k, l_{q3} = (q ef - fe/q)/[2]."""
    ops = lq_from(r.k, r.e, r.f)
    require(lq_bracket_witness(ops, casimir(r)))
    return ops


def lq_matrix(ops):
    """[[l3/q, l-], [l+, -q l3]] flattened with the auxiliary factor first."""
    return ExactMatrix.blocks([[ops.three * Q_INV, ops.minus], [ops.plus, ops.three * (-Q)]])


def laplace_forms(r):
    """The three expressions for the Laplace operator, as matrices."""
    ops = lq_from(r.k, r.e, r.f)
    lq = lq_matrix(ops)
    via_trace = qtrace2(lq @ lq) * QN2.inverse()
    expanded = ops.three @ ops.three + (
        (ops.minus @ ops.plus) * Q + (ops.plus @ ops.minus) * Q_INV
    ) * QN2.inverse()
    cmat = casimir_matrix(r)
    ident = r.identity()
    via_casimir = (
        (cmat + ident * QN2) @ (cmat - ident * QN2)
    ) * (LAM * LAM * QN2 * QN2).inverse()
    return via_trace.with_shape(None), expanded, via_casimir


def laplace(r):
    """Delta_q on spin l; all three forms must agree and be scalar."""
    forms = laplace_forms(r)
    for name, m in zip(("q-trace", "expanded"), forms[:2]):
        w = matrix_witness(m, forms[2], f"Laplace {name} vs Casimir form")
        require(w)
    c = forms[2].is_scalar()
    if c is None:
        raise NotScalar(f"Laplace operator is not scalar on spin {r.l}")
    return c


# -- operator-valued 2x2 matrices ------------------------------------------------


def opmat(grid):
    return ExactMatrix.blocks(grid)


def slot2(x):
    """X_2 = I_2 (x) X on C^2 (x) C^2 (x) V."""
    return kron(ExactMatrix.identity(2), x)


def slot1(x):
    """X_1 on C^2 (x) C^2 (x) V, via X_1 = P12 X_2 P12."""
    d = x.rows // 2
    p = kron(PERM, ExactMatrix.identity(d))
    return p @ slot2(x) @ p


def rhat_on(d, r=None):
    return kron(braid_rmatrix() if r is None else r, ExactMatrix.identity(d))


def qdet(x):
    """q-determinant X11 X22 - q X12 X21 of an operator-valued 2x2 matrix."""
    d = x.rows // 2
    return x.block(0, 0, d) @ x.block(1, 1, d) - (x.block(0, 1, d) @ x.block(1, 0, d)) * Q


@dataclass(frozen=True)
class LData:
    lplus: ExactMatrix
    lminus: ExactMatrix
    s_lplus: ExactMatrix
    s_lminus: ExactMatrix
    ll: ExactMatrix
    lq: ExactMatrix
    cq: FieldElem
    deltaq: FieldElem


def l_blocks(k, kinv, e, f):
    """L+, L-, S(L+), S(L-) as flattened operator matrices."""
    zero = ExactMatrix.zeros(k.rows)
    lam = LAM
    lplus = opmat([[kinv, f * (lam * S_INV)], [zero, k]])
    lminus = opmat([[k, zero], [e * (-lam * S), kinv]])
    s_lplus = opmat([[k, f * (-lam * S)], [zero, kinv]])
    s_lminus = opmat([[kinv, zero], [e * (lam * S_INV), k]])
    return lplus, lminus, s_lplus, s_lminus


def reflection_sides(x, d, r=None):
    """R X_2 R X_2 and X_2 R X_2 R for an operator matrix X on C^2 (x) V."""
    rr = rhat_on(d, r)
    x2 = slot2(x)
    rx = rr @ x2
    xr = x2 @ rr
    return rx @ rx, xr @ xr


def _l_data_witness(r, data):
    d = r.dim
    lp, lm, slp, slm = data.lplus, data.lminus, data.s_lplus, data.s_lminus
    rr = rhat_on(d)
    ident2d = ExactMatrix.identity(2 * d)
    steps = []
    for name, a, b in (("R L+_2 L+_1 = L+_2 L+_1 R", lp, lp), ("R L-_2 L-_1 = L-_2 L-_1 R", lm, lm)):
        prod = slot2(a) @ slot1(b)
        steps.append((name, rr @ prod, prod @ rr))
    steps.append(("R L+_2 L-_1 = L-_2 L+_1 R", rr @ slot2(lp) @ slot1(lm), slot2(lm) @ slot1(lp) @ rr))
    ident_d = r.identity()
    steps.append(("det_q L+ = I", qdet(lp), ident_d))
    steps.append(("det_q L- = I", qdet(lm), ident_d))
    for name, a, sa in (("L+", lp, slp), ("L-", lm, slm)):
        steps.append((f"{name} S({name}) = I", a @ sa, ident2d))
        steps.append((f"S({name}) {name} = I", sa @ a, ident2d))
    explicit = opmat(
        [
            [r.kinv @ r.kinv + (r.f @ r.e) * (LAM * LAM * Q_INV), (r.f @ r.k) * (LAM * S_INV)],
            [(r.k @ r.e) * (LAM * S_INV), r.k @ r.k],
        ]
    )
    steps.append(("explicit LL", data.ll, explicit))
    lhs, rhs = reflection_sides(data.ll, d)
    steps.append(("reflection R LL_2 R LL_2 = LL_2 R LL_2 R", lhs, rhs))
    steps.append(("tr_q LL = C_q", qtrace2(data.ll).with_shape(None), ident_d * data.cq))
    steps.append(("tr_q L_q = 0", qtrace2(data.lq).with_shape(None), ExactMatrix.zeros(d)))
    steps.append(
        ("LL = C/[2] I + (lam/q) L_q", data.ll, (ident2d * (data.cq / QN2) + data.lq * (LAM * Q_INV)).with_shape((2, d)))
    )
    steps.append(
        (
            "L_q^2 + C/[2] L_q = I (x) Delta",
            data.lq @ data.lq + data.lq * (data.cq / QN2),
            ident2d * data.deltaq,
        )
    )
    for name, a, b in steps:
        w = matrix_witness(a, b)
        if w:
            return f"{name}: {w}"
    return None


def l_matrices(r):
    """L+-, their antipodes, LL = L+ S(L-), L_q and the scalars C_q, Delta_q."""
    lp, lm, slp, slm = l_blocks(r.k, r.kinv, r.e, r.f)
    ll = lp @ slm
    ops = lq_from(r.k, r.e, r.f)
    data = LData(lp, lm, slp, slm, ll, lq_matrix(ops), casimir(r), laplace(r))
    require(_l_data_witness(r, data))
    return data


def bracket_sides(lq, c, d):
    """[R, L_q2 R L_q2 + (q C/[2]) L_q2] split as (R X, X R)."""
    rr = rhat_on(d)
    x2 = slot2(lq)
    inner = x2 @ rr @ x2 + x2 * (Q * c / QN2)
    return rr @ inner, inner @ rr


# -- numeric unitary basis ----------------------------------------------------------


def _qn_float(n, q):
    if q == 1:
        return float(n)
    return (q**n - q ** (-n)) / (q - 1 / q)


def unitary_irrep(l, q0):
    """(k, e, f) as float arrays in the orthonormal basis at q = q0 > 0."""
    l = HalfInt.parse(l)
    lv = float(l.value)
    q = float(q0)
    d = l.dim
    ms = [float(m) for m in l.weights()]
    k = np.diag([q ** (-m) for m in ms])
    e = np.zeros((d, d))
    for i, m in enumerate(ms):
        if i > 0:
            e[i - 1, i] = np.sqrt(_qn_float(lv - m, q) * _qn_float(lv + m + 1, q))
    f = np.zeros((d, d))
    for i, m in enumerate(ms):
        if i < d - 1:
            f[i + 1, i] = np.sqrt(_qn_float(lv - m + 1, q) * _qn_float(lv + m, q))
    return k, e, f


def unitary_operators(l, q0):
    """Float versions of k, e, f, L_q, LL, C_q and Delta_q in the unitary basis."""
    k, e, f = unitary_irrep(l, q0)
    q = float(q0)
    s = np.sqrt(q)
    lam = q - 1 / q
    qn2 = q + 1 / q
    kinv = np.linalg.inv(k)
    lp, lm = s * k @ e, s * f @ k
    l3 = (q * e @ f - f @ e / q) / qn2
    lq = np.block([[l3 / q, lm], [lp, -q * l3]])
    ll = np.block([[kinv @ kinv + lam**2 / q * f @ e, lam / s * f @ k], [lam / s * k @ e, k @ k]])
    cq = k @ k / q + q * kinv @ kinv + lam**2 * f @ e
    lap = l3 @ l3 + (q * lm @ lp + lp @ lm / q) / qn2
    return {"k": k, "e": e, "f": f, "kinv": kinv, "lq": lq, "ll": ll, "cq": cq, "delta": lap}


def unitary_star_check(l, q0, tol=1e-10):
    """k^+ = k, e^+ = f, L_q^+ = L_q, LL^+ = LL in the orthonormal basis at q0."""
    l = HalfInt.parse(l)
    q0 = Fraction(q0)

    def body():
        ops = unitary_operators(l, q0)
        pairs = (
            ("k^+ - k", ops["k"].T, ops["k"]),
            ("e^+ - f", ops["e"].T, ops["f"]),
            ("L_q^+ - L_q", ops["lq"].T, ops["lq"]),
            ("LL^+ - LL", ops["ll"].T, ops["ll"]),
        )
        for name, a, b in pairs:
            err = float(np.max(np.abs(a - b))) if a.size else 0.0
            if err >= tol:
                return f"{name}: max entry {err:.3e} >= {tol:g}"
        if q0 == 1:
            k, e, f = unitary_irrep(l, 1)
            if not np.array_equal(e.T, f):
                return "e^+ != f exactly at q = 1"
        return None

    return run_check(f"irreps.unitary[l={l},q={q0}]", "k* = k, e* = f, LL^+ = LL, L_q^+ = L_q", body)


def similarity_check(l, q0, tol=1e-9):
    """Casimir, Laplacian and spectra agree between the rational and unitary bases."""
    l = HalfInt.parse(l)
    q0 = Fraction(q0)

    def body():
        r = make_irrep(l)
        ops = unitary_operators(l, q0)
        s0 = float(q0) ** 0.5
        c_exact = casimir(r).evalf(s0)
        d_exact = laplace(r).evalf(s0)
        n = r.dim
        if np.max(np.abs(ops["cq"] - c_exact * np.eye(n))) > tol * max(1.0, abs(c_exact)):
            return f"Casimir mismatch at q={q0}"
        if np.max(np.abs(ops["delta"] - d_exact * np.eye(n))) > tol * max(1.0, abs(d_exact)):
            return f"Laplacian mismatch at q={q0}"
        ev_num = np.sort(np.linalg.eigvalsh(ops["lq"]))
        lv = l.value
        plus = qnum_sq(lv).evalf(s0)
        minus = -qnum_sq(lv + 1).evalf(s0)
        expected = np.sort([plus] * (l.twice + 2) + [minus] * l.twice)
        if np.max(np.abs(ev_num - expected)) > tol * max(1.0, abs(minus)):
            return f"L_q spectrum mismatch at q={q0}: {ev_num} vs {expected}"
        return None

    return run_check(f"irreps.similarity[l={l},q={q0}]", "basis-independence of C_q, Delta_q, spec L_q", body)


# -- exact verification suite ---------------------------------------------------------


def _k_spectrum(r):
    for m in r.l.weights():
        dim = kernel_dim(r.k - r.identity() * q_power(-m))
        if dim != 1:
            return f"k eigenvalue q^{-m}: kernel dimension {dim}"
    return None


def verify_irrep(l):
    """Every exact su_q(2) identity on spin l, one report each."""
    l = HalfInt.parse(l)
    tag = f"[l={l}]"
    r = make_irrep(l)
    d = r.dim
    reports = []

    def relations():
        return relation_witness(r.k, r.kinv, r.e, r.f)

    def cas():
        c = casimir(r)
        if c != casimir_value(l):
            return f"C_q = {c.to_q_string()}, expected {casimir_value(l).to_q_string()}"
        return None

    def lqs():
        lq_operators(r)
        ops = lq_from(r.k, r.e, r.f)
        # diagonal l_{q3} values checked verbatim against the closed form
        lv = l.value
        for i, m in enumerate(l.weights()):
            want = q_power(-m) * (q_power(lv + 1) * qnum(lv + m) - q_power(-(lv + 1)) * qnum(lv - m)) / QN2
            if ops.three[i, i] != want:
                return f"l_q3 on m={m}: {ops.three[i, i]} != {want}"
        return None

    def lap():
        got = laplace(r)
        if got != laplace_value(l):
            return f"Delta_q = {got.to_q_string()}, expected {laplace_value(l).to_q_string()}"
        return None

    def lmats():
        l_matrices(r)
        return None

    def bracket():
        lq = lq_matrix(lq_from(r.k, r.e, r.f))
        lhs, rhs = bracket_sides(lq, casimir(r), d)
        return matrix_witness(lhs, rhs)

    reports.append(run_check(f"irreps.relations{tag}", "kk^-1 = I, ek = qke, kf = qfk, k^2-k^-2 = lam(fe-ef)", relations))
    reports.append(run_check(f"irreps.k_spectrum{tag}", "spec k = {q^-m}", _k_spectrum, r))
    reports.append(run_check(f"irreps.casimir{tag}", "C_q = q^(2l+1) + q^-(2l+1)", cas))
    reports.append(run_check(f"irreps.lq_brackets{tag}", "q-brackets of l_q+-, l_q3", lqs))
    reports.append(run_check(f"irreps.laplace{tag}", "Delta_q = [l]_{q^2}[l+1]_{q^2}, three forms", lap))
    reports.append(
        run_check(
            f"irreps.l_matrices{tag}",
            "RLL, L S(L) = I, R LL_2 R LL_2 = LL_2 R LL_2 R, tr_q LL = C_q, L_q^2 + C/[2] L_q = Delta",
            lmats,
        )
    )
    reports.append(run_check(f"irreps.bracket{tag}", "[R, L_q2 R L_q2 + qC/[2] L_q2] = 0", bracket))
    return reports


def verify_irreps(lmax="3", sample_q=(Fraction(2), Fraction(3, 2))):
    reports = []
    for l in spins_upto(lmax):
        reports.extend(verify_irrep(l))
        for q0 in sample_q:
            reports.append(unitary_star_check(l, q0))
            reports.append(similarity_check(l, q0))
    return reports
