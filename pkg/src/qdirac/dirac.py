"""The invariant Dirac operator on C^2 (x) V_l.

``D_q`` is the traceless reflection-equation matrix L_q with the spin-l
operators as entries.  It is built twice (directly, and from the Casimir
of the tensor product representation) and both are checked against the
characteristic identity, invariance, the total reflection equation, the
closed-form spectrum and the q -> 1 limit.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .field import LAM, ZERO, Q, S, DenominatorVanishes, FieldElem, qnum_sq
from .irreps import (
    QN2,
    Q_INV,
    HalfInt,
    casimir,
    casimir_value,
    laplace_value,
    lq_from,
    lq_matrix,
    make_irrep,
    q_power,
    reflection_sides,
    relation_witness,
    spins_upto,
)
from .matrix import ExactMatrix, kernel_basis, kernel_dim, kron, mat_vec, rank
from .report import (
    MultiplicityMismatch,
    TowerDegenerate,
    VerificationError,
    matrix_witness,
    require,
    run_check,
)

S_INV = S.inverse()

PI2 = {
    "k": ExactMatrix.diag([S_INV, S]),
    "kinv": ExactMatrix.diag([S, S_INV]),
    "e": ExactMatrix.from_rows([[0, 1], [0, 0]]),
    "f": ExactMatrix.from_rows([[0, 0], [1, 0]]),
}


@dataclass(frozen=True)
class TotalRep:
    l: HalfInt
    K: ExactMatrix
    Kinv: ExactMatrix
    E: ExactMatrix
    F: ExactMatrix
    c_tot: ExactMatrix
    c_hat: FieldElem

    @property
    def dim(self):
        return self.K.rows

    @property
    def irrep(self):
        return make_irrep(self.l)

    def identity(self):
        return ExactMatrix.identity(self.dim, (2, self.l.dim))


@dataclass(frozen=True)
class DiracOp:
    d: ExactMatrix
    construction: str
    ell: Optional[tuple] = None


@dataclass(frozen=True)
class SpectrumEntry:
    tower: str
    eigenvalue: FieldElem
    multiplicity: int


@dataclass(frozen=True)
class SpectrumTable:
    l: HalfInt
    entries: List[SpectrumEntry]
    q_value: Optional[Fraction] = None

    def rows(self):
        """(l, lambda+, mult+, lambda-, mult-)."""
        plus = next(e for e in self.entries if e.tower == "plus")
        minus = next((e for e in self.entries if e.tower == "minus"), None)
        return (
            self.l.value,
            plus.eigenvalue,
            plus.multiplicity,
            minus.eigenvalue if minus else -qnum_sq(self.l.value + 1),
            minus.multiplicity if minus else 0,
        )

    def evaluated(self, q0):
        """Eigenvalues at q = q0 (q0 must be a rational square) as Fractions."""
        s0 = rational_sqrt(q0)
        return [(e.tower, e.eigenvalue.eval(s0), e.multiplicity) for e in self.entries]


def rational_sqrt(q0):
    q0 = Fraction(q0)
    from math import isqrt

    n, d = q0.numerator, q0.denominator
    rn, rd = isqrt(n), isqrt(d)
    if q0 < 0 or rn * rn != n or rd * rd != d:
        raise ValueError(f"q = {q0} is not the square of a rational; evaluate numerically instead")
    return Fraction(rn, rd)


def plus_eigenvalue(l):
    return qnum_sq(HalfInt.parse(l).value)


def minus_eigenvalue(l):
    return -qnum_sq(HalfInt.parse(l).value + 1)


# -- construction -----------------------------------------------------------------


def build_total_rep(l):
    """pi_2 (x) pi_l applied to the coproduct of k, k^-1, e, f."""
    l = HalfInt.parse(l)
    r = make_irrep(l)
    K = kron(PI2["k"], r.k)
    Kinv = kron(PI2["kinv"], r.kinv)
    E = kron(PI2["e"], r.k) + kron(PI2["kinv"], r.e)
    F = kron(PI2["f"], r.k) + kron(PI2["kinv"], r.f)
    require(relation_witness(K, Kinv, E, F, "total representation: "))
    c_tot = (K @ K) * Q_INV + (Kinv @ Kinv) * Q + (F @ E) * (LAM * LAM)
    for name, x in (("K", K), ("E", E), ("F", F)):
        w = matrix_witness(c_tot @ x, x @ c_tot, f"[C_tot, {name}]")
        require(w)
    return TotalRep(l, K, Kinv, E, F, c_tot.with_shape((2, l.dim)), casimir(r))


def dirac_via_casimirs(t):
    """D_q = (C_tot - ([2]_{q^2}/[2]_q) I (x) C_hat) / lam^2."""
    shift = t.c_hat * qnum_sq(2) / QN2
    d = (t.c_tot - t.identity() * shift) * (LAM * LAM).inverse()
    for x in d.entries:
        try:
            x.eval(1)
        except DenominatorVanishes as exc:
            raise VerificationError(f"Casimir construction has a pole at q = 1: {x}") from exc
    return DiracOp(d.with_shape((2, t.l.dim)), "casimir")


def total_ell(t):
    """(L+, L3, L-) of the tensor product representation."""
    plus = (t.K @ t.E) * S
    three = ((t.E @ t.F) * Q - (t.F @ t.E) * Q_INV) * QN2.inverse()
    minus = (t.F @ t.K) * S
    return plus, three, minus


def _ell_closed_forms(t):
    r = t.irrep
    ops = lq_from(r.k, r.e, r.f)
    ident_v = r.identity()
    i2 = ExactMatrix.identity(2)
    c = t.c_hat
    shifted = ident_v * c - ops.three * (LAM * QN2)
    plus = kron(PI2["e"], shifted) * QN2.inverse() + kron(i2, ops.plus)
    minus = kron(PI2["f"], shifted) * QN2.inverse() + kron(i2, ops.minus)
    zero = ExactMatrix.zeros(r.dim)
    three = (
        kron(ExactMatrix.diag([Q, -Q_INV]), ident_v * c) * (QN2 * QN2).inverse()
        + kron(i2, ops.three) * (FieldElem.coerce(2) / QN2)
        + ExactMatrix.blocks([[zero, ops.minus], [ops.plus, zero]]) * (LAM / QN2)
    )
    return plus, three, minus


def dirac_direct(t):
    """D_q as the operator matrix [[l3/q, l-], [l+, -q l3]] on C^2 (x) V_l."""
    r = t.irrep
    d = lq_matrix(lq_from(r.k, r.e, r.f))
    ell = total_ell(t)
    for name, got, want in zip(("L+", "L3", "L-"), ell, _ell_closed_forms(t)):
        require(matrix_witness(got, want, f"{name} closed form"))
    return DiracOp(d.with_shape((2, t.l.dim)), "direct", ell)


# -- checks ----------------------------------------------------------------------


def characteristic_witness(d, t):
    c = t.c_hat
    lhs = d.d @ d.d + d.d * (c / QN2)
    rhs_scalar = (c + QN2) * (c - QN2) / (LAM * LAM * QN2 * QN2)
    w = matrix_witness(lhs, t.identity() * rhs_scalar, "D^2 + C/[2] D")
    if w:
        return w
    # classical point: D^2 + D = I (x) Delta
    d1 = d.d.map(lambda x: FieldElem.coerce(x.eval(1)))
    lap1 = FieldElem.coerce(laplace_value(t.l).eval(1))
    w = matrix_witness(d1 @ d1 + d1, t.identity() * lap1, "q=1: D^2 + D")
    return w


def check_characteristic(d, t):
    return run_check(
        f"dirac.characteristic[l={t.l}]",
        "D^2 + C/[2] D = (C+[2])(C-[2])/(lam^2 [2]^2); q=1: D^2 + D = Delta",
        characteristic_witness,
        d,
        t,
    )


def invariance_witness(d, t):
    for name, x in (("K", t.K), ("E", t.E), ("F", t.F)):
        w = matrix_witness(d.d @ x, x @ d.d, f"[D, {name}]")
        if w:
            return w
    return None


def check_invariance(d, t):
    return run_check(f"dirac.invariance[l={t.l}]", "[D_q, K] = [D_q, E] = [D_q, F] = 0", invariance_witness, d, t)


def total_ll(t, ell=None):
    plus, three, minus = ell or total_ell(t)
    ltot = ExactMatrix.blocks([[three * Q_INV, minus], [plus, three * (-Q)]])
    cdiag = kron(ExactMatrix.identity(2), t.c_tot)
    return cdiag * QN2.inverse() + ltot * (LAM * Q_INV)


def total_reflection_witness(t, d=None):
    ell = d.ell if d is not None and d.ell is not None else None
    ll = total_ll(t, ell)
    lhs, rhs = reflection_sides(ll, t.dim)
    return matrix_witness(lhs, rhs, "R LL_2 R LL_2 vs LL_2 R LL_2 R")


def check_total_reflection(t, d=None):
    return run_check(
        f"dirac.total_reflection[l={t.l}]",
        "R_tot LL_tot_2 R_tot LL_tot_2 = LL_tot_2 R_tot LL_tot_2 R_tot",
        total_reflection_witness,
        t,
        d,
    )


def spectrum(d, t):
    """Exact eigenvalues and multiplicities of D_q from kernel dimensions."""
    lp, lm = plus_eigenvalue(t.l), minus_eigenvalue(t.l)
    ident = t.identity()
    mp = kernel_dim(d.d - ident * lp)
    mm = kernel_dim(d.d - ident * lm)
    tw = t.l.twice
    if (mp, mm) != (tw + 2, tw) or mp + mm != t.dim:
        raise MultiplicityMismatch(
            f"l={t.l}: dim ker(D - [l]) = {mp}, dim ker(D + [l+1]) = {mm}, expected {tw + 2}, {tw}"
        )
    entries = [SpectrumEntry("plus", lp, mp)]
    if mm:
        entries.append(SpectrumEntry("minus", lm, mm))
    return SpectrumTable(t.l, entries)


def spectral_witness(d, t):
    try:
        spectrum(d, t)
    except MultiplicityMismatch as exc:
        return str(exc)
    lp, lm = plus_eigenvalue(t.l), minus_eigenvalue(t.l)
    ident = t.identity()
    w = matrix_witness((d.d - ident * lp) @ (d.d - ident * lm), ExactMatrix.zeros(t.dim), "(D - l+)(D - l-)")
    if w:
        return w
    if lp + lm != -t.c_hat / QN2:
        return "root sum != -C/[2]"
    if lp * lm != -laplace_value(t.l):
        return "root product != -Delta"
    if lp.invert_s() != lp or lm.invert_s() != lm:
        return "eigenvalues not invariant under q -> 1/q"
    d_inv = d.d.map(FieldElem.invert_s)
    if kernel_dim(d_inv - ident * lp) != t.l.twice + 2:
        return "multiplicity changes under q -> 1/q"
    # every eigenspace is a subrepresentation
    for lam_ in (lp, lm):
        shifted = d.d - ident * lam_
        for v in kernel_basis(shifted):
            for name, x in (("K", t.K), ("E", t.E), ("F", t.F)):
                if any(mat_vec(shifted, mat_vec(x, v))):
                    return f"{name} leaves the eigenspace of {lam_.to_q_string()}"
    return None


def check_spectrum(d, t):
    return run_check(
        f"dirac.spectrum[l={t.l}]",
        "spec D_q = {[l]_{q^2} (x 2l+2), -[l+1]_{q^2} (x 2l)}",
        spectral_witness,
        d,
        t,
    )


@dataclass(frozen=True)
class TowerVector:
    tower: str
    j: Fraction
    m: Fraction
    vector: list


def _weight_space(t, m):
    target = q_power(-m)
    return [i for i in range(t.dim) if t.K[i, i] == target]


def highest_weight_vectors(t, j):
    """Vectors of weight j annihilated by E."""
    cols = _weight_space(t, j)
    if not cols:
        return []
    sub = ExactMatrix(t.dim, len(cols), [t.E[i, c] for i in range(t.dim) for c in cols])
    out = []
    for coeffs in kernel_basis(sub):
        v = [ZERO] * t.dim
        for c, x in zip(cols, coeffs):
            v[c] = x
        out.append(v)
    return out


def _is_zero_vec(v):
    return not any(x.num for x in v)


def eigenbasis_by_lowering(t, d):
    """Both towers V_{l+-1/2} inside C^2 (x) V_l built from highest-weight vectors."""
    lv = t.l.value
    out = []
    for tower, j, eig in (("plus", lv + Fraction(1, 2), plus_eigenvalue(t.l)), ("minus", lv - Fraction(1, 2), minus_eigenvalue(t.l))):
        if j < 0:
            continue
        hws = highest_weight_vectors(t, j)
        if len(hws) != 1:
            raise TowerDegenerate(f"{tower} tower: {len(hws)} highest-weight vectors of weight {j}")
        v = hws[0]
        cval = casimir_value(HalfInt.parse(j))
        size = int(2 * j) + 1
        for i in range(size):
            if _is_zero_vec(v):
                raise TowerDegenerate(f"{tower} tower: lowering vanished after {i} of {size} steps")
            m = j - i
            kv = mat_vec(t.K, v)
            if any(a != b * q_power(-m) for a, b in zip(kv, v)):
                raise VerificationError(f"{tower} tower: wrong K-weight at m={m}")
            if any(a != b * eig for a, b in zip(mat_vec(d.d, v), v)):
                raise VerificationError(f"{tower} tower: D_q eigenvalue mismatch at m={m}")
            if any(a != b * cval for a, b in zip(mat_vec(t.c_tot, v), v)):
                raise VerificationError(f"{tower} tower: C_tot eigenvalue mismatch at m={m}")
            out.append(TowerVector(tower, j, m, v))
            v = mat_vec(t.F, v)
        if not _is_zero_vec(v):
            raise VerificationError(f"{tower} tower does not terminate after {size} lowerings")
    return out


def towers_witness(t, d):
    vecs = eigenbasis_by_lowering(t, d)
    tw = t.l.twice
    counts = {"plus": 0, "minus": 0}
    for v in vecs:
        counts[v.tower] += 1
    if counts != {"plus": tw + 2, "minus": tw}:
        return f"tower sizes {counts}, expected plus={tw + 2}, minus={tw}"
    m = ExactMatrix(len(vecs), t.dim, [x for v in vecs for x in v.vector])
    if rank(m) != t.dim:
        return "tower vectors do not span C^2 (x) V_l"
    return None


def check_towers(t, d):
    return run_check(
        f"dirac.towers[l={t.l}]",
        "V_{1/2} (x) V_l = V_{l+1/2} + V_{l-1/2}, D_q = lambda+- on each",
        towers_witness,
        t,
        d,
    )


def check_cross_construction(t, direct=None, via=None):
    def body():
        a = direct or dirac_direct(t)
        b = via or dirac_via_casimirs(t)
        return matrix_witness(a.d, b.d, "direct vs Casimir")

    return run_check(
        f"dirac.cross_construction[l={t.l}]",
        "C_tot = ([2]_{q^2}/[2]_q) I (x) C + lam^2 D_q",
        body,
    )


# -- classical limit ------------------------------------------------------------------
# Gaussian-rational matrices are pairs (re, im) of Fraction row lists.


def _fz(n, m):
    return [[Fraction(0)] * m for _ in range(n)]


def _gmul(a, b):
    ar, ai = a
    br, bi = b
    n, k, m = len(ar), len(br), len(br[0])

    def mm(x, y):
        return [[sum(x[i][t] * y[t][j] for t in range(k)) for j in range(m)] for i in range(n)]

    rr, ii, ri, ir = mm(ar, br), mm(ai, bi), mm(ar, bi), mm(ai, br)
    return (
        [[rr[i][j] - ii[i][j] for j in range(m)] for i in range(n)],
        [[ri[i][j] + ir[i][j] for j in range(m)] for i in range(n)],
    )


def _gadd(a, b, sign=1):
    return tuple([[x + sign * y for x, y in zip(ra, rb)] for ra, rb in zip(pa, pb)] for pa, pb in zip(a, b))


def _gscale(a, c):
    """Multiply by the Gaussian rational c = (re, im)."""
    cr, ci = c
    re = [[cr * x - ci * y for x, y in zip(r1, r2)] for r1, r2 in zip(a[0], a[1])]
    im = [[cr * y + ci * x for x, y in zip(r1, r2)] for r1, r2 in zip(a[0], a[1])]
    return re, im


def _gkron(a, b):
    def kr(x, y):
        n, m, p, r = len(x), len(x[0]), len(y), len(y[0])
        return [[x[i // p][j // r] * y[i % p][j % r] for j in range(m * r)] for i in range(n * p)]

    ar, ai = a
    br, bi = b
    rr, ii, ri, ir = kr(ar, br), kr(ai, bi), kr(ar, bi), kr(ai, br)
    return (
        [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(rr, ii)],
        [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(ri, ir)],
    )


def _real(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    return rows, _fz(len(rows), len(rows[0]))


PAULI = (
    _real([[0, 1], [1, 0]]),
    ([[Fraction(0)] * 2] * 2, [[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(0)]]),
    _real([[1, 0], [0, -1]]),
)


def classical_spin_operators(l):
    """(l1, l2, l3) at q = 1 in the rescaled basis, as Gaussian-rational matrices."""
    r = make_irrep(l)
    k1 = r.k.eval(1)
    d = r.dim
    ident = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    if k1 != ident:
        raise VerificationError("k does not reduce to I at q = 1")
    plus, minus = (S * (r.k @ r.e)).eval(1), (S * (r.f @ r.k)).eval(1)
    three = lq_from(r.k, r.e, r.f).three.eval(1)
    half = Fraction(1, 2)
    l1 = ([[half * (a + b) for a, b in zip(x, y)] for x, y in zip(plus, minus)], _fz(d, d))
    l2 = (_fz(d, d), [[-half * (a - b) for a, b in zip(x, y)] for x, y in zip(plus, minus)])
    l3 = _real(three)
    return l1, l2, l3


def _levi(k, m):
    for n in range(3):
        perm = (k, m, n)
        if len(set(perm)) == 3:
            return n, (1 if perm in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1)
    return None, 0


def classical_limit_witness(l):
    l = HalfInt.parse(l)
    lv = l.value
    r = make_irrep(l)
    d = r.dim
    if casimir(r).eval(1) != 2:
        return "C_q does not tend to 2"
    ls = classical_spin_operators(l)
    zero = _fz(d, d)
    # [l_k, l_m] = i eps_kmn l_n
    for k in range(3):
        for m in range(3):
            comm = _gadd(_gmul(ls[k], ls[m]), _gmul(ls[m], ls[k]), -1)
            n, sign = _levi(k, m)
            want = (zero, zero) if n is None else _gscale(ls[n], (Fraction(0), Fraction(sign)))
            if comm != want:
                return f"[l{k + 1}, l{m + 1}] != i eps l"
    # Delta = sum l_k^2 = l(l+1)
    lap = _gmul(ls[0], ls[0])
    for k in (1, 2):
        lap = _gadd(lap, _gmul(ls[k], ls[k]))
    ident = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    want = ([[lv * (lv + 1) * x for x in row] for row in ident], zero)
    if lap != want:
        return "sum l_k^2 != l(l+1)"
    if laplace_value(l).eval(1) != lv * (lv + 1):
        return "Delta_q does not tend to l(l+1)"
    # D = sum sigma_k (x) l_k
    t = build_total_rep(l)
    dq = dirac_direct(t).d
    d1 = dq.eval(1)
    total = _gkron(PAULI[0], ls[0])
    for k in (1, 2):
        total = _gadd(total, _gkron(PAULI[k], ls[k]))
    if total != (d1, _fz(2 * d, 2 * d)):
        return "D at q=1 != sum sigma_k (x) l_k"
    # D^2 + D = I (x) Delta
    sq = _gmul((d1, _fz(2 * d, 2 * d)), (d1, _fz(2 * d, 2 * d)))[0]
    n2 = 2 * d
    for i in range(n2):
        for j in range(n2):
            want_ij = lv * (lv + 1) if i == j else 0
            if sq[i][j] + d1[i][j] != want_ij:
                return "D^2 + D != I (x) Delta at q=1"
    # spectrum {l (x 2l+2), -(l+1) (x 2l)}
    dfe = ExactMatrix(n2, n2, [FieldElem.coerce(x) for row in d1 for x in row])
    ident_fe = ExactMatrix.identity(n2)
    mp = kernel_dim(dfe - ident_fe * FieldElem.coerce(lv))
    mm = kernel_dim(dfe + ident_fe * FieldElem.coerce(lv + 1))
    if (mp, mm) != (l.twice + 2, l.twice):
        return f"q=1 multiplicities {(mp, mm)}"
    return None


def classical_limit_suite(l):
    l = HalfInt.parse(l)
    return run_check(
        f"dirac.classical_limit[l={l}]",
        "q=1: C=2, [l_k,l_m]=i eps l_n, Delta = sum l_k^2, D = sum sigma_k (x) l_k, spec {l, -(l+1)}",
        classical_limit_witness,
        l,
    )


def classical_spectrum(l):
    """[(eigenvalue, multiplicity)] of D at q = 1."""
    l = HalfInt.parse(l)
    lv = l.value
    out = [(lv, l.twice + 2)]
    if l.twice:
        out.append((-(lv + 1), l.twice))
    return out


def verify_dirac_l(l):
    l = HalfInt.parse(l)
    tag = f"[l={l}]"
    reports = []
    holder = {}

    def total():
        holder["t"] = build_total_rep(l)

    reports.append(run_check(f"dirac.total_rep{tag}", "pi_tot = (pi_2 (x) pi_l) Delta satisfies the su_q(2) relations", total))
    if "t" not in holder:
        return reports
    t = holder["t"]

    def direct():
        holder["direct"] = dirac_direct(t)

    def via():
        holder["via"] = dirac_via_casimirs(t)

    reports.append(run_check(f"dirac.direct{tag}", "L+, L3, L- closed forms", direct))
    reports.append(run_check(f"dirac.via_casimirs{tag}", "D_q from C_tot is pole-free at q=1", via))
    d = holder.get("direct") or holder.get("via")
    if d is None:
        return reports
    reports.append(check_cross_construction(t, holder.get("direct"), holder.get("via")))
    reports.append(check_characteristic(d, t))
    reports.append(check_invariance(d, t))
    reports.append(check_total_reflection(t, d))
    reports.append(check_spectrum(d, t))
    reports.append(check_towers(t, d))
    reports.append(classical_limit_suite(l))
    return reports


def verify_dirac(lmax="3"):
    reports = []
    for l in spins_upto(lmax):
        reports.extend(verify_dirac_l(l))
    return reports
