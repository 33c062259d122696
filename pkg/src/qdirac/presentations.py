"""Fun(SU_q(2)) and the quantum sphere as rewrite systems, plus their checks.

Generator names: a, as, b, bs for a, a*, b, b*; xp, x3, xm for x+, x3, x-;
mu and rho for the central parameter and the squared radius.  Both
presentations take the scalar ``s`` (s^2 = q) so they can be specialized to
q = 1, and the sphere can be built with mu = 0.
"""

import random
from functools import lru_cache
from itertools import product

from .constants import PERM, braid_rmatrix
from .field import ONE, S, FieldElem
from .ncpoly import Alphabet, NCPoly, RewriteSystem, star
from .report import VerificationError, run_check

SUNQ_NAMES = ("a", "as", "b", "bs")
SUNQ_WEIGHTS = (2, 2, 1, 1)
SUNQ_STAR = {"a": "as", "as": "a", "b": "bs", "bs": "b"}
SPHERE_NAMES = ("mu", "rho", "xp", "x3", "xm")
SPHERE_WEIGHTS = (1, 2, 1, 1, 1)
SPHERE_STAR = {"mu": "mu", "rho": "rho", "xp": "xm", "xm": "xp", "x3": "x3"}
FRESH = ("X11", "X12", "X21", "X22")


def _scalars(s):
    s = FieldElem.coerce(s)
    q = s * s
    qi = q.inverse()
    return q, qi, q - qi, q + qi


def gen(alphabet, name):
    return NCPoly.monomial((alphabet.index[name],))


# -- presentations ----------------------------------------------------------------


def sunq_alphabet():
    return Alphabet(SUNQ_NAMES, SUNQ_WEIGHTS, SUNQ_STAR)


def sunq_relations(alph, s=S):
    """Defining relations of Fun(SU_q(2)) together with their star images."""
    q, qi, lam, _ = _scalars(s)
    a, as_, b, bs = (gen(alph, n) for n in SUNQ_NAMES)
    return [
        a * b - q * (b * a),
        a * bs - q * (bs * a),
        bs * b - b * bs,
        as_ * a - a * as_ - (lam * qi) * (bs * b),
        a * as_ + bs * b - 1,
        bs * as_ - q * (as_ * bs),
        b * as_ - q * (as_ * b),
    ]


def sphere_alphabet():
    return Alphabet(SPHERE_NAMES, SPHERE_WEIGHTS, SPHERE_STAR, central=("mu", "rho"))


def sphere_relations(alph, s=S, mu=True):
    q, qi, lam, q2 = _scalars(s)
    xp, x3, xm, m, rho = (gen(alph, n) for n in ("xp", "x3", "xm", "mu", "rho"))
    rels = [
        q * (x3 * xp) - qi * (xp * x3) - m * xp,
        lam * (x3 * x3) + (xp * xm - xm * xp) / q2 - m * x3,
        q * (xm * x3) - qi * (x3 * xm) - m * xm,
        x3 * x3 + (q * (xm * xp) + qi * (xp * xm)) / q2 - rho,
    ]
    for c in (m, rho):
        for x in (xp, x3, xm):
            rels.append(x * c - c * x)
    rels.append(rho * m - m * rho)
    if not mu:
        rels.append(m)
    return rels


@lru_cache(maxsize=None)
def build_sunq_presentation(s=S):
    alph = sunq_alphabet()
    system = RewriteSystem.from_relations(alph, sunq_relations(alph, s), "Fun(SU_q(2))")
    system.check_confluence()
    return system


@lru_cache(maxsize=None)
def build_sphere_presentation(s=S, mu=True):
    alph = sphere_alphabet()
    system = RewriteSystem.from_relations(alph, sphere_relations(alph, s, mu), "Fun(S^2_q,mu)")
    system.check_confluence()
    return system


def tensor_alphabet():
    """Fresh central symbols, then sphere letters, then group letters (increasing precedence)."""
    names = FRESH + SPHERE_NAMES + SUNQ_NAMES
    weights = (1,) * len(FRESH) + SPHERE_WEIGHTS + SUNQ_WEIGHTS
    st = {n: n for n in FRESH}
    st.update(SPHERE_STAR)
    st.update(SUNQ_STAR)
    return Alphabet(names, weights, st, central=FRESH + ("mu", "rho"))


@lru_cache(maxsize=None)
def build_tensor_algebra(s=S, mu=True):
    """F_q(S) (x) F_q(G) with fresh central X_ij; sphere and group letters commute."""
    alph = tensor_alphabet()
    rels = sphere_relations(alph, s, mu) + sunq_relations(alph, s)
    gens = {n: gen(alph, n) for n in alph.names}
    for g in SUNQ_NAMES:
        for x in SPHERE_NAMES:
            rels.append(gens[g] * gens[x] - gens[x] * gens[g])
    for i, xname in enumerate(FRESH):
        for other in alph.names[i + 1 :]:
            rels.append(gens[other] * gens[xname] - gens[xname] * gens[other])
    system = RewriteSystem.from_relations(alph, rels, "F_q(S) (x) F_q(G)")
    system.check_confluence()
    return system


# -- polynomial matrices ------------------------------------------------------------


def pm_const(m):
    return [[NCPoly.scalar(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def pm_identity(n):
    return [[NCPoly.scalar(int(i == j)) for j in range(n)] for i in range(n)]


def pm_mul(x, y):
    n, k, m = len(x), len(y), len(y[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = NCPoly()
            for t in range(k):
                if x[i][t].terms and y[t][j].terms:
                    acc = acc + x[i][t] * y[t][j]
            row.append(acc)
        out.append(row)
    return out


def pm_add(x, y):
    return [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(x, y)]


def pm_sub(x, y):
    return [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(x, y)]


def pm_scale(x, c):
    return [[a.scale(c) for a in row] for row in x]


def pm_kron(x, y):
    p, r = len(y), len(y[0])
    return [
        [x[i // p][j // r] * y[i % p][j % r] for j in range(len(x[0]) * r)]
        for i in range(len(x) * p)
    ]


def slot1(x):
    return pm_kron(x, pm_identity(2))


def slot2(x):
    return pm_kron(pm_identity(2), x)


def qtrace(x, s=S):
    q, qi, _, _ = _scalars(s)
    return x[0][0].scale(q) + x[1][1].scale(qi)


def pm_star_dagger(x, alph):
    """Entrywise star of the transpose."""
    return [[star(x[j][i], alph) for j in range(len(x))] for i in range(len(x[0]))]


def matrix_identity_witness(lhs, rhs, system, label=""):
    """None when every entry of lhs - rhs has normal form 0, else the first such entry."""
    if (len(lhs), len(lhs[0])) != (len(rhs), len(rhs[0])):
        return f"{label} shape mismatch"
    for i, (r1, r2) in enumerate(zip(lhs, rhs)):
        for j, (a, b) in enumerate(zip(r1, r2)):
            nf = system.normal_form(a - b)
            if not nf.is_zero():
                return f"{label} ({i},{j}): {nf.fmt(system.alphabet)}"
    return None


def verify_matrix_identity(lhs, rhs, system, check_id="ncpoly.matrix_identity", anchor="lhs = rhs"):
    return run_check(check_id, anchor, matrix_identity_witness, lhs, rhs, system, check_id)


def t_matrix(alph, s=S):
    q, qi, _, _ = _scalars(s)
    a, as_, b, bs = (gen(alph, n) for n in SUNQ_NAMES)
    return [[a, b], [bs.scale(-qi), as_]]


def antipode_matrix(alph, s=S):
    q, qi, _, _ = _scalars(s)
    a, as_, b, bs = (gen(alph, n) for n in SUNQ_NAMES)
    return [[as_, b.scale(-qi)], [bs, a]]


def m_matrix(alph, s=S):
    q, qi, _, _ = _scalars(s)
    xp, x3, xm = (gen(alph, n) for n in ("xp", "x3", "xm"))
    return [[x3.scale(qi), xm], [xp, x3.scale(-q)]]


def mm_matrix(alph, s=S):
    """MM = mu q I + lam M."""
    q, _, lam, _ = _scalars(s)
    m = gen(alph, "mu")
    ident = [[m.scale(q), NCPoly()], [NCPoly(), m.scale(q)]]
    return pm_add(ident, pm_scale(m_matrix(alph, s), lam))


def reflection_sides(x, rhat):
    r = pm_const(rhat)
    x2 = slot2(x)
    return pm_mul(pm_mul(pm_mul(r, x2), r), x2), pm_mul(pm_mul(pm_mul(x2, r), x2), r)


# -- Fun(SU_q(2)) checks ------------------------------------------------------------------


def _antipode(system, s=S):
    alph = system.alphabet
    t, st = t_matrix(alph, s), antipode_matrix(alph, s)
    ident = pm_identity(2)
    return matrix_identity_witness(pm_mul(st, t), ident, system, "S(T)T") or matrix_identity_witness(
        pm_mul(t, st), ident, system, "T S(T)"
    )


def _det(system):
    alph = system.alphabet
    a, as_, b, bs = (gen(alph, n) for n in SUNQ_NAMES)
    nf = system.normal_form(a * as_ + bs * b - 1)
    return None if nf.is_zero() else f"det_q - 1 = {nf.fmt(alph)}"


def rtt_sides(system, r, s=S):
    t = t_matrix(system.alphabet, s)
    t1, t2 = slot1(t), slot2(t)
    rc = pm_const(r)
    return pm_mul(pm_mul(rc, t1), t2), pm_mul(pm_mul(t1, t2), rc)


def _rtt(system, s=S):
    lhs, rhs = rtt_sides(system, braid_rmatrix(FieldElem.coerce(s)), s)
    return matrix_identity_witness(lhs, rhs, system, "R T1 T2 - T1 T2 R")


def _rtt_negative(system, s=S):
    lhs, rhs = rtt_sides(system, PERM, s)
    w = matrix_identity_witness(lhs, rhs, system, "P T1 T2 - T1 T2 P")
    return None if w else "RTT with R replaced by P unexpectedly holds"


def commutative_count(d):
    """Monomials a^i a*^j b^k b*^l of degree d with not both i, j > 0 (aa* = 1 - bb*)."""
    n = 0
    for i, j, k in product(range(d + 1), repeat=3):
        l_ = d - i - j - k
        if l_ >= 0 and not (i and j):
            n += 1
    return n


def flatness_counts(max_degree=3, s=S):
    """(generic, q=1, commutative) counts of normal words per degree."""
    out = []
    for system in (build_sunq_presentation(s), build_sunq_presentation(ONE)):
        words = system.normal_words(max_degree)
        out.append([sum(1 for w in words if len(w) == d) for d in range(max_degree + 1)])
    out.append([commutative_count(d) for d in range(max_degree + 1)])
    return out


def _flatness(max_degree=3):
    generic, classical, commutative = flatness_counts(max_degree)
    if not generic == classical == commutative:
        return f"normal word counts per degree: generic {generic}, q=1 {classical}, commutative {commutative}"
    system = build_sunq_presentation()
    i_a, i_as = system.alphabet.index["a"], system.alphabet.index["as"]
    for w in system.normal_words(max_degree):
        if i_a in w and i_as in w:
            return f"normal word {system.alphabet.fmt_word(w)} mixes a and a*"
    return None


def _star_closed(system, relations):
    alph = system.alphabet
    for p in relations:
        if not system.normal_form(star(star(p, alph), alph) - p).is_zero():
            return "star is not an involution"
        nf = system.normal_form(star(p, alph))
        if not nf.is_zero():
            return f"star({p.fmt(alph)}) reduces to {nf.fmt(alph)}"
    return None


def _confluence(builder, *args):
    system = builder(*args)
    # the builder already ran the diamond check; run it again to count pairs
    n = system.check_confluence()
    return None if n > 0 else "no critical pairs found"


# -- sphere checks ----------------------------------------------------------------------------


def _hermitian(system, s=S):
    alph = system.alphabet
    m = m_matrix(alph, s)
    return matrix_identity_witness(pm_star_dagger(m, alph), m, system, "M^dagger - M")


def _bracket_form(system, s=S):
    alph = system.alphabet
    q, _, _, q2 = _scalars(s)
    m = m_matrix(alph, s)
    mu = gen(alph, "mu")
    r = pm_const(braid_rmatrix(FieldElem.coerce(s)))
    m2 = slot2(m)
    inner = pm_add(pm_mul(pm_mul(m2, r), m2), [[(mu * x).scale(q) for x in row] for row in m2])
    w = matrix_identity_witness(pm_mul(r, inner), pm_mul(inner, r), system, "[R, M2 R M2 + mu q M2]")
    if w:
        return w
    tr = qtrace(pm_mul(m, m), s).scale(q2.inverse())
    nf = system.normal_form(tr - gen(alph, "rho"))
    return None if nf.is_zero() else f"tr_q M^2/[2] - rho = {nf.fmt(alph)}"


def mm_trace_target(alph, s=S):
    q, _, lam, _ = _scalars(s)
    mu, rho = gen(alph, "mu"), gen(alph, "rho")
    return (mu * mu).scale(q * q) + rho.scale(lam * lam)


def _mm_reflection(system, mm, s=S, label="MM"):
    alph = system.alphabet
    _, _, _, q2 = _scalars(s)
    lhs, rhs = reflection_sides(mm, braid_rmatrix(FieldElem.coerce(s)))
    w = matrix_identity_witness(lhs, rhs, system, f"R {label}2 R {label}2 - {label}2 R {label}2 R")
    if w:
        return w
    tr = qtrace(pm_mul(mm, mm), s).scale(q2.inverse())
    nf = system.normal_form(tr - mm_trace_target(alph, s))
    return None if nf.is_zero() else f"tr_q {label}^2/[2] - (mu^2 q^2 + lam^2 rho) = {nf.fmt(alph)}"


def _centrality(system, samples=20, seed=1):
    alph = system.alphabet
    rng = random.Random(seed)
    letters = [alph.index[n] for n in ("xp", "x3", "xm", "mu", "rho")]
    for c in ("rho", "mu"):
        cp = gen(alph, c)
        for _ in range(samples):
            w = NCPoly.monomial(tuple(rng.choice(letters) for _ in range(rng.randint(1, 4))))
            nf = system.normal_form(cp * w - w * cp)
            if not nf.is_zero():
                return f"{c} w - w {c} = {nf.fmt(alph)} for w = {w.fmt(alph)}"
    return None


def _orientations(system, s=S):
    """Both rearrangements of each q-bracket relation reduce to 0."""
    alph = system.alphabet
    q, qi, _, _ = _scalars(s)
    xp, x3, xm, mu = (gen(alph, n) for n in ("xp", "x3", "xm", "mu"))
    forms = [
        xp * x3 - (x3 * xp).scale(q * q) + (mu * xp).scale(q),
        x3 * xp - (xp * x3).scale(qi * qi) - (mu * xp).scale(qi),
        x3 * xm - (xm * x3).scale(q * q) + (mu * xm).scale(q),
        xm * x3 - (x3 * xm).scale(qi * qi) - (mu * xm).scale(qi),
    ]
    for p in forms:
        nf = system.normal_form(p)
        if not nf.is_zero():
            return f"{p.fmt(alph)} reduces to {nf.fmt(alph)}"
    return None


def _classical_sphere():
    system = build_sphere_presentation(ONE, False)
    alph = system.alphabet
    xp, x3, xm, rho = (gen(alph, n) for n in ("xp", "x3", "xm", "rho"))
    xs = (xp, x3, xm)
    for x in xs:
        for y in xs:
            nf = system.normal_form(x * y - y * x)
            if not nf.is_zero():
                return f"q=1, mu=0: commutator reduces to {nf.fmt(alph)}"
    # x1^2 + x2^2 = (x+x- + x-x+)/2 for x1 = (x+ + x-)/2, x2 = (x+ - x-)/2i
    half = FieldElem.coerce(1) / 2
    radius = x3 * x3 + (xp * xm + xm * xp).scale(half) - rho
    nf = system.normal_form(radius)
    return None if nf.is_zero() else f"x1^2 + x2^2 + x3^2 - r^2 = {nf.fmt(alph)}"


def _sl2_limit():
    system = build_sphere_presentation(ONE, True)
    alph = system.alphabet
    xp, x3, xm, mu = (gen(alph, n) for n in ("xp", "x3", "xm", "mu"))
    brackets = [
        x3 * xp - xp * x3 - mu * xp,
        x3 * xm - xm * x3 + mu * xm,
        xp * xm - xm * xp - (mu * x3).scale(2),
    ]
    for p in brackets:
        nf = system.normal_form(p)
        if not nf.is_zero():
            return f"q=1: {p.fmt(alph)} reduces to {nf.fmt(alph)}"
    return None


# -- coaction covariance ----------------------------------------------------------------------


def coaction_matrix(alph, s=S):
    """phi(MM)_ij = sum_kl MM_kl S(T)_ik T_lj, sphere factor first."""
    mm = mm_matrix(alph, s)
    st, t = antipode_matrix(alph, s), t_matrix(alph, s)
    out = []
    for i in range(2):
        row = []
        for j in range(2):
            acc = NCPoly()
            for k in range(2):
                for l_ in range(2):
                    acc = acc + mm[k][l_] * st[i][k] * t[l_][j]
            row.append(acc)
        out.append(row)
    return out


def _covariance(s=S, mu=True):
    system = build_tensor_algebra(s, mu)
    phi = coaction_matrix(system.alphabet, s)
    return _mm_reflection(system, phi, s, "phi(MM)")


def _qtrace_invariance(s=S):
    system = build_tensor_algebra(s, True)
    alph = system.alphabet
    x = [[gen(alph, "X11"), gen(alph, "X12")], [gen(alph, "X21"), gen(alph, "X22")]]
    st, t = antipode_matrix(alph, s), t_matrix(alph, s)
    for label, mat in (("X", x), ("I", pm_identity(2))):
        lhs = qtrace(pm_mul(pm_mul(st, mat), t), s)
        nf = system.normal_form(lhs - qtrace(mat, s))
        if not nf.is_zero():
            return f"tr_q S(T) {label} T - tr_q {label} = {nf.fmt(alph)}"
    return None


# -- suite -------------------------------------------------------------------------------------


def verify_ncpoly():
    reports = []
    try:
        g = build_sunq_presentation()
    except VerificationError as exc:
        return [run_check("ncpoly.sunq.confluence", "diamond check on Fun(SU_q(2)) overlaps", str, exc)]
    reports.append(run_check("ncpoly.sunq.confluence", "diamond check on Fun(SU_q(2)) overlaps", _confluence, build_sunq_presentation))
    reports.append(run_check("ncpoly.sunq.antipode", "S(T)T = T S(T) = I2", _antipode, g))
    reports.append(run_check("ncpoly.sunq.det_q", "det_q T = aa* + b*b = 1", _det, g))
    reports.append(run_check("ncpoly.sunq.rtt", "R T1 T2 = T1 T2 R", _rtt, g))
    reports.append(run_check("ncpoly.sunq.rtt_negative_control", "P T1 T2 != T1 T2 P", _rtt_negative, g))
    reports.append(run_check("ncpoly.sunq.flatness", "normal words of degree <= 3 match the commutative count", _flatness))
    reports.append(run_check("ncpoly.sunq.star", "star of each relation reduces to 0", _star_closed, g, sunq_relations(g.alphabet)))
    reports.append(run_check("ncpoly.sunq.classical_confluence", "diamond check at q = 1", _confluence, build_sunq_presentation, ONE))
    try:
        sp = build_sphere_presentation()
    except VerificationError as exc:
        reports.append(run_check("ncpoly.sphere.confluence", "diamond check on sphere overlaps", str, exc))
        return reports
    reports.append(run_check("ncpoly.sphere.confluence", "diamond check on sphere overlaps", _confluence, build_sphere_presentation))
    reports.append(run_check("ncpoly.sphere.orientations", "both orientations of the q-brackets reduce to 0", _orientations, sp))
    reports.append(run_check("ncpoly.sphere.hermitian", "M^dagger = M", _hermitian, sp))
    reports.append(run_check("ncpoly.sphere.bracket_form", "[R, M2 R M2 + mu q M2] = 0, tr_q M^2/[2] = r^2", _bracket_form, sp))
    reports.append(
        run_check(
            "ncpoly.sphere.reflection",
            "R MM2 R MM2 = MM2 R MM2 R, tr_q MM^2/[2] = mu^2 q^2 + lam^2 r^2",
            _mm_reflection,
            sp,
            mm_matrix(sp.alphabet),
        )
    )
    reports.append(run_check("ncpoly.sphere.centrality", "r^2 and mu are central", _centrality, sp))
    reports.append(run_check("ncpoly.sphere.star", "star of each relation reduces to 0", _star_closed, sp, sphere_relations(sp.alphabet)))
    reports.append(run_check("ncpoly.sphere.classical", "q=1, mu=0: commutative, x1^2 + x2^2 + x3^2 = r^2", _classical_sphere))
    reports.append(run_check("ncpoly.sphere.sl2_limit", "q=1, mu != 0: sl(2) brackets", _sl2_limit))
    reports.append(run_check("ncpoly.coaction.qtrace", "tr_q S(T) X T = tr_q X", _qtrace_invariance))
    reports.append(run_check("ncpoly.coaction.covariance", "phi(MM) = S(T) MM T satisfies the reflection equation", _covariance))
    reports.append(run_check("ncpoly.coaction.classical", "q=1, mu=0 covariance", _covariance, ONE, False))
    return reports
