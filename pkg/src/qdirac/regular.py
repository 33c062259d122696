"""The left su_q(2)-action on Fun(SU_q(2)) by dual pairing, on a finite window.

The window is the span of normal words of length <= N.  Dual-action
operators psi^(u) = (id (x) psi) Delta(u) never increase word length, so
they act exactly on the window; left multiplications by the entries of T
raise the length by one and are only used on words of length <= N - 1.
The operators preserve the length filtration but are not block diagonal:
a*a and aa* reduce to words of length 0 and 2.
"""

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .constants import pairing_tables
from .field import LAM, ONE, Q, FieldElem, fsum
from .irreps import l_blocks, lq_from, opmat, relation_witness, rhat_on, slot1, slot2
from .matrix import ExactMatrix
from .ncpoly import NCPoly, star
from .presentations import build_sunq_presentation
from .report import VerificationError, matrix_witness, run_check

Q_INV = Q.inverse()
GENERATORS = ("k", "kinv", "e", "f")

# letter -> (row, col, c) with letter = c * T[row][col]
LETTER_ENTRY = {"a": (0, 0, ONE), "b": (0, 1, ONE), "bs": (1, 0, -Q), "as": (1, 1, ONE)}
# T[row][col] as (letter, coefficient)
T_ENTRY = {(0, 0): ("a", ONE), (0, 1): ("b", ONE), (1, 0): ("bs", -Q_INV), (1, 1): ("as", ONE)}
COPRODUCT_U = {
    "k": (("k", "k"),),
    "kinv": (("kinv", "kinv"),),
    "e": (("e", "k"), ("kinv", "e")),
    "f": (("f", "k"), ("kinv", "f")),
}
COUNIT_U = {"k": 1, "kinv": 1, "e": 0, "f": 0}


@dataclass(frozen=True)
class TruncatedBasis:
    degree_cap: int
    words: tuple
    index: dict

    @property
    def size(self):
        return len(self.words)

    def degree(self, i):
        return len(self.words[i])

    def low_indices(self):
        """Positions of words of length <= N - 1."""
        return [i for i, w in enumerate(self.words) if len(w) < self.degree_cap]

    def vector(self, p):
        out = [FieldElem.coerce(0)] * self.size
        for w, c in p.terms.items():
            if w not in self.index:
                raise KeyError(f"word of length {len(w)} outside the window")
            out[self.index[w]] = c
        return out

    def matrix_from_images(self, images):
        """Columns given as NCPolys (None means a zero column)."""
        n = self.size
        entries = [FieldElem.coerce(0)] * (n * n)
        for j, img in enumerate(images):
            if img is None:
                continue
            for w, c in img.terms.items():
                if w not in self.index:
                    raise KeyError(f"image of basis word {j} leaves the window")
                entries[self.index[w] * n + j] = c
        return ExactMatrix(n, n, entries)


@dataclass(frozen=True)
class ActionOp:
    matrix: ExactMatrix
    degree_shift: int


def system():
    return build_sunq_presentation()


@lru_cache(maxsize=None)
def truncated_basis(degree_cap):
    if degree_cap < 1:
        raise ValueError("degree cap must be at least 1")
    words = tuple(system().normal_words(degree_cap))
    return TruncatedBasis(degree_cap, words, {w: i for i, w in enumerate(words)})


# -- coproduct and pairing -------------------------------------------------------------


@lru_cache(maxsize=None)
def _letter_coproduct(letter):
    alph = system().alphabet
    row, col, c = LETTER_ENTRY[alph.names[letter]]
    out = []
    for j in range(2):
        n1, c1 = T_ENTRY[(row, j)]
        n2, c2 = T_ENTRY[(j, col)]
        out.append(((alph.index[n1],), (alph.index[n2],), c * c1 * c2))
    return tuple(out)


def coproduct_word(w):
    """Delta(w) as {(u, v): coefficient} with both legs in normal form."""
    raw = {((), ()): ONE}
    for x in w:
        nxt = {}
        for (u, v), c in raw.items():
            for u2, v2, c2 in _letter_coproduct(x):
                key = (u + u2, v + v2)
                nxt.setdefault(key, []).append(c * c2)
        raw = {k: fsum(cs) for k, cs in nxt.items()}
    sysm = system()
    acc = {}
    for (u, v), c in raw.items():
        if c.is_zero():
            continue
        for u2, cu in sysm.nf_word(u).terms.items():
            for v2, cv in sysm.nf_word(v).terms.items():
                acc.setdefault((u2, v2), []).append(c * cu * cv)
    out = {}
    for k, cs in acc.items():
        x = fsum(cs)
        if not x.is_zero():
            out[k] = x
    return out


def counit_word(w):
    alph = system().alphabet
    if any(alph.names[x] in ("b", "bs") for x in w):
        return FieldElem.coerce(0)
    return ONE


@lru_cache(maxsize=None)
def _letter_pairing(g, letter):
    alph = system().alphabet
    row, col, c = LETTER_ENTRY[alph.names[letter]]
    return pairing_tables()[g][row, col] * c


@lru_cache(maxsize=None)
def pairing(g, w):
    """<g, w> extended to words through the coproduct of su_q(2)."""
    if not w:
        return FieldElem.coerce(COUNIT_U[g])
    terms = []
    for g1, g2 in COPRODUCT_U[g]:
        first = _letter_pairing(g1, w[0])
        if first.is_zero():
            continue
        rest = pairing(g2, w[1:])
        if not rest.is_zero():
            terms.append(first * rest)
    return fsum(terms) if terms else FieldElem.coerce(0)


def act_on_word(g, w):
    """psi^(w) = sum w_(1) <psi, w_(2)>."""
    acc = {}
    for (u, v), c in coproduct_word(w).items():
        p = pairing(g, v)
        if not p.is_zero():
            acc.setdefault(u, []).append(c * p)
    return NCPoly.from_accumulator(acc)


@lru_cache(maxsize=None)
def dual_action(g, degree_cap):
    if g not in GENERATORS:
        raise ValueError(f"unknown generator {g!r}")
    t = truncated_basis(degree_cap)
    return ActionOp(t.matrix_from_images([act_on_word(g, w) for w in t.words]), 0)


def dual_actions(degree_cap):
    return {g: dual_action(g, degree_cap).matrix for g in GENERATORS}


@lru_cache(maxsize=None)
def mult_ops(degree_cap):
    """Left multiplication by a, b, b*, a* on words of length <= N - 1."""
    t = truncated_basis(degree_cap)
    sysm = system()
    out = {}
    for name in ("a", "b", "bs", "as"):
        x = sysm.alphabet.index[name]
        images = [sysm.nf_word((x,) + w) if len(w) < degree_cap else None for w in t.words]
        out[name] = ActionOp(t.matrix_from_images(images), 1)
    return out


def star_matrix(degree_cap):
    t = truncated_basis(degree_cap)
    sysm = system()
    alph = sysm.alphabet
    return t.matrix_from_images([sysm.normal_form(star(NCPoly.monomial(w), alph)) for w in t.words])


# -- checks ---------------------------------------------------------------------------------


def _restrict(x, cols):
    return ExactMatrix(x.rows, len(cols), [x[i, j] for i in range(x.rows) for j in cols])


def _counit_witness(degree_cap, samples=10, seed=3):
    rng = random.Random(seed)
    alph = system().alphabet
    words = [()] + [tuple(rng.randrange(4) for _ in range(rng.randint(1, degree_cap))) for _ in range(samples)]
    for w in words:
        nf = system().nf_word(w)
        acc_l, acc_r = {}, {}
        for (u, v), c in coproduct_word(w).items():
            acc_l.setdefault(v, []).append(c * counit_word(u))
            acc_r.setdefault(u, []).append(c * counit_word(v))
        left = system().normal_form(NCPoly.from_accumulator(acc_l))
        right = system().normal_form(NCPoly.from_accumulator(acc_r))
        if left != nf or right != nf:
            return f"counit fails on {alph.fmt_word(w)}"
    return None


def homomorphism_witness(degree_cap):
    ops = dual_actions(degree_cap)
    return relation_witness(ops["k"], ops["kinv"], ops["e"], ops["f"], f"N={degree_cap}: ")


def casimir_operator(ops):
    k, kinv, e, f = (ops[g] for g in GENERATORS)
    return (k @ k) * Q_INV + (kinv @ kinv) * Q + (f @ e) * (LAM * LAM)


def multiplet_witness(degree_cap):
    t = truncated_basis(degree_cap)
    c = casimir_operator(dual_actions(degree_cap))
    ones = [i for i, w in enumerate(t.words) if len(w) == 1]
    block = ExactMatrix(len(ones), len(ones), [c[i, j] for i in ones for j in ones])
    want = ExactMatrix.identity(len(ones)) * (Q * Q + Q_INV * Q_INV)
    w = matrix_witness(block, want, "C on degree 1")
    if w:
        return w
    for i in range(t.size):
        for j in ones:
            if i not in ones and not c[i, j].is_zero():
                return "degree-1 span is not invariant"
    return None


def ll_operator(ops):
    """LL^ = L^+ S(L^-) from the dual-action operators."""
    lplus, _, _, s_lminus = l_blocks(ops["k"], ops["kinv"], ops["e"], ops["f"])
    return lplus @ s_lminus


def t_operator(degree_cap):
    m = mult_ops(degree_cap)
    return opmat([[m["a"].matrix, m["b"].matrix], [m["bs"].matrix * (-Q_INV), m["as"].matrix]])


def cross_relation_sides(degree_cap, factor=Q):
    ops = dual_actions(degree_cap)
    ll = ll_operator(ops)
    tm = t_operator(degree_cap)
    n = truncated_basis(degree_cap).size
    r = rhat_on(n)
    lhs = (slot1(ll) @ slot2(tm)) * factor
    rhs = slot2(tm) @ r @ slot2(ll) @ r
    return lhs, rhs


def _window_columns(degree_cap):
    t = truncated_basis(degree_cap)
    low = t.low_indices()
    return [blk * t.size + j for blk in range(4) for j in low]


def cross_relation_witness(degree_cap, factor=Q):
    t = truncated_basis(degree_cap)
    lhs, rhs = cross_relation_sides(degree_cap, factor)
    cols = _window_columns(degree_cap)
    diff = _restrict(lhs, cols).first_difference(_restrict(rhs, cols))
    if diff is None:
        return None
    i, j, a, b = diff
    col = cols[j]
    alph = system().alphabet
    return (
        f"aux row {i // t.size}, aux col {col // t.size}, basis word "
        f"{alph.fmt_word(t.words[col % t.size])} -> {alph.fmt_word(t.words[i % t.size])}: "
        f"{a.to_q_string()} != {b.to_q_string()}"
    )


def check_cross_relation(degree_cap):
    if degree_cap < 2:
        raise ValueError("the cross relation needs a degree cap of at least 2")

    def body():
        w = cross_relation_witness(degree_cap)
        if w is None:
            return None
        # report explicitly whether the unscaled form would hold
        alt = cross_relation_witness(degree_cap, ONE)
        note = "holds without the factor q" if alt is None else "also fails without the factor q"
        return f"verbatim form fails ({note}): {w}"

    return run_check(f"regular.cross_relation[N={degree_cap}]", "q LL^_1 T_2 = T_2 R LL^_2 R", body)


def _negative_cross(degree_cap):
    if cross_relation_witness(degree_cap, ONE) is None:
        return "cross relation still holds after dropping the factor q"
    return None


def antipode_ops_witness(degree_cap):
    """S(T)T = T S(T) = I as multiplication operators on words of length <= N - 2."""
    m = mult_ops(degree_cap)
    a, b, bs, as_ = (m[x].matrix for x in ("a", "b", "bs", "as"))
    tm = [[a, b], [bs * (-Q_INV), as_]]
    st = [[as_, b * (-Q_INV)], [bs, a]]
    t = truncated_basis(degree_cap)
    cols = [i for i, w in enumerate(t.words) if len(w) <= degree_cap - 2]
    n = t.size
    ident = ExactMatrix.identity(n)
    zero = ExactMatrix.zeros(n)
    for label, x, y in (("S(T)T", st, tm), ("T S(T)", tm, st)):
        for i, j in product(range(2), repeat=2):
            got = x[i][0] @ y[0][j] + x[i][1] @ y[1][j]
            want = ident if i == j else zero
            w = matrix_witness(_restrict(got, cols), _restrict(want, cols), f"{label}[{i}{j}]")
            if w:
                return w
    return None


# classical vector fields on commutative monomials (a, a*, b, b*) with aa* = 1 - bb*

_VAR = {"a": 0, "as": 1, "b": 2, "bs": 3}
VECTOR_FIELDS = {
    "plus": [(1, "a", "b"), (-1, "bs", "as")],
    "three": [(0.5, "a", "a"), (0.5, "bs", "bs"), (-0.5, "b", "b"), (-0.5, "as", "as")],
    "minus": [(1, "b", "a"), (-1, "as", "bs")],
}


def _reduce_commutative(exps, c, out):
    """Add c * monomial to out after eliminating a a* -> 1 - b b*."""
    if exps[0] and exps[1]:
        base = (exps[0] - 1, exps[1] - 1, exps[2], exps[3])
        _reduce_commutative(base, c, out)
        _reduce_commutative((base[0], base[1], base[2] + 1, base[3] + 1), -c, out)
    else:
        out[exps] = out.get(exps, 0) + c


def _word_exponents(w):
    alph = system().alphabet
    e = [0, 0, 0, 0]
    for x in w:
        e[_VAR[alph.names[x]]] += 1
    return tuple(e)


def vector_field_matrix(name, degree_cap):
    from fractions import Fraction

    t = truncated_basis(degree_cap)
    pos = {_word_exponents(w): i for i, w in enumerate(t.words)}
    n = t.size
    rows = [[Fraction(0)] * n for _ in range(n)]
    for j, w in enumerate(t.words):
        exps = _word_exponents(w)
        out = {}
        for coeff, x, y in VECTOR_FIELDS[name]:
            iy = _VAR[y]
            if exps[iy] == 0:
                continue
            new = list(exps)
            new[iy] -= 1
            new[_VAR[x]] += 1
            _reduce_commutative(tuple(new), Fraction(coeff) * exps[iy], out)
        for e, c in out.items():
            if c:
                rows[pos[e]][j] += c
    return rows


def classical_vector_field_witness(degree_cap):
    ops = {g: m.eval(1) for g, m in dual_actions(degree_cap).items()}
    lq = lq_from(*(dual_action(g, degree_cap).matrix for g in ("k", "e", "f")))
    ident_ok = ops["k"] == ops["kinv"] == [[int(i == j) for j in range(len(ops["k"]))] for i in range(len(ops["k"]))]
    if not ident_ok:
        return "k^ is not the identity at q = 1"
    got = {"plus": lq.plus.eval(1), "three": lq.three.eval(1), "minus": lq.minus.eval(1)}
    for name in ("plus", "three", "minus"):
        want = vector_field_matrix(name, degree_cap)
        if got[name] != want:
            return f"l^_{name} at q=1 differs from its vector field"
    # su(2) brackets and C^ = 2
    lp, l3, lm = (ExactMatrix.from_rows(got[x]) for x in ("plus", "three", "minus"))
    for label, lhs, rhs in (
        ("[l+, l-] = 2 l3", lp @ lm - lm @ lp, l3 * 2),
        ("[l3, l+] = l+", l3 @ lp - lp @ l3, lp),
        ("[l3, l-] = -l-", l3 @ lm - lm @ l3, -lm),
    ):
        w = matrix_witness(lhs, rhs, label)
        if w:
            return w
    c1 = casimir_operator(dual_actions(degree_cap)).eval(1)
    if c1 != (ExactMatrix.identity(len(c1)) * 2).eval(1):
        return "C^ != 2 at q = 1"
    return None


def star_conjugation_witness(degree_cap, s_value=None):
    st = star_matrix(degree_cap)
    ops = dual_actions(degree_cap)
    ident = ExactMatrix.identity(st.rows)
    checks = (
        ("* * = id", st @ st, ident),
        ("* k^ * = k^-1", st @ ops["k"] @ st, ops["kinv"]),
        ("* e^ * = -(1/q) f^", st @ ops["e"] @ st, ops["f"] * (-Q_INV)),
    )
    for label, lhs, rhs in checks:
        if s_value is not None:
            if lhs.eval(s_value) != rhs.eval(s_value):
                return f"{label} at s = {s_value}"
            continue
        w = matrix_witness(lhs, rhs, label)
        if w:
            return w
    return None


def _filtration_witness(degree_cap):
    t = truncated_basis(degree_cap)
    for g, m in dual_actions(degree_cap).items():
        for j in range(t.size):
            for i in range(t.size):
                if t.degree(i) > t.degree(j) and not m[i, j].is_zero():
                    return f"{g}^ raises the length of basis word {j}"
    return None


def verify_regular(degree_caps=(2, 3)):
    reports = []
    for n in degree_caps:
        tag = f"[N={n}]"
        try:
            truncated_basis(n)
        except VerificationError as exc:
            reports.append(run_check(f"regular.basis{tag}", "normal words of length <= N", str, exc))
            continue
        reports.append(run_check(f"regular.counit{tag}", "(eps (x) id) Delta = (id (x) eps) Delta = id", _counit_witness, n))
        reports.append(run_check(f"regular.filtration{tag}", "psi^ never increases word length", _filtration_witness, n))
        reports.append(run_check(f"regular.homomorphism{tag}", "k^, k^-1^, e^, f^ satisfy the su_q(2) relations", homomorphism_witness, n))
        reports.append(run_check(f"regular.multiplet{tag}", "C^ = q^2 + q^-2 on the degree-1 span", multiplet_witness, n))
        reports.append(run_check(f"regular.antipode{tag}", "S(T)T = T S(T) = I as multiplication operators", antipode_ops_witness, n))
        if n >= 2:
            reports.append(check_cross_relation(n))
            reports.append(
                run_check(
                    f"regular.cross_relation_negative_control{tag}",
                    "LL^_1 T_2 != T_2 R LL^_2 R without the factor q",
                    _negative_cross,
                    n,
                )
            )
        reports.append(run_check(f"regular.classical_vector_fields{tag}", "q=1: l^+ = a d/db - b* d/da*, su(2) brackets, C^ = 2", classical_vector_field_witness, n))
        reports.append(run_check(f"regular.star_conjugation{tag}", "* k^ * = k^-1, * e^ * = -(1/q) f^", star_conjugation_witness, n))
        reports.append(run_check(f"regular.star_conjugation_classical{tag}", "q=1: * e^ * = -f^", star_conjugation_witness, n, 1))
    return reports


__all__ = [
    "ActionOp",
    "TruncatedBasis",
    "act_on_word",
    "check_cross_relation",
    "coproduct_word",
    "counit_word",
    "cross_relation_sides",
    "cross_relation_witness",
    "dual_action",
    "dual_actions",
    "mult_ops",
    "pairing",
    "star_matrix",
    "truncated_basis",
    "vector_field_matrix",
    "verify_regular",
]
