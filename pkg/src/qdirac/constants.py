"""The fixed R-matrices of SU_q(2) and their identities.

Basis of C^2 (x) C^2 is (e1e1, e1e2, e2e1, e2e2).  Everything is built from
a scalar ``s`` (default the field generator, s**2 = q) so the whole set can
be rebuilt under s -> 1/s to test the q <-> 1/q symmetry.
"""

import random
from dataclasses import dataclass, field

from .field import ONE, ZERO, S, FieldElem
from .matrix import ExactMatrix, kernel_dim, kron, mat_inverse
from .report import matrix_witness, run_check


@dataclass(frozen=True)
class ConstantSet:
    s: FieldElem
    rhat: ExactMatrix
    perm: ExactMatrix
    rplus: ExactMatrix
    rminus: ExactMatrix
    dmat: ExactMatrix
    pairing: dict = field(compare=False)

    @property
    def q(self):
        return self.s * self.s

    @property
    def lam(self):
        return self.q - self.q.inverse()


def braid_rmatrix(s=S):
    q = s * s
    lam = q - q.inverse()
    return ExactMatrix.from_rows(
        [
            [q, 0, 0, 0],
            [0, lam, 1, 0],
            [0, 1, 0, 0],
            [0, 0, 0, q],
        ]
    )


PERM = ExactMatrix.from_rows([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
I2 = ExactMatrix.identity(2)
I4 = ExactMatrix.identity(4)


def pairing_tables(s=S):
    """<g, T> for g in k, k^-1, e, f as 2x2 matrices."""
    si = s.inverse()
    return {
        "k": ExactMatrix.diag([si, s]),
        "kinv": ExactMatrix.diag([s, si]),
        "e": ExactMatrix.from_rows([[0, 1], [0, 0]]),
        "f": ExactMatrix.from_rows([[0, 0], [1, 0]]),
    }


def build_constants(s=S):
    rhat = braid_rmatrix(s)
    q = s * s
    return ConstantSet(
        s=s,
        rhat=rhat,
        perm=PERM,
        rplus=(rhat @ PERM) * s.inverse(),
        rminus=(mat_inverse(rhat) @ PERM) * s,
        dmat=ExactMatrix.diag([q, q.inverse()]),
        pairing=pairing_tables(s),
    )


def braid_sides(r):
    """Both sides of (R(x)I)(I(x)R)(R(x)I) = (I(x)R)(R(x)I)(I(x)R)."""
    r1 = kron(r, I2)
    r2 = kron(I2, r)
    return r1 @ r2 @ r1, r2 @ r1 @ r2


def _yang_baxter(c):
    lhs, rhs = braid_sides(c.rhat)
    return matrix_witness(lhs, rhs)


def _hecke(c):
    lhs = c.rhat @ c.rhat
    rhs = c.rhat * c.lam + I4
    return matrix_witness(lhs, rhs)


def _embed13(r):
    p23 = kron(I2, PERM)
    return p23 @ kron(r, I2) @ p23


def rmatrix_ybe_sides(r):
    """R12 R13 R23 and R23 R13 R12 on C^2 (x) C^2 (x) C^2."""
    r12, r23, r13 = kron(r, I2), kron(I2, r), _embed13(r)
    return r12 @ r13 @ r23, r23 @ r13 @ r12


def random_2x2(rng, s=S):
    vals = []
    for _ in range(4):
        lo = rng.randint(-2, 2)
        coeffs = [rng.randint(-3, 3) for _ in range(3)]
        vals.append(FieldElem.from_laurent(coeffs, lo))
    return ExactMatrix.from_rows([vals[:2], vals[2:]])


def _transposition(c, samples=3, seed=0):
    w = matrix_witness(mat_inverse(c.rplus), c.rminus.T, "(R+)^-1 vs (R-)^t")
    w = w or matrix_witness(mat_inverse(c.rminus), c.rplus.T, "(R-)^-1 vs (R+)^t")
    w = w or matrix_witness(c.rhat.T, c.rhat, "R^t vs R")
    rng = random.Random(seed)
    mats = [c.pairing[g] for g in ("k", "kinv", "e", "f")]
    mats += [random_2x2(rng) for _ in range(samples)]
    for x in mats:
        w = w or matrix_witness(c.perm @ kron(x, I2) @ c.perm, kron(I2, x), "P X1 P vs X2")
    return w


def _pairing_vs_rmatrix(c):
    # <L+_1, T_2> assembled from the generator tables must reproduce R+ (and R-)
    lam, s = c.lam, c.s
    p = c.pairing
    zero = ExactMatrix.zeros(2)
    lplus = [[p["kinv"], p["f"] * (lam / s)], [zero, p["k"]]]
    lminus = [[p["k"], zero], [p["e"] * (-lam * s), p["kinv"]]]
    for name, grid, target in (("R+", lplus, c.rplus), ("R-", lminus, c.rminus)):
        got = ExactMatrix.blocks(grid).with_shape(None)
        w = matrix_witness(got, target, f"<L,T> vs {name}")
        if w:
            return w
    return None


def check_yang_baxter(c):
    return run_check("constants.yang_baxter", "braid Yang-Baxter R1 R2 R1 = R2 R1 R2", _yang_baxter, c)


def check_hecke(c):
    return run_check("constants.hecke", "Hecke R^2 = lam R + I4", _hecke, c)


def check_transposition_identities(c):
    return run_check(
        "constants.transposition",
        "(R+-)^-1 = (R-+)^t, R^t = R, X2 = P X1 P",
        _transposition,
        c,
    )


def check_pairing_rmatrix(c):
    return run_check("constants.pairing", "<L+-_1, T_2> = R+-", _pairing_vs_rmatrix, c)


def check_rmatrix_ybe(c):
    def body():
        for name, r in (("R+", c.rplus), ("R-", c.rminus)):
            lhs, rhs = rmatrix_ybe_sides(r)
            w = matrix_witness(lhs, rhs, name)
            if w:
                return w
        return None

    return run_check("constants.rmatrix_ybe", "R12 R13 R23 = R23 R13 R12 for R+-", body)


def rhat_eigen_multiplicities(c):
    """Kernel dimensions of (R - qI) and (R + I/q)."""
    q = c.q
    return (
        kernel_dim(c.rhat - I4 * q),
        kernel_dim(c.rhat + I4 * q.inverse()),
    )


def check_rhat_spectrum(c):
    def body():
        mult = rhat_eigen_multiplicities(c)
        if mult != (3, 1):
            return f"eigenvalue multiplicities (q, -1/q) = {mult}, expected (3, 1)"
        return None

    return run_check("constants.rhat_spectrum", "spec R = {q (x3), -1/q (x1)}", body)


def check_inverted_s():
    """Every constants identity again, with s replaced by 1/s."""
    c = build_constants(S.inverse())

    def body():
        for rep in (check_yang_baxter(c), check_hecke(c), check_transposition_identities(c)):
            if not rep.passed:
                return f"{rep.check_id}: {rep.witness}"
        return None

    return run_check("constants.q_inversion", "identities invariant under q -> 1/q", body)


def verify_constants():
    c = build_constants()
    return [
        check_yang_baxter(c),
        check_hecke(c),
        check_transposition_identities(c),
        check_pairing_rmatrix(c),
        check_rmatrix_ybe(c),
        check_rhat_spectrum(c),
        check_inverted_s(),
    ]


__all__ = [
    "ConstantSet",
    "build_constants",
    "braid_rmatrix",
    "check_yang_baxter",
    "check_hecke",
    "check_transposition_identities",
    "check_pairing_rmatrix",
    "check_rmatrix_ybe",
    "check_rhat_spectrum",
    "rhat_eigen_multiplicities",
    "verify_constants",
    "PERM",
    "ONE",
    "ZERO",
]
