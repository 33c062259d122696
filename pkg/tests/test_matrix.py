from fractions import Fraction

import pytest
import sympy

from qdirac.constants import braid_rmatrix
from qdirac.field import LAM, ONE, Q, S, ZERO
from qdirac.matrix import (
    ExactMatrix,
    ShapeMismatch,
    kernel_basis,
    kernel_dim,
    kron,
    mat_inverse,
    mat_vec,
    qtrace2,
    rank,
)


def test_identity_and_products():
    a = ExactMatrix.from_rows([[1, S], [0, Q]])
    i2 = ExactMatrix.identity(2)
    assert a @ i2 == a and i2 @ a == a
    assert (a @ mat_inverse(a)) == i2
    assert a.T.T == a
    assert a.trace() == 1 + Q


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        ExactMatrix.identity(2) @ ExactMatrix.identity(3)
    with pytest.raises(ShapeMismatch):
        qtrace2(ExactMatrix.identity(3))


def test_kron_block_layout():
    a = ExactMatrix.from_rows([[1, 2], [3, 4]])
    b = ExactMatrix.from_rows([[0, 1], [1, 0]])
    k = kron(a, b)
    assert k.shape == (4, 4)
    assert k[1, 2] == 2 * 1 and k[2, 1] == 3
    assert k.block(1, 0, 2) == b * 3


def test_qtrace():
    x = ExactMatrix.from_rows([[1, 5], [7, 1]])
    assert qtrace2(x) == ExactMatrix.from_rows([[Q + Q.inverse()]])
    y = kron(ExactMatrix.from_rows([[1, 0], [0, 2]]), ExactMatrix.identity(3))
    assert qtrace2(y) == ExactMatrix.identity(3) * (Q + Q.inverse() * 2)


def test_hecke_kernels():
    r = braid_rmatrix()
    i4 = ExactMatrix.identity(4)
    assert r @ r == r * LAM + i4
    assert kernel_dim(r - i4 * Q) == 3
    assert kernel_dim(r + i4 * Q.inverse()) == 1


def test_kernel_vectors_annihilated():
    m = ExactMatrix.from_rows([[1, S, Q], [S, Q, S * Q], [0, 1, ONE + S]])
    for v in kernel_basis(m):
        assert all(x == ZERO for x in mat_vec(m, v))
    assert rank(m) + len(kernel_basis(m)) == 3


@pytest.mark.parametrize("s0", [Fraction(2), Fraction(3, 2), Fraction(1, 3)])
def test_rank_matches_sympy_at_sample_points(s0):
    m = ExactMatrix.from_rows([[1, S, Q, 0], [S, Q, S * Q, 1], [ONE - S, 0, 1, Q], [1 + S, Q, Q + S * Q + 1, Q + 1]])
    numeric = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m.eval(s0)])
    # the generic rank is attained at these sample points
    assert rank(m) == numeric.rank()
