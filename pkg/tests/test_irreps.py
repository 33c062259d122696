from fractions import Fraction

import numpy as np
import pytest

from qdirac.field import Q, qnum_sq
from qdirac.irreps import (
    HalfInt,
    casimir,
    casimir_value,
    laplace,
    laplace_value,
    lq_from,
    make_irrep,
    relation_witness,
    similarity_check,
    spins_upto,
    unitary_operators,
    unitary_star_check,
    verify_irrep,
)
from qdirac.matrix import ExactMatrix
from qdirac.report import NotScalar

SPINS = [str(l) for l in spins_upto("3")]


def test_halfint():
    assert HalfInt.parse("3/2").twice == 3
    assert HalfInt.parse("3/2").dim == 4
    assert str(HalfInt.parse(1)) == "1"
    assert [str(x) for x in spins_upto("1")] == ["0", "1/2", "1"]
    with pytest.raises(ValueError):
        HalfInt.parse("1/3")
    with pytest.raises(ValueError):
        HalfInt.parse("-1")


@pytest.mark.parametrize("l", SPINS)
def test_irrep_suite(l):
    reports = verify_irrep(l)
    failed = [r for r in reports if not r.passed]
    assert not failed, failed


def test_rescaled_basis_action():
    r = make_irrep(1)
    # e|1,0> = [1]|1,1>, f|1,0> = [1]|1,-1>, k|1,1> = q^-1|1,1>
    assert r.e[0, 1] == 1 and r.f[2, 1] == 1
    assert r.e[1, 2] == Q + Q.inverse()
    assert r.k[0, 0] == Q.inverse()


@pytest.mark.parametrize("l", ["0", "1/2", "1", "2"])
def test_casimir_and_laplace_values(l):
    r = make_irrep(l)
    tw = HalfInt.parse(l).twice
    assert casimir(r) == Q ** (tw + 1) + Q ** (-(tw + 1))
    lv = HalfInt.parse(l).value
    assert laplace(r) == qnum_sq(lv) * qnum_sq(lv + 1)
    assert casimir_value(l).eval(1) == 2
    assert laplace_value(l).eval(1) == lv * (lv + 1)


def test_frozen_values_at_q4():
    # q = 4 (s = 2): C on spin 1 is q^3 + q^-3, Delta is [1][2] in q^2
    assert casimir_value(1).eval(2) == Fraction(4097, 64)
    assert laplace_value(1).eval(2) == Fraction(257, 16)


def test_negative_control_broken_relation():
    r = make_irrep("1")
    bad_e = r.e * 2
    assert relation_witness(r.k, r.kinv, bad_e, r.f) is not None


def test_casimir_not_scalar_is_reported():
    from qdirac.irreps import Irrep

    r = make_irrep("1")
    broken = Irrep(r.l, r.k, r.kinv, r.e, r.f * 2, r.basis_convention)
    with pytest.raises(NotScalar):
        casimir(broken)


@pytest.mark.parametrize("q0", [Fraction(2), Fraction(3, 2)])
@pytest.mark.parametrize("l", ["1/2", "1", "5/2"])
def test_unitary_checks(l, q0):
    assert unitary_star_check(l, q0).passed
    assert similarity_check(l, q0).passed


def test_unitary_classical_point():
    ops = unitary_operators("1", 1)
    assert np.array_equal(ops["e"].T, ops["f"])
    assert unitary_star_check("1", 1).passed


def test_lq_at_q1_is_su2():
    r = make_irrep("3/2")
    ops = lq_from(r.k, r.e, r.f)
    lp, lm, l3 = (ExactMatrix.from_rows(m.eval(1)) for m in (ops.plus, ops.minus, ops.three))
    assert lp @ lm - lm @ lp == l3 * 2
    assert l3 @ lp - lp @ l3 == lp
