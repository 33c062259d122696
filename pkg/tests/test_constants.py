import dataclasses
import random

import pytest

from qdirac.constants import (
    PERM,
    braid_rmatrix,
    build_constants,
    check_hecke,
    check_pairing_rmatrix,
    check_rmatrix_ybe,
    check_transposition_identities,
    check_yang_baxter,
    random_2x2,
    rhat_eigen_multiplicities,
    verify_constants,
)
from qdirac.field import LAM, Q, S
from qdirac.matrix import ExactMatrix, mat_inverse


def test_all_constant_checks_pass():
    reports = verify_constants()
    assert len(reports) >= 4
    failed = [r for r in reports if not r.passed]
    assert not failed, failed


def test_rhat_entries():
    r = braid_rmatrix()
    assert r[0, 0] == Q and r[3, 3] == Q
    assert r[1, 1] == LAM and r[1, 2] == 1 and r[2, 1] == 1 and r[2, 2] == 0


def test_rplus_rminus_definitions():
    c = build_constants()
    assert c.rplus == (c.rhat @ PERM) * S.inverse()
    assert mat_inverse(c.rplus) == c.rminus.T
    assert c.dmat == ExactMatrix.diag([Q, Q.inverse()])


def test_multiplicities():
    assert rhat_eigen_multiplicities(build_constants()) == (3, 1)


def test_classical_point():
    c = build_constants(S ** 0)
    assert c.rhat.eval(1) == PERM.eval(1)


@pytest.mark.parametrize("check", [check_yang_baxter, check_hecke, check_rmatrix_ybe])
def test_negative_control_perturbed_rhat(check):
    c = build_constants()
    bad = c.rhat + ExactMatrix.from_rows([[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    c_bad = dataclasses.replace(c, rhat=bad, rplus=(bad @ PERM) * S.inverse(), rminus=(mat_inverse(bad) @ PERM) * S)
    rep = check(c_bad)
    assert not rep.passed and rep.witness


def test_negative_control_wrong_pairing():
    c = build_constants()
    tables = dict(c.pairing)
    tables["e"] = tables["f"]
    rep = check_pairing_rmatrix(dataclasses.replace(c, pairing=tables))
    assert not rep.passed


def test_transposition_on_random_matrices():
    c = build_constants()
    assert check_transposition_identities(c).passed
    rng = random.Random(7)
    x = random_2x2(rng)
    assert x.shape == (2, 2)


@pytest.mark.parametrize("pos", [(0, 0), (1, 1)])
def test_zeroed_rhat_entry_fails_with_witness(pos):
    c = build_constants()
    entries = list(c.rhat.entries)
    entries[pos[0] * 4 + pos[1]] = entries[pos[0] * 4 + pos[1]] * 0
    bad = ExactMatrix(4, 4, entries)
    rep = check_hecke(dataclasses.replace(c, rhat=bad))
    assert not rep.passed
    assert rep.witness.startswith("entry (")
