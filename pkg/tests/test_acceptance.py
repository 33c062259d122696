"""One test per acceptance criterion, each printing a single pass/fail line.

Exact criteria compare in Q(s); the numeric criterion uses a 1e-10 tolerance.
Time limits are wall-clock and include construction.
"""

import time
from fractions import Fraction

import numpy as np
import pytest
import sympy
from sympy.physics.matrices import msigma

from qdirac.constants import verify_constants
from qdirac.dirac import (
    build_total_rep,
    check_characteristic,
    classical_limit_suite,
    dirac_direct,
    spectrum,
    verify_dirac_l,
)
from qdirac.irreps import similarity_check, spins_upto, unitary_operators, unitary_star_check, verify_irrep
from qdirac.presentations import verify_ncpoly
from qdirac.regular import verify_regular

SPINS = list(spins_upto("3"))
TOL = 1e-10


def _report(capsys, n, title, failures, elapsed, limit):
    ok = not failures and elapsed < limit
    status = "PASS" if ok else "FAIL"
    with capsys.disabled():
        print(f"\nacceptance {n}: {status}  {title}  ({elapsed:.2f} s, limit {limit} s)")
    assert not failures, failures
    assert elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"


def _failed(reports):
    return [f"{r.check_id}: {r.witness}" for r in reports if not r.passed]


def _run(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _require(reports, prefixes):
    ids = {r.check_id.split("[")[0] for r in reports}
    missing = [p for p in prefixes if p not in ids]
    assert not missing, f"checks not run: {missing}"


def test_criterion_1_constants(capsys):
    reports, dt = _run(verify_constants)
    _require(reports, ["constants.yang_baxter", "constants.hecke", "constants.transposition"])
    _report(capsys, 1, "YBE, Hecke, (R+-)^-1 = (R-+)^t, R^t = R", _failed(reports), dt, 1)


def test_criterion_2_irreps(capsys):
    reports, dt = _run(lambda: [r for l in SPINS for r in verify_irrep(l)])
    _require(
        reports,
        ["irreps.relations", "irreps.casimir", "irreps.laplace", "irreps.l_matrices", "irreps.bracket"],
    )
    assert len({r.check_id for r in reports}) == len(reports)
    _report(capsys, 2, "irreps l <= 3: relations, RLL, reflection, C_q, Delta_q, identities", _failed(reports), dt, 10)


def test_criterion_3_dirac(capsys):
    reports, dt = _run(lambda: [r for l in SPINS for r in verify_dirac_l(l)])
    _require(
        reports,
        [
            "dirac.cross_construction",
            "dirac.characteristic",
            "dirac.invariance",
            "dirac.total_reflection",
            "dirac.spectrum",
            "dirac.towers",
        ],
    )
    _report(capsys, 3, "Dirac l <= 3: constructions, identity, invariance, spectrum, towers", _failed(reports), dt, 30)


def _brute_force_classical(l):
    """Eigenvalues of sum_k sigma_k (x) J_k from textbook spin-l matrices."""
    l = sympy.Rational(l.numerator, l.denominator)
    d = int(2 * l + 1)
    ms = [l - i for i in range(d)]
    jp = sympy.zeros(d)
    for i in range(1, d):
        jp[i - 1, i] = sympy.sqrt(l * (l + 1) - ms[i] * (ms[i] + 1))
    jm = jp.T
    js = ((jp + jm) / 2, (jp - jm) / (2 * sympy.I), sympy.diag(*ms))
    dmat = sum((sympy.kronecker_product(msigma(k + 1), js[k]) for k in range(3)), sympy.zeros(2 * d))
    return {Fraction(str(k)): v for k, v in dmat.eigenvals().items()}


def test_criterion_4_classical_limit(capsys):
    def body():
        failures = []
        for l in SPINS:
            t = build_total_rep(l)
            d = dirac_direct(t)
            failures += _failed([classical_limit_suite(l), check_characteristic(d, t)])
            got = {e.eigenvalue.eval(1): e.multiplicity for e in spectrum(d, t).entries}
            want = _brute_force_classical(l.value)
            if got != want:
                failures.append(f"l={l}: spectrum at q=1 {got} != brute force {want}")
        return failures

    failures, dt = _run(body)
    _report(capsys, 4, "q = 1: D = sum sigma (x) l, D^2 + D = Delta, su(2), C = 2, spectrum", failures, dt, 60)


def test_criterion_5_ncpoly(capsys):
    reports, dt = _run(verify_ncpoly)
    _require(
        reports,
        [
            "ncpoly.sunq.confluence",
            "ncpoly.sphere.confluence",
            "ncpoly.sunq.antipode",
            "ncpoly.sunq.det_q",
            "ncpoly.sunq.rtt",
            "ncpoly.sphere.bracket_form",
            "ncpoly.sphere.reflection",
            "ncpoly.coaction.qtrace",
            "ncpoly.coaction.covariance",
            "ncpoly.sunq.flatness",
        ],
    )
    _report(capsys, 5, "confluence, S(T)T = I, det_q, RTT, sphere relations, covariance, flatness", _failed(reports), dt, 30)


@pytest.mark.parametrize("n", [2, 3])
def test_criterion_6_regular_action(capsys, n):
    reports, dt = _run(lambda: verify_regular((n,)))
    _require(
        reports,
        [
            "regular.homomorphism",
            "regular.cross_relation",
            "regular.classical_vector_fields",
            "regular.star_conjugation",
        ],
    )
    _report(capsys, 6, f"regular action N={n}: homomorphism, cross relation, vector fields, *-conjugation", _failed(reports), dt, 60)


def test_criterion_7_unitary_numeric(capsys):
    def body():
        failures = []
        for q0 in (Fraction(2), Fraction(3, 2)):
            for l in SPINS:
                failures += _failed([unitary_star_check(l, q0, TOL), similarity_check(l, q0, TOL)])
                ops = unitary_operators(l, q0)
                errs = {
                    "k - k^T": np.max(np.abs(ops["k"] - ops["k"].T)),
                    "e^T - f": np.max(np.abs(ops["e"].T - ops["f"])),
                    "D - D^T": np.max(np.abs(ops["lq"] - ops["lq"].T)),
                }
                failures += [f"l={l}, q={q0}: |{k}| = {v:.2e}" for k, v in errs.items() if v > TOL]
        return failures

    failures, dt = _run(body)
    _report(capsys, 7, "q in {2, 3/2}: k* = k, e* = f, D_q* = D_q within 1e-10", failures, dt, 5)
