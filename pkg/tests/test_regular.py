from fractions import Fraction

import pytest

from qdirac.field import Q, S
from qdirac.ncpoly import NCPoly
from qdirac.parse import parse_poly
from qdirac.regular import (
    act_on_word,
    check_cross_relation,
    counit_word,
    cross_relation_witness,
    homomorphism_witness,
    pairing,
    star_conjugation_witness,
    system,
    truncated_basis,
    vector_field_matrix,
    verify_regular,
)


def P(text):
    return parse_poly(text, system().alphabet)


def act(g, p):
    out = NCPoly()
    for w, c in system().normal_form(p).terms.items():
        out = out + act_on_word(g, w).scale(c)
    return system().normal_form(out)


def test_full_suite_passes():
    failed = [r for r in verify_regular((2, 3)) if not r.passed]
    assert not failed, failed


@pytest.mark.parametrize(
    "g,src,img",
    [
        ("k", "a", "s^-1*a"),
        ("k", "b", "s*b"),
        ("k", "bs", "s^-1*bs"),
        ("k", "as", "s*as"),
        ("e", "b", "a"),
        ("e", "as", "-q^-1*bs"),
        ("e", "a", "0"),
        ("e", "bs", "0"),
        ("f", "a", "b"),
        ("f", "bs", "-q*as"),
        ("f", "b", "0"),
    ],
)
def test_degree_one_values(g, src, img):
    assert act(g, P(src)) == system().normal_form(P(img))


WORDS = ["a*b", "b*bs", "as*a", "a*bs*b", "bs*as", "b*b*as"]


@pytest.mark.parametrize("text", WORDS)
def test_twisted_derivation(text):
    # psi^(uv) = sum psi_(1)^(u) psi_(2)^(v) with e -> e (x) k + k^-1 (x) e
    sysm = system()
    w = sysm.normal_form(P(text))
    for word in w.terms:
        u, v = NCPoly.monomial(word[:1]), NCPoly.monomial(word[1:])
        uv = NCPoly.monomial(word)
        for g in ("e", "f"):
            want = act(g, u) * act("k", v) + act("kinv", u) * act(g, v)
            assert act(g, uv) == sysm.normal_form(want)
        assert act("k", uv) == sysm.normal_form(act("k", u) * act("k", v))


def test_pairing_and_counit():
    a = system().alphabet
    assert pairing("k", a.word("a")) == S.inverse()
    assert pairing("e", a.word("b")) == 1
    assert pairing("f", a.word("bs")) == -Q
    assert pairing("e", a.word("a")) == 0
    assert counit_word(a.word("a", "as")) == 1
    assert counit_word(a.word("b")) == 0
    assert counit_word(()) == 1


def test_basis_sizes():
    assert truncated_basis(1).size == 5
    assert truncated_basis(2).size == 14
    assert truncated_basis(3).size == 30
    with pytest.raises(ValueError):
        truncated_basis(0)


@pytest.mark.parametrize("n", [2, 3])
def test_homomorphism(n):
    assert homomorphism_witness(n) is None


@pytest.mark.parametrize("n", [2, 3])
def test_cross_relation_and_negative_control(n):
    assert check_cross_relation(n).passed
    assert cross_relation_witness(n, Q) is None
    assert cross_relation_witness(n, 1) is not None


def test_cross_relation_needs_room():
    with pytest.raises(ValueError):
        check_cross_relation(1)


def test_vector_fields_on_generators():
    t = truncated_basis(1)
    a = system().alphabet
    i = {n: t.index[a.word(n)] for n in ("a", "b", "as", "bs")}
    l3 = vector_field_matrix("three", 1)
    lp = vector_field_matrix("plus", 1)
    lm = vector_field_matrix("minus", 1)
    assert l3[i["a"]][i["a"]] == Fraction(1, 2)
    assert l3[i["b"]][i["b"]] == Fraction(-1, 2)
    assert lp[i["a"]][i["b"]] == 1
    assert lp[i["bs"]][i["as"]] == -1
    assert lm[i["b"]][i["a"]] == 1


@pytest.mark.parametrize("n", [2, 3])
def test_star_conjugation(n):
    assert star_conjugation_witness(n) is None
    assert star_conjugation_witness(n, Fraction(3, 2)) is None
