import pytest

from qdirac.field import ONE, Q, S
from qdirac.ncpoly import Alphabet, ConfluenceFailure, NCPoly, RewriteSystem, star
from qdirac.parse import ParseError, parse_poly, parse_scalar
from qdirac.presentations import (
    build_sphere_presentation,
    build_sunq_presentation,
    build_tensor_algebra,
    flatness_counts,
    verify_ncpoly,
)


@pytest.fixture(scope="module")
def sunq():
    return build_sunq_presentation()


@pytest.fixture(scope="module")
def sphere():
    return build_sphere_presentation()


def nf(system, text):
    return system.normal_form(parse_poly(text, system.alphabet))


def same(system, lhs, rhs):
    return nf(system, lhs) == nf(system, rhs)


def test_full_suite_passes():
    failed = [r for r in verify_ncpoly() if not r.passed]
    assert not failed, failed


def test_group_rewrites(sunq):
    assert same(sunq, "b*a", "q^-1*a*b")
    assert nf(sunq, "a*b") == parse_poly("a*b", sunq.alphabet)
    assert same(sunq, "as*a", "1 - q^-2*b*bs")
    assert same(sunq, "a*as", "1 - b*bs")
    assert same(sunq, "bs*b", "b*bs")


def test_group_identities(sunq):
    # determinant and unitarity of the fundamental matrix
    assert same(sunq, "a*as + b*bs", "1")
    assert same(sunq, "as*a + q^-2*bs*b", "1")
    assert same(sunq, "a*b - q*b*a", "0")


def test_star(sunq, sphere):
    ab = parse_poly("a*b", sunq.alphabet)
    assert star(ab, sunq.alphabet) == parse_poly("bs*as", sunq.alphabet)
    p = parse_poly("xp*x3 + q*mu*xm", sphere.alphabet)
    assert star(p, sphere.alphabet) == parse_poly("x3*xm + q*xp*mu", sphere.alphabet)
    assert same(sphere, "x3*xm + q*xp*mu", "x3*xm + q*mu*xp")
    assert star(star(p, sphere.alphabet), sphere.alphabet) == p


def test_star_reverses_products(sunq):
    a = sunq.alphabet
    x, y = parse_poly("a + q*b*bs", a), parse_poly("as - 2*b", a)
    assert star(x * y, a) == star(y, a) * star(x, a)


def test_sphere_normal_forms(sphere):
    assert same(sphere, "x3*xp", "q^-2*xp*x3 + q^-1*mu*xp")
    assert same(sphere, "xm*x3", "q^-2*x3*xm + q^-1*mu*xm")
    assert same(sphere, "mu*xp - xp*mu", "0")
    # the Casimir relation
    assert same(sphere, "x3*x3", "q^-2*(rho - xp*xm + q*mu*x3)")


def test_confluence(sunq, sphere):
    assert sunq.check_confluence() > 0
    assert sphere.check_confluence() > 0
    assert build_sphere_presentation(S, False).check_confluence() > 0
    assert build_tensor_algebra().check_confluence() > 0


def test_confluence_failure_detected():
    alph = Alphabet(["x", "y"])
    x, y = NCPoly.monomial((0,)), NCPoly.monomial((1,))
    # xy -> y and yx -> x: the overlap xyx reduces to both x and xx
    rules = {(0, 1): y, (1, 0): x}
    system = RewriteSystem(alph, rules)
    with pytest.raises(ConfluenceFailure):
        system.check_confluence()


def test_non_decreasing_rule_rejected():
    alph = Alphabet(["x", "y"])
    with pytest.raises(ValueError):
        RewriteSystem(alph, {(0, 1): NCPoly.monomial((1, 0))})


def test_flatness_counts():
    generic, classical, commutative = flatness_counts(3)
    assert generic == classical == commutative == [1, 4, 9, 16]


def test_normal_forms_are_idempotent(sunq):
    p = parse_poly("(a + bs)^3 - as*b*a", sunq.alphabet)
    n = sunq.normal_form(p)
    assert sunq.normal_form(n) == n
    assert all(sunq.is_normal(w) for w in n.terms)


def test_parser_arithmetic(sunq):
    a = sunq.alphabet
    assert parse_poly("2*(a - b) + 2*b", a) == parse_poly("a + a", a)
    assert parse_poly("a/q", a) == parse_poly("q^-1*a", a)
    assert parse_poly("-b^2", a) == NCPoly.monomial(a.word("b", "b"), -ONE)
    assert parse_scalar("lam") == Q - Q.inverse()
    assert parse_scalar("s^2") == Q


@pytest.mark.parametrize(
    "text,pos",
    [("a + ", 4), ("a * c", 4), ("(a", 2), ("a $ b", 2), ("a^-1", 3), ("a/b", 1), ("a b", 2)],
)
def test_parser_errors(sunq, text, pos):
    with pytest.raises(ParseError) as info:
        parse_poly(text, sunq.alphabet)
    assert info.value.pos == pos
    assert str(info.value).startswith(f"position {pos}:")


def test_parse_scalar_rejects_words():
    with pytest.raises(ParseError):
        parse_scalar("q*a")
