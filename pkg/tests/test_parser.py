from __future__ import annotations

import pytest
from hypothesis import assume, given, settings

from pistar.free_star import MultilinearityError, Polynomial, VarTypeError, star_free
from pistar.parser import ParseError, format_polynomial, parse, parse_generator_file, parse_generators

from .strategies import expressions, polynomials


def test_commutator():
    assert parse("[x1:0+, x2:1-]") == parse("x1:0+ x2:1- - x2:1- x1:0+")


def test_jordan():
    assert parse("x1:1+ o x2:1+") == parse("x1:1+ x2:1+ + x2:1+ x1:1+")


def test_star_postfix():
    assert parse("(x1:1- * x2:1-)^*") == parse("-x2:1- x1:1-")


def test_scalars_and_zero():
    assert parse("1/2 x1:0+ - 3 x1:0+") == parse("-5/2 x1:0+")
    assert parse("0") == Polynomial()
    assert format_polynomial(Polynomial()) == "0"


def test_format():
    assert format_polynomial(parse("x2:0+ x1:0+ + 2 x1:0+ x2:0+")) == "2 x1:0+ x2:0+ + x2:0+ x1:0+"
    assert format_polynomial(parse("-1/2 x1:1-")) == "-1/2 x1:1-"


@pytest.mark.parametrize(
    "text",
    ["x1:2+", "[x1:0+ x2:0+]", "x1:0+ +", "(x1:0+", "x1:0+ $", "x?"],
)
def test_parse_errors_carry_position(text):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert 0 <= exc.value.pos <= len(text)


def test_type_clash():
    with pytest.raises(VarTypeError):
        parse("x1:0+ + x1:0-")


def test_repeated_variable():
    with pytest.raises(MultilinearityError):
        parse("x1:0+ x1:0+")


def test_wildcards():
    odd = parse_generators("x1:1? x2:1?")
    assert len(odd) == 4
    both = parse_generators("[x1:0+, x?]")
    # the 0+ slot gives a commutator of two fresh symmetric even variables
    assert len(both) == 4
    assert all(p.degree == 2 for p in both)


def test_generator_file_skips_comments():
    out = parse_generator_file("# header\nx1:0-\n\n[x1:0+, x?]  # all types\n")
    assert [src for src, _ in out] == ["x1:0-", "[x1:0+, x?]"]


@settings(max_examples=1200, deadline=None)
@given(polynomials())
def test_format_parse_roundtrip(p):
    assert parse(format_polynomial(p)) == p


@settings(max_examples=1200, deadline=None)
@given(polynomials())
def test_star_is_involutive(p):
    assert star_free(star_free(p)) == p


@settings(max_examples=300, deadline=None)
@given(polynomials(), polynomials())
def test_star_reverses_products(p, q):
    # shift q's indices so the product stays multilinear
    q = q.rename({i: i + 10 for i in q.var_types()})
    assert star_free(p * q) == _graded_swap(star_free(q), star_free(p))


def _graded_swap(a: Polynomial, b: Polynomial) -> Polynomial:
    """a*b with the sign (-1)^{|p||q|} applied per pair of homogeneous terms."""
    out = Polynomial()
    for ma, ca in a.items():
        for mb, cb in b.items():
            pa = sum(v.vtype.parity for v in ma) % 2
            pb = sum(v.vtype.parity for v in mb) % 2
            sign = -1 if pa and pb else 1
            out = out + Polynomial({ma + mb: sign * ca * cb})
    return out


@settings(max_examples=1000, deadline=None)
@given(expressions())
def test_expression_roundtrip(text):
    try:
        p = parse(text)
    except MultilinearityError:
        assume(False)
    assert parse(format_polynomial(p)) == p
    assert star_free(star_free(p)) == p
