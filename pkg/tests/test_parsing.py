import random

import pytest

from charpforms.errors import ParseError, ZeroDenominator
from charpforms.fields import FieldCtx
from charpforms.parsing import format_element, parse_element

F2XYZ = FieldCtx(2, names=("x", "y", "z"))
F3XY = FieldCtx(3, names=("x", "y"))
F4XY = FieldCtx(2, 2, names=("x", "y"))


def test_integers_reduce_mod_p():
    assert parse_element(F3XY, "5") == F3XY.from_int(2)
    assert parse_element(F2XYZ, "7*x") == F2XYZ.var("x")
    assert parse_element(F2XYZ, "2") == F2XYZ.zero()


def test_precedence_and_power():
    ctx = F3XY
    x, y = ctx.var("x"), ctx.var("y")
    assert parse_element(ctx, "x+y*x^2") == x + y * x ** 2
    assert parse_element(ctx, "(x+y)^2") == (x + y) ** 2
    assert parse_element(ctx, "x/y/x") == ctx.one() / y


def test_subtraction_binary_only():
    ctx = F3XY
    x, y = ctx.var("x"), ctx.var("y")
    assert parse_element(ctx, "x-y") == x - y
    with pytest.raises(ParseError):
        parse_element(ctx, "-x")


def test_double_plus_offset():
    with pytest.raises(ParseError) as exc:
        parse_element(F2XYZ, "x + + y")
    assert exc.value.position == 4


def test_trailing_input_rejected():
    with pytest.raises(ParseError):
        parse_element(F2XYZ, "x^2^3")
    with pytest.raises(ParseError):
        parse_element(F2XYZ, "x y")


def test_unknown_identifier():
    with pytest.raises(ParseError):
        parse_element(F2XYZ, "x + w")
    # 'g' only exists over proper extensions
    with pytest.raises(ParseError):
        parse_element(F2XYZ, "g")


def test_generator_arithmetic_f4():
    # default min poly g^2 + g + 1
    ctx = F4XY
    g = ctx.gen()
    assert parse_element(ctx, "g*g") == g + 1
    assert format_element(g * g) == "g+1"
    assert parse_element(ctx, "g^3") == ctx.one()


def test_zero_denominator_surfaces():
    with pytest.raises(ZeroDenominator):
        parse_element(F2XYZ, "1/(x+x)")


def test_cube_expansion_f3():
    # freshman's dream collapses the middle binomial terms
    s = format_element(parse_element(F3XY, "(x+y)^3"))
    assert s == "x^3+y^3"
    assert format_element(parse_element(F3XY, s)) == s


def test_roundtrip_random_elements():
    rng = random.Random(4242)
    from helpers import rand_elem

    for ctx in (F2XYZ, F3XY, F4XY):
        for _ in range(150):
            e = rand_elem(rng, ctx)
            s = format_element(e)
            back = parse_element(ctx, s)
            assert back == e
            assert format_element(back) == s


def test_format_orders_terms_graded_lex():
    ctx = F3XY
    e = parse_element(ctx, "1+x+y+x*y+x^2")
    # total degree descending, then lexicographic with x before y
    assert format_element(e) == "x^2+x*y+x+y+1"
