"""Operator expression parser: grammar, aliases, errors, roundtrips."""

import pytest

from dxext.parser import ParseError, infer_variable_count, parse
from dxext.weyl import WeylElement


def W(n, xexp, dexp, c=1):
    return WeylElement.monomial(n, tuple(xexp), tuple(dexp), c)


def test_basic_atoms():
    assert parse("x", 1) == WeylElement.x(0, 1)
    assert parse("dx", 1) == WeylElement.d(0, 1)
    assert parse("x1", 1) == WeylElement.x(0, 1)
    assert parse("d1", 1) == WeylElement.d(0, 1)
    assert parse("7", 1) == WeylElement.scalar(1, 7)
    assert parse("3/4", 2) == WeylElement.scalar(2, "3/4")


def test_juxtaposition_and_explicit_star():
    assert parse("x y", 2) == parse("x*y", 2) == W(2, (1, 1), (0, 0))
    assert parse("2x dx", 1) == W(1, (1,), (1,), 2)


def test_powers_bind_tighter_than_multiplication():
    assert parse("x dx^2", 1) == W(1, (1,), (2,))
    assert parse("(x dx)^2", 1) == parse("x^2 dx^2 + x dx", 1)


def test_noncommutative_order_preserved():
    assert parse("dx x", 1) == parse("x dx + 1", 1)
    assert parse("x dx", 1) != parse("dx x", 1)


def test_sums_differences_unary_minus():
    assert parse("x - y", 2) == WeylElement.x(0, 2) - WeylElement.x(1, 2)
    assert parse("-x + x", 1) == WeylElement.zero(1)
    assert parse("x - (-y)", 2) == parse("x + y", 2)


def test_fraction_coefficients():
    from fractions import Fraction

    e = parse("1/2 x + 3 y", 2)
    assert e.coefficient((1, 0), (0, 0)) == Fraction(1, 2)
    assert e.coefficient((0, 1), (0, 0)) == 3


def test_aliases_match_numbered_names():
    assert parse("x y z w", 4) == parse("x1 x2 x3 x4", 4)
    assert parse("dx dy dz dw", 4) == parse("d1 d2 d3 d4", 4)
    # Numbered names remain available above four variables.
    assert parse("x5 d5", 5) == W(5, (0, 0, 0, 0, 1), (0, 0, 0, 0, 1))


def test_alias_unavailable_above_four_variables():
    with pytest.raises(ParseError):
        parse("x y z w", 5)


def test_infer_variable_count():
    assert infer_variable_count("x dx") == 1
    assert infer_variable_count("x y^2") == 2
    assert infer_variable_count("x3 + d1") == 3
    assert infer_variable_count("5") == 1


def test_parse_without_explicit_count_uses_inference():
    assert parse("x y").n == 2
    assert parse("x2").n == 2


def test_parse_errors_carry_position():
    for text in ("x +", "(x", "x ^ y", "x^-2", "@", ""):
        with pytest.raises(ParseError) as info:
            parse(text, 2)
        assert isinstance(info.value, ValueError)
        assert info.value.pos >= 0


def test_unknown_name_rejected():
    with pytest.raises(ParseError):
        parse("q + 1", 2)
    with pytest.raises(ParseError):
        parse("x3", 2)


def test_variable_count_mismatch():
    with pytest.raises(ValueError):
        parse("x3", 2)


def test_worked_expressions():
    # Euler operator and a hypersurface polynomial used throughout.
    euler = parse("x dx + y dy", 2)
    assert euler == W(2, (1, 0), (1, 0)) + W(2, (0, 1), (0, 1))
    node = parse("x*y", 2)
    assert node.is_polynomial
    assert node.degree() == 2
    cusp = parse("y^2 - x^3", 2)
    assert cusp == W(2, (0, 2), (0, 0)) - W(2, (3, 0), (0, 0))


def test_str_of_parse_is_stable():
    for text in ("x dx + 1", "y^2 - x^3", "1/2 dx^2", "x y dx dy"):
        e = parse(text, 2)
        assert parse(str(e), 2) == e
        assert str(parse(str(e), 2)) == str(e)
