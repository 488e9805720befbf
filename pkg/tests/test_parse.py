"""Expression grammars: operators, rational functions, round-trips, errors."""

import random
from fractions import Fraction

import pytest

from derivcover.errors import DivisionByZeroError, ParseError, UnknownLetterError
from derivcover.jets import Operator
from derivcover.parse import (
    OPERATOR_EXPR,
    RATFUNC_EXPR,
    SourceExpr,
    parse_func_list,
    parse_operator,
    parse_ratfunc,
)
from derivcover.poly import VarRegistry


def test_word_parsing():
    assert parse_operator("D1.D1") == Operator.word((0, 0))
    assert parse_operator("D2.D1") == Operator.word((1, 0))


def test_linear_combination_parsing():
    got = parse_operator("2*D1 + 3/2*D2.D3")
    expected = Operator.from_terms(
        [((0,), Fraction(2)), ((1, 2), Fraction(3, 2))]
    )
    assert got == expected


def test_cancellation_to_zero_operator():
    assert parse_operator("D1 - D1").is_zero()


def test_signed_coefficients():
    assert parse_operator("-D1") == Operator.word((0,), -1)
    assert parse_operator("-3*D1 + -2*D2") == Operator.from_terms(
        [((0,), Fraction(-3)), ((1,), Fraction(-2))]
    )


def test_letters_numbered_from_one():
    with pytest.raises(ParseError):
        parse_operator("D0")
    with pytest.raises(ParseError):
        parse_operator("D")


def test_unknown_letter_against_alphabet():
    with pytest.raises(UnknownLetterError):
        parse_operator("D3", alphabet_size=2)
    assert parse_operator("D2", alphabet_size=2) == Operator.word((1,))


def test_operator_parse_error_positions():
    with pytest.raises(ParseError) as err:
        parse_operator("D1 + + D2")
    assert err.value.position == 5
    with pytest.raises(ParseError):
        parse_operator("2*")
    with pytest.raises(ParseError):
        parse_operator("D1 x")


def test_ratfunc_expansion():
    f = parse_ratfunc("t^2 + 2*t + 1")
    g = parse_ratfunc("(u+1)^2", VarRegistry())
    assert f.render() == "t^2 + 2*t + 1"
    assert g.render() == "u^2 + 2*u + 1"


def test_ratfunc_reduction():
    assert parse_ratfunc("(t^2-1)/(t-1)").render() == "t + 1"


def test_ratfunc_division_by_zero():
    with pytest.raises(DivisionByZeroError):
        parse_ratfunc("1/0")
    with pytest.raises(DivisionByZeroError):
        parse_ratfunc("t/(u-u)")


def test_precedence_fixed_cases():
    reg = VarRegistry()
    t = parse_ratfunc("t", reg)
    assert parse_ratfunc("2*t^2", reg) == (t**2).scale(2)
    assert parse_ratfunc("-t^2", reg) == -(t**2)
    assert parse_ratfunc("(-t)^2", reg) == t**2
    assert parse_ratfunc("2+3*t", reg) == t.scale(3) + 2
    assert parse_ratfunc("1/2*t", reg) == t.scale(Fraction(1, 2))
    assert parse_ratfunc("t-1-1", reg) == t - 2


def test_ratfunc_parse_errors():
    with pytest.raises(ParseError):
        parse_ratfunc("t +")
    with pytest.raises(ParseError):
        parse_ratfunc("(t")
    with pytest.raises(ParseError):
        parse_ratfunc("t^x")
    with pytest.raises(ParseError) as err:
        parse_ratfunc("t $ u")
    assert err.value.position == 2


def test_unknown_variable_when_frozen():
    reg = VarRegistry()
    reg.add_generator("t")
    assert parse_ratfunc("t^2", reg, allow_new_vars=False) is not None
    with pytest.raises(ParseError):
        parse_ratfunc("u", reg, allow_new_vars=False)


def test_func_list_shares_registry():
    funcs = parse_func_list("t, t^2, t+u")
    assert funcs[0].reg is funcs[1].reg is funcs[2].reg
    with pytest.raises(ParseError):
        parse_func_list("t,,u")


def random_operator(rng) -> Operator:
    terms = []
    for _ in range(rng.randint(1, 4)):
        word = tuple(rng.randint(0, 3) for _ in range(rng.randint(1, 3)))
        coeff = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        terms.append((word, coeff))
    return Operator.from_terms(terms)


def test_operator_render_parse_round_trip():
    rng = random.Random(0)
    for _ in range(250):
        op = random_operator(rng)
        assert parse_operator(op.render()) == op


def random_ratfunc_text(rng) -> str:
    atoms = ["t", "u", "v", str(rng.randint(0, 9))]

    def expr(depth):
        if depth == 0:
            return rng.choice(atoms)
        a, b = expr(depth - 1), expr(depth - 1)
        op = rng.choice(["+", "-", "*", "*", "+"])
        text = f"({a} {op} {b})"
        if rng.random() < 0.2:
            text = f"-{text}"
        if rng.random() < 0.2:
            text += f"^{rng.randint(0, 3)}"
        return text

    return expr(rng.randint(1, 3))


def test_ratfunc_render_parse_round_trip():
    rng = random.Random(1)
    for _ in range(250):
        reg = VarRegistry()
        f = parse_ratfunc(random_ratfunc_text(rng), reg)
        again = parse_ratfunc(f.render(), reg)
        assert again == f


def test_source_expr_round_trip():
    src = SourceExpr("2*D1 + 3/2*D2.D3", OPERATOR_EXPR)
    op = parse_operator(src.text)
    assert SourceExpr(op.render(), OPERATOR_EXPR) == src
    fsrc = SourceExpr("t^2 + 2*t + 1", RATFUNC_EXPR)
    f = parse_ratfunc(fsrc.text)
    assert SourceExpr(f.render(), RATFUNC_EXPR) == fsrc
