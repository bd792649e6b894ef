"""Input language tests: grammar coverage, round trips, error reporting."""

import pytest

from sdres.diffpoly import CoeffRef, Monomial, VarRef
from sdres.errors import (
    DimensionMismatch,
    DuplicatePolynomial,
    DuplicateVariable,
    NonGenericTerm,
    ParseError,
)
from sdres.parsing import parse_system, print_system

from systems import (
    GOLDEN_TEXT,
    RANK_DEFICIENT_TEXT,
    TOY_TEXT,
    golden_system,
    rank_deficient_system,
    toy_system,
)


@pytest.mark.parametrize("text,builder", [
    (GOLDEN_TEXT, golden_system),
    (TOY_TEXT, toy_system),
    (RANK_DEFICIENT_TEXT, rank_deficient_system),
])
def test_fixture_texts_parse_to_their_builders(text, builder):
    src = parse_system(text)
    system = builder()
    assert src.polys == system.polys
    assert src.nvars == system.nvars


@pytest.mark.parametrize("text", [GOLDEN_TEXT, TOY_TEXT, RANK_DEFICIENT_TEXT])
def test_print_parse_round_trip(text):
    src = parse_system(text)
    assert parse_system(print_system(src)) == src


def test_whitespace_is_insignificant():
    tight = parse_system("P0=u+u*y[1,0]^2\nP1=u+u*y[1,1]")
    spaced = parse_system("P0 =  u  +  u * y[ 1 , 0 ] ^ 2\nP1 = u + u*y[1,1]")
    assert tight == spaced


def test_comments_and_blank_lines_are_skipped():
    text = """
# leading comment
P0 = u + u*y[1,0]   # trailing comment

P1 = u + u*y[1,1]
"""
    src = parse_system(text)
    assert len(src.polys) == 2
    assert src.nvars == 1


def test_negative_laurent_exponents():
    src = parse_system("P0 = u + u*y[1,0]^-2*y[2,1]\nP1 = u + y[2,0]\nP2 = u")
    mono = src.polys[0].terms[1][1]
    assert mono.exponent(VarRef(1, 0)) == -2
    assert mono.exponent(VarRef(2, 1)) == 1


def test_bare_factors_get_an_implicit_coefficient():
    src = parse_system("P0 = u + y[1,0]\nP1 = u + u*y[1,1]")
    explicit = parse_system("P0 = u + u*y[1,0]\nP1 = u + u*y[1,1]")
    assert src == explicit


def test_coefficients_are_numbered_in_term_order():
    src = parse_system(TOY_TEXT)
    assert src.coeffs == (CoeffRef(0, 0, 0), CoeffRef(0, 1, 0),
                          CoeffRef(1, 0, 0), CoeffRef(1, 1, 0))
    assert src.polys[0].terms[0][1] == Monomial.one()


def test_to_system_enforces_count():
    src = parse_system("P0 = u + u*y[1,0]\nP1 = u + u*y[2,0]\nP2 = u + u*y[3,0]")
    assert src.nvars == 3
    with pytest.raises(DimensionMismatch):
        src.to_system()


def test_parse_error_carries_line_and_column():
    with pytest.raises(ParseError) as info:
        parse_system("P0 = u + u*y[1,0]\nP1 = u + u*y[1 0]")
    assert info.value.line == 2
    assert info.value.col is not None
    assert "line 2" in str(info.value)


@pytest.mark.parametrize("text", [
    "P0 u + u*y[1,0]",          # missing '='
    "P0 = u + ",                # dangling '+'
    "P0 = u * ",                # dangling '*'
    "P0 = u + u*z[1,0]",        # unknown factor head
    "P0 = u + u*y[0,0]",        # variable indices start at 1
    "P0 = u + u*y[1,0]^0",      # zero exponent
    "P0 = u + u*y[1,0] junk",   # trailing garbage
    "Q0 = u + u*y[1,0]",        # bad line head
    "",                         # no definitions at all
    "# only a comment",
    "P1 = u + u*y[1,0]",        # indices must start at 0
    "P0 = u + u*y[1,0]\nP2 = u + u*y[1,1]",  # gap in indices
])
def test_syntax_errors(text):
    with pytest.raises(ParseError):
        parse_system(text)


def test_duplicate_polynomial_rejected():
    with pytest.raises(DuplicatePolynomial):
        parse_system("P0 = u + u*y[1,0]\nP0 = u + u*y[1,1]")


def test_duplicate_variable_in_one_term_rejected():
    with pytest.raises(DuplicateVariable):
        parse_system("P0 = u + u*y[1,0]*y[1,0]")


def test_numeric_coefficients_rejected():
    with pytest.raises(NonGenericTerm):
        parse_system("P0 = u + 3*y[1,0]")
    with pytest.raises(NonGenericTerm):
        parse_system("P0 = u + -2*y[1,0]")
