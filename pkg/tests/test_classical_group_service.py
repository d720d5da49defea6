import pytest

from app.core.errors import ArityError, AutomorphismValidationError, ParseError, UnknownSymbolError
from app.models.automorphism_models import AutomorphismSpec
from app.services.classical_group_service import (
    abelian_aut_presentation, det_oracle, free_abelian, free_group, nielsen_aut_presentation, nielsen_oracle,
)
from app.services.orbit_service import validate_automorphism


@pytest.mark.parametrize(
    "vectors, expected",
    [
        (((1, 0), (0, 1)), True),
        (((2, 1), (1, 1)), True),
        (((0, -1), (1, 0)), True),
        (((2, 0), (0, 1)), False),
        (((1, 0), (0, 0)), False),
        (((1, 1), (1, 1)), False),
    ],
)
def test_det_oracle(vectors, expected):
    assert det_oracle(vectors) is expected


def test_det_oracle_needs_square_input():
    with pytest.raises(ArityError):
        det_oracle(((1, 0), (0, 1, 0)))


def test_free_abelian_arithmetic(z2):
    assert z2.multiply((2, -1), (0, 3)) == (2, 2)
    assert z2.inverse((2, -1)) == (-2, 1)
    assert z2.substitute(((1, 1), (0, 1)), (2, -1)) == (2, 1)
    assert z2.element_length((2, -1)) == 3
    assert z2.encode((2, -1)) == "(2,-1)"


@pytest.mark.parametrize("text", ["(1,2,3)", "1,2", "(a,b)"])
def test_free_abelian_parse_errors(z2, text):
    with pytest.raises(ParseError):
        z2.parse_element(text)


def test_abelian_presentation(z2_ap):
    assert z2_ap.names == ("swap_1_2", "neg_1", "tv_1_2")
    assert z2_ap.bound([1, 1]) == 12
    assert z2_ap.length_monotone


def test_abelian_presentation_rank_three():
    ap = abelian_aut_presentation(free_abelian(3))
    assert ap.names == ("swap_1_2", "swap_1_3", "neg_1", "tv_1_2")
    assert not ap.length_monotone


def test_rank_one_has_only_negation():
    ap = abelian_aut_presentation(free_abelian(1))
    assert ap.names == ("neg_1",)


def test_free_group_words(f2):
    x = f2.parse_element("a a b^-1")
    assert f2.encode(x) == "a^2 b^-1"
    assert f2.element_length(x) == 3
    assert f2.encode(f2.multiply(x, f2.inverse(x))) == "e"
    assert f2.letters(x) == [(0, 1), (0, 1), (1, -1)]
    with pytest.raises(UnknownSymbolError):
        f2.parse_element("a c")


def test_free_group_letters_skip_identity_name():
    assert free_group(5).names == ("a", "b", "c", "d", "f")


def test_nielsen_presentation(f2_ap):
    assert len(f2_ap.gens) == 11
    assert f2_ap.names[0] == "sp[a,b^-1]"
    assert f2_ap.names[-4:] == ("r12", "l12", "r21", "l21")
    assert f2_ap.bound([2, 3]) == 5
    assert f2_ap.length_monotone


@pytest.mark.parametrize(
    "words, expected",
    [
        ("a|b", True),
        ("a b|b", True),
        ("a b a^-1|a", True),
        ("b^-1|a", True),
        ("a^2|b", False),
        ("a b a^-1|b", False),
        ("e|b", False),
        ("a b|a b^2", True),
    ],
)
def test_nielsen_oracle(f2, words, expected):
    tuple_ = tuple(f2.parse_element(w) for w in words.split("|"))
    assert nielsen_oracle(f2, tuple_) is expected


def test_nielsen_oracle_arity(f2):
    with pytest.raises(ArityError):
        nielsen_oracle(f2, (f2.generators[0],))


def test_validation_rejects_non_invertible_map(z2):
    doubled = ((2, 0), (0, 1))
    with pytest.raises(AutomorphismValidationError):
        validate_automorphism(z2, AutomorphismSpec("double", doubled, doubled))


def test_validation_rejects_wrong_arity(f2):
    with pytest.raises(AutomorphismValidationError):
        validate_automorphism(f2, AutomorphismSpec("short", (f2.generators[0],), (f2.generators[0],)))


def test_nielsen_presentation_rank_three():
    ap = nielsen_aut_presentation(free_group(3))
    assert len(ap.gens) == 3 * 2 * 8 - 1 + 12
    assert not ap.length_monotone
