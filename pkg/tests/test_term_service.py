import pytest

from app.core.errors import ArityError, ParseError, UnknownSymbolError
from app.models.logic_models import GROUP_SIGNATURE, AtomicFormula, FormulaKind, Presentation, Signature, Term
from app.services.term_service import (
    build_psi, check_term, display_term, enumerate_terms, format_term, parse_term, parse_word_term,
    terms_of_size, word_term,
)


@pytest.mark.parametrize("text", ["x1", "e", "mul(x1,inv(x2))", "inv(mul(mul(x1,x2),x1))"])
def test_parse_format_is_stable(text):
    term = parse_term(text, GROUP_SIGNATURE)
    assert format_term(term) == text
    assert parse_term(format_term(term), GROUP_SIGNATURE) == term


@pytest.mark.parametrize(
    "text, error",
    [
        ("foo(x1)", UnknownSymbolError),
        ("mul(x1)", ArityError),
        ("mul(x1,,x2)", ParseError),
        ("mul(x1,x2", ParseError),
        ("x1 x2", ParseError),
        ("mul", ArityError),
        ("y", UnknownSymbolError),
    ],
)
def test_parse_errors(text, error):
    with pytest.raises(error):
        parse_term(text, GROUP_SIGNATURE)


def test_parse_without_signature_reads_unknown_identifiers_as_constants():
    assert parse_term("c").kind.value == "constant"
    assert parse_term("f(x2, c)") == Term.apply("f", Term.var(2), Term.const("c"))


def test_parse_rejects_variables_outside_the_arity():
    with pytest.raises(ParseError) as info:
        parse_term("mul(x1,x9)", GROUP_SIGNATURE, 2)
    assert info.value.position == 7
    assert parse_term("mul(x2,x9)", GROUP_SIGNATURE, 2, bound=[9]) == Term.apply("mul", Term.var(2), Term.var(9))
    assert parse_term("x9", GROUP_SIGNATURE) == Term.var(9)


def test_check_term_variable_range():
    check_term(Term.var(2), GROUP_SIGNATURE, 2)
    with pytest.raises(ArityError):
        check_term(Term.var(3), GROUP_SIGNATURE, 2)


def test_term_order_by_size():
    e, x1, x2 = Term.const("e"), Term.var(1), Term.var(2)
    assert terms_of_size(GROUP_SIGNATURE, 2, 1) == (e, x1, x2)
    assert terms_of_size(GROUP_SIGNATURE, 2, 2) == tuple(Term.apply("inv", t) for t in (e, x1, x2))
    size3 = terms_of_size(GROUP_SIGNATURE, 2, 3)
    assert size3[0] == Term.apply("mul", e, e)
    assert size3[4] == Term.apply("mul", x1, x1)
    assert len(size3) == 12
    assert len(list(enumerate_terms(GROUP_SIGNATURE, 2, 3))) == 18


def test_enumeration_is_unbounded_without_max_size():
    stream = enumerate_terms(GROUP_SIGNATURE, 1)
    sizes = [next(stream).size for _ in range(50)]
    assert sizes == sorted(sizes)
    assert sizes[-1] > 3


def test_word_terms_and_display():
    term = word_term([(1, 1), (2, -1)])
    assert term == Term.apply("mul", Term.var(1), Term.apply("inv", Term.var(2)))
    assert display_term(term) == "x1 x2^-1"
    assert parse_word_term("x1 x2^-1") == term
    assert word_term([]) == Term.const("e")
    assert display_term(Term.apply("inv", word_term([(1, 1), (2, 1)]))) == "x2^-1 x1^-1"


def test_display_outside_groups_is_canonical():
    sig = Signature(constants=("zero",), functions=(("join", 2),))
    term = Term.apply("join", Term.var(1), Term.const("zero"))
    assert display_term(term, sig) == "join(x1,zero)"


def test_psi_shape():
    relators = (AtomicFormula.equality(word_term([(1, 1), (1, 1)]), Term.const("e")),)
    psi = build_psi(Presentation(GROUP_SIGNATURE, 2, relators))
    assert psi.kind == FormulaKind.conjunction
    assert len(psi.children) == 2
    assert psi.is_quantifier_free
    assert psi.free_variables == frozenset({1, 2})


def test_psi_of_single_free_generator_is_true():
    assert build_psi(Presentation(GROUP_SIGNATURE, 1, ())).kind == FormulaKind.true


def test_presentation_rejects_foreign_variables():
    relator = AtomicFormula.equality(Term.var(3), Term.const("e"))
    with pytest.raises(ValueError):
        Presentation(GROUP_SIGNATURE, 2, (relator,))
