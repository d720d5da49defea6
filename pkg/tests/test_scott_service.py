import pytest

from app.core.errors import NotFiniteError, PreconditionError
from app.models.logic_models import AtomicFormula, Formula, FormulaKind, Term
from app.models.scott_models import CheckKind, ThetaConjunct
from app.services.artifact_service import read_formula, render, scott_artifact, theta_artifact, write_artifact
from app.services.formula_service import classify, materialize, parse_formula
from app.services.scott_service import (
    assemble_scott, build_theta, check_bounded, confirm_in_orbit, eval_on_finite, refutes_with,
)
from app.services.term_service import build_psi, display_term

X1, X2, E = Term.var(1), Term.var(2), Term.const("e")


def _eq(left, right):
    return Formula.atomic(AtomicFormula.equality(left, right))


@pytest.fixture(scope="module")
def theta_dinf(dinf, dinf_ap):
    return build_theta(dinf, dinf_ap, 11)


def test_empty_theta_is_psi(dinf, dinf_ap):
    prefix = build_theta(dinf, dinf_ap, 0)
    assert prefix.cursor == 0
    assert materialize(prefix.formula) == build_psi(dinf.presentation)
    assert classify(prefix.formula).tag == "Π1"


def test_theta_conjunct_shape(theta_dinf):
    conjunct = theta_dinf.conjuncts[10]
    assert conjunct.index == 10
    assert [display_term(t) for t in conjunct.terms] == ["x1 x2 x1", "x2 x1 x2"]
    assert conjunct.formula.kind == FormulaKind.forall
    assert conjunct.formula.variables == (3, 4)
    assert conjunct.formula.body.kind == FormulaKind.negation
    assert conjunct.formula.free_variables == frozenset({1, 2})


def test_theta_resumes_from_a_prefix(dinf, dinf_ap, theta_dinf):
    partial = build_theta(dinf, dinf_ap, 5)
    assert build_theta(dinf, dinf_ap, 11, resume=partial) == theta_dinf
    assert build_theta(dinf, dinf_ap, 3, resume=theta_dinf).conjuncts == theta_dinf.conjuncts[:3]


def test_scott_sentence_is_d_sigma2(dinf, dinf_ap):
    sentence = assemble_scott(dinf, dinf_ap, max_conjuncts=4, max_terms=6)
    assert classify(sentence.sigma2).tag == "Σ2"
    assert classify(sentence.pi2).tag == "Π2"
    assert classify(sentence.formula).tag == "d-Σ2"
    assert sentence.term_cursor == 6
    assert sentence.pi2.variables == (1, 2, 5)


def test_empty_scott_sentence_materializes_to_psi(dinf, dinf_ap):
    sentence = assemble_scott(dinf, dinf_ap)
    assert materialize(sentence.sigma2) == Formula.exists([1, 2], build_psi(dinf.presentation))


def test_theta_holds_at_the_generators(dinf, theta_dinf):
    verdict = check_bounded(theta_dinf.formula, dinf, 3, dinf.generators)
    assert verdict.kind == CheckKind.holds_so_far
    assert verdict.unresolved == ()
    assert not verdict.refuted


def test_orbit_members_are_confirmed(dinf, dinf_ap, theta_dinf):
    b = (dinf.parse_element("a"), dinf.parse_element("a b a"))
    verdict = confirm_in_orbit(dinf, dinf_ap, theta_dinf.formula, b, 5)
    assert verdict.kind == CheckKind.exact_true


def test_proper_subgroup_is_refuted(dinf, theta_dinf):
    b = (dinf.parse_element("a b a"), dinf.parse_element("b a b"))
    verdict = check_bounded(theta_dinf.formula, dinf, 1, b)
    assert verdict.kind == CheckKind.refuted
    assert verdict.conjunct == 10
    assert verdict.witness == dinf.generators


def test_every_tuple_refutes_its_own_conjunct(dinf, theta_dinf):
    for conjunct in theta_dinf.conjuncts:
        assert refutes_with(dinf, conjunct, conjunct.elements, dinf.generators)
        assert not refutes_with(dinf, conjunct, dinf.generators, dinf.generators)


def test_refutes_with_needs_a_universal_conjunct(dinf):
    bogus = ThetaConjunct(index=0, elements=dinf.generators, terms=(X1, X2), formula=Formula.top())
    with pytest.raises(PreconditionError):
        refutes_with(dinf, bogus, dinf.generators, dinf.generators)


def test_klein_four_is_separated_at_the_eleventh_conjunct(dinf, dinf_ap, v4, theta_dinf):
    a, b = v4.generators
    verdict = check_bounded(theta_dinf.formula, v4, 2, (a, b))
    assert verdict.kind == CheckKind.refuted
    assert verdict.conjunct == 10
    assert verdict.witness == (b, a)

    shorter = build_theta(dinf, dinf_ap, 10)
    assert check_bounded(shorter.formula, v4, 2, (a, b)).kind == CheckKind.exact_true
    assert eval_on_finite(shorter.formula, v4, (a, b))
    assert not eval_on_finite(theta_dinf.formula, v4, (a, b))


def test_scott_sigma2_fails_on_klein_four(dinf, dinf_ap, v4):
    sentence = assemble_scott(dinf, dinf_ap, max_conjuncts=11)
    assert not eval_on_finite(sentence.sigma2, v4)


def test_eval_on_finite_rejects_infinite_targets(dinf):
    with pytest.raises(NotFiniteError):
        eval_on_finite(Formula.top(), dinf)


def test_failing_existential_stays_unresolved(dinf, v4):
    cube = Term.apply("mul", X1, Term.apply("mul", X1, X1))
    order_three = Formula.exists([1], Formula.conjunction(Formula.negation(_eq(X1, E)), _eq(cube, E)))
    bounded = check_bounded(order_three, dinf, 3)
    assert bounded.kind == CheckKind.holds_so_far
    assert bounded.unresolved == (0,)
    exact = check_bounded(order_three, v4, 2)
    assert exact.kind == CheckKind.exact_false


def test_failing_quantifier_free_member_is_refuted(dinf):
    verdict = check_bounded(_eq(X1, X2), dinf, 1, dinf.generators)
    assert verdict.kind == CheckKind.refuted
    assert verdict.conjunct is None
    assert verdict.witness == ()


def test_artifacts_carry_cursors_and_classes(dinf, dinf_ap, theta_dinf):
    theta_doc = theta_artifact(dinf, theta_dinf)
    assert theta_doc["metadata"]["cursor"] == 11
    assert theta_doc["metadata"]["classification"] == "Π1"
    assert theta_doc["metadata"]["config_hash"] == dinf.config_hash
    assert "term_cursor" not in theta_doc["metadata"]

    scott_doc = scott_artifact(dinf, assemble_scott(dinf, dinf_ap, max_conjuncts=4, max_terms=6))
    assert scott_doc["metadata"]["assembly"] == "alvir-adopted"
    assert scott_doc["metadata"]["term_cursor"] == 6
    assert scott_doc["metadata"]["classification"] == "d-Σ2"


def test_artifacts_are_deterministic(dinf, dinf_ap):
    first = render(scott_artifact(dinf, assemble_scott(dinf, dinf_ap, max_conjuncts=4, max_terms=6)))
    second = render(scott_artifact(dinf, assemble_scott(dinf, dinf_ap, max_conjuncts=4, max_terms=6)))
    assert first == second


def test_written_artifacts_read_back(dinf, theta_dinf, tmp_path):
    path = write_artifact(tmp_path / "nested" / "theta.json", theta_artifact(dinf, theta_dinf))
    assert path.exists()
    assert read_formula(path, dinf.signature) == theta_dinf.formula
    bare = tmp_path / "bare.json"
    bare.write_text(render({"kind": "true"}), encoding="utf-8")
    assert read_formula(bare, dinf.signature) == Formula.top()
    assert parse_formula(render({"kind": "true"}), dinf.signature) == Formula.top()
