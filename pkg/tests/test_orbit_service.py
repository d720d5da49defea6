from itertools import islice

import pytest

from app.core.errors import AutomorphismValidationError, ConfigError, PreconditionError
from app.core.loader import build_structure, presentation_for
from app.models.automorphism_models import AutomorphismSpec, AutomorphismWord
from app.services.classical_group_service import det_oracle
from app.services.graph_product_service import f_gamma, gp_aut_presentation
from app.services.orbit_service import (
    alphabet, candidate_tuples, enumerate_automorphisms, enumerate_xstar, evaluate_word, make_inner_plus_finite,
    orbit_decide, validate_automorphism,
)
from app.services.structure_service import parse_tuple
from app.services.term_service import display_term

DINF_XSTAR = [
    "e|a", "e|b", "a|e", "b|e",
    "e|a b a", "e|b a b", "a|b a b", "b|a b a",
    "a b a|e", "a b a|b", "a b a|b a b",
]


def _tuple(s, text):
    return tuple(s.parse_element(part) for part in text.split("|"))


def test_dinf_orbit_member(dinf, dinf_ap):
    verdict = orbit_decide(dinf, dinf_ap, _tuple(dinf, "a|a b a"))
    assert verdict.in_orbit
    assert verdict.bound == 5
    assert verdict.witness.render(dinf_ap.names) == "[pc_a_b]"


def test_dinf_proper_subgroup_is_not_in_orbit(dinf, dinf_ap):
    verdict = orbit_decide(dinf, dinf_ap, _tuple(dinf, "a b a|b a b"))
    assert not verdict.in_orbit
    assert verdict.bound == 7
    assert verdict.witness is None
    assert verdict.searched > 1


def test_orbit_decide_needs_psi(dinf, dinf_ap):
    with pytest.raises(PreconditionError):
        orbit_decide(dinf, dinf_ap, _tuple(dinf, "a|a"))


def test_witness_words_evaluate_to_the_target(dinf, dinf_ap):
    target = evaluate_word(dinf, dinf_ap, AutomorphismWord(((1, 1), (0, 1), (2, 1))))
    verdict = orbit_decide(dinf, dinf_ap, target)
    assert verdict.in_orbit
    assert evaluate_word(dinf, dinf_ap, verdict.witness) == target


def test_free_abelian_orbits(z2, z2_ap):
    member = orbit_decide(z2, z2_ap, parse_tuple(z2, "(1,1), (0,1)"))
    assert member.in_orbit
    assert member.witness.render(z2_ap.names) == "[tv_1_2]"
    assert not orbit_decide(z2, z2_ap, parse_tuple(z2, "(2,0), (0,1)")).in_orbit


def test_free_group_orbits(f2, f2_ap):
    member = orbit_decide(f2, f2_ap, _tuple(f2, "a b|b"))
    assert member.in_orbit
    assert member.witness.render(f2_ap.names) == "[r12]"
    assert not orbit_decide(f2, f2_ap, _tuple(f2, "a^2|b")).in_orbit


def test_dinf_xstar_order(dinf, dinf_ap):
    entries = list(islice(enumerate_xstar(dinf, dinf_ap), len(DINF_XSTAR)))
    assert [entry.index for entry in entries] == list(range(len(DINF_XSTAR)))
    assert [entry.elements for entry in entries] == [_tuple(dinf, t) for t in DINF_XSTAR]


def test_xstar_resumes_at_a_cursor(dinf, dinf_ap):
    entry = next(enumerate_xstar(dinf, dinf_ap, start=10))
    assert entry.index == 10
    assert entry.elements == _tuple(dinf, "a b a|b a b")
    assert [display_term(t) for t in entry.terms] == ["x1 x2 x1", "x2 x1 x2"]


def test_xstar_agrees_with_orbit_decide(dinf, dinf_ap):
    for entry in enumerate_xstar(dinf, dinf_ap, budget=3):
        assert not orbit_decide(dinf, dinf_ap, entry.elements).in_orbit


def test_free_abelian_xstar_matches_determinant(z2, z2_ap):
    entries = list(enumerate_xstar(z2, z2_ap, budget=2))
    elements = [entry.elements for entry in entries]
    assert ((2, 0), (0, 1)) in elements
    assert ((1, 0), (0, 1)) not in elements
    assert not any(det_oracle(t) for t in elements)


def test_candidate_tuples_start_at_the_identity(z2):
    assert list(candidate_tuples(z2, 0)) == [((0, 0), (0, 0))]


def test_finite_structure_candidates_end(v4):
    assert len(list(candidate_tuples(v4))) == 16


def test_enumerate_automorphisms(dinf, dinf_ap):
    assert len(list(enumerate_automorphisms(dinf, dinf_ap, 0))) == 1
    first = list(enumerate_automorphisms(dinf, dinf_ap, 1))
    assert len(first) == 4
    assert first[0] == (dinf.generators, AutomorphismWord())


def test_finite_automorphism_group_is_exhausted(v4):
    ap = gp_aut_presentation(v4)
    assert len(ap.gens) == 5
    assert len(list(enumerate_automorphisms(v4, ap, 10))) == 6


def test_alphabet_skips_inverses_of_involutions(dinf_ap, z2_ap):
    assert alphabet(dinf_ap) == [(0, 1), (1, 1), (2, 1)]
    assert alphabet(z2_ap) == [(0, 1), (1, 1), (2, 1), (2, -1)]


def test_validate_automorphism_rejects_collapsing_maps(dinf):
    a, b = dinf.generators
    with pytest.raises(AutomorphismValidationError):
        validate_automorphism(dinf, AutomorphismSpec("fold", (a, a), (a, a)))


def test_inner_plus_finite(dinf, v4):
    ap = make_inner_plus_finite(dinf, [])
    assert ap.names == ("inn_a", "inn_b")
    assert [dinf.encode(x) for x in ap.gens[0].images] == ["a", "a b a"]
    assert ap.bound([1, 1]) == 3

    reps = [spec for spec in f_gamma(v4) if spec.name != "id"]
    finite = make_inner_plus_finite(v4, reps)
    assert finite.names == tuple(spec.name for spec in reps)


def _with_reps(*reps):
    return {
        "type": "graph_product",
        "vertices": [{"name": "a", "order": 2}, {"name": "b", "order": 2}],
        "coset_reps": [{"name": name, "images": images, "inverse_images": images} for name, images in reps],
    }


def test_config_coset_representatives_build_inner_plus_finite():
    data = _with_reps(("swap", ["b", "a"]))
    s = build_structure(data)
    ap = presentation_for(s, data)
    assert ap.names == ("inn_a", "inn_b", "swap")
    assert orbit_decide(s, ap, _tuple(s, "b|a")).witness.render(ap.names) == "[swap]"
    plain = dict(data)
    del plain["coset_reps"]
    assert presentation_for(s, plain).names == ("pc_a_b", "pc_b_a", "fg[b,a]")


@pytest.mark.parametrize(
    "images, error",
    [
        (["a", "z"], ConfigError),
        (["a"], ConfigError),
        (["a", "a"], AutomorphismValidationError),
    ],
)
def test_bad_coset_representatives(images, error):
    data = _with_reps(("bad", images))
    with pytest.raises(error):
        presentation_for(build_structure(data), data)


def test_inner_plus_finite_needs_a_group(plane):
    with pytest.raises(PreconditionError):
        make_inner_plus_finite(plane, [])
