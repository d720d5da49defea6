import pytest

from app.core.errors import BudgetExceededError, DegenerateImagesError, ParseError, UnknownSymbolError
from app.models.automorphism_models import AffineBound, AutPresentation
from app.services.free_plane_service import (
    Collineation, census, diagonal_points, enumerate_stage, extend_collineation, incident, join, meet,
    plane_aut_presentation, plane_collineations,
)
from app.services.orbit_service import enumerate_automorphisms


def test_lines_through_base_points_are_interned(plane):
    s = plane.store
    A1, A2, B1, B2 = s.base
    line = join(s, A1, A2)
    assert line.is_line
    assert line.text == "(A1 v A2)"
    assert line.stage == 1
    assert join(s, A2, A1) is line
    assert meet(s, line, join(s, A1, B1)) is A1


def test_lattice_degenerate_cases(plane):
    s = plane.store
    A1, A2, B1, _ = s.base
    line = join(s, A1, A2)
    assert join(s, A1, s.bottom) is A1
    assert join(s, A1, A1) is A1
    assert join(s, B1, line) is s.top
    assert join(s, A1, line) is line
    assert meet(s, A1, A2) is s.bottom
    assert meet(s, A1, line) is A1
    assert meet(s, line, s.top) is line
    assert join(s, line, join(s, A1, B1)) is s.top


def test_incidence(plane):
    s = plane.store
    A1, A2, B1, _ = s.base
    line = join(s, A1, A2)
    assert incident(s, A1, line)
    assert incident(s, line, A2)
    assert not incident(s, B1, line)
    assert not incident(s, A1, A2)
    p = meet(s, line, join(s, B1, s.base[3]))
    assert s.incident_with(line) == {A1, A2, p}
    assert incident(s, p, line)


def test_diagonal_points(plane):
    a1, a2 = diagonal_points(plane)
    assert a1.is_point and a2.is_point
    assert a1.stage == a2.stage == 2
    assert plane.encode(a1) == "((A1 v A2) ^ (B1 v B2))"
    assert plane.parse_element("(A1 v A2) ^ (B1 v B2)") is a1


def test_census(plane):
    assert census(plane, 3) == [
        {"stage": 0, "points": 4, "lines": 0},
        {"stage": 1, "points": 0, "lines": 6},
        {"stage": 2, "points": 3, "lines": 0},
        {"stage": 3, "points": 0, "lines": 3},
    ]


def test_stage_parity(plane):
    for x in enumerate_stage(plane.store, 4):
        if x.stage % 2:
            assert x.is_line
        else:
            assert x.is_point


def test_stage_budget(plane, monkeypatch):
    monkeypatch.setattr("app.services.free_plane_service.PLANE_MAX_STAGE", 2)
    with pytest.raises(BudgetExceededError):
        enumerate_stage(plane.store, 3)


def test_parser_precedence(plane):
    assert plane.encode(plane.parse_element("A1 v A2 ^ B1 v B2")) == "(A1 v B2)"
    assert plane.parse_element("0") is plane.store.bottom
    assert plane.parse_element(" 1 ") is plane.store.top


@pytest.mark.parametrize("text", ["A1 v", "(A1 v A2", "A3", "A1 A2", ")"])
def test_parser_errors(plane, text):
    with pytest.raises(ParseError):
        plane.parse_element(text)


def test_relations_and_constants(plane):
    A1, A2, _, _ = plane.generators
    line = plane.apply("join", [A1, A2])
    assert plane.relation("S1", [A1])
    assert plane.relation("S2", [line])
    assert plane.relation("I", [A1, line])
    assert plane.constant("zero") is plane.store.bottom
    with pytest.raises(UnknownSymbolError):
        plane.constant("two")
    with pytest.raises(UnknownSymbolError):
        plane.apply("cross", [A1, A2])


def test_collineation_extends_by_recursion(plane):
    s = plane.store
    A1, A2, B1, B2 = s.base
    theta1 = extend_collineation(s, (A2, A1, B1, B2))
    assert theta1(join(s, A1, A2)) is join(s, A1, A2)
    assert theta1(join(s, A1, B1)) is join(s, A2, B1)


def test_phi_is_an_involution(plane):
    phi = {spec.name: spec for spec in plane_collineations(plane)}["phi"]
    once = Collineation(plane.store, phi.images)
    for x in enumerate_stage(plane.store, 2):
        assert once(once(x)) is x


@pytest.mark.parametrize("pick", ["repeat", "collinear", "line"])
def test_degenerate_images(plane, pick):
    s = plane.store
    A1, A2, B1, B2 = s.base
    a1, _ = diagonal_points(plane)
    images = {
        "repeat": (A1, A1, B1, B2),
        "collinear": (A1, A2, B1, a1),
        "line": (A1, A2, B1, join(s, A1, B2)),
    }[pick]
    with pytest.raises(DegenerateImagesError):
        extend_collineation(s, images)


def test_presentation(plane):
    ap = plane_aut_presentation(plane)
    assert ap.names == ("theta1", "theta2", "phi")
    assert ap.bound([0, 0, 0, 0]) == 8
    assert ap.bound([1, 1, 1, 1]) == 16


def test_base_permutations_form_s4(plane):
    specs = plane_collineations(plane)[:2]
    ap = AutPresentation(gens=tuple(specs), bound=AffineBound.uniform(8, 2, 4))
    assert len(list(enumerate_automorphisms(plane, ap, 12))) == 24
