import pytest

from app.core.errors import BudgetExceededError, ConfigError, ParseError, UnknownSymbolError
from app.core.loader import build_structure
from app.models.graph_product_models import GPGraph
from app.services.graph_product_service import (
    GraphProductGroup, f_gamma, geodesic_length, gp_aut_presentation, normal_form, partial_conjugation_pairs,
    partial_conjugations, spe_length,
)


@pytest.mark.parametrize(
    "word, expected",
    [
        ("a a", "e"),
        ("a b b a", "e"),
        ("a^3", "a"),
        ("b a b a b", "b a b a b"),
        ("e", "e"),
    ],
)
def test_dinf_normal_forms(dinf, word, expected):
    assert dinf.encode(dinf.parse_element(word)) == expected


def test_commuting_letters_sort_to_the_least_shuffle(triangle, path_graph):
    assert triangle.encode(triangle.parse_element("c b a")) == "a b c"
    assert path_graph.encode(path_graph.parse_element("a c a b")) == "a b c a"
    assert path_graph.encode(path_graph.parse_element("b a b")) == "a"


def test_exponents_reduce_modulo_the_order(triangle):
    b2 = triangle.parse_element("b b")
    assert triangle.encode(b2) == "b^2"
    assert triangle.element_length(b2) == 1
    assert triangle.inverse(triangle.parse_element("b")) == b2
    assert triangle.encode(triangle.parse_element("b^-1")) == "b^2"
    assert geodesic_length(triangle.graph, b2) == 1


def test_multiplication_and_inverse_agree(path_graph):
    x = path_graph.parse_element("a c b")
    assert path_graph.multiply(x, path_graph.inverse(x)) == path_graph.identity()


def test_presentation_relators(path_graph, triangle):
    assert len(path_graph.presentation.relators) == 5
    assert len(triangle.presentation.relators) == 6


def test_parse_errors(dinf):
    with pytest.raises(UnknownSymbolError):
        dinf.parse_element("a z")
    with pytest.raises(ParseError):
        dinf.parse_element("a^")


def test_graph_validation():
    with pytest.raises(ValueError):
        GPGraph(vertices=("a", "b"), orders=(2,))
    with pytest.raises(ValueError):
        GPGraph.build({"a": 2}, [("a", "z")])
    with pytest.raises(UnknownSymbolError):
        GPGraph.build({"a": 2}).index("b")


def test_partial_conjugation_pairs(dinf, path_graph, triangle):
    assert [pc.name for pc in partial_conjugation_pairs(dinf.graph)] == ["pc_a_b", "pc_b_a"]
    assert [pc.name for pc in partial_conjugation_pairs(path_graph.graph)] == ["pc_a_c", "pc_c_a"]
    assert partial_conjugation_pairs(triangle.graph) == []


def test_partial_conjugation_unions_of_components():
    star = GraphProductGroup(GPGraph.build({"s": 2, "t": 2, "u": 2}))
    names = [pc.name for pc in partial_conjugation_pairs(star.graph) if pc.acting == "s"]
    assert names == ["pc_s_t", "pc_s_u", "pc_s_t+u"]


def test_partial_conjugation_images(dinf):
    specs = {spec.name: spec for spec in partial_conjugations(dinf)}
    assert [dinf.encode(x) for x in specs["pc_a_b"].images] == ["a", "a b a"]
    assert specs["pc_a_b"].inverse_images == specs["pc_a_b"].images


def test_partial_conjugation_by_higher_order_vertex():
    g = GraphProductGroup(GPGraph.build({"s": 3, "t": 2}))
    spec = {x.name: x for x in partial_conjugations(g)}["pc_s_t"]
    assert [g.encode(x) for x in spec.images] == ["s", "s t s^2"]
    assert [g.encode(x) for x in spec.inverse_images] == ["s", "s^2 t s"]


def test_f_gamma_sizes(dinf, path_graph, v4):
    assert [spec.name for spec in f_gamma(dinf)] == ["id", "fg[b,a]"]
    assert len(f_gamma(path_graph)) == 8
    assert len(f_gamma(v4)) == 6


def test_f_gamma_budget(dinf, monkeypatch):
    monkeypatch.setattr("app.services.graph_product_service.F_GAMMA_MAX_ASSIGNMENTS", 5)
    with pytest.raises(BudgetExceededError):
        f_gamma(dinf)


def test_dinf_presentation(dinf_ap):
    assert dinf_ap.names == ("pc_a_b", "pc_b_a", "fg[b,a]")
    assert dinf_ap.bound([1, 3]) == 5
    assert not dinf_ap.length_monotone


def test_presentation_without_automorphisms_keeps_a_letter():
    cyclic = GraphProductGroup(GPGraph.build({"a": 2}))
    ap = gp_aut_presentation(cyclic)
    assert ap.names == ("id",)


def test_spe_length(dinf):
    images = (dinf.parse_element("a"), dinf.parse_element("a b a"))
    assert spe_length(dinf, images) == 1
    assert spe_length(dinf, dinf.generators) == 0


def test_config_validation():
    with pytest.raises(ConfigError):
        build_structure({"type": "graph_product", "vertices": [{"name": "a", "order": 6}], "edges": []})
    with pytest.raises(ConfigError):
        build_structure({"type": "graph_product", "vertices": [{"name": "e", "order": 2}], "edges": []})
    with pytest.raises(ConfigError):
        build_structure({
            "type": "graph_product",
            "vertices": [{"name": "a", "order": 3}],
            "edges": [],
            "coxeter": True,
        })


def test_config_hash_is_stable(dinf):
    again = build_structure({
        "type": "graph_product",
        "edges": [],
        "vertices": [{"order": 2, "name": "a"}, {"order": 2, "name": "b"}],
    })
    assert again.config_hash == dinf.config_hash
    assert len(dinf.config_hash) == 16


def test_normal_form_is_idempotent(path_graph):
    word = [("c", 1), ("a", 1), ("b", 1), ("a", 1), ("c", 1)]
    once = normal_form(path_graph.graph, word)
    assert normal_form(path_graph.graph, list(once)) == once
