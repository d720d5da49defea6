import pytest

from app.core.errors import UsageError
from app.models.graph_product_models import GPGraph
from app.services.selftest_service import (
    DINF, PATH, TRIANGLE, V4, SUITES, cayley_partition_agrees, run_suites, separation_depth,
)
from app.core.loader import build_structure, default_presentation

QUICK_SUITES = [
    "zn-det",
    "fn-nielsen",
    "gp-word-problem",
    "finite-k2",
    "dinf-orbit",
    "laurence-bound",
    "plane-census",
    "plane-orbit",
    "theta-dinf",
    "v4-separation",
]


@pytest.mark.parametrize("name", QUICK_SUITES)
def test_quick_suite_passes(name):
    [result] = run_suites([name], quick=True, seed=7)
    assert result.suite == name
    assert result.failures == []
    assert result.passed > 0
    assert result.ok


def test_unknown_suite():
    with pytest.raises(UsageError):
        run_suites(["no-such-suite"])


def test_every_suite_is_registered():
    assert set(QUICK_SUITES) == set(SUITES)


@pytest.mark.parametrize("config", [DINF, PATH, TRIANGLE])
def test_normal_forms_match_the_representation(config):
    s = build_structure(config)
    words, ok = cayley_partition_agrees(s.graph, 3)
    assert ok
    assert words > 1


def test_dinf_word_count():
    assert cayley_partition_agrees(build_structure(DINF).graph, 4) == (31, True)


def test_no_oracle_for_mixed_orders():
    g = GPGraph.build({"a": 2, "b": 3})
    with pytest.raises(UsageError):
        cayley_partition_agrees(g, 2)


def test_klein_four_separation_index():
    home = build_structure(DINF)
    target = build_structure(V4)
    first = separation_depth(home, default_presentation(home), target, 11)
    assert set(first.values()) == {10}
    assert len(first) == 6


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(SUITES))
def test_full_suite_passes(name):
    [result] = run_suites([name], quick=False)
    assert result.ok, result.failures


def test_laurence_suite_samples_every_graph_with_partial_conjugations():
    [result] = run_suites(["laurence-bound"], quick=True, seed=11)
    assert result.passed == 2 * 50
