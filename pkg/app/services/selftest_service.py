# --------------------------
# File: app/services/selftest_service.py
# Description: Oracle-equivalence suites run by `selftest`
# --------------------------

import random
from itertools import combinations, product
from typing import Callable, Dict, List, Sequence, Tuple

from sympy import ImmutableMatrix, eye, zeros

from app.core.config import DEFAULT_JOBS, DEFAULT_SEED
from app.core.errors import UsageError
from app.core.loader import build_structure, default_presentation
from app.models.automorphism_models import AffineBound, AutomorphismWord, AutPresentation
from app.models.graph_product_models import GPGraph
from app.schemas.artifact_schemas import SuiteResult
from app.services.classical_group_service import det_oracle, free_abelian, free_group, nielsen_oracle
from app.services.free_plane_service import (
    Collineation, census, enumerate_stage, free_plane, incident, plane_aut_presentation, plane_collineations,
)
from app.services.graph_product_service import normal_form, partial_conjugations, spe_length
from app.services.orbit_service import OrbitBall, alphabet, evaluate_word, orbit_ball, orbit_decide
from app.services.scott_service import build_theta, check_bounded, eval_on_finite, refutes_with
from app.services.structure_service import enumerate_elements, satisfies_psi
from app.utils.logger import get_logger

logger = get_logger(__name__)

# --------------------------
# Standard structures
# --------------------------
DINF = {
    "type": "graph_product",
    "vertices": [{"name": "a", "order": 2}, {"name": "b", "order": 2}],
    "edges": [],
}
V4 = {
    "type": "graph_product",
    "vertices": [{"name": "a", "order": 2}, {"name": "b", "order": 2}],
    "edges": [["a", "b"]],
}
PATH = {
    "type": "graph_product",
    "vertices": [{"name": "a", "order": 2}, {"name": "b", "order": 2}, {"name": "c", "order": 2}],
    "edges": [["a", "b"], ["b", "c"]],
}
TRIANGLE = {
    "type": "graph_product",
    "vertices": [{"name": "a", "order": 2}, {"name": "b", "order": 3}, {"name": "c", "order": 2}],
    "edges": [["a", "b"], ["a", "c"], ["b", "c"]],
}

MAX_REPORTED_FAILURES = 10


class _Tally:
    def __init__(self, suite: str):
        self.suite = suite
        self.passed = 0
        self.failures: List[str] = []

    def check(self, ok: bool, detail) -> None:
        if ok:
            self.passed += 1
        else:
            self.failures.append(str(detail))

    def result(self) -> SuiteResult:
        outcome = SuiteResult(
            suite=self.suite,
            passed=self.passed,
            failed=len(self.failures),
            failures=self.failures[:MAX_REPORTED_FAILURES],
        )
        logger.info(f"Suite {self.suite}: {outcome.passed} passed, {outcome.failed} failed")
        return outcome


# --------------------------
# Independent word-problem oracle
# --------------------------
def _tits_matrix(g: GPGraph, v: str) -> ImmutableMatrix:
    """σ_v(x) = x − 2B(e_v, x)e_v with B = 1 on the diagonal, 0 on edges, −1 off edges."""
    n = len(g.vertices)
    i = g.index(v)
    row = zeros(1, n)
    for j, u in enumerate(g.vertices):
        row[0, j] = 1 if u == v else (0 if g.adjacent(u, v) else -1)
    column = zeros(n, 1)
    column[i, 0] = 1
    return ImmutableMatrix(eye(n) - 2 * column * row)


def _representation(g: GPGraph) -> Tuple[object, Callable]:
    """
    A faithful image of the graph product: the Tits representation for right-angled
    Coxeter graphs, exponent vectors for complete graphs.
    """
    if all(p == 2 for p in g.orders):
        mats = {v: _tits_matrix(g, v) for v in g.vertices}
        return ImmutableMatrix(eye(len(g.vertices))), lambda x, v, k: x * mats[v] if k % 2 else x
    if g.is_complete():
        def step(x, v, k):
            i = g.index(v)
            return x[:i] + ((x[i] + k) % g.orders[i],) + x[i + 1:]
        return (0,) * len(g.vertices), step
    raise UsageError("No independent oracle for this graph product")


def _word_letters(g: GPGraph) -> List[Tuple[str, int]]:
    letters = []
    for v, p in zip(g.vertices, g.orders):
        letters.append((v, 1))
        if p > 2:
            letters.append((v, -1))
    return letters


def cayley_partition_agrees(g: GPGraph, max_len: int) -> Tuple[int, bool]:
    """
    Words of length <= max_len grown breadth-first; the equality relation given by
    normal forms must coincide with the one given by the faithful representation.
    """
    start, step = _representation(g)
    letters = _word_letters(g)
    frontier = [((), start)]
    pairs = {((), start)}
    words = 1
    for _ in range(max_len):
        following = []
        for word, image in frontier:
            for v, k in letters:
                grown = word + ((v, k),)
                following.append((grown, step(image, v, k)))
        frontier = following
        words += len(frontier)
        for word, image in frontier:
            pairs.add((normal_form(g, word), image))
    forms = {form for form, _ in pairs}
    images = {image for _, image in pairs}
    return words, len(pairs) == len(forms) == len(images)


# --------------------------
# Suites
# --------------------------
def suite_zn_det(quick: bool, seed: int, jobs: int) -> SuiteResult:
    tally = _Tally("zn-det")
    s = free_abelian(2)
    ap = default_presentation(s)
    r = 2 if quick else 3
    vectors = list(product(range(-r, r + 1), repeat=2))
    for b in product(vectors, repeat=2):
        if not satisfies_psi(s, b):
            continue
        verdict = orbit_decide(s, ap, b, jobs=jobs)
        tally.check(verdict.in_orbit == det_oracle(b), b)
    return tally.result()


def suite_fn_nielsen(quick: bool, seed: int, jobs: int) -> SuiteResult:
    tally = _Tally("fn-nielsen")
    s = free_group(2)
    ap = default_presentation(s)
    total = 4 if quick else 6
    elements = enumerate_elements(s, total)
    for u, v in product(elements, repeat=2):
        if len(u) + len(v) > total or u == v:
            continue
        verdict = orbit_decide(s, ap, (u, v), jobs=jobs)
        tally.check(verdict.in_orbit == nielsen_oracle(s, (u, v)), (s.encode(u), s.encode(v)))
    return tally.result()


def suite_gp_word_problem(quick: bool, seed: int, jobs: int) -> SuiteResult:
    tally = _Tally("gp-word-problem")
    max_len = 4 if quick else 6
    for config in (DINF, PATH, TRIANGLE):
        s = build_structure(config)
        words, ok = cayley_partition_agrees(s.graph, max_len)
        tally.check(ok, f"{s.config_hash}: {words} words")
    return tally.result()


def suite_finite_k2(quick: bool, seed: int, jobs: int) -> SuiteResult:
    tally = _Tally("finite-k2")
    s = build_structure(V4)
    elements = s.all_elements()
    tally.check(len(elements) == 4, f"{len(elements)} elements")

    def vector(x):
        counts = {v: 0 for v in s.graph.vertices}
        for v, k in x:
            counts[v] += k
        return tuple(counts[v] % 2 for v in s.graph.vertices)

    for x, y in product(elements, repeat=2):
        expected = tuple((a + b) % 2 for a, b in zip(vector(x), vector(y)))
        tally.check(vector(s.multiply(x, y)) == expected, (s.encode(x), s.encode(y)))
    return tally.result()


def suite_dinf_orbit(quick: bool, seed: int, jobs: int) -> SuiteResult:
    tally = _Tally("dinf-orbit")
    s = build_structure(DINF)
    ap = default_presentation(s)
    letters = alphabet(ap)
    for length in range(4):
        for word in product(letters, repeat=length):
            images = evaluate_word(s, ap, AutomorphismWord(word))
            verdict = orbit_decide(s, ap, images, jobs=jobs)
            tally.check(verdict.in_orbit, AutomorphismWord(word).render(ap.names))
    for text in ("a b a, b a b", "a, b a b"):
        b = tuple(s.parse_element(x.strip()) for x in text.split(","))
        tally.check(not orbit_decide(s, ap, b, jobs=jobs).in_orbit, text)
    return tally.result()


def suite_laurence(quick: bool, seed: int, jobs: int) -> SuiteResult:
    tally = _Tally("laurence-bound")
    rng = random.Random(seed)
    samples = 50 if quick else 200
    for config in (DINF, PATH, TRIANGLE):
        s = build_structure(config)
        ap = default_presentation(s)
        pc_count = len(partial_conjugations(s))
        if not pc_count:
            continue
        ball = orbit_ball(s, ap)
        for _ in range(samples):
            letters = tuple((rng.randrange(pc_count), 1) for _ in range(rng.randint(1, 4)))
            images = evaluate_word(s, ap, AutomorphismWord(letters))
            size = spe_length(s, images)
            ball.extend_to(size, stop_at=images, jobs=jobs)
            found = ball.lookup(images)
            tally.check(found is not None and len(found) <= size, AutomorphismWord(letters).render(ap.names))
    return tally.result()


def suite_plane_census(quick: bool, seed: int, jobs: int) -> SuiteResult:
    tally = _Tally("plane-census")
    plane = free_plane()
    store = plane.store
    expected = [(4, 0), (0, 6), (3, 0), (0, 3)]
    rows = census(plane, 3)
    tally.check([(r["points"], r["lines"]) for r in rows] == expected, rows)

    elements = enumerate_stage(store, 4)
    points = [x for x in elements if x.is_point]
    lines = [x for x in elements if x.is_line]
    for p, q in combinations(points, 2):
        tally.check(sum(1 for l in lines if incident(store, p, l) and incident(store, q, l)) <= 1, (p, q))
    for l, m in combinations(lines, 2):
        tally.check(sum(1 for p in points if incident(store, p, l) and incident(store, p, m)) <= 1, (l, m))
    for x in elements:
        tally.check(x.stage == 0 or (x.stage % 2 == 1) == x.is_line, x)

    theta1, theta2, phi = plane_collineations(plane)
    twice = Collineation(store, phi.images)
    for x in enumerate_stage(store, 3):
        tally.check(twice(twice(x)) is x, x)

    symmetric = AutPresentation(gens=(theta1, theta2), bound=AffineBound.uniform(8, 2, 4))
    ball = OrbitBall(plane, symmetric)
    ball.extend_to(24, jobs=jobs)
    tally.check(len(ball.seen) == 24, f"{len(ball.seen)} base images")
    return tally.result()


def suite_plane_orbit(quick: bool, seed: int, jobs: int) -> SuiteResult:
    tally = _Tally("plane-orbit")
    plane = free_plane()
    ap = plane_aut_presentation(plane)
    letters = alphabet(ap)
    for length in range(3 if quick else 4):
        for word in product(letters, repeat=length):
            images = evaluate_word(plane, ap, AutomorphismWord(word))
            verdict = orbit_decide(plane, ap, images, jobs=jobs)
            tally.check(verdict.in_orbit, AutomorphismWord(word).render(ap.names))
    return tally.result()


def suite_theta_dinf(quick: bool, seed: int, jobs: int) -> SuiteResult:
    tally = _Tally("theta-dinf")
    s = build_structure(DINF)
    ap = default_presentation(s)
    count, depth = (30, 4) if quick else (100, 6)
    theta = build_theta(s, ap, count, jobs=jobs)
    home = tuple(s.generators)
    for text in ("a, b", "a, a b a"):
        b = tuple(s.parse_element(x.strip()) for x in text.split(","))
        verdict = check_bounded(theta.formula, s, depth, b)
        tally.check(not verdict.refuted, text)
    for conjunct in theta.conjuncts:
        tally.check(refutes_with(s, conjunct, conjunct.elements, home), conjunct.index)
    return tally.result()


def separation_depth(home, ap: AutPresentation, target, limit: int, jobs: int = DEFAULT_JOBS) -> Dict[tuple, int]:
    """For each ψ-satisfying generating pair of the target, the index of the first refuting conjunct."""
    theta = build_theta(home, ap, limit, jobs=jobs)
    elements = target.all_elements()
    generating = [
        b for b in product(elements, repeat=len(home.generators))
        if satisfies_psi(target, b) and _generates(target, b)
    ]
    first = {}
    for b in generating:
        for conjunct in theta.conjuncts:
            if not eval_on_finite(conjunct.formula, target, b):
                first[b] = conjunct.index
                break
        else:
            first[b] = -1
    return first


def _generates(target, b: Sequence) -> bool:
    reached = {target.identity()}
    frontier = list(reached)
    while frontier:
        following = []
        for x in frontier:
            for g in b:
                y = target.multiply(x, g)
                if y not in reached:
                    reached.add(y)
                    following.append(y)
        frontier = following
    return len(reached) == len(target.all_elements())


def suite_v4_separation(quick: bool, seed: int, jobs: int) -> SuiteResult:
    tally = _Tally("v4-separation")
    home = build_structure(DINF)
    ap = default_presentation(home)
    target = build_structure(V4)
    first = separation_depth(home, ap, target, 16 if quick else 100, jobs=jobs)
    tally.check(bool(first), "generating pairs of V4")
    if not first:
        return tally.result()
    k = max(first.values()) + 1
    for b, index in first.items():
        tally.check(index >= 0, target.encode(b[0]) + ", " + target.encode(b[1]))
    theta = build_theta(home, ap, k, jobs=jobs)
    for b in first:
        tally.check(not eval_on_finite(theta.formula, target, b), b)
    logger.info(f"V4 separation needs {k} conjuncts")
    return tally.result()


SUITES: Dict[str, Callable[[bool, int, int], SuiteResult]] = {
    "zn-det": suite_zn_det,
    "fn-nielsen": suite_fn_nielsen,
    "gp-word-problem": suite_gp_word_problem,
    "finite-k2": suite_finite_k2,
    "dinf-orbit": suite_dinf_orbit,
    "laurence-bound": suite_laurence,
    "plane-census": suite_plane_census,
    "plane-orbit": suite_plane_orbit,
    "theta-dinf": suite_theta_dinf,
    "v4-separation": suite_v4_separation,
}


def run_suites(names: Sequence[str] = (), quick: bool = False, seed: int = DEFAULT_SEED, jobs: int = DEFAULT_JOBS) -> List[SuiteResult]:
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise UsageError(f"Unknown suite(s) {unknown}; choose from {sorted(SUITES)}")
    return [SUITES[name](quick, seed, jobs) for name in (names or SUITES)]
