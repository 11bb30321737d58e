import random

import pytest

from relend.coset_graph import BallCache
from relend.errors import NoStabilizationError, SearchSpaceTooLargeError
from relend.groups import FreeGroup, ZdGroup, coset_of
from relend.obstruction import (
    AlmostInvariantSet,
    bounded_coboundary_search,
    boundary_cocycle,
    builtin_set,
    direct_boundary,
    generator_boundaries,
    planted_finite_set,
    rho_forcing_check,
    sign_alphabet,
    sign_cocycle,
    sign_cocycle_spec,
    verify_sign_identity,
    word_boundary,
)
from relend.patterns import make_pattern, random_pattern


@pytest.fixture(scope="module")
def line():
    group = ZdGroup(1, ())
    return group, BallCache(group), builtin_set(group, "halfline")


@pytest.fixture(scope="module")
def tree():
    group = FreeGroup(2)
    return group, BallCache(group), builtin_set(group, "aprefix")


def names(group, cells):
    return sorted(group.word_str(c.rep) or "e" for c in cells)


def test_line_boundary_singletons(line):
    group, cache, region = line
    b = generator_boundaries(cache, region, 8)
    assert names(group, b[1]) == ["e"]
    assert names(group, b[-1]) == ["A"]


def test_boundary_requires_stability():
    group = FreeGroup(2)
    cache = BallCache(group)
    # words whose first letter is the generator a: differences keep growing
    prefix = AlmostInvariantSet(
        "prefix", lambda c: bool(c.rep.payload) and c.rep.payload[0] == 1
    )
    with pytest.raises(NoStabilizationError):
        boundary_cocycle(cache, prefix, 2, 5)


def test_generator_with_invariant_set(line):
    group, cache, region = line
    # a K generator cannot appear in zd(1) trivial K, so plant an invariant set
    whole = AlmostInvariantSet("all", lambda c: True)
    assert boundary_cocycle(cache, whole, 1, 6) == frozenset()


def test_tree_boundaries(tree):
    group, cache, region = tree
    b = generator_boundaries(cache, region, 6)
    assert names(group, b[1]) == ["a"]
    assert names(group, b[-1]) == ["e"]
    assert b[2] == b[-2] == frozenset()


def test_word_boundary_matches_direct(line):
    group, cache, region = line
    b = generator_boundaries(cache, region, 10)
    rng = random.Random(0)
    for _ in range(60):
        w = [rng.choice(group.s_letters) for _ in range(rng.randrange(0, 5))]
        g = group.element_from_word(w)
        assert word_boundary(group, b, w) == direct_boundary(cache, region, g, 10)


def test_word_boundary_matches_direct_tree(tree):
    group, cache, region = tree
    b = generator_boundaries(cache, region, 7)
    rng = random.Random(1)
    for _ in range(40):
        w = [rng.choice(group.s_letters) for _ in range(rng.randrange(0, 4))]
        g = group.element_from_word(w)
        assert word_boundary(group, b, w) == direct_boundary(cache, region, g, 7)


def test_sign_values(line):
    group, cache, region = line
    b = generator_boundaries(cache, region, 8)
    alpha = sign_alphabet()
    plus = make_pattern(alpha, {})
    for letter in group.s_letters:
        assert sign_cocycle(group, b, group.letter_element(letter), plus) == 1
    y = make_pattern(alpha, {coset_of(group.element_from_word([-1])): "-1"})
    assert sign_cocycle(group, b, group.letter_element(1), y) == -1
    assert sign_cocycle(group, b, group.identity(), y) == 1


def test_sign_identity_many_triples(line):
    group, cache, region = line
    check = verify_sign_identity(cache, region, 500, random.Random(2), radius=10)
    assert check.violations == 0 and check.trials == 500


def test_sign_identity_tree(tree):
    group, cache, region = tree
    check = verify_sign_identity(
        cache, region, 150, random.Random(3), radius=6, max_word=3
    )
    assert check.violations == 0


def test_parity_oracle_per_candidate(line):
    # any finite candidate has an even difference with its shift, but the
    # half-line boundary is a singleton, so no candidate can ever match
    group, cache, region = line
    graph = cache.at_least(13)
    rng = random.Random(4)
    shift = group.letter_element(1)
    for _ in range(200):
        cells = rng.sample(list(graph.norms), rng.randrange(0, 10))
        candidate = frozenset(cells)
        shifted = frozenset(coset_of(group.multiply(shift, c.rep)) for c in candidate)
        assert len(candidate ^ shifted) % 2 == 0


def test_search_none_found_on_line(line):
    group, cache, region = line
    out = bounded_coboundary_search(cache, region, 12, cap=32)
    assert not out.found


def test_search_cap_guard(line):
    group, cache, region = line
    with pytest.raises(SearchSpaceTooLargeError):
        bounded_coboundary_search(cache, region, 12, cap=22)


def test_search_finds_planted_control(line):
    group, cache, region = line
    cache.at_least(13)
    planted = frozenset(
        coset_of(group.element_from_word([1] * k)) for k in (0, 1, 3)
    )
    control = planted_finite_set(planted)
    out = bounded_coboundary_search(cache, control, 12, cap=32)
    assert out.found and out.witness == planted


def test_search_none_found_on_tree(tree):
    group, cache, region = tree
    out = bounded_coboundary_search(cache, region, 4, cap=200)
    assert not out.found


def test_search_finds_planted_control_tree(tree):
    group, cache, region = tree
    cache.at_least(5)
    planted = frozenset(
        coset_of(group.parse_element(w)) for w in ("", "a", "b A")
    )
    out = bounded_coboundary_search(cache, planted_finite_set(planted), 4, cap=200)
    assert out.found and out.witness == planted


def test_rho_forcing_reports(line):
    group, cache, region = line
    report = rho_forcing_check(cache, region, 12, seed=5, identity_trials=50, cap=32)
    assert report.ok
    assert report.verdict() == "non-coboundary up to radius 12"
    planted = planted_finite_set(frozenset({coset_of(group.identity())}))
    control = rho_forcing_check(cache, planted, 8, seed=5, identity_trials=20, cap=32)
    assert control.verdict() == "trivial (witness B found)"


def test_sign_cocycle_spec_is_a_cocycle(line):
    group, cache, region = line
    spec = sign_cocycle_spec(cache, region, 8)
    from relend.cocycles import verify_relations

    graph = cache.at_least(8)
    assert verify_relations(spec, graph, samples=10, rng=random.Random(6)).ok
    # spec evaluation matches the direct sign computation
    from relend.cocycles import evaluate

    b = generator_boundaries(cache, region, 8)
    rng = random.Random(7)
    for _ in range(50):
        y = random_pattern(graph, sign_alphabet(), 3, rng)
        w = [rng.choice(group.s_letters) for _ in range(rng.randrange(0, 4))]
        g = group.element_from_word(w)
        expected = sign_cocycle(group, b, g, y)
        got = evaluate(spec, g, y, graph)
        assert (expected == 1) == got.is_identity()
