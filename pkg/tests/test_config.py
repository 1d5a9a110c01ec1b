"""Configurations, observation modes, views, canonical forms."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from gridexplore.config import (
    Configuration,
    OrbitViolation,
    canonical_form,
    decision_orbit,
    format_config,
    indistinguishable,
    observe,
    parse_config,
    view_of,
)
from gridexplore.grid import automorphisms, make_grid, neighbors


def _rand(g, rng, k):
    placement = [rng.choice(g.nodes()) for _ in range(k)]
    counts = {}
    for v in placement:
        counts[v] = counts.get(v, 0) + 1
    return Configuration.of(g, counts)


def test_weak_is_threshold_of_strong_bulk():
    rng = random.Random(20260826)
    for _ in range(10_000):
        c = _rand(make_grid(rng.randint(1, 4), rng.randint(1, 4)), rng, rng.randint(1, 6))
        strong = observe(c, "strong")
        weak = observe(c, "weak")
        assert weak == {v: min(n, 2) for v, n in strong.items()}


@given(st.data())
@settings(max_examples=300)
def test_canonical_form_idempotent_and_invariant(data):
    g = make_grid(data.draw(st.integers(1, 4)), data.draw(st.integers(1, 4)))
    k = data.draw(st.integers(1, 5))
    placement = data.draw(st.lists(st.sampled_from(g.nodes()), min_size=k, max_size=k))
    counts = {}
    for v in placement:
        counts[v] = counts.get(v, 0) + 1
    c = Configuration.of(g, counts)
    rep = canonical_form(c).representative
    assert canonical_form(rep).representative == rep
    for f in automorphisms(g):
        assert canonical_form(c.apply(f)).representative == rep
        assert indistinguishable(c, c.apply(f))
    w = canonical_form(c).witness
    assert c.apply(w) == rep


@given(st.data())
@settings(max_examples=300)
def test_view_key_invariant_under_group(data):
    g = make_grid(data.draw(st.integers(1, 4)), data.draw(st.integers(1, 4)))
    k = data.draw(st.integers(1, 4))
    placement = data.draw(st.lists(st.sampled_from(g.nodes()), min_size=k, max_size=k))
    counts = {}
    for v in placement:
        counts[v] = counts.get(v, 0) + 1
    c = Configuration.of(g, counts)
    at = placement[0]
    mode = data.draw(st.sampled_from(["weak", "strong"]))
    v = view_of(c, at, mode)
    for f in automorphisms(g):
        assert view_of(c.apply(f), f.apply(at), mode).key() == v.key()


def test_view_stabilizer_fixes_view():
    g = make_grid(3, 3)
    c = Configuration.of(g, [(0, 0), (2, 2), (1, 1)])
    v = view_of(c, (1, 1), "weak")
    for f in v.stabilizer():
        assert v.apply(f)._raw_key() == v._raw_key()


def test_decision_orbit_accepts_closed_sets():
    g = make_grid(3, 3)
    c = Configuration.of(g, [(1, 1)])
    v = view_of(c, (1, 1), "weak")
    full = frozenset(neighbors(g, (1, 1)))
    assert decision_orbit(v, full) == full
    assert decision_orbit(v, frozenset()) == frozenset()


def test_decision_orbit_rejects_asymmetric_choice():
    g = make_grid(3, 3)
    c = Configuration.of(g, [(1, 1)])
    v = view_of(c, (1, 1), "weak")
    with pytest.raises(OrbitViolation):
        decision_orbit(v, frozenset({(1, 0)}))


def test_decision_orbit_rejects_non_adjacent():
    g = make_grid(3, 3)
    c = Configuration.of(g, [(0, 0), (2, 2)])
    v = view_of(c, (0, 0), "weak")
    with pytest.raises(OrbitViolation):
        decision_orbit(v, frozenset({(2, 2)}))


def test_parse_format_roundtrip():
    g = make_grid(2, 3)
    c = parse_config(g, "0,0;1,0:2")
    assert c.count_at((1, 0)) == 2
    assert parse_config(g, format_config(c)) == c


def test_multiplicity_predicates():
    g = make_grid(2, 3)
    c = parse_config(g, "0,0;1,0:2")
    assert c.singles() == frozenset({(0, 0)})
    assert c.towers() == frozenset({(1, 0)})
    assert not c.is_towerless()
    assert c.k == 3
