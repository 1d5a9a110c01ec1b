"""Grid geometry and symmetry group."""

import pytest
from hypothesis import given, strategies as st

from gridexplore.grid import (
    Automorphism,
    BoundsError,
    InvalidDimension,
    automorphisms,
    borderlines,
    corners,
    degree,
    dist,
    identity,
    longest_borderlines,
    make_grid,
    neighbors,
    parse_grid,
)

dims = st.tuples(st.integers(1, 5), st.integers(1, 5)).map(
    lambda t: (min(t), max(t))
)


def bfs_dist(grid, u, v):
    frontier, d, seen = [u], 0, {u}
    while frontier:
        if v in frontier:
            return d
        nxt = []
        for w in frontier:
            for n in neighbors(grid, w):
                if n not in seen:
                    seen.add(n)
                    nxt.append(n)
        frontier, d = nxt, d + 1
    raise AssertionError("grid is connected")


def test_make_grid_orders_sides():
    g = make_grid(5, 2)
    assert (g.i, g.j) == (2, 5)
    with pytest.raises(InvalidDimension):
        make_grid(0, 3)


def test_parse_grid():
    assert parse_grid("2x3") == make_grid(2, 3)
    with pytest.raises(InvalidDimension):
        parse_grid("2x")


@given(dims)
def test_group_order(d):
    i, j = d
    g = make_grid(i, j)
    n = len(automorphisms(g))
    if i == j == 1:
        assert n == 1
    elif i == j:
        assert n == 8
    elif i == 1:
        assert n == 2
    else:
        assert n == 4


@given(dims)
def test_automorphisms_are_bijections_preserving_adjacency(d):
    g = make_grid(*d)
    nodes = g.nodes()
    for f in automorphisms(g):
        image = {f.apply(v) for v in nodes}
        assert image == set(nodes)
        for v in nodes:
            assert sorted(f.apply(w) for w in neighbors(g, v)) == sorted(
                neighbors(g, f.apply(v))
            )


@given(dims)
def test_inverse_and_compose(d):
    g = make_grid(*d)
    for f in automorphisms(g):
        inv = f.inverse()
        for v in g.nodes():
            assert inv.apply(f.apply(v)) == v
    f, h = automorphisms(g)[0], automorphisms(g)[-1]
    fh = f.compose(h)
    for v in g.nodes():
        assert fh.apply(v) == f.apply(h.apply(v))


@given(dims, st.data())
def test_dist_matches_bfs(d, data):
    g = make_grid(*d)
    nodes = g.nodes()
    u = data.draw(st.sampled_from(nodes))
    v = data.draw(st.sampled_from(nodes))
    assert dist(g, u, v) == bfs_dist(g, u, v)


def test_degree_and_corners():
    g = make_grid(3, 3)
    assert corners(g) == frozenset({(0, 0), (2, 0), (0, 2), (2, 2)})
    assert degree(g, (1, 1)) == 4
    assert degree(g, (1, 0)) == 3
    assert degree(g, (0, 0)) == 2
    with pytest.raises(BoundsError):
        neighbors(g, (3, 3))


@given(dims)
def test_borderlines_cover_boundary(d):
    g = make_grid(*d)
    if g.n == 1:
        return
    covered = {v for line in borderlines(g) for v in line}
    boundary = {
        (x, y)
        for x, y in g.nodes()
        if x in (0, g.j - 1) or y in (0, g.i - 1)
    }
    assert covered == boundary
    top = longest_borderlines(g)
    assert all(len(b) == g.j for b in top)
