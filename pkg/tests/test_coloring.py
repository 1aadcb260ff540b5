import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import is_star_bruteforce
from starprod.coloring import (Coloring, canonical_form, coloring_from_json, coloring_to_json, compact,
                               permute_colors, verify, verify_star_forest)
from starprod.errors import LengthMismatch, NotProper, ParseError
from starprod.graph import Graph, cycle, path, tensor_product


@st.composite
def colored_graphs(draw, max_n=8, max_k=4):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    cols = draw(st.lists(st.integers(1, max_k), min_size=n, max_size=n))
    return Graph(n, tuple(edges)), Coloring(tuple(cols))


def test_p4_alternating_is_caught():
    rep = verify(path(4), [1, 2, 1, 2])
    assert rep.is_proper and not rep.is_star
    assert rep.star_violation == (0, 1, 2, 3)


def test_monochromatic_edge():
    rep = verify(path(3), [1, 1, 2])
    assert rep.proper_violation == (0, 1) and not rep.is_star


def test_c5_needs_four_colors():
    assert not verify(cycle(5), [1, 2, 3, 1, 2]).is_star
    assert verify(cycle(5), [1, 2, 3, 1, 4]).is_star


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        verify(path(3), [1, 2])


def test_zero_color_rejected():
    with pytest.raises(ValueError):
        Coloring((0, 1))


@given(colored_graphs())
def test_verify_agrees_with_bruteforce(gc):
    g, c = gc
    rep = verify(g, c)
    assert rep.is_star == is_star_bruteforce(g.n, g.edges, c.colors)
    if rep.star_violation:
        a, b, x, d = rep.star_violation
        assert len({a, b, x, d}) == 4
        assert all(g.has_edge(*e) for e in ((a, b), (b, x), (x, d)))
        assert c[a] == c[x] and c[b] == c[d]


@given(colored_graphs())
def test_star_forest_characterization(gc):
    g, c = gc
    rep = verify(g, c)
    if not rep.is_proper:
        with pytest.raises(NotProper):
            verify_star_forest(g, c)
    else:
        assert verify_star_forest(g, c) == rep.is_star


def test_verify_is_deterministic():
    g = tensor_product(cycle(5), cycle(5))
    c = Coloring(tuple((i % 3) + 1 for i in range(25)))
    assert verify(g, c) == verify(g, c)


@given(st.lists(st.integers(1, 6), min_size=1, max_size=12), st.permutations(range(1, 7)))
def test_canonical_form_is_permutation_invariant(cols, perm):
    c = Coloring(tuple(cols))
    p = permute_colors(c, dict(zip(range(1, 7), perm)))
    assert canonical_form(c) == canonical_form(p)
    assert canonical_form(canonical_form(c)) == canonical_form(c)
    assert canonical_form(c).k == c.k


@given(colored_graphs())
def test_relabelling_preserves_star(gc):
    g, c = gc
    assert verify(g, canonical_form(c)).is_star == verify(g, c).is_star
    assert compact(c).max_color == c.k


@given(st.lists(st.integers(1, 9), max_size=20))
def test_json_round_trip(cols):
    c = Coloring(tuple(cols))
    assert coloring_from_json(coloring_to_json(c)) == c


@pytest.mark.parametrize("text", ["[1,2]", "{\"colors\": [1, 0]}", "{\"colors\": [1, 2], \"k\": 3}", "nope"])
def test_bad_coloring_json(text):
    with pytest.raises(ParseError):
        coloring_from_json(text)
