from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from sweeps import multistars
from fixgame.abundance import is_superabundant
from fixgame.boards import Board, canonical_from_cols, enumerate_canonical_cols
from fixgame.coloring import validate_coloring
from fixgame.engine import is_fixable_board
from fixgame.multigraph import Multigraph
from fixgame.multistar import NotMultistar, multistar_certificate, multistar_fixable


def star(*leaves):
    return Multigraph.from_pairs(("z",) + tuple(dict.fromkeys(leaves)), [("z", w) for w in leaves])


def test_directly_colorable_star():
    g = star("u", "w")
    b = Board.from_sets([{1, 2}, {1}, {2}])
    assert multistar_fixable(g, b)
    cert = multistar_certificate(g, b)
    assert cert.fixable and cert.coloring is not None
    assert validate_coloring(g, b, cert.coloring)


def test_bad_star_refuted():
    g = star("u", "w")
    b = Board.from_sets([{1, 2}, {1}, {1}])
    assert not multistar_fixable(g, b)
    cert = multistar_certificate(g, b)
    assert cert.refutation.kind == "superabundance"
    assert cert.refutation.witness == ("z", "u", "w")
    assert cert.lines() == ["not fixable: not superabundant on {z, u, w}"]


def test_short_center_list_refuted():
    g = star("u", "u")
    b = Board.from_sets([{1}, {1, 2}])
    assert not multistar_fixable(g, b)
    cert = multistar_certificate(g, b)
    assert cert.refutation.kind == "size" and cert.refutation.vertex == "z"


def test_rainbow_star_is_matched_color_by_color():
    g = star("a", "b", "c")
    b = Board.from_sets([{1, 2, 3}, {1}, {2}, {3}])
    cert = multistar_certificate(g, b)
    assert cert.fixable and [s.kind for s in cert.steps] == ["match"] * 3
    assert cert.steps[-1].residual_edges == 0
    assert dict(cert.coloring.assignment) == {0: 1, 1: 2, 2: 3}


def test_not_a_multistar():
    g = Multigraph.from_pairs("abcd", [("a", "b"), ("c", "d")])
    with pytest.raises(NotMultistar):
        multistar_fixable(g, Board.from_sets([{1}] * 4))
    with pytest.raises(NotMultistar):
        multistar_certificate(g, Board.from_sets([{1}] * 4))


def test_multistar_enumeration():
    stars = list(multistars(4))
    assert len(stars) == 1 + 2 + 3 + 5
    assert len({tuple(sorted(s.degrees())) for s in stars}) == len(stars)


@st.composite
def star_instances(draw):
    stars = list(multistars(4))
    g = draw(st.sampled_from(stars))
    k = draw(st.integers(1, 5))
    lists = []
    for d in g.degrees():
        size = draw(st.integers(min(d, k), k))
        lists.append(frozenset(draw(st.permutations(range(1, k + 1)))[:size]))
    return g, Board.from_sets(lists, k)


@given(star_instances())
def test_certificates_check_out(inst):
    g, b = inst
    cert = multistar_certificate(g, b)
    assert cert.fixable == multistar_fixable(g, b)
    if not cert.fixable:
        if cert.refutation.kind == "superabundance":
            idx = [g.index(v) for v in cert.refutation.witness]
            inside = sum(u in idx and v in idx for u, v in g.index_pairs())
            assert oracles.psi(b.sets(), idx) < inside
        elif cert.refutation.kind == "size":
            v = cert.refutation.vertex
            assert len(b.colors(g.index(v))) < g.degree(v)
        return
    for step in cert.steps:
        assert step.residual_superabundant
    if cert.coloring is not None:
        ids = [e[2] for e in g.edges]
        assert oracles.valid_coloring(g.index_pairs(), b.sets(), [cert.coloring[i] for i in ids])


@pytest.mark.parametrize("g", list(multistars(3)), ids=lambda g: "-".join(map(str, g.degrees())))
def test_characterization_matches_engine_small(g):
    deg = g.degrees()
    for k in range(max(deg), 4):
        for cols in enumerate_canonical_cols([[d] for d in deg], k):
            b = canonical_from_cols(cols, g.order).board
            assert multistar_fixable(g, b) == (is_fixable_board(g, b, k) is not None)


def test_characterization_needs_superabundance_and_sizes():
    g = star("u", "w", "w")
    for lists in itertools.product([frozenset({1, 2, 3}), frozenset({1, 2})], [frozenset({1})],
                                   [frozenset({1, 2}), frozenset({2, 3})]):
        b = Board.from_sets(lists, 3)
        expect = all(len(lists[i]) >= d for i, d in enumerate(g.degrees())) and is_superabundant(g, b).superabundant
        assert multistar_fixable(g, b) == expect
