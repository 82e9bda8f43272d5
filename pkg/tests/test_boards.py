from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from fixgame.boards import (
    Board,
    BoardError,
    apply_swaps,
    board_size_bounds,
    canonicalize,
    enumerate_boards,
    enumerate_canonical_cols,
    parse_board,
    serialize_board,
    swap_set,
)
from fixgame.catalog import builtin_config
from fixgame.multigraph import Configuration, Multigraph


@st.composite
def boards(draw, max_n=5, max_k=5):
    k = draw(st.integers(1, max_k))
    n = draw(st.integers(1, max_n))
    lists = draw(st.lists(st.integers(1, (1 << k) - 1), min_size=n, max_size=n))
    return Board(tuple(lists), k)


def test_canonicalize_example():
    cb = canonicalize(Board.from_sets([{3}, {2, 3}], 3))
    assert cb.board.sets() == (frozenset({1}), frozenset({1, 2}))


def test_canonical_forms_keep_vertex_order():
    a = canonicalize(Board.from_sets([{1, 2}, {3, 4}], 4))
    b = canonicalize(Board.from_sets([{3, 4}, {1, 2}], 4))
    assert a.board.sets() == b.board.sets() == (frozenset({1, 2}), frozenset({3, 4}))
    c = canonicalize(Board.from_sets([{1, 2}, {1, 3}], 4))
    d = canonicalize(Board.from_sets([{1, 3}, {1, 2}], 4))
    assert c.board == d.board
    e = canonicalize(Board.from_sets([{1, 2}, {2, 3}, {1}], 3))
    f = canonicalize(Board.from_sets([{1, 2}, {2, 3}, {3}], 3))
    assert e.key != f.key


def test_minimal_board_is_fixed():
    b = Board.from_sets([{1, 2}, {1, 3}, {2, 4}], 4)
    assert canonicalize(b).board == b
    # first-appearance labels are not always least: {2,3} relabels to {1,3}
    c = Board.from_sets([{1, 2}, {2, 3}, {1, 4}], 4)
    assert canonicalize(c).board == b


@given(boards())
def test_canonicalize_matches_brute_force(b):
    brute = oracles.canonical_lists(b.sets(), b.k)
    assert canonicalize(b).board.sets() == brute


@given(boards(), st.randoms(use_true_random=False))
def test_canonical_key_constant_on_orbits(b, rnd):
    perm = list(range(1, b.k + 1))
    rnd.shuffle(perm)
    moved = Board.from_sets([{perm[c - 1] for c in s} for s in b.sets()], b.k)
    assert canonicalize(moved).key == canonicalize(b).key
    once = canonicalize(b)
    assert canonicalize(once.board) == once


def test_swap_set_examples(goldberg):
    b = Board.from_sets([{1, 2}, {1, 3}, {2, 3}], 3)
    assert swap_set(b, 1, 2) == {1, 2}
    assert swap_set(Board.from_sets([{1}, {1}], 3), 2, 3) == frozenset()
    c, fig9a = goldberg["goldberg_a"]
    # the published board uses colors from 0; 6 and 7 there are 7 and 8 here
    s = swap_set(fig9a, 7, 8)
    assert {c.graph.vertices[v] for v in s} == {"v1", "v2"}
    with pytest.raises(BoardError):
        swap_set(b, 1, 1)


def test_apply_swaps_examples():
    b = Board.from_sets([{1, 3}], 3)
    assert apply_swaps(b, 1, 2, [{0}]).sets() == (frozenset({2, 3}),)
    assert apply_swaps(b, 1, 2, []) == b
    with pytest.raises(BoardError):
        apply_swaps(Board.from_sets([{1, 2}, {1}], 2), 1, 2, [{0}])
    with pytest.raises(BoardError):
        apply_swaps(Board.from_sets([{1}, {1}, {2}], 2), 1, 2, [{0, 1}, {1, 2}])
    with pytest.raises(BoardError):
        apply_swaps(Board.from_sets([{1}, {1}, {2}], 2), 1, 2, [{0, 1, 2}])


@given(boards(max_k=4).filter(lambda b: b.k >= 2), st.data())
def test_swaps_are_involutions(b, data):
    a, c = data.draw(st.sampled_from(list(itertools.combinations(range(1, b.k + 1), 2))))
    s = sorted(swap_set(b, a, c))
    picked = data.draw(st.sets(st.sampled_from(s))) if s else set()
    parts = [{v} for v in picked]
    once = apply_swaps(b, a, c, parts)
    assert apply_swaps(once, a, c, parts) == b
    assert once.sizes() == b.sizes()
    for v in range(b.n):
        if v not in s:
            assert once.lists[v] == b.lists[v]
    assert swap_set(once, a, c) == swap_set(b, a, c)


def test_size_bounds_c1():
    sb = board_size_bounds(builtin_config("C1"), 4)
    assert tuple(sb.bounds.values()) == (3, 2, 2, 3)
    assert not sb.clamped


def test_size_bounds_c35():
    # degrees (2,3,1,2,3,1) and labels (4,4,2,4,3,3) give k + d - f
    sb = board_size_bounds(builtin_config("C35"), 4)
    assert tuple(sb.bounds.values()) == (2, 3, 3, 2, 4, 2)


def test_size_bounds_clamp():
    g = Multigraph.from_pairs("uv", [("u", "v")])
    sb = board_size_bounds(Configuration(g, {"u": 9, "v": 1}), 4)
    assert sb.bounds == {"u": 0, "v": 4} and sb.clamped
    sb = board_size_bounds(Configuration(g, {"u": 1, "v": 1}), 3)
    assert sb.bounds == {"u": 3, "v": 3}


def test_enumerate_near_counts():
    assert len(enumerate_boards(builtin_config("C1"), 4, "near")) == 18
    assert len(enumerate_boards(builtin_config("C2"), 4, "near")) == 26


def test_enumerate_single_edge_forced():
    g = Multigraph.from_pairs("uv", [("u", "v")])
    bs = enumerate_boards(Configuration(g, {}), 1, "exact")
    assert [b.board.sets() for b in bs] == [(frozenset({1}), frozenset({1}))]


def test_enumerate_errors():
    c = builtin_config("C1")
    with pytest.raises(BoardError):
        enumerate_boards(c, 1, "exact")
    g = Multigraph.from_pairs("uv", [("u", "v")])
    with pytest.raises(BoardError):
        enumerate_boards(Configuration(g, {}), 2, "near")
    with pytest.raises(BoardError):
        enumerate_boards(c, 4, "sideways")


@pytest.mark.parametrize("n,k", [(1, 3), (2, 3), (3, 3), (3, 4), (4, 3)])
def test_orderly_generation_hits_every_orbit_once(n, k):
    sizes = [list(range(1, k + 1))] * n
    got = [tuple(sorted(x, reverse=True)) for x in enumerate_canonical_cols(sizes, k)]
    assert len(got) == len(set(got))
    brute = {oracles.canonical_lists(L, k) for L in oracles.all_lists(n, k, sizes)}
    mine = set()
    for cols in got:
        rows = [frozenset(c + 1 for c in range(k) if cols[c] >> (n - 1 - v) & 1) for v in range(n)]
        mine.add(tuple(rows))
    assert mine == brute


def _mode_sets(c, k):
    out = {}
    for mode in ("exact", "at-least", "near", "near-union"):
        out[mode] = {b.key for b in enumerate_boards(c, k, mode)}
    return out


@given(st.sampled_from(["C1", "C2", "C4", "C13"]), st.integers(4, 5))
def test_mode_inclusions(name, k):
    c = builtin_config(name)
    sets = _mode_sets(c, k)
    assert sets["exact"] <= sets["at-least"]
    assert sets["near"] <= sets["near-union"] <= sets["exact"]


@pytest.mark.parametrize("name", ["C1", "C3", "C12"])
def test_enumerated_sizes_respect_mode(name):
    c = builtin_config(name)
    lower = list(board_size_bounds(c, 4).bounds.values())
    for b in enumerate_boards(c, 4, "exact"):
        assert b.board.sizes() == tuple(lower)
    for b in enumerate_boards(c, 4, "at-least"):
        assert all(lo <= s <= 4 for lo, s in zip(lower, b.board.sizes()))


def test_board_file_round_trip():
    b = Board.from_sets([{1, 2}, {3}, {2, 4}], 4)
    text = serialize_board(b, ["x", "y", "z"])
    bf = parse_board(text)
    assert bf.board == b and bf.vertices == ("x", "y", "z") and bf.graph is None
    assert bytes.fromhex(canonicalize(b).hex) == canonicalize(b).key


@pytest.mark.parametrize("text", [
    "list a 1\n",
    "board k=3\nlist a \n",
    "board k=3\nlist a 1,x\n",
    "board k=2\nlist a 3\n",
    "board k=3\nlist a 1\nlist a 2\n",
])
def test_board_file_errors(text):
    with pytest.raises(BoardError):
        parse_board(text)


def test_board_file_vertex_mismatch():
    g = Multigraph.from_pairs("ab", [("a", "b")])
    with pytest.raises(BoardError):
        parse_board("board k=2\nlist a 1\n", g)
