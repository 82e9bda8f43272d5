"""The Kempe-swap fixability game, solved bottom-up over canonical boards.

Round 0 marks the colorable boards. Round ``r`` adds every board for which
some color pair ``(a, b)`` beats every adversary pairing of the swap set with
a swap landing on a board won in an earlier round. The round index is the
board's depth. Moves that leave the universe never win, so near-coloring
universes are played as closed games on their own boards.

The adversary only needs partitions with at most one singleton block: merging
two singletons removes responses and never adds any, so such partitions are
dominated. The reference evaluators in the tests use every partition.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
import os
import time
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import combinations

from .boards import (
    Board,
    BoardError,
    CanonicalBoard,
    apply_swaps,
    canonical_from_cols,
    canonical_relabeling,
    check_k,
    cols_to_rows,
    enumerate_codes,
    rows_to_cols,
    swap_set,
    unpack,
)
from .coloring import colorability_checker
from .multigraph import Configuration, Multigraph

log = logging.getLogger(__name__)

DEFAULT_CAP = 1 << 24
MAX_K = 8


class UniverseTooLarge(RuntimeError):
    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"board universe has at least {count} boards, above the cap of {cap}")


def universe_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("FIXGAME_CAP")
    return int(env) if env else DEFAULT_CAP


Cols = tuple[int, ...]


# adversary partitions ----------------------------------------------------------


def adversary_partitions(s: Iterable) -> Iterator[tuple[frozenset, ...]]:
    """Every partition of ``s`` into blocks of size one or two, once each.

    Elements are processed in sorted order; the smallest remaining element
    is first left alone, then paired with each later element in turn.
    """
    items = sorted(s)

    def rec(rest: list) -> Iterator[tuple[frozenset, ...]]:
        if not rest:
            yield ()
            return
        x, tail = rest[0], rest[1:]
        for p in rec(tail):
            yield (frozenset([x]),) + p
        for i, y in enumerate(tail):
            for p in rec(tail[:i] + tail[i + 1:]):
                yield (frozenset([x, y]),) + p

    yield from rec(items)


def respond_options(b: Board, a: int, c: int, p: Sequence[Iterable[int]]) -> set[Board]:
    """Boards reachable by swapping ``a``/``c`` on any union of blocks of ``p``."""
    blocks = [frozenset(x) for x in p]
    covered = frozenset().union(*blocks) if blocks else frozenset()
    if covered != swap_set(b, a, c) or sum(map(len, blocks)) != len(covered):
        raise BoardError("partition does not cover the swap set exactly")
    out = set()
    for r in range(len(blocks) + 1):
        for chosen in combinations(blocks, r):
            out.add(apply_swaps(b, a, c, chosen))
    return out


# core solver -------------------------------------------------------------------


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low)
        mask ^= low
    return out


def _adversary_refutes(elems: list[int], win) -> bool:
    """True if some partition of ``elems`` (<= 1 singleton) has no winning union."""

    def extend(fam: list[int], block: int) -> list[int] | None:
        grown = []
        for m in fam:
            t = m | block
            if win(t):
                return None
            grown.append(t)
        return fam + grown

    def rec(rest: list[int], fam: list[int]) -> bool:
        if not rest:
            return True
        x = rest[0]
        if len(rest) & 1:
            nxt = extend(fam, x)
            if nxt is not None and rec(rest[1:], nxt):
                return True
        for j in range(1, len(rest)):
            nxt = extend(fam, x | rest[j])
            if nxt is not None and rec(rest[1:j] + rest[j + 1:], nxt):
                return True
        return False

    return rec(elems, [0])


def _winning_move(cols: Cols, r: int, index: dict, depth: list[int]) -> tuple[int, int] | None:
    """Least color pair (0-based, canonical labels) that wins within ``r`` rounds."""
    k = len(cols)
    for a in range(k):
        ca = cols[a]
        if a and ca == cols[a - 1]:
            continue
        for b in range(a + 1, k):
            cb = cols[b]
            if cb == cols[b - 1] or ca == cb:
                continue
            s = ca ^ cb
            memo: dict[int, bool] = {}

            def win(t: int, a=a, b=b, ca=ca, cb=cb, memo=memo) -> bool:
                hit = memo.get(t)
                if hit is None:
                    new = list(cols)
                    new[a] = ca ^ t
                    new[b] = cb ^ t
                    new.sort(reverse=True)
                    i = index.get(tuple(new))
                    hit = i is not None and 0 <= depth[i] < r
                    memo[t] = hit
                return hit

            if not _adversary_refutes(_bits(s), win):
                return (a, b)
    return None


# state shared with forked workers; set only around a round
_ROUND: dict = {}


def _eval_chunk(chunk: Sequence[int]) -> list[tuple[int, tuple[int, int]]]:
    st = _ROUND
    codes, index, depth, r = st["codes"], st["index"], st["depth"], st["r"]
    out = []
    for i in chunk:
        mv = _winning_move(codes[i], r, index, depth)
        if mv is not None:
            out.append((i, mv))
    return out


def _chunks(items: list[int], size: int) -> list[list[int]]:
    return [items[i:i + size] for i in range(0, len(items), size)]


def _touched(found, codes, index, depth) -> list[int]:
    """Unwon boards one swap away from a newly won board.

    A board that lost a round can only win the next one if some board it can
    reach by a single swap was just won; swaps are involutions, so those are
    exactly the one-swap neighbours of the new winners.
    """
    out = set()
    for i, _ in found:
        for nb in _neighbors(codes[i]):
            j = index.get(nb)
            if j is not None and depth[j] < 0:
                out.add(j)
    return sorted(out)


def solve_cols(n: int, pairs: Sequence[tuple[int, int]], codes: Sequence[Cols],
               workers: int = 1, label: str = "") -> tuple[list[int], list[tuple[int, int] | None]]:
    """Fixed point over a universe of canonical column tuples.

    Returns per-board depth (-1 when not won) and the recorded move as a pair
    of 1-based colors.
    """
    codes = list(codes)
    index = {c: i for i, c in enumerate(codes)}
    colorable = colorability_checker(n, pairs)
    depth = [0 if colorable(cols_to_rows(c, n)) else -1 for c in codes]
    move: list[tuple[int, int] | None] = [None] * len(codes)
    pending = [i for i, d in enumerate(depth) if d < 0]
    log.info("%s%d boards, %d colorable", label, len(codes), len(codes) - len(pending))
    use_pool = workers > 1 and "fork" in mp.get_all_start_methods()
    todo = pending
    r = 0
    while todo:
        r += 1
        t0 = time.perf_counter()
        _ROUND.update(codes=codes, index=index, depth=depth, r=r)
        try:
            if use_pool and len(todo) > 64:
                size = max(16, len(todo) // (workers * 8) + 1)
                with mp.get_context("fork").Pool(workers) as pool:
                    results = pool.map(_eval_chunk, _chunks(todo, size))
                found = [x for part in results for x in part]
            else:
                found = _eval_chunk(todo)
        finally:
            _ROUND.clear()
        if not found:
            break
        found.sort()
        for i, (a, b) in found:
            depth[i] = r
            move[i] = (a + 1, b + 1)
        pending = [i for i in pending if depth[i] < 0]
        todo = _touched(found, codes, index, depth) if len(found) * 16 < len(pending) else pending
        log.info("%sround %d: +%d won, %d left, %d to recheck (%.2fs)", label, r, len(found),
                 len(pending), len(todo), time.perf_counter() - t0)
    return depth, move


# reports -----------------------------------------------------------------------


@dataclass
class FixReport:
    """A solved universe: depth (-1 = lost) and recorded move per board."""

    graph: Multigraph
    k: int
    mode: str
    codes: list[Cols]
    depth: list[int]
    move: list[tuple[int, int] | None]
    edge: int | None = None  # the deleted edge of a near universe
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self._index is None:
            self._index = {c: i for i, c in enumerate(self.codes)}

    @property
    def n(self) -> int:
        return self.graph.order

    def __len__(self) -> int:
        return len(self.codes)

    @property
    def fixable(self) -> bool:
        return all(d >= 0 for d in self.depth)

    verdict = fixable

    def board(self, i: int) -> CanonicalBoard:
        return canonical_from_cols(self.codes[i], self.n)

    @property
    def universe(self) -> list[CanonicalBoard]:
        return [self.board(i) for i in range(len(self.codes))]

    @property
    def won(self) -> list[CanonicalBoard]:
        return [self.board(i) for i, d in enumerate(self.depth) if d >= 0]

    @property
    def losers(self) -> list[CanonicalBoard]:
        return [self.board(i) for i, d in enumerate(self.depth) if d < 0]

    def histogram(self) -> tuple[int, ...]:
        top = max(self.depth, default=-1)
        hist = [0] * (top + 1)
        for d in self.depth:
            if d >= 0:
                hist[d] += 1
        return tuple(hist)

    def lookup(self, b: Board | CanonicalBoard) -> int | None:
        if isinstance(b, CanonicalBoard):
            b = b.board
        cols = rows_to_cols(b.lists, self.k) if b.k <= self.k else None
        if cols is None or any(cols[self.k:]):
            return None
        return self._index.get(tuple(sorted(cols, reverse=True)))

    def depth_of(self, b: Board | CanonicalBoard) -> int | None:
        i = self.lookup(b)
        if i is None or self.depth[i] < 0:
            return None
        return self.depth[i]

    def move_of(self, b: Board | CanonicalBoard) -> tuple[int, int] | None:
        i = self.lookup(b)
        return None if i is None else self.move[i]

    def deepest(self) -> int | None:
        """Index of the first board of maximal depth."""
        best = None
        for i, d in enumerate(self.depth):
            if d >= 0 and (best is None or d > self.depth[best]):
                best = i
        return best

    def serialize(self) -> str:
        lines = [f"k={self.k} mode={self.mode} boards={len(self.codes)}"]
        for i in range(len(self.codes)):
            mv = self.move[i]
            mv_s = f"{mv[0]},{mv[1]}" if mv else "-"
            lines.append(f"{self.board(i).hex} {self.depth[i]} {mv_s}")
        return "\n".join(lines) + "\n"


def solve_universe(graph: Multigraph, k: int, codes: Iterable[int], mode: str = "custom",
                   workers: int = 1, cap: int | None = None) -> FixReport:
    n = graph.order
    limit = universe_cap(cap)
    cols = []
    for code in codes:
        cols.append(unpack(code, n, k))
        if len(cols) > limit:
            raise UniverseTooLarge(len(cols), limit)
    depth, move = solve_cols(n, graph.index_pairs(), cols, workers=workers, label=f"[{mode}] ")
    return FixReport(graph, k, mode, cols, depth, move)


def solve(c: Configuration, k: int, mode: str = "near", *, edge: int | None = None,
          workers: int = 1, cap: int | None = None) -> FixReport:
    """Enumerate the ``mode`` universe of ``c`` and solve the game on it."""
    if k > MAX_K:
        raise BoardError(f"k={k} exceeds the supported maximum of {MAX_K}")
    check_k(c, k, mode)
    r = solve_universe(c.graph, k, enumerate_codes(c, k, mode, edge), mode, workers, cap)
    if mode == "near":
        r.edge = c.marked_edge if edge is None else edge
    return r


def is_fk_fixable(c: Configuration, k: int, mode: str = "at-least", **kw) -> tuple[bool, FixReport]:
    """(f,k)-fixability over the chosen universe, with the full report."""
    r = solve(c, k, mode, **kw)
    return r.fixable, r


# single boards -----------------------------------------------------------------


def _neighbors(cols: Cols) -> Iterator[Cols]:
    """Canonical boards one swap away (with repeats).

    Colors with equal columns are interchangeable, so only the first of each
    run is used. Swapping ``T`` or ``S - T`` gives the same board up to
    exchanging the two colors, so ``T`` ranges over subsets avoiding the
    lowest vertex of ``S``, plus ``S`` itself.
    """
    k = len(cols)
    for a in range(k):
        if a and cols[a] == cols[a - 1]:
            continue
        for b in range(a + 1, k):
            if cols[b] == cols[b - 1]:
                continue
            s = cols[a] ^ cols[b]
            if not s:
                continue
            rest = s & (s - 1)
            masks = [s]
            t = rest
            while t:
                masks.append(t)
                t = (t - 1) & rest
            for m in masks:
                new = list(cols)
                new[a] ^= m
                new[b] ^= m
                new.sort(reverse=True)
                yield tuple(new)


def swap_closure(cols: Cols, cap: int | None = None) -> list[Cols]:
    """Canonical boards reachable from ``cols`` by Kempe swaps (BFS order)."""
    limit = universe_cap(cap)
    start = tuple(sorted(cols, reverse=True))
    seen = {start}
    order = [start]
    head = 0
    while head < len(order):
        for nb in _neighbors(order[head]):
            if nb not in seen:
                seen.add(nb)
                order.append(nb)
                if len(order) > limit:
                    raise UniverseTooLarge(len(order), limit)
        head += 1
    return order


def fixable_depth_rows(n: int, pairs: Sequence[tuple[int, int]], rows: Sequence[int], k: int,
                       cap: int | None = None, workers: int = 1) -> int | None:
    """Height of the game from ``rows`` with pot ``[k]``, or None if not fixable."""
    cols = rows_to_cols(rows, k)
    if colorability_checker(n, pairs)(rows):
        return 0
    closure = swap_closure(cols, cap)
    depth, _ = solve_cols(n, pairs, closure, workers=workers, label="[closure] ")
    d = depth[0]
    return d if d >= 0 else None


def is_fixable_board(g: Multigraph, b: Board, k: int | None = None, *, cap: int | None = None,
                     workers: int = 1) -> int | None:
    """Height of ``(L, [k])`` for ``g``, or None when not fixable.

    ``k`` defaults to ``b.k``. Explores the (finite) swap closure of ``b``.
    """
    k = b.k if k is None else k
    if b.k > k or any(m >> k for m in b.lists):
        raise BoardError("board uses colors above k")
    if len(b.lists) != g.order:
        raise BoardError("board and graph disagree on the vertex count")
    return fixable_depth_rows(g.order, g.index_pairs(), b.lists, k, cap, workers)


def is_list_fixable(g: Multigraph, b: Board, **kw) -> int | None:
    """L-fixability: the pot is exactly the union of the lists."""
    mapping = canonical_relabeling(b)
    used = len(b.pot)
    rows = [0] * b.n
    for v, m in enumerate(b.lists):
        for c in range(b.k):
            if m >> c & 1:
                rows[v] |= 1 << (mapping[c + 1] - 1)
    return fixable_depth_rows(g.order, g.index_pairs(), rows, used, **kw)


# subfixability -----------------------------------------------------------------


def is_subfixable(g: Multigraph, b: Board, k: int | None = None) -> bool:
    """Fixable, or some edge can be precolored from its common colors so that
    the rest is subfixable."""
    k = b.k if k is None else k
    n = g.order
    memo: dict = {}

    def rec(edges: tuple[tuple[int, int], ...], rows: tuple[int, ...]) -> bool:
        key = (edges, tuple(sorted(rows_to_cols(rows, k), reverse=True)))
        if key in memo:
            return memo[key]
        memo[key] = False
        ok = fixable_depth_rows(n, edges, rows, k) is not None
        if not ok:
            for i, (x, y) in enumerate(edges):
                common = rows[x] & rows[y]
                rest = edges[:i] + edges[i + 1:]
                while common and not ok:
                    t = common & -common
                    common ^= t
                    new = list(rows)
                    new[x] &= ~t
                    new[y] &= ~t
                    ok = rec(rest, tuple(new))
                if ok:
                    break
        memo[key] = ok
        return ok

    return rec(tuple(g.index_pairs()), tuple(b.lists))


def reducing_edges(c: Configuration, r: FixReport) -> tuple[int, ...]:
    """Edges ``e`` whose near boards (for ``G - e``) are all won in ``r``.

    Only meaningful for near-coloring universes, which contain every near
    board of the edges they were built from.
    """
    if r.mode not in ("near", "near-union"):
        raise BoardError("reducing edges need a near-coloring universe")
    n = c.graph.order
    pairs = c.graph.index_pairs()
    lost = [cols_to_rows(r.codes[i], n) for i, d in enumerate(r.depth) if d < 0]
    out = []
    for pos, (_, _, eid) in enumerate(c.graph.edges):
        if r.mode == "near" and r.edge is not None and eid != r.edge:
            continue
        ok = colorability_checker(n, pairs[:pos] + pairs[pos + 1:])
        if not any(ok(rows) for rows in lost):
            out.append(eid)
    return tuple(out)
