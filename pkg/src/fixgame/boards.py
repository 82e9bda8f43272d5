"""Boards (list assignments), color-permutation canonical forms, Kempe swaps,
and board-universe enumeration.

A board on ``n`` vertices stores one bitmask per vertex: bit ``c - 1`` is set
when color ``c`` is in that vertex's list. The engine works on the transposed
"column" form: one ``n``-bit mask per color, where vertex ``i`` sits at bit
``n - 1 - i`` so that comparing columns as integers compares them
lexicographically in vertex order.

Permuting colors permutes columns, so sorting the columns in decreasing order
yields a canonical representative. That representative is exactly the
lexicographically least board over all ``k!`` relabelings (vertex order fixed,
lists compared as sorted color sequences): the colors of ``L(v0)`` get labels
``1..|L(v0)|``, ties are broken by ``L(v1)``, and so on.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from typing import NamedTuple

from .multigraph import ConfigError, Configuration, Multigraph, parse_config

log = logging.getLogger(__name__)

MODES = ("exact", "at-least", "near", "near-union")


class BoardError(ValueError):
    pass


@dataclass(frozen=True)
class Board:
    """Per-vertex color lists as bitmasks over colors ``1..k``."""

    lists: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "lists", tuple(self.lists))
        if self.k < 1:
            raise BoardError("k must be positive")
        full = (1 << self.k) - 1
        for i, m in enumerate(self.lists):
            if m == 0:
                raise BoardError(f"empty list at vertex {i}")
            if m & ~full:
                raise BoardError(f"list at vertex {i} uses a color above k={self.k}")

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], k: int | None = None) -> Board:
        sets = [set(s) for s in sets]
        if k is None:
            k = max((max(s) for s in sets if s), default=1)
        masks = []
        for s in sets:
            if any(c < 1 for c in s):
                raise BoardError("colors start at 1")
            masks.append(sum(1 << (c - 1) for c in s))
        return cls(tuple(masks), k)

    @property
    def n(self) -> int:
        return len(self.lists)

    def colors(self, v: int) -> tuple[int, ...]:
        m = self.lists[v]
        return tuple(c + 1 for c in range(self.k) if m >> c & 1)

    def sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(self.colors(v)) for v in range(self.n))

    @property
    def pot(self) -> frozenset[int]:
        union = 0
        for m in self.lists:
            union |= m
        return frozenset(c + 1 for c in range(self.k) if union >> c & 1)

    def sizes(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self.lists)

    def columns(self) -> tuple[int, ...]:
        return rows_to_cols(self.lists, self.k)

    def __str__(self) -> str:
        return " ".join("{" + ",".join(map(str, self.colors(v))) + "}" for v in range(self.n))


@dataclass(frozen=True)
class CanonicalBoard:
    """Minimal representative of a color-permutation class, with a byte key."""

    board: Board
    key: bytes

    @property
    def hex(self) -> str:
        return self.key.hex()

    def __str__(self) -> str:
        return str(self.board)


# column-form helpers ---------------------------------------------------------


def rows_to_cols(lists: Sequence[int], k: int) -> tuple[int, ...]:
    n = len(lists)
    cols = [0] * k
    for i, m in enumerate(lists):
        bit = 1 << (n - 1 - i)
        c = 0
        while m:
            if m & 1:
                cols[c] |= bit
            m >>= 1
            c += 1
    return tuple(cols)


def cols_to_rows(cols: Sequence[int], n: int) -> tuple[int, ...]:
    rows = [0] * n
    for j, col in enumerate(cols):
        for i in range(n):
            if col >> (n - 1 - i) & 1:
                rows[i] |= 1 << j
    return tuple(rows)


def pack(cols: Sequence[int], n: int) -> int:
    code = 0
    for j, col in enumerate(cols):
        code |= col << (n * j)
    return code


def unpack(code: int, n: int, k: int) -> tuple[int, ...]:
    mask = (1 << n) - 1
    return tuple((code >> (n * j)) & mask for j in range(k))


def canonical_code(cols: Sequence[int], n: int) -> int:
    return pack(sorted(cols, reverse=True), n)


def board_key(lists: Sequence[int], k: int) -> bytes:
    width = (k + 7) // 8
    return b"".join(m.to_bytes(width, "big") for m in lists)


def canonical_from_cols(cols: Sequence[int], n: int) -> CanonicalBoard:
    k = len(cols)
    rows = cols_to_rows(sorted(cols, reverse=True), n)
    return CanonicalBoard(Board(rows, k), board_key(rows, k))


# public operations -----------------------------------------------------------


def canonical_relabeling(b: Board) -> dict[int, int]:
    """A color map (old -> new) sending ``b`` to its canonical form."""
    cols = b.columns()
    order = sorted(range(b.k), key=lambda c: cols[c], reverse=True)
    return {old + 1: new + 1 for new, old in enumerate(order)}


def relabel(b: Board, mapping: dict[int, int]) -> Board:
    rows = []
    for m in b.lists:
        out = 0
        for c in range(b.k):
            if m >> c & 1:
                out |= 1 << (mapping[c + 1] - 1)
        rows.append(out)
    return Board(tuple(rows), b.k)


def canonicalize(b: Board) -> CanonicalBoard:
    return canonical_from_cols(b.columns(), b.n)


def swap_set(b: Board, a: int, bcol: int) -> frozenset[int]:
    """Vertices whose list holds exactly one of ``a`` and ``bcol``."""
    if a == bcol:
        raise BoardError("swap colors must differ")
    for c in (a, bcol):
        if not 1 <= c <= b.k:
            raise BoardError(f"color {c} outside 1..{b.k}")
    return frozenset(v for v, m in enumerate(b.lists) if ((m >> (a - 1)) ^ (m >> (bcol - 1))) & 1)


def apply_swaps(b: Board, a: int, bcol: int, parts: Iterable[Iterable[int]]) -> Board:
    """Exchange ``a`` and ``bcol`` in the lists of every vertex in ``parts``."""
    s = swap_set(b, a, bcol)
    touched: set[int] = set()
    for part in parts:
        part = set(part)
        if len(part) > 2:
            raise BoardError("swap blocks have at most two vertices")
        if part - s:
            raise BoardError(f"vertices {sorted(part - s)} are not in the swap set")
        if part & touched:
            raise BoardError("swap blocks overlap")
        touched |= part
    flip = (1 << (a - 1)) | (1 << (bcol - 1))
    return Board(tuple(m ^ flip if v in touched else m for v, m in enumerate(b.lists)), b.k)


class SizeBounds(NamedTuple):
    bounds: dict[str, int]
    clamped: bool


def board_size_bounds(c: Configuration, k: int) -> SizeBounds:
    """Per-vertex list-size lower bound ``k + d(v) - f(v)``, clamped at 0."""
    bounds = {}
    clamped = False
    for v in c.graph.vertices:
        lo = k + c.graph.degree(v) - c.f[v]
        if lo < 0:
            lo, clamped = 0, True
        bounds[v] = lo
    return SizeBounds(bounds, clamped)


def _compositions(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    if not caps:
        if total == 0:
            yield ()
        return
    rest = sum(caps[1:])
    for x in range(max(0, total - rest), min(caps[0], total) + 1):
        for tail in _compositions(total - x, caps[1:]):
            yield (x,) + tail


def enumerate_canonical_cols(size_options: Sequence[Sequence[int]], k: int) -> Iterator[tuple[int, ...]]:
    """Orderly generation of canonical boards in column form.

    ``size_options[i]`` lists the allowed list sizes at vertex ``i``. Within a
    run of colors whose columns agree on the prefix, only an initial segment
    may be extended, which keeps the columns non-increasing.
    """
    n = len(size_options)
    cols = [0] * k

    def rec(i: int, runs: list[tuple[int, int]]) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(cols)
            return
        bit = 1 << (n - 1 - i)
        lengths = [ln for _, ln in runs]
        for s in size_options[i]:
            for counts in _compositions(s, lengths):
                new_runs = []
                for (start, ln), x in zip(runs, counts):
                    for j in range(start, start + x):
                        cols[j] |= bit
                    if x:
                        new_runs.append((start, x))
                    if ln - x:
                        new_runs.append((start + x, ln - x))
                yield from rec(i + 1, new_runs)
                for (start, _), x in zip(runs, counts):
                    for j in range(start, start + x):
                        cols[j] &= ~bit

    yield from rec(0, [(0, k)] if k else [])


def size_options(c: Configuration, k: int, mode: str) -> list[list[int]]:
    bounds = board_size_bounds(c, k).bounds
    opts = []
    for v in c.graph.vertices:
        lo = max(bounds[v], 1)
        if mode == "at-least":
            opts.append(list(range(lo, k + 1)))
        else:
            opts.append([lo])
    return opts


def near_edges(c: Configuration, mode: str, edge: int | None = None) -> list[int] | None:
    """Edge ids whose deletion defines near boards for ``mode``, or None."""
    if mode == "near":
        eid = c.marked_edge if edge is None else edge
        if eid is None:
            raise BoardError("near mode needs a marked edge")
        c.graph.edge(eid)
        return [eid]
    if mode == "near-union":
        return [eid for _, _, eid in c.graph.edges]
    if mode not in ("exact", "at-least"):
        raise BoardError(f"unknown mode {mode!r}")
    return None


def check_k(c: Configuration, k: int, mode: str) -> None:
    if mode not in MODES:
        raise BoardError(f"unknown mode {mode!r}")
    if k < c.graph.max_degree:
        raise BoardError(f"k={k} is below the maximum degree {c.graph.max_degree}")
    bounds = board_size_bounds(c, k).bounds
    for v in c.graph.vertices:
        if mode != "at-least" and bounds[v] < c.graph.degree(v):
            log.warning("list size %d at %s is below its degree; such boards are never colorable", bounds[v], v)


def enumerate_codes(c: Configuration, k: int, mode: str, edge: int | None = None) -> Iterator[int]:
    """Canonical board codes of the universe selected by ``mode``."""
    from .coloring import colorability_checker

    check_k(c, k, mode)
    n = c.graph.order
    removed = near_edges(c, mode, edge)
    checkers = []
    if removed is not None:
        pairs = c.graph.index_pairs()
        for eid in removed:
            pos = [e[2] for e in c.graph.edges].index(eid)
            checkers.append(colorability_checker(n, pairs[:pos] + pairs[pos + 1:]))
    for cols in enumerate_canonical_cols(size_options(c, k, mode), k):
        if checkers:
            rows = cols_to_rows(cols, n)
            if not any(ok(rows) for ok in checkers):
                continue
        yield pack(cols, n)


def enumerate_boards(c: Configuration, k: int, mode: str, edge: int | None = None) -> list[CanonicalBoard]:
    """Deduplicated canonical boards, in generation order.

    exact: ``|L(v)| = k + d(v) - f(v)``; at-least: sizes between that bound and
    ``k``; near: exact sizes and ``G - e`` is L-edge-colorable for the marked
    (or given) edge ``e``; near-union: near for at least one edge.
    """
    n = c.graph.order
    return [canonical_from_cols(unpack(code, n, k), n) for code in enumerate_codes(c, k, mode, edge)]


# board files -----------------------------------------------------------------


@dataclass(frozen=True)
class BoardFile:
    board: Board
    vertices: tuple[str, ...]
    graph: Multigraph | None


def parse_board(text: str, graph: Multigraph | None = None) -> BoardFile:
    """Parse ``board k=<int>`` plus ``list <vertex> <c>,<c>,...`` lines.

    The file may also carry ``vertex``/``edge`` lines, in which case it defines
    its own graph. Otherwise ``graph`` (if given) fixes the vertex order.
    """
    k = None
    lists: dict[str, set[int]] = {}
    order: list[str] = []
    has_graph = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "board":
            if len(parts) != 2 or not parts[1].startswith("k=") or not parts[1][2:].isdigit():
                raise BoardError(f"line {lineno}: expected 'board k=<int>'")
            k = int(parts[1][2:])
        elif parts[0] == "list":
            if len(parts) != 3:
                raise BoardError(f"line {lineno}: expected 'list <vertex> <colors>'")
            name = parts[1]
            if name in lists:
                raise BoardError(f"line {lineno}: duplicate list for {name!r}")
            try:
                colors = {int(x) for x in parts[2].split(",") if x}
            except ValueError:
                raise BoardError(f"line {lineno}: bad color list {parts[2]!r}") from None
            if not colors:
                raise BoardError(f"line {lineno}: empty list for {name!r}")
            lists[name] = colors
            order.append(name)
        elif parts[0] in ("vertex", "edge", "k"):
            has_graph = True
    if k is None:
        raise BoardError("missing 'board k=<int>' header")
    if has_graph:
        try:
            graph = parse_config(text).graph
        except ConfigError as exc:
            raise BoardError(str(exc)) from exc
    vertices = tuple(graph.vertices) if graph is not None else tuple(order)
    missing = [v for v in vertices if v not in lists]
    unknown = [v for v in lists if v not in vertices]
    if missing or unknown:
        raise BoardError(f"lists do not match vertices (missing {missing}, unknown {unknown})")
    board = Board.from_sets([lists[v] for v in vertices], k)
    return BoardFile(board, vertices, graph)


def serialize_board(b: Board, vertices: Sequence[str]) -> str:
    lines = [f"board k={b.k}"]
    for v, name in enumerate(vertices):
        lines.append(f"list {name} " + ",".join(map(str, b.colors(v))))
    return "\n".join(lines) + "\n"
