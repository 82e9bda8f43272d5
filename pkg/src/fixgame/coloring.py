"""Exact search primitives: list edge-coloring, maximum matching, Hall systems."""

from __future__ import annotations

from collections.abc import Callable, Hashable, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from .boards import Board
from .multigraph import EdgeColoring, Multigraph


def _search_order(n: int, pairs: Sequence[tuple[int, int]]) -> list[int]:
    """Edge order that keeps each new edge adjacent to already placed ones."""
    if not pairs:
        return []
    deg = [0] * n
    for u, v in pairs:
        deg[u] += 1
        deg[v] += 1
    left = list(range(len(pairs)))
    touched: set[int] = set()
    order = []
    while left:
        best = max(left, key=lambda i: ((pairs[i][0] in touched) + (pairs[i][1] in touched),
                                        deg[pairs[i][0]] + deg[pairs[i][1]], -i))
        left.remove(best)
        order.append(best)
        touched.update(pairs[best])
    return order


def colorability_checker(n: int, pairs: Sequence[tuple[int, int]]) -> Callable[[Sequence[int]], bool]:
    """Return a fast ``lists -> bool`` test for L-edge-colorability.

    ``lists`` are per-vertex color bitmasks. Isolated vertices are ignored.
    """
    order = [pairs[i] for i in _search_order(n, pairs)]
    m = len(order)

    def colorable(lists: Sequence[int]) -> bool:
        if m == 0:
            return True
        avail = list(lists)

        def rec(i: int) -> bool:
            if i == m:
                return True
            u, v = order[i]
            free = avail[u] & avail[v]
            while free:
                c = free & -free
                free ^= c
                avail[u] ^= c
                avail[v] ^= c
                if rec(i + 1):
                    return True
                avail[u] |= c
                avail[v] |= c
            return False

        return rec(0)

    return colorable


def find_edge_coloring(g: Multigraph, b: Board) -> EdgeColoring | None:
    """A proper L-edge-coloring of ``g`` from the lists of ``b``, or None.

    Backtracking, most constrained edge first (ties by edge position), colors
    tried in increasing order.
    """
    pairs = g.index_pairs()
    ids = [e[2] for e in g.edges]
    avail = list(b.lists)
    todo = set(range(len(pairs)))
    chosen: dict[int, int] = {}

    def rec() -> bool:
        if not todo:
            return True
        best, best_free = None, None
        for i in sorted(todo):
            u, v = pairs[i]
            free = avail[u] & avail[v]
            if best is None or free.bit_count() < best_free.bit_count():
                best, best_free = i, free
                if free == 0:
                    return False
        u, v = pairs[best]
        todo.remove(best)
        free = best_free
        while free:
            c = free & -free
            free ^= c
            avail[u] ^= c
            avail[v] ^= c
            chosen[ids[best]] = c.bit_length()
            if rec():
                return True
            avail[u] |= c
            avail[v] |= c
            del chosen[ids[best]]
        todo.add(best)
        return False

    if len(b.lists) != g.order:
        raise ValueError("board and graph disagree on the vertex count")
    return EdgeColoring(dict(chosen)) if rec() else None


def validate_coloring(g: Multigraph, b: Board, coloring: EdgeColoring, total: bool = True) -> bool:
    """Check properness and list membership (and totality when ``total``)."""
    if total and set(coloring.assignment) != {e[2] for e in g.edges}:
        return False
    for u, v, eid in g.edges:
        if eid not in coloring.assignment:
            continue
        c = coloring.assignment[eid]
        if c not in b.colors(g.index(u)) or c not in b.colors(g.index(v)):
            return False
    return coloring.is_proper(g)


def matching_number(n: int, pairs: Sequence[tuple[int, int]]) -> int:
    """Maximum matching size of the graph on ``range(n)`` with edges ``pairs``."""
    if not pairs:
        return 0
    g = nx.Graph()
    g.add_edges_from(pairs)
    return len(nx.max_weight_matching(g, maxcardinality=True))


def max_matching(g: Multigraph) -> int:
    """Size of a maximum matching (parallel edges are irrelevant)."""
    return matching_number(g.order, g.index_pairs())


# Hall systems ----------------------------------------------------------------


@dataclass(frozen=True)
class HallSystem:
    """Bipartite availability between colors and items (edges)."""

    colors: tuple[Hashable, ...]
    items: tuple[Hashable, ...]
    availability: Mapping[Hashable, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        avail = {c: frozenset(self.availability.get(c, ())) for c in self.colors}
        object.__setattr__(self, "availability", avail)
        items = set(self.items)
        for c, its in avail.items():
            if its - items:
                raise ValueError(f"color {c!r} is available on unknown items")

    def neighborhood(self, colors) -> frozenset:
        out = set()
        for c in colors:
            out |= self.availability[c]
        return frozenset(out)

    @classmethod
    def for_multistar(cls, g: Multigraph, b: Board, center: str) -> HallSystem:
        """Colors usable on at least one edge versus edges with a usable color."""
        z = g.index(center)
        avail: dict[int, set[int]] = {}
        for u, v, eid in g.edges:
            w = v if u == center else u
            common = b.lists[z] & b.lists[g.index(w)]
            for c in range(b.k):
                if common >> c & 1:
                    avail.setdefault(c + 1, set()).add(eid)
        colors = tuple(sorted(avail))
        items = tuple(eid for _, _, eid in g.edges if any(eid in s for s in avail.values()))
        return cls(colors, items, {c: frozenset(s) for c, s in avail.items()})


@dataclass(frozen=True)
class HallDeficiency:
    colors: frozenset
    neighborhood: frozenset


@dataclass(frozen=True)
class TightSet:
    colors: frozenset
    neighborhood: frozenset
    matching: Mapping[Hashable, Hashable]  # color -> item, perfect on the tight set


@dataclass(frozen=True)
class SaturatingMatching:
    matching: Mapping[Hashable, Hashable]  # color -> item, covers every color


def bipartite_matching(colors: Sequence[Hashable], availability: Mapping[Hashable, frozenset]) -> dict:
    """Maximum matching of colors into items (Hopcroft-Karp), color -> item."""
    g = nx.Graph()
    left = [("c", c) for c in colors]
    g.add_nodes_from(left)
    for c in colors:
        g.add_edges_from((("c", c), ("i", it)) for it in sorted(availability[c]))
    m = nx.bipartite.hopcroft_karp_matching(g, top_nodes=left)
    return {c: m[("c", c)][1] for c in colors if ("c", c) in m}


def hall_analyze(h: HallSystem) -> HallDeficiency | TightSet | SaturatingMatching:
    """Classify a Hall system.

    Subsets of colors are scanned in size-then-lexicographic order (color
    order as given). The first deficient subset wins; otherwise the first
    subset with ``|N(C')| = |C'|`` is a minimal tight set and comes with a
    perfect matching onto its neighborhood; otherwise every color is matched.
    """
    colors = list(h.colors)
    for size in range(1, len(colors) + 1):
        for sub in combinations(colors, size):
            nb = h.neighborhood(sub)
            if len(nb) < size:
                return HallDeficiency(frozenset(sub), nb)
    for size in range(1, len(colors) + 1):
        for sub in combinations(colors, size):
            nb = h.neighborhood(sub)
            if len(nb) == size:
                m = bipartite_matching(sub, {c: h.availability[c] for c in sub})
                return TightSet(frozenset(sub), nb, m)
    return SaturatingMatching(bipartite_matching(colors, h.availability))


def minimal_hall_set(h: HallSystem) -> TightSet | None:
    """First nonempty color set (size-then-lexicographic) with ``|N(C')| <= |C'|``.

    Minimality forces equality and Hall's condition inside ``C'``, so the
    result always carries a perfect matching. None when every set expands.
    """
    colors = list(h.colors)
    for size in range(1, len(colors) + 1):
        for sub in combinations(colors, size):
            nb = h.neighborhood(sub)
            if len(nb) <= size:
                m = bipartite_matching(sub, {c: h.availability[c] for c in sub})
                if len(nb) != size or len(m) != size:
                    raise AssertionError("minimal Hall set is not tight")
                return TightSet(frozenset(sub), nb, m)
    return None
