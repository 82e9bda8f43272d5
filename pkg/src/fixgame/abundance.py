"""Counting conditions on (graph, board) pairs.

psi sums, over colors, half the number of vertices holding that color
(rounded down); it bounds how many edges of an induced subgraph can be colored
from the lists. A pair is superabundant when no induced subgraph has more
edges than its psi. eta replaces half-counts by per-color matching numbers.
Also here: per-color parity counts with the edge-critical inequality, and
validation of ordered (KTV) list assignments.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import combinations

from .boards import Board, BoardError, parse_board
from .coloring import matching_number
from .multigraph import ConfigError, EdgeColoring, Multigraph, induced_subgraph, parse_config

MAX_SUBSET_VERTICES = 24


def _indices(g: Multigraph, s: Iterable[str]) -> list[int]:
    return sorted({g.index(v) for v in s})


def _color_counts(b: Board, idx: Sequence[int]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for i in idx:
        m = b.lists[i]
        c = 1
        while m:
            if m & 1:
                counts[c] = counts.get(c, 0) + 1
            m >>= 1
            c += 1
    return counts


def psi(g: Multigraph, b: Board, s: Iterable[str]) -> int:
    """Sum over colors of floor(#vertices of ``s`` holding it / 2)."""
    return sum(n // 2 for n in _color_counts(b, _indices(g, s)).values())


def _edges_within(pairs: Sequence[tuple[int, int]], mask: int) -> int:
    return sum(1 for u, v in pairs if mask >> u & 1 and mask >> v & 1)


@dataclass(frozen=True)
class AbundanceReport:
    psi_total: int
    superabundant: bool
    witness: tuple[str, ...] | None
    per_color: Mapping[int, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.superabundant


def is_superabundant(g: Multigraph, b: Board) -> AbundanceReport:
    """Check psi(H) >= |E(H)| for every induced subgraph H.

    The witness is the first failing vertex set in size-then-lexicographic
    order over the vertex order of ``g``.
    """
    n = g.order
    if n > MAX_SUBSET_VERTICES:
        raise ValueError(f"{n} vertices is too many for a subset scan (limit {MAX_SUBSET_VERTICES})")
    per_color = {c: cnt // 2 for c, cnt in sorted(_color_counts(b, range(n)).items())}
    total = sum(per_color.values())
    pairs = g.index_pairs()
    # colour columns as vertex bitmasks make psi of a subset a few popcounts
    cols = [sum(1 << i for i in range(n) if b.lists[i] >> c & 1) for c in range(b.k)]
    cols = [x for x in cols if x]
    for size in range(2, n + 1):
        for sub in combinations(range(n), size):
            mask = 0
            for i in sub:
                mask |= 1 << i
            edges = _edges_within(pairs, mask)
            if not edges:
                continue
            p = sum((col & mask).bit_count() // 2 for col in cols)
            if p < edges:
                return AbundanceReport(total, False, tuple(g.vertices[i] for i in sub), per_color)
    return AbundanceReport(total, True, None, per_color)


def _eta_edges(n: int, pairs: Sequence[tuple[int, int]], b: Board) -> int:
    total = 0
    union = 0
    for m in b.lists:
        union |= m
    c = 0
    while union >> c:
        if union >> c & 1:
            sub = [(u, v) for u, v in pairs if b.lists[u] >> c & 1 and b.lists[v] >> c & 1]
            if sub:
                total += matching_number(n, sub)
        c += 1
    return total


def eta(g: Multigraph, b: Board, s: Iterable[str]) -> int:
    """Sum over colors of the matching number of H restricted to that color."""
    h = induced_subgraph(g, s)
    idx = [g.index(v) for v in h.vertices]
    sub = Board(tuple(b.lists[i] for i in idx), b.k) if idx else None
    if sub is None:
        return 0
    return _eta_edges(h.order, h.index_pairs(), sub)


def is_multitree(g: Multigraph) -> bool:
    simple = {frozenset((u, v)) for u, v, _ in g.edges}
    return g.order > 0 and g.is_connected() and len(simple) == g.order - 1


def marcotte_seymour_holds(t: Multigraph, b: Board) -> bool:
    """eta(H) >= |E(H)| for every induced subgraph H of the multitree ``t``.

    On a multitree this covers every subgraph: dropping one of several
    parallel edges lowers |E(H)| without changing eta, and eta is additive
    over components, each of which is induced in the underlying tree.
    """
    if not is_multitree(t):
        raise ValueError("input is not a multitree")
    n = t.order
    if n > MAX_SUBSET_VERTICES:
        raise ValueError(f"{n} vertices is too many for a subset scan (limit {MAX_SUBSET_VERTICES})")
    pairs = t.index_pairs()
    for size in range(2, n + 1):
        for sub in combinations(range(n), size):
            inside = set(sub)
            edges = [(u, v) for u, v in pairs if u in inside and v in inside]
            if edges and _eta_edges(n, edges, b) < len(edges):
                return False
    return True


# parity ------------------------------------------------------------------------


@dataclass(frozen=True)
class ParityCounts:
    even_count: int
    odd_count: int


def parity_counts(g: Multigraph, b: Board) -> ParityCounts:
    counts = _color_counts(b, range(g.order))
    odd = sum(1 for n in counts.values() if n % 2)
    return ParityCounts(len(counts) - odd, odd)


@dataclass(frozen=True)
class ParityBound:
    """Outcome of the odd-color inequality check.

    ``hypothesis`` says whether |E(G)| >= psi (or > psi when strict) holds;
    ``holds`` says whether the odd-color count meets the bound.
    """

    hypothesis: bool
    holds: bool
    odd_count: int
    bound: int
    strict: bool

    def __bool__(self) -> bool:
        return self.holds


def check_parity_bound(g: Multigraph, b: Board, delta_q: int, d_q: Mapping[str, int],
                       strict: bool = False) -> ParityBound:
    for v in g.vertices:
        if d_q[v] > delta_q:
            raise ValueError(f"d_Q({v}) = {d_q[v]} exceeds Delta(Q) = {delta_q}")
    p = psi(g, b, g.vertices)
    hyp = g.size > p if strict else g.size >= p
    bound = sum(delta_q - d_q[v] for v in g.vertices)
    odd = parity_counts(g, b).odd_count
    return ParityBound(hyp, odd > bound if strict else odd >= bound, odd, bound, strict)


# ordered (KTV) assignments -----------------------------------------------------


class KtvError(ValueError):
    pass


@dataclass(frozen=True)
class KtvInstance:
    graph: Multigraph
    board: Board
    special_edge: int
    ordering: tuple[str, ...]
    pi: EdgeColoring

    def __post_init__(self):
        object.__setattr__(self, "ordering", tuple(self.ordering))
        if sorted(self.ordering) != sorted(self.graph.vertices) or len(set(self.ordering)) != len(self.ordering):
            raise KtvError("ordering must list every vertex exactly once")
        try:
            self.graph.edge(self.special_edge)
        except KeyError:
            raise KtvError(f"special edge {self.special_edge} is not an edge") from None
        if len(self.board.lists) != self.graph.order:
            raise KtvError("board and graph disagree on the vertex count")


@dataclass(frozen=True)
class KtvVerdict:
    properties: tuple[bool, bool, bool, bool, bool]

    @property
    def valid(self) -> bool:
        return all(self.properties)

    def __bool__(self) -> bool:
        return self.valid


def validate_ktv(inst: KtvInstance) -> KtvVerdict:
    g, b, pi = inst.graph, inst.board, inst.pi.assignment
    x, y, xy = g.edge(inst.special_edge)
    rank = {v: i for i, v in enumerate(inst.ordering)}
    rest = [e for e in g.edges if e[2] != xy]

    p1 = set(pi) == {e[2] for e in rest} and EdgeColoring(pi).is_proper(g) and all(
        pi[eid] in b.colors(g.index(u)) and pi[eid] in b.colors(g.index(v)) for u, v, eid in rest)

    p2 = inst.ordering[0] == x

    p3 = all(induced_subgraph(g, inst.ordering[:i]).is_connected() for i in range(1, g.order + 1))

    def unused(v: str) -> set[int]:
        used = {pi[eid] for a, c, eid in g.edges if v in (a, c) and eid in pi}
        return set(b.colors(g.index(v))) - used

    p4 = True
    for w, z, eid in rest:
        top = max(rank[w], rank[z])
        col = pi.get(eid)
        if col is None or not any(col in unused(u) for u in inst.ordering[:top]):
            p4 = False
            break

    p5 = False
    for s, t in combinations(g.vertices, 2):
        used = {pi[eid] for a, c, eid in g.edges if eid in pi and ({a, c} & {s, t})}
        if (set(b.colors(g.index(s))) & set(b.colors(g.index(t)))) - used:
            p5 = True
            break
    return KtvVerdict((p1, p2, p3, p4, p5))


def parse_ktv(text: str) -> KtvInstance:
    """KTV file: config lines, a board section, and

    ``special <x> <y>`` (first x–y edge), ``order <v> <v> ...``, and
    ``pi <u> <v> <color>`` lines, which color u–v edges in edge order.
    """
    c = parse_config(text)
    g = c.graph
    bf = parse_board(text, g)
    special = None
    order = None
    pis: list[tuple[str, str, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        try:
            if parts[0] == "special":
                _, u, v = parts
                special = (u, v, lineno)
            elif parts[0] == "order":
                order = tuple(parts[1:])
            elif parts[0] == "pi":
                _, u, v, col = parts
                pis.append((u, v, int(col), lineno))
        except ValueError:
            raise ConfigError(f"malformed {parts[0]!r} line", lineno) from None
    if special is None or order is None:
        raise ConfigError("KTV file needs 'special' and 'order' lines")

    def edges_between(u, v):
        return [e[2] for e in g.edges if {e[0], e[1]} == {u, v}]

    cand = edges_between(special[0], special[1])
    if not cand:
        raise KtvError(f"line {special[2]}: {special[0]}-{special[1]} is not an edge")
    xy = cand[0]
    if g.edge(xy)[0] != special[0]:
        # keep x as the first endpoint so property (2) reads the right vertex
        u, v, eid = g.edge(xy)
        g = Multigraph(g.vertices, tuple((v, u, eid) if e[2] == xy else e for e in g.edges))
    taken = {xy}
    pi = {}
    for u, v, col, lineno in pis:
        free = [e for e in edges_between(u, v) if e not in taken]
        if not free:
            raise KtvError(f"line {lineno}: no uncolored {u}-{v} edge left")
        taken.add(free[0])
        pi[free[0]] = col
    return KtvInstance(g, bf.board, xy, order, EdgeColoring(pi))


def serialize_ktv(inst: KtvInstance) -> str:
    g, b = inst.graph, inst.board
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {u} {v}" for u, v, _ in g.edges]
    lines.append(f"board k={b.k}")
    lines += [f"list {v} " + ",".join(map(str, b.colors(i))) for i, v in enumerate(g.vertices)]
    x, y, _ = g.edge(inst.special_edge)
    lines.append(f"special {x} {y}")
    lines.append("order " + " ".join(inst.ordering))
    for u, v, eid in g.edges:
        if eid in inst.pi.assignment:
            lines.append(f"pi {u} {v} {inst.pi.assignment[eid]}")
    return "\n".join(lines) + "\n"


def random_ktv(rng: random.Random, n: int, k: int, extra_edges: int = 2,
               extra_colors: float = 0.3, tries: int = 100) -> KtvInstance:
    """Sample a KTV instance by construction.

    Vertices are added in order, each attached to an earlier one, so every
    prefix is connected and vertex 0 comes first. The first edge (0-1) is the
    uncolored special edge. Lists are then grown just enough to satisfy the
    unused-color conditions, plus random extra colors.
    """
    if n < 2 or k < 1:
        raise ValueError("need at least two vertices and one color")
    names = [f"v{i}" for i in range(n)]
    for _ in range(tries):
        pairs = [(0, 1)] + [(rng.randrange(i), i) for i in range(2, n)]
        for _ in range(rng.randint(0, extra_edges)):
            u, v = rng.sample(range(n), 2)
            pairs.append((min(u, v), max(u, v)))
        # random proper coloring of G - xy
        used = [set() for _ in range(n)]
        pi = {}
        ok = True
        for eid, (u, v) in enumerate(pairs):
            if eid == 0:
                continue
            free = [c for c in range(1, k + 1) if c not in used[u] and c not in used[v]]
            if not free:
                ok = False
                break
            c = rng.choice(free)
            pi[eid] = c
            used[u].add(c)
            used[v].add(c)
        if not ok:
            continue
        lists = [set(used[v]) for v in range(n)]
        for eid, (u, v) in enumerate(pairs):
            if eid == 0:
                continue
            col = pi[eid]
            cand = [w for w in range(max(u, v)) if col not in used[w]]
            if not any(col in lists[w] for w in cand):
                if not cand:
                    ok = False
                    break
                lists[rng.choice(cand)].add(col)
        if not ok:
            continue
        spots = [(s, t, c) for s, t in combinations(range(n), 2) for c in range(1, k + 1)
                 if c not in used[s] and c not in used[t]]
        if not spots:
            continue
        s, t, c = rng.choice(spots)
        lists[s].add(c)
        lists[t].add(c)
        for v in range(n):
            for c in range(1, k + 1):
                if rng.random() < extra_colors:
                    lists[v].add(c)
            if not lists[v]:
                lists[v].add(rng.randint(1, k))
        g = Multigraph.from_pairs(names, [(names[u], names[v]) for u, v in pairs])
        b = Board.from_sets(lists, k)
        return KtvInstance(g, b, 0, tuple(names), EdgeColoring(pi))
    raise BoardError("could not build a KTV instance with these parameters")
