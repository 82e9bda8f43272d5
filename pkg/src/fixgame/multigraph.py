"""Loopless multigraphs, labeled configurations, and the CFG text format."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field


class ConfigError(ValueError):
    """Malformed configuration text or an invalid graph/configuration."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Multigraph:
    """Loopless multigraph with a fixed vertex order.

    ``edges`` holds ``(u, v, edge_id)`` triples; parallel edges are distinct
    triples with the same endpoints.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, int], ...] = ()
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        index = {}
        for i, v in enumerate(self.vertices):
            if v in index:
                raise ConfigError(f"duplicate vertex {v!r}")
            index[v] = i
        object.__setattr__(self, "_index", index)
        seen = set()
        for u, v, eid in self.edges:
            if u not in index or v not in index:
                raise ConfigError(f"edge {eid} has unknown endpoint")
            if u == v:
                raise ConfigError(f"loop at vertex {u!r}")
            if eid in seen:
                raise ConfigError(f"duplicate edge id {eid}")
            seen.add(eid)

    @classmethod
    def from_pairs(cls, vertices: Iterable[str], pairs: Iterable[tuple[str, str]]) -> Multigraph:
        return cls(tuple(vertices), tuple((u, v, i) for i, (u, v) in enumerate(pairs)))

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        """Edge count, counting multiplicity."""
        return len(self.edges)

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def degree(self, v: str) -> int:
        return sum((u == v) + (w == v) for u, w, _ in self.edges)

    def degrees(self) -> tuple[int, ...]:
        deg = [0] * len(self.vertices)
        for u, v, _ in self.edges:
            deg[self._index[u]] += 1
            deg[self._index[v]] += 1
        return tuple(deg)

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def index_pairs(self) -> tuple[tuple[int, int], ...]:
        """Edges as vertex-index pairs, in edge order."""
        return tuple((self._index[u], self._index[v]) for u, v, _ in self.edges)

    def edge(self, eid: int) -> tuple[str, str, int]:
        for e in self.edges:
            if e[2] == eid:
                return e
        raise KeyError(f"unknown edge id {eid}")

    def without_edge(self, eid: int) -> Multigraph:
        self.edge(eid)
        return Multigraph(self.vertices, tuple(e for e in self.edges if e[2] != eid))

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = {v: set() for v in self.vertices}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)


@dataclass(frozen=True)
class Configuration:
    """A multigraph with host-degree bounds ``f`` and an optional marked edge."""

    graph: Multigraph
    f: Mapping[str, int]
    marked_edge: int | None = None
    k: int | None = None

    def __post_init__(self):
        f = dict(self.f)
        for v in self.graph.vertices:
            f.setdefault(v, self.graph.degree(v))
        extra = set(f) - set(self.graph.vertices)
        if extra:
            raise ConfigError(f"f given for unknown vertices {sorted(extra)}")
        for v in self.graph.vertices:
            if f[v] < self.graph.degree(v):
                raise ConfigError(f"f({v}) = {f[v]} is below its degree {self.graph.degree(v)}")
        object.__setattr__(self, "f", f)
        if self.marked_edge is not None:
            self.graph.edge(self.marked_edge)

    def f_values(self) -> tuple[int, ...]:
        return tuple(self.f[v] for v in self.graph.vertices)


@dataclass(frozen=True)
class EdgeColoring:
    """Edge id -> color. May be partial."""

    assignment: Mapping[int, int]

    def __getitem__(self, eid: int) -> int:
        return self.assignment[eid]

    def __len__(self) -> int:
        return len(self.assignment)

    def is_proper(self, g: Multigraph) -> bool:
        seen = set()
        for u, v, eid in g.edges:
            if eid not in self.assignment:
                continue
            c = self.assignment[eid]
            for x in (u, v):
                if (x, c) in seen:
                    return False
                seen.add((x, c))
        return True


def induced_subgraph(g: Multigraph, s: Iterable[str]) -> Multigraph:
    s = set(s)
    for v in s:
        g.index(v)
    verts = tuple(v for v in g.vertices if v in s)
    return Multigraph(verts, tuple(e for e in g.edges if e[0] in s and e[1] in s))


def is_multistar(g: Multigraph) -> str | None:
    """Center of ``g`` if it is a connected multistar with at least one edge."""
    if not g.edges or not g.is_connected():
        return None
    common = {g.edges[0][0], g.edges[0][1]}
    for u, v, _ in g.edges[1:]:
        common &= {u, v}
    for v in g.vertices:
        if v in common:
            return v
    return None


def parse_config(text: str) -> Configuration:
    """Parse CFG text.

    Lines: ``k <int>``, ``vertex <name> [f=<int>]``, ``edge <u> <v> [e]``.
    ``#`` starts a comment. Vertex lines fix the vertex order.
    """
    vertices: list[str] = []
    f: dict[str, int] = {}
    pairs: list[tuple[str, str]] = []
    marked = None
    k = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "k":
            if len(parts) != 2 or not parts[1].isdigit():
                raise ConfigError("expected 'k <int>'", lineno)
            k = int(parts[1])
        elif head == "vertex":
            if len(parts) not in (2, 3):
                raise ConfigError("expected 'vertex <name> [f=<int>]'", lineno)
            name = parts[1]
            if name in f or name in vertices:
                raise ConfigError(f"duplicate vertex {name!r}", lineno)
            vertices.append(name)
            if len(parts) == 3:
                key, _, val = parts[2].partition("=")
                if key != "f" or not val.isdigit() or int(val) < 1:
                    raise ConfigError(f"bad vertex attribute {parts[2]!r}", lineno)
                f[name] = int(val)
        elif head == "edge":
            if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "e"):
                raise ConfigError("expected 'edge <u> <v> [e]'", lineno)
            u, v = parts[1], parts[2]
            for x in (u, v):
                if x not in vertices:
                    raise ConfigError(f"unknown vertex {x!r}", lineno)
            if u == v:
                raise ConfigError(f"loop at vertex {u!r}", lineno)
            if len(parts) == 4:
                if marked is not None:
                    raise ConfigError("more than one marked edge", lineno)
                marked = len(pairs)
            pairs.append((u, v))
        elif head in ("board", "list", "special", "order", "pi"):
            # sections of board/KTV files sharing this syntax
            continue
        else:
            raise ConfigError(f"unknown directive {head!r}", lineno)
    g = Multigraph.from_pairs(vertices, pairs)
    for v, fv in f.items():
        if fv < g.degree(v):
            raise ConfigError(f"f({v}) = {fv} is below its degree {g.degree(v)}")
    return Configuration(g, f, marked, k)


def serialize_config(c: Configuration) -> str:
    lines = []
    if c.k is not None:
        lines.append(f"k {c.k}")
    for v in c.graph.vertices:
        lines.append(f"vertex {v} f={c.f[v]}")
    for u, v, eid in c.graph.edges:
        lines.append(f"edge {u} {v}" + (" e" if eid == c.marked_edge else ""))
    return "\n".join(lines) + "\n"
