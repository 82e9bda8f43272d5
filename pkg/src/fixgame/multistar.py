"""Multistars: the superabundance characterization and a Hall-matching certificate.

A multistar with lists of size at least the degree is fixable exactly when it
is superabundant. The certificate follows the constructive route: repeatedly
take a minimal tight color set at the center, color its perfect matching,
delete those edges and colors, and continue. When fewer usable colors than
edges remain, the residual instance is handed to the game solver.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .abundance import is_superabundant
from .boards import Board
from .coloring import HallSystem, minimal_hall_set, validate_coloring
from .engine import fixable_depth_rows
from .multigraph import EdgeColoring, Multigraph, is_multistar

log = logging.getLogger(__name__)


class NotMultistar(ValueError):
    pass


def _center(g: Multigraph) -> str:
    z = is_multistar(g)
    if z is None:
        raise NotMultistar("graph is not a connected multistar")
    return z


@dataclass(frozen=True)
class Refutation:
    kind: str  # "size", "superabundance" or "game"
    vertex: str | None = None
    witness: tuple[str, ...] | None = None

    def __str__(self) -> str:
        if self.kind == "size":
            return f"list at {self.vertex} is smaller than its degree"
        if self.kind == "superabundance":
            return "not superabundant on {" + ", ".join(self.witness or ()) + "}"
        return "the game solver reports the residual instance unfixable"


@dataclass(frozen=True)
class CertificateStep:
    """One reduction: either a matched tight set or a hand-off to the solver."""

    kind: str  # "match" or "solver"
    colors: frozenset = frozenset()
    assignment: dict = field(default_factory=dict)  # edge id -> color
    residual_superabundant: bool = True
    depth: int | None = None
    residual_edges: int = 0


@dataclass(frozen=True)
class MultistarCertificate:
    fixable: bool
    center: str
    steps: tuple[CertificateStep, ...] = ()
    refutation: Refutation | None = None
    coloring: EdgeColoring | None = None  # set when every step was a matching

    def __bool__(self) -> bool:
        return self.fixable

    def lines(self) -> list[str]:
        if self.refutation is not None:
            return [f"not fixable: {self.refutation}"]
        out = [f"fixable (center {self.center})"]
        for i, st in enumerate(self.steps, 1):
            if st.kind == "match":
                pairs = ", ".join(f"edge {e} <- {c}" for e, c in sorted(st.assignment.items()))
                out.append(f"step {i}: tight colors {sorted(st.colors)}: {pairs}")
            else:
                out.append(f"step {i}: {st.residual_edges} edges left, solver depth {st.depth}")
        return out


def _size_failure(g: Multigraph, b: Board) -> str | None:
    for v, d, size in zip(g.vertices, g.degrees(), b.sizes()):
        if size < d:
            return v
    return None


def multistar_fixable(g: Multigraph, b: Board) -> bool:
    """Superabundant with every list at least as long as the degree."""
    _center(g)
    return _size_failure(g, b) is None and is_superabundant(g, b).superabundant


def multistar_certificate(g: Multigraph, b: Board) -> MultistarCertificate:
    z = _center(g)
    bad = _size_failure(g, b)
    if bad is not None:
        return MultistarCertificate(False, z, refutation=Refutation("size", vertex=bad))
    rep = is_superabundant(g, b)
    if not rep.superabundant:
        return MultistarCertificate(False, z, refutation=Refutation("superabundance", witness=rep.witness))

    lists = dict(zip(g.vertices, b.lists))
    cur = g
    steps: list[CertificateStep] = []
    colored: dict[int, int] = {}
    while cur.edges:
        sub = Board(tuple(lists[v] for v in cur.vertices), b.k)
        h = HallSystem.for_multistar(cur, sub, z)
        tight = minimal_hall_set(h) if len(h.colors) >= cur.size else None
        if tight is None:
            depth = fixable_depth_rows(cur.order, cur.index_pairs(), sub.lists, b.k)
            log.debug("Hall route stalled with %d edges; solver depth %s", cur.size, depth)
            steps.append(CertificateStep("solver", depth=depth, residual_edges=cur.size))
            if depth is None:
                return MultistarCertificate(False, z, tuple(steps), Refutation("game"))
            return MultistarCertificate(True, z, tuple(steps))
        colored.update({eid: c for c, eid in tight.matching.items()})
        drop = 0
        for c in tight.colors:
            drop |= 1 << (c - 1)
        edges = tuple(e for e in cur.edges if e[2] not in tight.neighborhood)
        keep = {u for u, _, _ in edges} | {v for _, v, _ in edges}
        cur = Multigraph(tuple(v for v in cur.vertices if v in keep), edges)
        for v in cur.vertices:
            lists[v] &= ~drop
        ok = True
        if cur.edges:
            if any(lists[v] == 0 for v in cur.vertices):
                ok = False
            else:
                ok = is_superabundant(cur, Board(tuple(lists[v] for v in cur.vertices), b.k)).superabundant
        steps.append(CertificateStep("match", tight.colors, {e: c for c, e in tight.matching.items()}, ok))
    col = EdgeColoring(colored)
    if not validate_coloring(g, b, col):
        raise AssertionError("certificate coloring failed validation")
    return MultistarCertificate(True, z, tuple(steps), coloring=col)
