"""Explicit winning strategies read back from a solved universe."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from itertools import combinations

from .boards import Board, CanonicalBoard, apply_swaps, canonical_relabeling, swap_set
from .coloring import find_edge_coloring, validate_coloring
from .engine import FixReport, adversary_partitions
from .multigraph import EdgeColoring, Multigraph


class StrategyError(ValueError):
    pass


@dataclass(frozen=True)
class Branch:
    partition: tuple[tuple[int, ...], ...]  # blocks of vertex indices
    chosen: tuple[int, ...]  # indices of the blocks that are swapped
    child: StrategyNode


@dataclass(frozen=True)
class StrategyNode:
    board: Board
    depth: int
    coloring: EdgeColoring | None = None
    move: tuple[int, int] | None = None
    branches: tuple[Branch, ...] = ()
    truncated: bool = False

    @property
    def is_leaf(self) -> bool:
        return self.coloring is not None

    def height(self) -> int:
        if self.truncated or self.is_leaf:
            return self.depth if self.truncated else 0
        return 1 + max(br.child.height() for br in self.branches)

    def walk(self) -> Iterator[StrategyNode]:
        yield self
        for br in self.branches:
            yield from br.child.walk()


@dataclass(frozen=True)
class StrategyTree:
    graph: Multigraph
    root: StrategyNode
    depth_cap: int | None

    def height(self) -> int:
        return self.root.height()

    def nodes(self) -> Iterator[StrategyNode]:
        return self.root.walk()


def _subsets_lex(t: int) -> list[tuple[int, ...]]:
    out = [c for r in range(t + 1) for c in combinations(range(t), r)]
    out.sort()
    return out


def extract_strategy(r: FixReport, b: Board | CanonicalBoard, depth_cap: int | None = None) -> StrategyTree:
    """Expand the recorded moves of ``r`` into a tree rooted at ``b``.

    Each node plays the recorded color pair; for every adversary partition the
    lexicographically least block selection reaching a smaller depth is used.
    Nodes below ``depth_cap`` levels are left as truncated markers.
    """
    if isinstance(b, CanonicalBoard):
        b = b.board
    g = r.graph
    if r.depth_of(b) is None:
        raise StrategyError("board is not won in this report")
    cache: dict[tuple[Board, int], StrategyNode] = {}

    def node(board: Board, level: int) -> StrategyNode:
        d = r.depth_of(board)
        if d is None:
            raise StrategyError(f"reached a board outside the won set: {board}")
        if depth_cap is not None and level > depth_cap:
            return StrategyNode(board, d, truncated=True)
        key = (board, level if depth_cap is not None else 0)
        if key in cache:
            return cache[key]
        if d == 0:
            col = find_edge_coloring(g, board)
            if col is None or not validate_coloring(g, board, col):
                raise StrategyError(f"depth-0 board has no valid coloring: {board}")
            out = StrategyNode(board, 0, coloring=col)
        else:
            inv = {new: old for old, new in canonical_relabeling(board).items()}
            ca, cb = r.move_of(board)
            a, c = sorted((inv[ca], inv[cb]))
            s = swap_set(board, a, c)
            branches = []
            for part in adversary_partitions(s):
                blocks = tuple(tuple(sorted(x)) for x in part)
                for pick in _subsets_lex(len(blocks)):
                    child = apply_swaps(board, a, c, [blocks[j] for j in pick])
                    cd = r.depth_of(child)
                    if cd is not None and cd < d:
                        branches.append(Branch(blocks, pick, node(child, level + 1)))
                        break
                else:
                    raise StrategyError(f"recorded move fails against partition {blocks}")
            out = StrategyNode(board, d, move=(a, c), branches=tuple(branches))
        cache[key] = out
        return out

    return StrategyTree(g, node(b, 0), depth_cap)
