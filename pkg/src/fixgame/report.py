"""Text renderings: depth reports and LaTeX strategy write-ups."""

from __future__ import annotations

import re

from .engine import FixReport
from .strategy import StrategyNode, StrategyTree

_REPORT_RE = re.compile(r"^\s*(\d+) total boards: In increasing depths \(([\d,\s]*)\)\s*$")

DEFAULT_LATEX_DEPTH_CAP = 3


def format_depths(total: int, depths) -> str:
    return f"{total} total boards: In increasing depths ({', '.join(map(str, depths))})"


def render_depth_report(r: FixReport, losers: bool = True) -> str:
    lines = [format_depths(len(r), r.histogram())]
    lost = r.losers
    if lost:
        lines.append(f"not fixable: {len(lost)} losing boards")
        if losers:
            lines.extend(f"  {b}" for b in lost)
    return "\n".join(lines) + "\n"


def parse_depth_report(text: str) -> tuple[int, tuple[int, ...]]:
    """Recover ``(total, depth vector)`` from the first line of a depth report."""
    first = text.strip().splitlines()[0] if text.strip() else ""
    m = _REPORT_RE.match(first)
    if not m:
        raise ValueError(f"not a depth report line: {first!r}")
    body = m.group(2).strip()
    vec = tuple(int(x) for x in body.split(",")) if body else ()
    return int(m.group(1)), vec


# LaTeX -------------------------------------------------------------------------


def _tex(name: str) -> str:
    return re.sub(r"([_&%$#{}])", r"\\\1", name)


def _lists_tex(tree: StrategyTree, node: StrategyNode) -> str:
    parts = []
    for i, v in enumerate(tree.graph.vertices):
        cols = ",".join(map(str, node.board.colors(i)))
        parts.append(f"$L(\\texttt{{{_tex(v)}}}) = \\{{{cols}\\}}$")
    return "; ".join(parts)


def _blocks_tex(tree: StrategyTree, blocks) -> str:
    names = tree.graph.vertices
    return ", ".join("\\{" + ",".join(f"\\texttt{{{_tex(names[i])}}}" for i in blk) + "\\}" for blk in blocks)


def _node_tex(tree: StrategyTree, node: StrategyNode, out: list[str], indent: str) -> None:
    out.append(f"{indent}\\item Lists: {_lists_tex(tree, node)} (depth {node.depth}).")
    if node.truncated:
        out.append(f"{indent}  \\emph{{\\ldots continues below depth cap}}")
        return
    if node.is_leaf:
        out.append(f"{indent}  Colorable:")
        out.append(f"{indent}  \\begin{{tabular}}{{ll}}")
        out.append(f"{indent}  edge & color \\\\ \\hline")
        for u, v, eid in tree.graph.edges:
            out.append(f"{indent}  \\texttt{{{_tex(u)}}}\\texttt{{{_tex(v)}}} & {node.coloring[eid]} \\\\")
        out.append(f"{indent}  \\end{{tabular}}")
        return
    a, b = node.move
    out.append(f"{indent}  Swap colors {a} and {b}. For each pairing of the swap set:")
    out.append(f"{indent}  \\begin{{enumerate}}")
    for br in node.branches:
        picked = [br.partition[j] for j in br.chosen]
        sel = _blocks_tex(tree, picked) if picked else "nothing"
        out.append(f"{indent}  \\item Pairing {_blocks_tex(tree, br.partition) or 'empty'}: swap on {sel}.")
        out.append(f"{indent}    \\begin{{enumerate}}")
        _node_tex(tree, br.child, out, indent + "      ")
        out.append(f"{indent}    \\end{{enumerate}}")
    out.append(f"{indent}  \\end{{enumerate}}")


def render_proof_latex(tree: StrategyTree) -> str:
    """A LaTeX document body (nested enumerate) describing the strategy tree."""
    out = ["\\begin{enumerate}"]
    _node_tex(tree, tree.root, out, "  ")
    out.append("\\end{enumerate}")
    return "\n".join(out) + "\n"
