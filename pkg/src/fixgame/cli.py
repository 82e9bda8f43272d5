"""Command-line interface: ``fixgame <subcommand> ...``.

Exit codes: 0 for a positive verdict, 1 for a negative one, 2 for usage,
parse or resource errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .abundance import KtvError, is_superabundant, parse_ktv, validate_ktv
from .boards import MODES, BoardError, enumerate_boards, parse_board
from .catalog import ManifestError, builtin_manifest, catalog_ok, load_manifest, run_catalog
from .degree import degree_fixable_experiment
from .engine import UniverseTooLarge, is_fixable_board, reducing_edges, solve
from .multigraph import ConfigError, parse_config
from .multistar import NotMultistar, multistar_certificate
from .report import DEFAULT_LATEX_DEPTH_CAP, render_depth_report, render_proof_latex
from .strategy import extract_strategy

log = logging.getLogger("fixgame")

USAGE_ERRORS = (ConfigError, BoardError, UniverseTooLarge, ManifestError, NotMultistar, KtvError,
                FileNotFoundError, OSError)


def _read(path: str) -> str:
    return Path(path).read_text()


def _load_board(args):
    text = _read(args.board_file)
    graph = parse_config(_read(args.config)).graph if getattr(args, "config", None) else None
    bf = parse_board(text, graph)
    g = bf.graph or graph
    if g is None:
        raise BoardError("board file has no graph; pass --config")
    return g, bf


def cmd_fixable(args) -> int:
    c = parse_config(_read(args.config))
    if args.board:
        bf = parse_board(_read(args.board), c.graph)
        g = bf.graph or c.graph
        k = args.k or bf.board.k
        depth = is_fixable_board(g, bf.board, k, cap=args.cap, workers=args.workers)
        if depth is None:
            print("not fixable")
            return 1
        print(f"fixable (depth {depth})")
        return 0
    k = args.k or c.k or c.graph.max_degree
    mode = args.mode or "at-least"
    r = solve(c, k, mode, edge=args.edge, workers=args.workers, cap=args.cap)
    if r.fixable:
        print("fixable")
    else:
        red = reducing_edges(c, r) if mode in ("near", "near-union") else ()
        if red:
            names = ", ".join("{}-{}".format(*c.graph.edge(e)[:2]) for e in red)
            print(f"not fixable ({len(r.losers)} losing boards); every near board is won for edge(s) {names}")
        else:
            print(f"not fixable ({len(r.losers)} losing boards)")
    if args.depths:
        sys.stdout.write(render_depth_report(r, losers=args.losers))
    elif args.losers:
        for b in r.losers:
            print(b)
    if args.proof:
        deepest = r.deepest()
        if deepest is None:
            log.warning("no won board to write a proof for")
        else:
            cap = None if args.no_depth_cap else args.depth_cap
            tree = extract_strategy(r, r.board(deepest), depth_cap=cap)
            Path(args.proof).write_text(render_proof_latex(tree))
            log.info("wrote strategy for %s (depth %d) to %s", r.board(deepest), r.depth[deepest], args.proof)
    return 0 if r.fixable else 1


def cmd_boards(args) -> int:
    c = parse_config(_read(args.config))
    k = args.k or c.k or c.graph.max_degree
    boards = enumerate_boards(c, k, args.mode or "at-least", args.edge)
    if args.count:
        print(len(boards))
    else:
        for b in boards:
            print(b)
    return 0


def cmd_superabundance(args) -> int:
    g, bf = _load_board(args)
    rep = is_superabundant(g, bf.board)
    for col, val in rep.per_color.items():
        print(f"color {col}: {val}")
    print(f"psi = {rep.psi_total}, edges = {g.size}")
    if rep.superabundant:
        print("superabundant")
        return 0
    print("not superabundant; witness {" + ", ".join(rep.witness) + "}")
    return 1


def cmd_multistar(args) -> int:
    g, bf = _load_board(args)
    cert = multistar_certificate(g, bf.board)
    for line in cert.lines():
        print(line)
    return 0 if cert.fixable else 1


def cmd_ktv(args) -> int:
    inst = parse_ktv(_read(args.ktv_file))
    v = validate_ktv(inst)
    for i, ok in enumerate(v.properties, 1):
        print(f"property {i}: {'holds' if ok else 'fails'}")
    sup = is_superabundant(inst.graph, inst.board).superabundant
    print(f"KTV assignment: {'yes' if v.valid else 'no'}; superabundant: {'yes' if sup else 'no'}")
    return 0 if v.valid else 1


def cmd_degree(args) -> int:
    c = parse_config(_read(args.config))
    extra = [parse_board(_read(p), c.graph).board for p in args.extra_board]
    exp = degree_fixable_experiment(c.graph, args.pot_cap, extra, cap=args.cap, workers=args.workers)
    print(exp.summary())
    for e in exp.failures:
        print(f"  not fixable: {e.board}")
    return 0 if exp.verdict else 1


def cmd_verify_catalog(args) -> int:
    entries, base = load_manifest(args.manifest or builtin_manifest())
    results = run_catalog(entries, base, workers=args.workers, cap=args.cap, only=args.only,
                          max_total=args.max_total)
    for r in results:
        print(r.row())
    fails = sum(r.status == "fail" for r in results)
    warns = sum(r.status == "warn" for r in results)
    print(f"{len(results)} entries: {len(results) - fails - warns} pass, {warns} warn, {fails} fail")
    return 0 if catalog_ok(results) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, help="number of colors (default: config 'k' line, else max degree)")
    common.add_argument("--mode", choices=MODES, help="board universe (default at-least)")
    common.add_argument("--edge", type=int, help="edge index for near mode (default: the marked edge)")
    common.add_argument("--cap", type=int, help="universe size limit (default 2^24 or $FIXGAME_CAP)")
    common.add_argument("--workers", type=int, default=1, help="worker processes per round")
    common.add_argument("--proof", help="write a LaTeX strategy for the deepest board to this path")
    common.add_argument("--depth-cap", type=int, default=DEFAULT_LATEX_DEPTH_CAP,
                        help="strategy levels written before truncating (default %(default)s)")
    common.add_argument("--no-depth-cap", action="store_true", help="write the full strategy tree")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="fixgame", description="Kempe-swap fixability solver")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("fixable", parents=[common], help="decide fixability of a configuration or board")
    s.add_argument("config")
    s.add_argument("--board", help="query one board instead of a universe")
    s.add_argument("--depths", action="store_true", help="print the depth report")
    s.add_argument("--losers", action="store_true", help="list losing boards")
    s.set_defaults(func=cmd_fixable)

    s = sub.add_parser("boards", parents=[common], help="enumerate canonical boards")
    s.add_argument("config")
    s.add_argument("--count", action="store_true")
    s.set_defaults(func=cmd_boards)

    for name, func, helptext in [("superabundance", cmd_superabundance, "check superabundance of a board"),
                                 ("multistar", cmd_multistar, "multistar certificate or refutation")]:
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("board_file")
        s.add_argument("--config", help="graph for board files without vertex/edge lines")
        s.set_defaults(func=func)

    s = sub.add_parser("ktv", parents=[common], help="validate an ordered (KTV) list assignment")
    s.add_argument("ktv_file")
    s.set_defaults(func=cmd_ktv)

    s = sub.add_parser("degree", parents=[common], help="degree-fixability experiment")
    s.add_argument("config")
    s.add_argument("--pot-cap", type=int, required=True)
    s.add_argument("--extra-board", action="append", default=[], help="also test this board")
    s.set_defaults(func=cmd_degree)

    s = sub.add_parser("verify-catalog", parents=[common], help="check a manifest of expected results")
    s.add_argument("manifest", nargs="?", help="manifest JSON (default: built-in catalog)")
    s.add_argument("--only", nargs="+", help="entry names to run")
    s.add_argument("--max-total", type=int, help="skip entries with more expected boards")
    s.set_defaults(func=cmd_verify_catalog)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if args.workers < 1:
        parser.error("--workers must be positive")
    if args.cap is not None and args.cap < 1:
        parser.error("--cap must be positive")
    try:
        return args.func(args)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
