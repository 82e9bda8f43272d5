"""Built-in configuration catalog and the verification runner."""

from __future__ import annotations

import json
import logging
import time
from collections.abc import Sequence
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

from .boards import MODES, parse_board
from .engine import FixReport, is_fixable_board, reducing_edges, solve
from .multigraph import Configuration, parse_config

log = logging.getLogger(__name__)

VERDICTS = ("fixable", "not-fixable", "reducible")


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    """One expected result.

    ``board`` (optional) names a board file; such entries are single-board
    queries instead of universe solves. ``reducible`` means the universe has
    losing boards but some edge has all of its near boards won.
    """

    name: str
    config: str
    k: int
    mode: str
    expected_verdict: str
    expected_total: int | None = None
    expected_depths: tuple[int, ...] | None = None
    board: str | None = None

    def __post_init__(self):
        if self.expected_depths is not None:
            object.__setattr__(self, "expected_depths", tuple(self.expected_depths))
        if self.mode not in MODES:
            raise ManifestError(f"{self.name}: unknown mode {self.mode!r}")
        if self.expected_verdict not in VERDICTS:
            raise ManifestError(f"{self.name}: unknown verdict {self.expected_verdict!r}")

    def to_json(self) -> dict:
        d = asdict(self)
        if d["expected_depths"] is not None:
            d["expected_depths"] = list(d["expected_depths"])
        return {k: v for k, v in d.items() if v is not None}


def load_manifest(path: str | Path) -> tuple[list[CatalogEntry], Path]:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("entries"), list):
        raise ManifestError("manifest needs an 'entries' list")
    entries = []
    for raw in data["entries"]:
        try:
            entries.append(CatalogEntry(**raw))
        except TypeError as exc:
            raise ManifestError(f"malformed entry {raw!r}: {exc}") from exc
    return entries, path.parent


def builtin_manifest() -> Path:
    return Path(str(resources.files("fixgame") / "catalog" / "catalog.json"))


def builtin_config(name: str) -> Configuration:
    """Load a shipped configuration by file stem, e.g. ``"C1"``."""
    base = builtin_manifest().parent
    return parse_config((base / f"{name}.cfg").read_text())


@dataclass
class CatalogResult:
    name: str
    status: str  # pass, warn or fail
    verdict: str
    total: int | None = None
    depths: tuple[int, ...] | None = None
    convention: str | None = None
    message: str = ""
    seconds: float = 0.0

    def row(self) -> str:
        conv = self.convention or "-"
        total = "-" if self.total is None else str(self.total)
        return f"{self.status.upper():4} {self.name:10} {self.verdict:12} {total:>8} {conv:16} {self.message}"


def _verdict(c: Configuration, r: FixReport) -> str:
    if r.fixable:
        return "fixable"
    if r.mode in ("near", "near-union") and reducing_edges(c, r):
        return "reducible"
    return "not-fixable"


def _convention(r: FixReport) -> str:
    return f"near e={r.edge}" if r.mode == "near" else r.mode


def _alternates(c: Configuration, k: int, **kw):
    if c.marked_edge is not None:
        yield lambda: solve(c, k, "near", **kw)
    yield lambda: solve(c, k, "near-union", **kw)
    for _, _, eid in c.graph.edges:
        yield lambda eid=eid: solve(c, k, "near", edge=eid, **kw)
    yield lambda: solve(c, k, "exact", **kw)


def run_entry(e: CatalogEntry, base: Path, *, workers: int = 1, cap: int | None = None) -> CatalogResult:
    t0 = time.perf_counter()
    cfg_path = base / e.config
    if not cfg_path.exists():
        raise FileNotFoundError(f"{e.name}: missing configuration {cfg_path}")
    text = cfg_path.read_text()
    if e.board is not None:
        board_path = base / e.board
        if not board_path.exists():
            raise FileNotFoundError(f"{e.name}: missing board {board_path}")
        bf = parse_board(board_path.read_text(), parse_config(text).graph)
        g = bf.graph or parse_config(text).graph
        depth = is_fixable_board(g, bf.board, max(e.k, bf.board.k), cap=cap, workers=workers)
        verdict = "fixable" if depth is not None else "not-fixable"
        status = "pass" if verdict == e.expected_verdict else "fail"
        msg = "" if status == "pass" else f"expected {e.expected_verdict}"
        return CatalogResult(e.name, status, verdict, message=msg, convention="board",
                             seconds=time.perf_counter() - t0)

    c = parse_config(text)
    kw = dict(workers=workers, cap=cap)
    r = solve(c, e.k, e.mode, **kw)
    verdict = _verdict(c, r)
    res = CatalogResult(e.name, "pass", verdict, len(r), r.histogram(), _convention(r))
    if verdict != e.expected_verdict:
        res.status = "fail"
        res.message = f"expected {e.expected_verdict}"
    elif e.expected_total is not None or e.expected_depths is not None:

        def matches(rep: FixReport) -> bool:
            return ((e.expected_total is None or len(rep) == e.expected_total)
                    and (e.expected_depths is None or rep.histogram() == e.expected_depths))

        if not matches(r):
            res.convention = None
            if e.mode in ("near", "near-union"):
                tried = {_convention(r)}
                for make in _alternates(c, e.k, **kw):
                    alt = make()
                    conv = _convention(alt)
                    if conv in tried:
                        continue
                    tried.add(conv)
                    if matches(alt):
                        res.convention = conv
                        res.total, res.depths = len(alt), alt.histogram()
                        break
            if res.convention is None:
                res.status = "warn"
                res.message = f"counts differ: got {len(r)} {r.histogram()}"
            else:
                res.message = "counts match an alternate universe"
    res.seconds = time.perf_counter() - t0
    return res


def run_catalog(entries: Sequence[CatalogEntry], base: str | Path, *, workers: int = 1,
                cap: int | None = None, only: Sequence[str] | None = None,
                max_total: int | None = None) -> list[CatalogResult]:
    """Solve each entry and compare with its expectations. Entries are independent."""
    base = Path(base)
    out = []
    for e in entries:
        if only and e.name not in only:
            continue
        if max_total is not None and (e.expected_total or 0) > max_total:
            continue
        res = run_entry(e, base, workers=workers, cap=cap)
        log.info("%s", res.row())
        out.append(res)
    return out


def catalog_ok(results: Sequence[CatalogResult]) -> bool:
    return all(r.status != "fail" for r in results)


@dataclass
class Manifest:
    entries: list[CatalogEntry] = field(default_factory=list)

    def dumps(self) -> str:
        return json.dumps({"entries": [e.to_json() for e in self.entries]}, indent=1) + "\n"
