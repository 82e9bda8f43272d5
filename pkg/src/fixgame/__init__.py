"""Edge-coloring fixability: the Kempe-swap game solved over canonical boards."""

from .abundance import (
    AbundanceReport,
    KtvInstance,
    ParityCounts,
    check_parity_bound,
    eta,
    is_superabundant,
    marcotte_seymour_holds,
    parity_counts,
    psi,
    validate_ktv,
)
from .boards import Board, CanonicalBoard, apply_swaps, board_size_bounds, canonicalize, enumerate_boards, swap_set
from .coloring import HallSystem, find_edge_coloring, hall_analyze, max_matching, validate_coloring
from .degree import degree_fixable_experiment
from .engine import (
    FixReport,
    adversary_partitions,
    is_fixable_board,
    is_fk_fixable,
    is_list_fixable,
    is_subfixable,
    respond_options,
    solve,
)
from .multigraph import Configuration, EdgeColoring, Multigraph, parse_config
from .multistar import multistar_certificate, multistar_fixable
from .report import parse_depth_report, render_depth_report, render_proof_latex
from .strategy import StrategyTree, extract_strategy

__all__ = [
    "AbundanceReport", "Board", "CanonicalBoard", "Configuration", "EdgeColoring", "FixReport", "HallSystem",
    "KtvInstance", "Multigraph", "ParityCounts", "StrategyTree", "adversary_partitions", "apply_swaps",
    "board_size_bounds", "canonicalize", "check_parity_bound", "degree_fixable_experiment", "enumerate_boards",
    "eta", "extract_strategy", "find_edge_coloring", "hall_analyze", "is_fixable_board", "is_fk_fixable",
    "is_list_fixable", "is_subfixable", "is_superabundant", "marcotte_seymour_holds", "max_matching",
    "multistar_certificate", "multistar_fixable", "parity_counts", "parse_config", "parse_depth_report", "psi",
    "render_depth_report", "render_proof_latex", "respond_options", "solve", "swap_set", "validate_coloring",
    "validate_ktv",
]
