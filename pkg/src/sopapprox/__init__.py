"""Error-rate-constrained approximation of two-level sum-of-products covers."""

from .config import DEFAULT_CONFIG, EngineConfig
from .cover import Cover, CoverError, build_cover, insert_cube, remove_cube, total_literals
from .cube import (
    Cube,
    cube_from_pattern,
    cube_literals,
    covered_minterms,
    expansions,
    make_cube,
    pattern,
)
from .engine import ApproxResult, EngineError, approximate, modify_sop, restore_sop, top_solutions
from .error_model import (
    cube_insertion_eics,
    error_details,
    exhaustive_error_rate,
    noe_from_er,
    sampled_error_rate,
)
from .insertion import Sct, augment, combine_and_estimate, cube_insertion, estimate_reduction, generate_scts
from .minimize import expand_pass, make_irredundant, minimize
from .pla import PlaDocument, PlaError, cover_from_document, document_from_cover, parse_pla, read_pla, save_pla, write_pla
from .removal import cube_removal, get_cube_eic, removal_gain, update_eics
from .solution import EMPTY_SOLUTION, Solution, SolutionError, make_solution, update_solution

__version__ = "0.1.0"

__all__ = [
    "ApproxResult",
    "Cover",
    "CoverError",
    "Cube",
    "DEFAULT_CONFIG",
    "EMPTY_SOLUTION",
    "EngineConfig",
    "EngineError",
    "PlaDocument",
    "PlaError",
    "Sct",
    "Solution",
    "SolutionError",
    "approximate",
    "augment",
    "build_cover",
    "combine_and_estimate",
    "cover_from_document",
    "covered_minterms",
    "cube_from_pattern",
    "cube_insertion",
    "cube_insertion_eics",
    "cube_literals",
    "cube_removal",
    "document_from_cover",
    "error_details",
    "estimate_reduction",
    "exhaustive_error_rate",
    "expand_pass",
    "expansions",
    "generate_scts",
    "get_cube_eic",
    "insert_cube",
    "make_cube",
    "make_irredundant",
    "make_solution",
    "minimize",
    "modify_sop",
    "noe_from_er",
    "parse_pla",
    "pattern",
    "read_pla",
    "remove_cube",
    "removal_gain",
    "restore_sop",
    "sampled_error_rate",
    "save_pla",
    "top_solutions",
    "total_literals",
    "update_eics",
    "update_solution",
    "write_pla",
]
