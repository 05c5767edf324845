"""Latin squares via the +/-1-move random walk: sampling, explicit move
paths between any two squares, and exhaustive/statistical verification."""

from .chain import ChainConfig, RngStream, run_parallel, sample, step
from .connect import (
    CyclePattern,
    MoveSequence,
    cycle_swap,
    find_row_cycles,
    normalize_to_proper,
    proper_row_cycles,
    swap_row_entries,
    transform_path,
)
from .core import (
    GridView,
    ImproperCell,
    IncidenceCube,
    InvalidSquare,
    LatinSquareError,
    SquareState,
    cube_from_grid,
    cyclic_square,
    grid_from_cube,
    validate,
)
from .moves import (
    IntercalateMove,
    InvalidMove,
    apply_move,
    apply_two_rowed_proper_move,
    enumerate_valid_moves,
    invert_move,
    is_valid_move,
)
from .oracle import (
    StateGraph,
    build_state_graph,
    check_connectivity_and_diameter,
    count_latin_squares,
    enumerate_latin_squares,
)
from .stats import UniformityReport, cell_symbol_frequency_test, chi_square_uniformity

__version__ = "0.1.0"

__all__ = [
    "ChainConfig",
    "CyclePattern",
    "GridView",
    "ImproperCell",
    "IncidenceCube",
    "IntercalateMove",
    "InvalidMove",
    "InvalidSquare",
    "LatinSquareError",
    "MoveSequence",
    "RngStream",
    "SquareState",
    "StateGraph",
    "UniformityReport",
    "apply_move",
    "apply_two_rowed_proper_move",
    "build_state_graph",
    "cell_symbol_frequency_test",
    "check_connectivity_and_diameter",
    "chi_square_uniformity",
    "count_latin_squares",
    "cube_from_grid",
    "cycle_swap",
    "cyclic_square",
    "enumerate_latin_squares",
    "enumerate_valid_moves",
    "find_row_cycles",
    "grid_from_cube",
    "invert_move",
    "is_valid_move",
    "normalize_to_proper",
    "proper_row_cycles",
    "run_parallel",
    "sample",
    "step",
    "swap_row_entries",
    "transform_path",
    "validate",
]
