"""Structural analysis of two-dimensional tile sets and their tilings."""

from .cb import RankReport, derivative, isolated_classes, isolating_pattern, ranks
from .core import (
    Alphabet,
    Pattern,
    TileSet,
    TorusTiling,
    Vec2,
    appears_in,
    check_torus,
    to_forbidden,
)
from .lang import (
    TransferGraph,
    admissible_squares,
    build_transfer_graph,
    count_torus,
    extensible_squares,
    iter_admissible_squares,
)
from .order import (
    HasseDiagram,
    TilingFamily,
    equivalence_classes,
    hasse,
    level_of,
    maximal_classes,
    minimal_classes,
    preceq,
    saturation_window,
)
from .presentation import (
    Block,
    Finite,
    GridPresentation,
    Infinite,
    PeriodLattice,
    TypeA,
    TypeB,
    Zero,
    cell_at,
    equal,
    is_valid,
    occurrences,
    pattern_set,
    period_lattice,
    shift,
    transpose,
    type_of,
    uniform,
    window_at,
)
from .solver import (
    Empty,
    PeriodicFound,
    Unknown,
    classify,
    enumerate_torus,
    refute,
    weak_periodic_witness,
)

__all__ = [name for name in dir() if not name.startswith("_")]
