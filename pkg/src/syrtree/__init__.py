"""Exact toolkit for 3n+1 sequences.

Incoming-term matrices over the odd integers, the component connection
tree built on them, two independent sequence generators, and a bounded
verification harness with brute-force oracles.
"""

from .arith import (
    DEFAULT_MAX_STEPS,
    NotReducible,
    col_step,
    index_lift,
    lift,
    odd_part,
    syr,
    syr_class,
    unlift,
    v2,
)
from .matrices import Coord, child_column, entry, iter_connections, locate, residue6, syr_via_matrix
from .sequences import (
    ColSequence,
    SeqStats,
    SyrSequence,
    col_seq,
    collatz_expand,
    stats,
    syr_seq_model,
    syr_seq_oracle,
)
from .tree import (
    ComponentId,
    RootPath,
    Tree,
    TreeEdge,
    build_tree,
    children,
    connection_point,
    export,
    path_to_root,
)
from .verify import (
    PropertyCheck,
    SweepReport,
    check_closed_forms,
    check_connection_coverage,
    check_coverage,
    check_cycle_freedom,
    check_even_identity,
    check_partition,
    run_check,
    sweep_convergence,
    table_a_rows,
    table_b_cells,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_MAX_STEPS",
    "NotReducible",
    "v2",
    "odd_part",
    "syr",
    "col_step",
    "lift",
    "unlift",
    "index_lift",
    "syr_class",
    "Coord",
    "entry",
    "locate",
    "syr_via_matrix",
    "residue6",
    "child_column",
    "iter_connections",
    "ComponentId",
    "TreeEdge",
    "Tree",
    "RootPath",
    "children",
    "connection_point",
    "build_tree",
    "path_to_root",
    "export",
    "SyrSequence",
    "ColSequence",
    "SeqStats",
    "syr_seq_oracle",
    "syr_seq_model",
    "collatz_expand",
    "col_seq",
    "stats",
    "PropertyCheck",
    "SweepReport",
    "check_partition",
    "check_coverage",
    "check_closed_forms",
    "check_connection_coverage",
    "check_cycle_freedom",
    "check_even_identity",
    "sweep_convergence",
    "run_check",
    "table_a_rows",
    "table_b_cells",
]
