"""Domain lattices over surfaces and the words that live on them.

The pieces fit together like this: `surfaces` holds signature
arithmetic, `pants` builds the finite lattice of connected subsurface
domains attached to a pants decomposition, and `torus` is the same
interface over the one-holed torus, where the domains are annuli at
rational slopes (`slopes`, `farey`). `words` rewrites words over domain
and group letters with ordinal termination certificates (`ordinals`),
`groups` adds a small symbolic mapping-class group on top of a pants
backend, `rank` turns chain lengths into rank bookkeeping, `graphs`
records geometric graph data with chain bounds, and `fragments` checks
first-order conditions over explicit finite budgets. `cli` exposes the
lot as a JSON-reporting command line tool.
"""

__version__ = "0.1.0"

from .surfaces import (
    Signature,
    complexity,
    curve_system_size,
    euler_characteristic,
    is_sporadic,
    max_chain_length,
)
from .ordinals import OrdinalCNF, natural_sum, omega_power, parse_ordinal
from .slopes import Slope, farey_distance, annular_distance
from .pants import PantsBackend, enumerate_chains, enumerate_pants_graphs
from .torus import TorusBackend, T_FULL, annulus
from .words import (
    DomainLetter,
    GroupLetter,
    PreceqUndecided,
    ReducedClass,
    dl,
    gl,
    ordinal_of,
    preceq,
    reduce_nc,
    star,
    symmetric_decomposition,
    triangle_decomposition,
)
from .groups import SymbolicBackend, dumbbell_symbolic_backend
from .rank import morley_rank_theory, morley_upper_bound
from .graphs import (
    GeomGraphSpec,
    Orbit,
    builtin_catalog,
    graph_report,
    k_of_graph,
    rank_bound,
)
from .fragments import Fragment, decide_R_w, delta_search
from .farey import behrstock_scan, displacement_K, generic_witness

__all__ = [
    "__version__",
    "Signature",
    "complexity",
    "curve_system_size",
    "euler_characteristic",
    "is_sporadic",
    "max_chain_length",
    "OrdinalCNF",
    "natural_sum",
    "omega_power",
    "parse_ordinal",
    "Slope",
    "farey_distance",
    "annular_distance",
    "PantsBackend",
    "enumerate_chains",
    "enumerate_pants_graphs",
    "TorusBackend",
    "T_FULL",
    "annulus",
    "DomainLetter",
    "GroupLetter",
    "PreceqUndecided",
    "ReducedClass",
    "dl",
    "gl",
    "ordinal_of",
    "preceq",
    "reduce_nc",
    "star",
    "symmetric_decomposition",
    "triangle_decomposition",
    "SymbolicBackend",
    "dumbbell_symbolic_backend",
    "morley_rank_theory",
    "morley_upper_bound",
    "GeomGraphSpec",
    "Orbit",
    "builtin_catalog",
    "graph_report",
    "k_of_graph",
    "rank_bound",
    "Fragment",
    "decide_R_w",
    "delta_search",
    "behrstock_scan",
    "displacement_K",
    "generic_witness",
]
