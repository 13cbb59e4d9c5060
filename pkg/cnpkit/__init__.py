"""
cnpkit - genomes, copy-number profiles and the distances between them

Exact desk-scale solvers for the genome-to-CNP and genome-to-genome
distances under segmental duplications and deletions, the polynomial
CNP conforming algorithm under breakpoint distance, generators for the
set-cover hardness reductions and a property harness that checks their
constructive content on small instances.
"""

from .cnpc_solver import (
    CnpcSolution,
    adjacencies,
    breakpoint_distance,
    breakpoints,
    cnpc_adjacency_count,
    cnpc_brute_force,
    cnpc_solve,
    find_transfer_pair,
    max_common_subvector,
)
from .config import CnpkitConfig, load_config
from .genome_core import (
    Alphabet,
    Cnp,
    Deletion,
    Duplication,
    Genome,
    OriginTaggedGenome,
    apply_deletion,
    apply_duplication,
    apply_sequence,
    cnp_of,
    remove_symbol,
    surviving_origins,
    with_origins,
    zero_symbol,
)
from .mcng_solver import (
    ExhaustiveSolver,
    McngInstance,
    SearchMode,
    SearchResult,
    SearchStatus,
    d_gcnp_exact,
    d_gg_exact,
    feasible,
)
from .reductions import (
    ColoredGraph,
    Cover,
    ScEcInstance,
    SetSystem,
    mcq_to_scec,
    sc_to_mcng,
)
from .verify import CheckReport, run_checks

__version__ = '1.0.0'

__all__ = [
    'Alphabet',
    'Genome',
    'Cnp',
    'Deletion',
    'Duplication',
    'OriginTaggedGenome',
    'cnp_of',
    'apply_deletion',
    'apply_duplication',
    'apply_sequence',
    'with_origins',
    'surviving_origins',
    'remove_symbol',
    'zero_symbol',
    'McngInstance',
    'SearchMode',
    'SearchResult',
    'SearchStatus',
    'ExhaustiveSolver',
    'feasible',
    'd_gcnp_exact',
    'd_gg_exact',
    'CnpcSolution',
    'adjacencies',
    'breakpoints',
    'breakpoint_distance',
    'max_common_subvector',
    'find_transfer_pair',
    'cnpc_solve',
    'cnpc_adjacency_count',
    'cnpc_brute_force',
    'SetSystem',
    'Cover',
    'ColoredGraph',
    'ScEcInstance',
    'sc_to_mcng',
    'mcq_to_scec',
    'CheckReport',
    'run_checks',
    'CnpkitConfig',
    'load_config',
]
