"""Temporal cooperative games: worth defined on agent sequences.

Exact rational computation of the basis system, SeqShare tables, the
marginal solution and its extended Shapley analog, with verifiers for the
sequential and extended axioms.
"""

from .axioms import (
    AxiomReport,
    Compatibility,
    Witness,
    check_ea,
    check_ee,
    check_enp,
    check_es,
    check_extshap_compat,
    check_i4oa,
    check_oir,
    check_sa,
    check_se,
    check_snp,
    check_ss,
    find_null_players,
)
from .basis import BasisOutcome, BasisSystem, Certificate, build_system, coordinate_range, is_basis_solution, solve
from .fixtures import fixture, remark_tables
from .game import (
    GameClassReport,
    SequenceSpace,
    SolutionTable,
    WorthTable,
    enumerate_sequences,
    label,
    optimal_sequence,
    predecessor,
    prefix_of,
    sequence_count,
    space,
    validate,
)
from .generators import GenSpec, generate, symmetrize
from .io import parse_game, parse_result, parse_solution, serialize_game, serialize_result, serialize_solution
from .seqshare import Membership, Policy, check_membership, improvize, run_seqshare
from .shapley import (
    carrier_extshap,
    carrier_game,
    carrier_solution_margsol,
    decompose,
    ext_shap,
    margsol,
    reduce,
)

__version__ = "0.1.0"
