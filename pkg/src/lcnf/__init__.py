"""Redundancy analysis for labelled CNF formulas.

A labelled CNF formula attaches a finite set of integer labels to every
clause; clauses with no labels are permanent.  Removing a set of labels
removes every clause that depends on one of them, and the questions "which
labels are needed?" and "which labels can go?" generalize minimal
unsatisfiable cores, maximal satisfiable subsets and their clausal, group
and variable-level variants into one setting.

The package computes single witnesses (`compute_lmes`, `compute_lmus`,
`compute_lmss`, `compute_lmns`), enumerates complete witness families
exhaustively (`classify_all`), and checks the hitting-set duality that ties
the minimal and maximal families together (`verify_duality`).
"""

from .analysis import (
    Witness,
    WitnessKind,
    complement_of,
    compute_lmes,
    compute_lmns,
    compute_lmss,
    compute_lmus,
    is_label_redundant,
    max_lmss,
    duality_preconditions,
)
from .bruteforce import (
    AnalysisReport,
    GenerationProfile,
    classify_all,
    random_lcnf,
)
from .core import Clause, LcnfFormula, is_subformula, label
from .duality import (
    DualityVerdict,
    SetFamily,
    enumerate_colmns_via_duality,
    enumerate_lmes_via_duality,
    enumerate_minimal_hitting_sets,
    is_hitting_set,
    is_irreducible_hitting_set,
    verify_duality,
)
from .errors import LcnfError, ParseError, PreconditionError, ResourceLimitError
from .interface import (
    main,
    parse_dimacs,
    parse_gcnf,
    parse_lcnf,
    serialize_dimacs,
    serialize_gcnf,
    serialize_lcnf,
)
from .oracle import LcnfOracle, SatOutcome, Solver, entails, solve

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "Clause",
    "DualityVerdict",
    "GenerationProfile",
    "LcnfError",
    "LcnfFormula",
    "LcnfOracle",
    "ParseError",
    "PreconditionError",
    "ResourceLimitError",
    "SatOutcome",
    "SetFamily",
    "Solver",
    "Witness",
    "WitnessKind",
    "classify_all",
    "complement_of",
    "compute_lmes",
    "compute_lmns",
    "compute_lmss",
    "compute_lmus",
    "enumerate_colmns_via_duality",
    "enumerate_lmes_via_duality",
    "enumerate_minimal_hitting_sets",
    "entails",
    "is_hitting_set",
    "is_irreducible_hitting_set",
    "is_label_redundant",
    "is_subformula",
    "label",
    "main",
    "max_lmss",
    "parse_dimacs",
    "parse_gcnf",
    "parse_lcnf",
    "random_lcnf",
    "serialize_dimacs",
    "serialize_gcnf",
    "serialize_lcnf",
    "solve",
    "duality_preconditions",
    "verify_duality",
]
