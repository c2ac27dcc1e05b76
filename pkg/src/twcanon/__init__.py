"""Canonical construction terms and isomorphism testing for graphs of
bounded treewidth."""

from .atoms import AtomDecomposition, atom_decomposition
from .bags import (
    BagsResult,
    Params,
    Recorder,
    ReducedBagFamily,
    bags_no_cliqueseps,
    bags_with_atoms,
    local_step,
    reduced_family,
)
from .canonize import CanonContext, CanonResult, State, canonize, isomorphic
from .decomposition import (
    TreeDecomposition,
    ValidationReport,
    decomposition_to_term,
    make_cs,
    term_to_decomposition,
    validate,
)
from .errors import BudgetExceededError, TooWideError
from .graph import (
    Graph,
    Separation,
    components,
    induced_components,
    is_clique,
    neighborhood,
)
from .improved import improve, is_k_complemented
from .separations import (
    Adjacent,
    AtLeastCap,
    MinSeparation,
    min_separation_pair,
    min_separation_sets,
)
from .terms import LabelledGraph, Term, TermError, compare, parse, serialize

__version__ = "0.1.0"

__all__ = [
    "AtomDecomposition",
    "Adjacent",
    "AtLeastCap",
    "BagsResult",
    "BudgetExceededError",
    "CanonContext",
    "CanonResult",
    "Graph",
    "LabelledGraph",
    "MinSeparation",
    "Params",
    "Recorder",
    "ReducedBagFamily",
    "Separation",
    "State",
    "Term",
    "TermError",
    "TooWideError",
    "TreeDecomposition",
    "ValidationReport",
    "atom_decomposition",
    "bags_no_cliqueseps",
    "bags_with_atoms",
    "canonize",
    "compare",
    "components",
    "decomposition_to_term",
    "improve",
    "induced_components",
    "is_clique",
    "is_k_complemented",
    "isomorphic",
    "local_step",
    "make_cs",
    "min_separation_pair",
    "min_separation_sets",
    "neighborhood",
    "parse",
    "reduced_family",
    "serialize",
    "term_to_decomposition",
    "validate",
]
