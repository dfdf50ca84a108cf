"""Dirac generating operators of proto-bialgebroids, with exact arithmetic."""

from .catalog import builtin, make_proto, random_3d_solution
from .courant import SplitSection, check_courant, clifford, derived_bracket_check, dorfman, metric
from .dirac import (
    build_dirac,
    characteristic,
    characteristic_report,
    is_generating,
    rescale_invariance,
    spinor_matrix,
    square_decomposition,
)
from .document import DocumentError, InputDocument, load, loads, save
from .dull import DullStructure
from .duality import TopDuality
from .exterior import Form, MultiVec, contract, pairing, wedge
from .proto import AxiomReport, ProtoData, check_axioms, identity_suite
from .ring import Poly, parse_poly

__all__ = [
    "AxiomReport", "DocumentError", "DullStructure", "Form", "InputDocument", "MultiVec", "Poly",
    "ProtoData", "SplitSection", "TopDuality", "build_dirac", "builtin", "characteristic",
    "characteristic_report", "check_axioms", "check_courant", "clifford", "contract",
    "derived_bracket_check", "dorfman", "identity_suite", "is_generating", "load", "loads",
    "make_proto", "metric", "pairing", "parse_poly", "random_3d_solution", "rescale_invariance",
    "save", "spinor_matrix", "square_decomposition", "wedge",
]
