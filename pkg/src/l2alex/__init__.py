"""L2-Alexander torsion functions in the computable free-abelian-twist regime.

Building blocks: exact sparse Laurent polynomial algebra (``laurent``),
cohomology classes and the determinant twist (``twist``), Mahler measures
(``mahler``), determinant-function degree analysis (``degree``), torsion
assembly for 3-manifold presentations and closed-form families
(``torsion3m``), and a CLI (``cli``).

The hot quadrature kernel is compiled (Cython) when available; a numpy
fallback is selected automatically. ``kernels.KERNEL_BACKEND`` says which.
"""

from .degree import (AsymptoteReport, ConvexityReport, DetFunction,
                     LipschitzReport, asymptote, chief_part, convexity_check,
                     det_function, evaluate, lipschitz_degree_check)
from .errors import (ChiefPartTieError, DegenerateSliceError, InputError,
                     L2AlexError, QuadratureBudgetError, VariableCountMismatch,
                     ZeroMatrixError, ZeroPolynomialError)
from .kernels import KERNEL_BACKEND
from .laurent import (LaurentMatrix, LaurentPoly, matrix_adjoint,
                      matrix_determinant, poly_involution, poly_mul)
from .mahler import (MahlerResult, MonomialPiece, RootData, mahler_1v,
                     mahler_mv, mahler_mv_report, monomial_profile,
                     profile_value, roots, scaled_mahler_1v)
from .quadrature import geometric_grid
from .torsion3m import (FIGURE_EIGHT_ENTROPY, FIGURE_EIGHT_VOLUME, UNSPECIFIED,
                        V3, ConstantTorsion, FiberedTorsion, GraphTorsion,
                        PresentationTorsion, ProductTorsion, SymmetryReport,
                        TorsionFunction, TorsionSpec, fibered_torsion, glue,
                        graph_torsion, hexagon_norm_check, symmetry_check,
                        torsion_degree, torsion_from_presentation,
                        triple_figure_eight, triple_figure_eight_torsion)
from .twist import (CohomClass, exponent_bound, index_rescale, powint,
                    twist_matrix, twist_poly, twist_poly_multi)

__version__ = "0.1.0"

__all__ = [
    "AsymptoteReport", "ChiefPartTieError", "CohomClass", "ConstantTorsion",
    "ConvexityReport", "DegenerateSliceError", "DetFunction", "FiberedTorsion",
    "FIGURE_EIGHT_ENTROPY", "FIGURE_EIGHT_VOLUME", "GraphTorsion",
    "InputError", "KERNEL_BACKEND", "L2AlexError", "LaurentMatrix",
    "LaurentPoly", "LipschitzReport", "MahlerResult", "MonomialPiece",
    "PresentationTorsion", "ProductTorsion", "QuadratureBudgetError",
    "RootData", "SymmetryReport", "TorsionFunction", "TorsionSpec",
    "UNSPECIFIED", "V3", "VariableCountMismatch", "ZeroMatrixError",
    "ZeroPolynomialError", "asymptote", "chief_part", "convexity_check",
    "det_function", "evaluate", "exponent_bound", "fibered_torsion",
    "geometric_grid", "glue", "graph_torsion", "hexagon_norm_check",
    "index_rescale", "lipschitz_degree_check", "mahler_1v", "mahler_mv",
    "mahler_mv_report", "matrix_adjoint", "matrix_determinant",
    "monomial_profile", "poly_involution", "poly_mul", "powint",
    "profile_value", "roots", "scaled_mahler_1v", "symmetry_check",
    "torsion_degree", "torsion_from_presentation", "triple_figure_eight",
    "triple_figure_eight_torsion", "twist_matrix", "twist_poly",
    "twist_poly_multi",
]
