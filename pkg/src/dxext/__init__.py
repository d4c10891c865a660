"""Exact Ext computations for canonical modules of singular hypersurfaces.

The package computes kernels and cokernels of right multiplication by a
polynomial f on modules over the Weyl algebra, entirely in rational
arithmetic: graded dimension tables for the self case D/(Df+fD) and for
concrete holonomic modules, twist elements mediating the endomorphism
action, a Diamond-Lemma rewriting engine cross-validating the node
computation, a vanishing predictor for curve singularities, and
isotypic counting formulas for finite abelian quotient singularities.
"""

from .curves import (
    CrossCheckReport,
    CurvePoint,
    CurveSpec,
    Eigenvalue,
    LocalSystemSpec,
    NOT_VANISHES,
    Prediction,
    UNDETERMINED,
    VANISHES,
    completely_nontrivial,
    cross_check,
    planar_model,
    predict,
)
from .hyperext import (
    EndElement,
    NoTwistSolution,
    action_ext0,
    action_ext1,
    action_ext1_on_ext1,
    end_membership,
    ext1_self_dims,
    ext_module_dims,
    solve_twist,
)
from .models import (
    DeltaModule,
    DXQuotientModule,
    FreeWeylModule,
    KummerICModule,
    LineICModule,
    check_module_axioms,
    parse_model,
)
from .parser import ParseError, parse
from .quotients import (
    Character,
    DiagonalGroupAction,
    GradedDims,
    cyclotomic_polynomial,
    distinct_characters,
    hypersurface_cech_dims,
    ic_local_system_ext_dims,
    isotypic_dims,
    molien_isotypic_dims,
    one_minus_g_span_dims,
    parse_character,
    parse_group,
    rend_cohomology_dims,
)
from .rewrite import (
    PRESETS,
    ConfluenceReport,
    RewriteRule,
    RewriteSystem,
    confluence_check,
    irreducible_dims,
    node_system,
)
from .tables import (
    EXACT_GRADED,
    EXACT_ZERO,
    STABILIZED,
    TruncationLevel,
    TruncationTable,
)
from .verify import CheckResult, SUITE_NAMES, run_suite
from .weyl import Filtration, SymbolPoly, WeylElement

__version__ = "0.1.0"

__all__ = [
    "WeylElement",
    "SymbolPoly",
    "Filtration",
    "parse",
    "ParseError",
    "TruncationTable",
    "TruncationLevel",
    "EXACT_ZERO",
    "EXACT_GRADED",
    "STABILIZED",
    "ext1_self_dims",
    "ext_module_dims",
    "solve_twist",
    "end_membership",
    "EndElement",
    "NoTwistSolution",
    "action_ext0",
    "action_ext1",
    "action_ext1_on_ext1",
    "FreeWeylModule",
    "DeltaModule",
    "LineICModule",
    "KummerICModule",
    "DXQuotientModule",
    "check_module_axioms",
    "parse_model",
    "RewriteRule",
    "RewriteSystem",
    "ConfluenceReport",
    "node_system",
    "confluence_check",
    "irreducible_dims",
    "PRESETS",
    "CurvePoint",
    "LocalSystemSpec",
    "Eigenvalue",
    "Prediction",
    "CurveSpec",
    "VANISHES",
    "NOT_VANISHES",
    "UNDETERMINED",
    "completely_nontrivial",
    "predict",
    "planar_model",
    "cross_check",
    "CrossCheckReport",
    "DiagonalGroupAction",
    "Character",
    "GradedDims",
    "isotypic_dims",
    "distinct_characters",
    "ic_local_system_ext_dims",
    "rend_cohomology_dims",
    "one_minus_g_span_dims",
    "hypersurface_cech_dims",
    "molien_isotypic_dims",
    "cyclotomic_polynomial",
    "parse_group",
    "parse_character",
    "run_suite",
    "SUITE_NAMES",
    "CheckResult",
    "__version__",
]
