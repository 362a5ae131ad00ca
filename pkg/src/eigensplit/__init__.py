"""Desk-scale arithmetic of cyclotomic units, p-adic L-values, and the
graded homotopy bookkeeping they control.

The layers build upward: exact p-adic and truncated power series
arithmetic, the formal group with multiplication X^p + pX and its
strict isomorphism to the multiplicative group, cyclotomic rings with
Galois action and eigenprojection, the logarithmic-derivative
homomorphisms on units, Bernoulli numbers and p-adic L-values, and a
finitely generated graded model of the resulting spectra together with
the duality it is supposed to satisfy.
"""

from .cyclotomic import (
    CycElt,
    CycRing,
    NormCompatiblePair,
    check_eps1_nontorsion,
    cyc_ring,
    eigen_unit,
    eigen_valuation,
    galois_apply,
    nontorsion_certified,
    norm_down,
    norm_to_qp,
    unit_pow_zp,
)
from .errors import (
    EigensplitError,
    PrecisionError,
    UsageError,
    VerificationError,
)
from .formal_groups import cw_tower_x, lubin_tate_log, theta
from .homotopy import (
    DualityReport,
    FgZpModule,
    GradedModule,
    LesReport,
    SpectrumId,
    anderson_dual,
    assemble,
    homotopy_of,
    les_consistency,
    verify_main_duality,
)
from .kummer import (
    bernoulli_criterion_surrogate,
    cw_unit,
    cw_unit_pair,
    generator_certificate,
    kummer_phi,
    lang_generator_search,
    lang_unit,
)
from .lfunctions import (
    LValue,
    bernoulli,
    configure_cache,
    irregular_pairs,
    lp_value,
    regularity_certificate,
)
from .padic import PadicCtx, PadicInt, Valuation, is_prime
from .series import TruncSeries

__version__ = "0.1.0"

__all__ = [
    "CycElt",
    "CycRing",
    "DualityReport",
    "EigensplitError",
    "FgZpModule",
    "GradedModule",
    "LValue",
    "LesReport",
    "NormCompatiblePair",
    "PadicCtx",
    "PadicInt",
    "PrecisionError",
    "SpectrumId",
    "TruncSeries",
    "UsageError",
    "Valuation",
    "VerificationError",
    "anderson_dual",
    "assemble",
    "bernoulli",
    "bernoulli_criterion_surrogate",
    "check_eps1_nontorsion",
    "configure_cache",
    "cw_tower_x",
    "cw_unit",
    "cw_unit_pair",
    "cyc_ring",
    "eigen_unit",
    "eigen_valuation",
    "galois_apply",
    "generator_certificate",
    "homotopy_of",
    "irregular_pairs",
    "is_prime",
    "kummer_phi",
    "lang_generator_search",
    "lang_unit",
    "les_consistency",
    "lp_value",
    "lubin_tate_log",
    "nontorsion_certified",
    "norm_down",
    "norm_to_qp",
    "regularity_certificate",
    "theta",
    "unit_pow_zp",
    "verify_main_duality",
]
