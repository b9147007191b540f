"""Exact-arithmetic differential algebra.

Sparse rational polynomials with the total-derivative tensor, differential
polynomials with the shift derivation, truncated Hurwitz and power series,
the shuffle-algebra Rota-Baxter instance, and a seeded harness that checks
every derivation law the package relies on.
"""

from .diff_laws import DiffCarrier, LawReport
from .free_diff import DVar, alpha, beta, d_shift, d_shift_via_sharp, dvar, extend, natural_map
from .hurwitz import (
    Flavor,
    Series,
    SeriesOfSeries,
    colift,
    comul,
    delta_eval,
    diamond,
    omega_eval,
    psi,
    psi_inv,
    ring_eval,
    sderive,
    smul,
    sunit,
)
from .polynomial import (
    LinearMap,
    Poly,
    Tensor,
    coderive,
    derive,
    eta,
    euler,
    flat,
    map_linear,
    partial,
    sharp,
    substitute,
    unit_poly,
)
from .rota_baxter import RBElem, check_rota_baxter, rb_D, rb_D_raw, rb_P, rb_mul, shuffle
from .scalars import Rational, binom, factorial

__version__ = "0.1.0"

__all__ = [
    "DiffCarrier", "LawReport", "DVar", "alpha", "beta", "d_shift",
    "d_shift_via_sharp", "dvar", "extend", "natural_map", "Flavor", "Series",
    "SeriesOfSeries", "colift", "comul", "delta_eval", "diamond", "omega_eval",
    "psi", "psi_inv", "ring_eval", "sderive", "smul", "sunit", "LinearMap",
    "Poly", "Tensor", "coderive", "derive", "eta", "euler", "flat",
    "map_linear", "partial", "sharp", "substitute", "unit_poly", "RBElem",
    "check_rota_baxter", "rb_D", "rb_D_raw", "rb_P", "rb_mul", "shuffle",
    "Rational", "binom", "factorial",
]
