"""Linear forms in Euler's constant and logarithms, with high-precision checks.

The integral I_n is evaluated four independent ways (see
:mod:`gamma_forms.representations`) and fed into the fractional-part criterion
in :mod:`gamma_forms.criterion`.
"""

__version__ = "0.1.0"

from .criterion import check_theorem1, criterion_sweep, extract_gamma, implied_gamma_approx
from .linforms import build_linear_form, closed_form_Ln_An, decompose_Rn
from .representations import (
    Method,
    In_closed_form,
    In_double_integral,
    In_hypergeometric,
    In_series,
    cross_validate,
)

__all__ = [
    "Method",
    "In_closed_form",
    "In_double_integral",
    "In_hypergeometric",
    "In_series",
    "build_linear_form",
    "check_theorem1",
    "closed_form_Ln_An",
    "criterion_sweep",
    "cross_validate",
    "decompose_Rn",
    "extract_gamma",
    "implied_gamma_approx",
]
