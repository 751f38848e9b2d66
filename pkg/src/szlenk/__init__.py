"""Orlicz sequence norms, Szlenk derivation radius bounds and numerical checks."""

from .bounds import (
    EquivalenceConstants,
    ModulusTriple,
    exact_radius,
    lower_radius,
    lp_radius,
    radius_profile,
    upper_radius,
)
from .errors import BudgetExceededError, DomainError, InvariantError, OutOfDomainError
from .iteration import iterate_radii, lp_szlenk_index, szlenk_index
from .orlicz import OrliczFunction, SparseVector, luxemburg_norm, quartic_norm_closed_form

__version__ = "0.1.0"
