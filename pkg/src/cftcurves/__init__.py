"""Zeta functions, ray class groups and abelian L-series of hyperelliptic
curves over finite fields, with exact arithmetic throughout."""

from .classgroup import BoundsExceeded, RayClassGroup, level_quotient, phi_of_modulus, ray_class_group
from .curve import INFINITY, Curve, CurveError, Place
from .functions import CurveFunction, Divisor, is_congruent_one, local_expand, principal_divisor
from .lseries import (
    Character,
    characters,
    conductor,
    constant_twist_check,
    cover_zeta,
    l_polynomial,
    l_series_euler,
    l_series_weighted,
    l_spectrum,
    primitive,
    split_character,
)
from .zeta import LPoly, class_number, zeta_l_polynomial

__version__ = "0.1.0"

__all__ = [
    "BoundsExceeded", "Character", "Curve", "CurveError", "CurveFunction", "Divisor",
    "INFINITY", "LPoly", "Place", "RayClassGroup", "characters", "class_number", "conductor",
    "constant_twist_check", "cover_zeta", "is_congruent_one", "l_polynomial", "l_series_euler",
    "l_series_weighted", "l_spectrum", "level_quotient", "local_expand", "phi_of_modulus",
    "primitive", "principal_divisor", "ray_class_group", "split_character", "zeta_l_polynomial",
]
