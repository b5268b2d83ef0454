"""Canonical Hecke characters of imaginary quadratic fields and certified
non-vanishing of the central derivative of their L-functions."""

from .arith import class_number, field_data, is_valid_discriminant, kronecker, liouville
from .bounds import VerdictReport, c_trivial_bound, r_lower_bound, verdict
from .characters import CanonicalCharacter, TwistedCharacter, build_canonical, twist
from .kernels import f_eval, gamma0
from .lseries import C_term, EvaluationRecord, R_term, RootNumberError, central_derivative

__all__ = [
    "C_term",
    "CanonicalCharacter",
    "EvaluationRecord",
    "R_term",
    "RootNumberError",
    "TwistedCharacter",
    "VerdictReport",
    "build_canonical",
    "c_trivial_bound",
    "central_derivative",
    "class_number",
    "f_eval",
    "field_data",
    "gamma0",
    "is_valid_discriminant",
    "kronecker",
    "liouville",
    "r_lower_bound",
    "twist",
    "verdict",
]
__version__ = "0.1.0"
