"""Polynomial multiplication in Z_m[x]/<x^n - a> via number theoretic transforms."""

from .fft import (
    CrtForm,
    EvalVector,
    NttPlan,
    crt_fft,
    crt_ifft,
    crt_mul,
    fft_forward,
    fft_mul,
    ifft,
    make_plan,
)
from .partial_ntt import factor_xn_plus_1, generalized_fft_mul, stride, unstride
from .poly import Poly, dual_karatsuba_mod, karatsuba, schoolbook_mul, schoolbook_mul_mod
from .roots import ParameterSet, compute_alpha_omega, find_root_of_a, make_twofold_set
from .zm_arith import Modulus, factorize

__all__ = [
    "CrtForm",
    "EvalVector",
    "Modulus",
    "NttPlan",
    "ParameterSet",
    "Poly",
    "compute_alpha_omega",
    "crt_fft",
    "crt_ifft",
    "crt_mul",
    "dual_karatsuba_mod",
    "factor_xn_plus_1",
    "factorize",
    "fft_forward",
    "fft_mul",
    "find_root_of_a",
    "generalized_fft_mul",
    "ifft",
    "karatsuba",
    "make_plan",
    "make_twofold_set",
    "schoolbook_mul",
    "schoolbook_mul_mod",
    "stride",
    "unstride",
]
