"""Slice-regular polynomial toolkit over the quaternions.

Exact rational arithmetic (gmpy2) and a float backend share one code path.
"""

from .errors import *  # noqa: F401,F403
from .quat import (I, J, K, ONE, ZERO, Quaternion, SliceCoords, Sphere,
                   imaginary_unit, is_unit_imaginary, qinv, qmul,
                   slice_decompose, symmetrize_point)
from .starpoly import (QPoly, VectorClassTag, component_decompose, evaluate,
                       in_vector_class, left_divmod_linear, qpoly, recompose,
                       regular_conjugate, scalar_vector_split, sphere_sup,
                       star_mul, star_pow, stem_evaluate, symmetrization,
                       vector_class_parts)
from .semiregular import SemiRegularFn, semi_inverse, semi_mul, star_inverse
from .matrep import (MatRep2, MatRep4, det_check, exp_matrix, exp_matrix2,
                     exp_star, kernel_element, log_star, mat_norm_at,
                     matrix_norm, to_matrix, to_matrix2)
from .zeros import (Divisor, ZeroKind, ZeroRecord, build_with_zeros,
                    divisor_build, divisor_of, zero_set)
from .jets import (JetSpec, SphericalJet, TaylorJet, hermite_local,
                   jet_interpolate, spherical_expand, taylor_jet)
from .cousin import (AnnularPair, MultiplicativeSplit, SplitResult,
                     additive_split, glue_chain, multiplicative_split_general,
                     multiplicative_split_sp)

__version__ = "0.1.0"
