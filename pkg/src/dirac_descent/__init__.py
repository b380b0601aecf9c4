"""Exact gamma matrices in any dimension and the descent of the Dirac equation."""

from .adapted import (
    AdaptedSet,
    adapted,
    adapted_base,
    adapted_fill_odd,
    adapted_step_even,
    conjugate_odd,
    verify_exchange_chiral,
)
from .clifford import (
    GammaSet,
    MatrixGroup,
    NumericGammaSet,
    OrderedProduct,
    VerificationReport,
    character_orthogonality,
    chiral,
    classify_odd_pair,
    commutant_basis,
    group_closure,
    kappa,
    kappa_projectors,
    lorentz_generators,
    materialize,
    normal_order,
    pseudoscalar_class,
    verify_clifford,
    verify_hermiticity,
    verify_traceless,
)
from .descent import DescentNode, descend_chain, diagonalize_kappa, drop_last, split_even, verify_block_relations
from .dirac import (
    DiracOperator,
    Momentum,
    dirac_adjoint,
    dirac_operator,
    dispersion_check,
    lagrangian_split_check,
    plane_wave_solutions,
    reduced_operator,
    reflection_equivalence_check,
)
from .exact import ExactMatrix, ExactScalar, adjoint, kron, mat_mul, trace

__version__ = "0.1.0"
