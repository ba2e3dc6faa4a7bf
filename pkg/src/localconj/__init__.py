"""Exact-arithmetic decisions about integer matrix conjugacy over the p-adic
integers, and the matching weak-equivalence tests on fractional ideals."""

from .bridge import EigenData, eigenvector, ideal_of_matrix, verify_multiplication_rep
from .conjugacy import (
    EllInvariant,
    GlobalCert,
    IntegerPairCert,
    UnitModCert,
    Verdict,
    companion_test,
    conjugate_over_Zp,
    conjugate_over_all_Zp,
    ell_invariant,
    screen_primes,
    verify_cert,
)
from .gen import GeneratedPair, generate_pair, random_unimodular
from .ideals import (
    IdealLattice,
    Order,
    coeff_ring,
    down_map,
    in_Id_p,
    index,
    intersection,
    is_invertible,
    mul,
    quotient,
    theta_membership,
    up_map,
    verify_arith_equiv,
    weak_equivalence_data,
    weakly_equivalent,
    zbeta_order,
)
from .intmat import (
    IntMatrix,
    PrimePartProfile,
    SNFDecomposition,
    det,
    kernel_basis_Z,
    kernel_mod,
    p_part,
    snf,
)
from .polyfield import (
    FieldElement,
    IntPoly,
    NumberField,
    charpoly,
    discriminant,
    is_irreducible,
    parse_poly,
    resultant,
)
from .primes import factorize, is_prime
from .sylvester import (
    SylvesterOperator,
    build_operator,
    lift_kernel,
    lift_padic_solution,
    mu,
    unvec,
    vec,
)

__version__ = "0.1.0"

__all__ = [
    "EigenData",
    "EllInvariant",
    "FieldElement",
    "GeneratedPair",
    "GlobalCert",
    "IdealLattice",
    "IntMatrix",
    "IntPoly",
    "IntegerPairCert",
    "NumberField",
    "Order",
    "PrimePartProfile",
    "SNFDecomposition",
    "SylvesterOperator",
    "UnitModCert",
    "Verdict",
    "build_operator",
    "charpoly",
    "coeff_ring",
    "companion_test",
    "conjugate_over_Zp",
    "conjugate_over_all_Zp",
    "det",
    "discriminant",
    "down_map",
    "eigenvector",
    "ell_invariant",
    "factorize",
    "generate_pair",
    "ideal_of_matrix",
    "in_Id_p",
    "index",
    "intersection",
    "is_invertible",
    "is_irreducible",
    "is_prime",
    "kernel_basis_Z",
    "kernel_mod",
    "lift_kernel",
    "lift_padic_solution",
    "mu",
    "mul",
    "p_part",
    "parse_poly",
    "quotient",
    "random_unimodular",
    "resultant",
    "screen_primes",
    "snf",
    "theta_membership",
    "unvec",
    "up_map",
    "vec",
    "verify_arith_equiv",
    "verify_cert",
    "verify_multiplication_rep",
    "weak_equivalence_data",
    "weakly_equivalent",
    "zbeta_order",
]
