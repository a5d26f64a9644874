from .fields import GF, QQ, ZZ, ExtField, Integers, PrimeField, Rationals, quadratic_character, sqrt_mod
from .primes import is_prime, is_squarefree, primes_below, trial_factor
from .unipoly import (
    UniPoly,
    distinct_degree_factorization,
    is_irreducible,
    squarefree_decomposition,
    unipoly_factor,
    unipoly_gcd,
    unipoly_is_scaled_square,
    unipoly_roots,
    unipoly_xgcd,
)

__all__ = [
    "GF",
    "QQ",
    "ZZ",
    "ExtField",
    "Integers",
    "PrimeField",
    "Rationals",
    "UniPoly",
    "distinct_degree_factorization",
    "is_irreducible",
    "is_prime",
    "is_squarefree",
    "primes_below",
    "quadratic_character",
    "sqrt_mod",
    "squarefree_decomposition",
    "trial_factor",
    "unipoly_factor",
    "unipoly_gcd",
    "unipoly_is_scaled_square",
    "unipoly_roots",
    "unipoly_xgcd",
]
