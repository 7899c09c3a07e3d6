from rayclass.arith.linalg import lattice_index, rank_mod, row_reduce_mod
from rayclass.arith.modular import (
    BabyStepTable,
    dlog_prime_order,
    dlog_table,
    element_of_order,
    legendre_symbol,
    primitive_root,
    sqrt_mod,
)
from rayclass.arith.primes import (
    PrimeFactorization,
    PrimeSieve,
    factorize,
    first_primes,
    get_sieve,
    is_prime,
    is_squarefree,
    odd_prime_divisors,
    sieve_primes,
    squarefree_part,
)

__all__ = [
    "BabyStepTable",
    "PrimeFactorization",
    "PrimeSieve",
    "dlog_prime_order",
    "dlog_table",
    "element_of_order",
    "factorize",
    "first_primes",
    "get_sieve",
    "is_prime",
    "is_squarefree",
    "lattice_index",
    "legendre_symbol",
    "odd_prime_divisors",
    "primitive_root",
    "rank_mod",
    "row_reduce_mod",
    "sieve_primes",
    "sqrt_mod",
    "squarefree_part",
]
