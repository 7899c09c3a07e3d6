"""Residue arithmetic modulo a prime: symbols, square roots, roots of unity and discrete logs."""

import logging
import math
import random
from typing import Dict, Optional

import numpy as np

from rayclass.arith.primes import factorize, is_prime
from rayclass.types import DomainError, ResourceError
from rayclass.utils.settings import get_settings

logger = logging.getLogger(__name__)


def _check_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")


def euler_symbol(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion without validating p."""
    s = pow(a % p, (p - 1) // 2, p)
    return -1 if s == p - 1 else s


def legendre_symbol(a: int, p: int) -> int:
    _check_odd_prime(p)
    return euler_symbol(a, p)


def sqrt_mod(a: int, p: int) -> int:
    """Square root of a modulo p, normalized to [1, (p-1)/2].

    Tonelli-Shanks with the non-residue found by scanning 2, 3, 4, ...
    """
    _check_odd_prime(p)
    a %= p
    if euler_symbol(a, p) != 1:
        raise DomainError(f"{a} is not a nonzero square modulo {p}")

    if p % 4 == 3:
        x = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while euler_symbol(z, p) != -1:
            z += 1
        c = pow(z, q, p)
        x = pow(a, (q + 1) // 2, p)
        t = pow(a, q, p)
        m = s
        while t != 1:
            t2i, i = t, 0
            while t2i != 1:
                t2i = t2i * t2i % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            x = x * b % p
            c = b * b % p
            t = t * c % p
            m = i
    if x * x % p != a:
        raise DomainError(f"{a} has no square root modulo {p}")
    return min(x, p - x)


def element_of_order(l: int, p: int, seed: int = 0) -> int:
    """A residue of exact multiplicative order l, reproducible from (seed, p, l)."""
    if l < 2 or not is_prime(l) or not is_prime(p) or (p - 1) % l:
        raise DomainError(f"{l} is not a prime divisor of {p} - 1")
    rng = random.Random(f"{seed}:{p}:{l}")
    e = (p - 1) // l
    while True:
        zeta = pow(rng.randrange(2, p), e, p)
        if zeta != 1:
            return zeta


class BabyStepTable:
    """Baby steps zeta^j for j < size, shared across many lookups in the order-l subgroup."""

    def __init__(self, zeta: int, l: int, p: int, lookups: int = 1):
        self.zeta = zeta
        self.l = l
        self.p = p
        # balance table size against the number of expected lookups
        self.size = min(l, math.isqrt(l * max(lookups, 1)) + 1)
        self.table: Dict[int, int] = {}
        value = 1
        for j in range(self.size):
            self.table.setdefault(value, j)
            value = value * zeta % p
        self.giant = pow(zeta, -self.size, p)

    def log(self, target: int) -> int:
        gamma = target % self.p
        steps = -(-self.l // self.size)
        for i in range(steps + 1):
            j = self.table.get(gamma)
            if j is not None:
                return (i * self.size + j) % self.l
            gamma = gamma * self.giant % self.p
        raise DomainError(
            f"{target} is not a power of {self.zeta} modulo {self.p}",
            data={"l": self.l, "p": self.p},
        )


def dlog_prime_order(zeta: int, target: int, l: int, p: int) -> int:
    return BabyStepTable(zeta, l, p).log(target)


def primitive_root(p: int) -> int:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p == 2:
        return 1
    qs = factorize(p - 1).primes
    g = 2
    while any(pow(g, (p - 1) // q, p) == 1 for q in qs):
        g += 1
    return g


def dlog_table(p: int, g: Optional[int] = None) -> np.ndarray:
    """Full discrete log table: table[x] = k with g^k = x for 1 <= x < p."""
    bound = get_settings().oracle_prime_bound
    if p > bound:
        raise ResourceError(f"discrete log table for p = {p} exceeds the bound {bound}")
    g = g or primitive_root(p)
    table = np.full(p, -1, dtype=np.int64)
    x = 1
    for k in range(p - 1):
        table[x] = k
        x = x * g % p
    return table
