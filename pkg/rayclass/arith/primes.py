"""Prime sieving, primality and factorization."""

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from rayclass.types import DomainError, InvariantViolation, ResourceError
from rayclass.utils.cache import ComputationCache
from rayclass.utils.settings import get_settings

logger = logging.getLogger(__name__)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24; certainly correct for 64-bit inputs."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeSieve:
    """Primes up to a limit together with a smallest-prime-factor table."""

    def __init__(self, limit: int):
        if limit < 2:
            raise DomainError(f"sieve limit must be at least 2, got {limit}")
        budget = get_settings().sieve_budget
        if limit > budget:
            raise ResourceError(
                f"sieve limit {limit} exceeds the configured budget of {budget} entries",
                data={"limit": limit, "budget": budget},
            )
        self.limit = limit
        spf = np.zeros(limit + 1, dtype=np.int32)
        for p in range(2, math.isqrt(limit) + 1):
            if spf[p] == 0:
                view = spf[p * p :: p]
                view[view == 0] = p
        primes = np.flatnonzero(spf[2:] == 0) + 2
        spf[primes] = primes
        self.spf = spf
        self.primes = primes.astype(np.int64)
        logger.info(f"sieved {len(self.primes)} primes up to {limit}")

    def __len__(self) -> int:
        return len(self.primes)

    def primes_upto(self, n: int) -> List[int]:
        if n > self.limit:
            raise DomainError(f"{n} is beyond the sieve limit {self.limit}")
        end = int(np.searchsorted(self.primes, n, side="right"))
        return self.primes[:end].tolist()

    def is_prime(self, n: int) -> bool:
        if n > self.limit:
            return is_prime(n)
        return n >= 2 and int(self.spf[n]) == n

    def factor_pairs(self, n: int) -> List[Tuple[int, int]]:
        pairs: List[Tuple[int, int]] = []
        while n > 1:
            q = int(self.spf[n])
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            pairs.append((q, e))
        return pairs


def get_sieve(limit: int) -> PrimeSieve:
    """Shared sieve covering at least limit; a larger cached sieve is reused."""
    cache = ComputationCache()
    current = cache.get("sieve")
    if current is not None and current.limit >= limit:
        return current
    sieve = PrimeSieve(max(limit, _SMALL_LIMIT))
    cache.set("sieve", sieve)
    return sieve


def sieve_primes(limit: int) -> List[int]:
    if limit < 2:
        raise DomainError(f"sieve limit must be at least 2, got {limit}")
    return get_sieve(limit).primes_upto(limit)


def first_primes(count: int) -> List[int]:
    """The first count primes, in increasing order."""
    if count < 1:
        raise DomainError(f"prime count must be positive, got {count}")
    if count < 6:
        limit = 15
    else:
        logn = math.log(count)
        limit = int(count * (logn + math.log(logn))) + 10
    primes = get_sieve(limit).primes[:count].tolist()
    if len(primes) < count:
        raise InvariantViolation(f"sieve to {limit} yielded fewer than {count} primes")
    return primes


@dataclass(frozen=True)
class PrimeFactorization:
    value: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise DomainError(f"cannot factor {self.value}")
        product = 1
        previous = 1
        for q, e in self.factors:
            if q <= previous or e < 1 or not is_prime(q):
                raise InvariantViolation(f"malformed factorization of {self.value}: {self.factors}")
            previous = q
            product *= q**e
        if product != self.value:
            raise InvariantViolation(f"factors {self.factors} do not multiply to {self.value}")

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(q for q, _ in self.factors)

    def recompose(self) -> int:
        return math.prod(q**e for q, e in self.factors)


def _trial_division(n: int) -> List[Tuple[int, int]]:
    pairs: List[Tuple[int, int]] = []
    for q in (2, 3):
        e = 0
        while n % q == 0:
            n //= q
            e += 1
        if e:
            pairs.append((q, e))
    q, step = 5, 2
    while q * q <= n:
        e = 0
        while n % q == 0:
            n //= q
            e += 1
        if e:
            pairs.append((q, e))
        q += step
        step = 6 - step
    if n > 1:
        pairs.append((n, 1))
    return pairs


def factorize(n: int) -> PrimeFactorization:
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    cache = ComputationCache()
    sieve = cache.get("sieve")
    if sieve is not None and n <= sieve.limit:
        pairs = sieve.factor_pairs(n)
    elif n <= _SMALL_LIMIT:
        pairs = get_sieve(_SMALL_LIMIT).factor_pairs(n)
    else:
        pairs = _trial_division(n)
    return PrimeFactorization(value=n, factors=tuple(pairs))


def odd_prime_divisors(n: int) -> List[int]:
    return [q for q in factorize(n).primes if q != 2]


def squarefree_part(n: int) -> int:
    if n < 1:
        raise DomainError(f"squarefree part needs a positive integer, got {n}")
    return math.prod(q for q, e in factorize(n).factors if e % 2)


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(e == 1 for _, e in factorize(n).factors)
