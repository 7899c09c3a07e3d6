"""Euler factors of the conjectural density and a certified truncated product."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List

from mpmath import iv, mp, mpf

from rayclass.arith.primes import is_prime, sieve_primes
from rayclass.fields.multiquad import MultiquadField
from rayclass.fields.units import UnitSystem
from rayclass.types import DensityEstimate, DomainError, InvariantViolation, NormStatus, UndecidedError

logger = logging.getLogger(__name__)

# published figures for Q(sqrt 5, sqrt 13), shown next to the computed interval
_PUBLISHED = {
    (5, 13): {"introduction": "0.0514218", "worked_example": "0.0510458", "empirical_200000": "0.05176"},
}


@dataclass(frozen=True)
class LocalFactor:
    l: int
    degree: int
    D_l: Fraction
    P_l: Fraction

    def __post_init__(self):
        if self.P_l != 1 - (1 - self.D_l) / self.degree:
            raise InvariantViolation(f"local factor at {self.l} is inconsistent")
        if not 0 < self.P_l <= 1:
            raise InvariantViolation(f"local factor at {self.l} is outside (0, 1]")


def cyclotomic_degree(field: MultiquadField, l: int) -> int:
    """[K(zeta_l) : K] for odd l: halved exactly when sqrt(l) lies in K, which needs l = 1 mod 4."""
    if l % 4 == 1 and l in field.subfield_radicals:
        return (l - 1) // 2
    return l - 1


def local_factor(field: MultiquadField, l: int) -> LocalFactor:
    if l == 2 or not is_prime(l):
        raise DomainError(f"local factors are defined at odd primes, got {l}")
    degree = cyclotomic_degree(field, l)
    D_l = Fraction(l - 1, l) ** (field.n - 1)
    return LocalFactor(l=l, degree=degree, D_l=D_l, P_l=1 - (1 - D_l) / degree)


def p2_factor(field: MultiquadField, units: UnitSystem) -> Fraction:
    status = units.contains_norm_minus_one
    if status == NormStatus.UNKNOWN:
        raise UndecidedError(f"the factor at 2 needs the norm -1 status of {field}")
    return Fraction(1, 2) if status == NormStatus.YES else Fraction(0)


def local_factors(field: MultiquadField, cutoff: int) -> List[LocalFactor]:
    return [local_factor(field, l) for l in sieve_primes(cutoff) if l != 2]


def exact_truncated_product(field: MultiquadField, units: UnitSystem, cutoff: int) -> Fraction:
    if cutoff < 3:
        raise DomainError(f"cutoff must be at least 3, got {cutoff}")
    value = p2_factor(field, units) / field.n
    for factor in local_factors(field, cutoff):
        value *= factor.P_l
    return value


def published_reference_values(field: MultiquadField) -> Dict[str, str]:
    return dict(_PUBLISHED.get(field.radicals, {}))


def conjectural_density(
    field: MultiquadField, units: UnitSystem, cutoff: int, precision: int = 128
) -> DensityEstimate:
    """(1/n) P_2 prod_{l <= cutoff} P_l with a certified lower bound on the remaining factors.

    For l above the cutoff, 1 - P_l <= c / (l (l - 1)) with c = 2^(n-1), doubled when a
    prime with halved degree lies beyond the cutoff; the log of the tail is then at
    least -(c / L) / (1 - c / (L (L + 1))).
    """
    if cutoff < 3:
        raise DomainError(f"cutoff must be at least 3, got {cutoff}")
    c0 = 1 << (field.n - 1)
    if c0 >= cutoff:
        raise DomainError(f"cutoff {cutoff} must exceed 2^(n-1) = {c0}; use a larger cutoff")
    c = 2 * c0 if any(d > cutoff and d % 4 == 1 and is_prime(d) for d in field.subfield_radicals) else c0
    p2 = p2_factor(field, units)
    factors = local_factors(field, cutoff)

    saved = iv.prec
    iv.prec = precision
    try:
        product = iv.mpf(p2.numerator) / iv.mpf(p2.denominator * field.n)
        for factor in factors:
            product = product * iv.mpf(factor.P_l.numerator) / iv.mpf(factor.P_l.denominator)
        x_max = iv.mpf(c) / (iv.mpf(cutoff) * (cutoff + 1))
        tail = iv.exp(-(iv.mpf(c) / cutoff) / (1 - x_max))
        lower = product * tail
        with mp.workprec(precision):
            estimate = DensityEstimate(
                field=field.spec,
                cutoff=cutoff,
                precision_bits=precision,
                p2=p2,
                truncated_product=mpf(product.mid),
                tail_lower_factor=mpf(tail.a),
                interval_low=mpf(lower.a),
                interval_high=mpf(product.b),
                reference_values=published_reference_values(field),
            )
    finally:
        iv.prec = saved
    logger.info(
        f"density of {field} to {cutoff}: [{mp.nstr(estimate.interval_low, 10)}, {mp.nstr(estimate.interval_high, 10)}]"
    )
    return estimate
