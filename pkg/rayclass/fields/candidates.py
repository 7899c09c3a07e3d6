"""Fields of class number one with a unit of norm -1."""

import logging
from typing import List

from rayclass.arith.modular import euler_symbol
from rayclass.arith.primes import sieve_primes
from rayclass.fields.multiquad import MultiquadField
from rayclass.fields.quadratic import RealQuadraticField, class_number, has_norm_minus_one
from rayclass.fields.units import has_norm_minus_one_unit, kuroda_class_number
from rayclass.types import CandidateField, DomainError, NormStatus

logger = logging.getLogger(__name__)


def _quadratic_candidates(bound: int) -> List[int]:
    out = []
    for p in sieve_primes(bound):
        if p != 2 and p % 4 != 1:
            continue
        field = RealQuadraticField(p)
        if has_norm_minus_one(field) and class_number(field) == 1:
            out.append(p)
    return out


def class_number_one_candidates(bound: int, m: int = 1) -> List[CandidateField]:
    """Fields with radicals up to bound, class number 1 and a norm -1 unit.

    m = 1 gives Q(sqrt p) for p = 2 or p = 1 mod 4; m = 2 gives Q(sqrt p, sqrt q) with
    both quadratic fields of this kind and (p/q) = -1. Three or more radicals never
    qualify, since every such field with norm -1 units has even class number.
    """
    if bound < 2:
        raise DomainError(f"bound must be at least 2, got {bound}")
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    primes = _quadratic_candidates(bound)
    if m == 1:
        return [CandidateField(radicals=[p], class_number=1, norm_minus_one=NormStatus.YES) for p in primes]
    if m > 2:
        return []
    out = []
    for i, p in enumerate(primes):
        for q in primes[i + 1 :]:
            if q == 2 or euler_symbol(p, q) != -1:
                continue
            if class_number(RealQuadraticField(p * q)) != 2:
                continue
            field = MultiquadField((p, q))
            h = kuroda_class_number(field).class_number
            status = has_norm_minus_one_unit(field).status
            logger.debug(f"{field}: h = {h}, norm -1 {status.value}")
            if h == 1 and status == NormStatus.YES:
                out.append(CandidateField(radicals=[p, q], class_number=h, norm_minus_one=status))
    logger.info(f"{len(out)} class number one candidates with m = {m} below {bound}")
    return out
