"""The rank criterion deciding whether the ray class field of conductor p is H(zeta_p + 1/zeta_p)."""

import logging
from typing import Dict, List, Optional

from rayclass.arith.linalg import rank_mod
from rayclass.arith.modular import BabyStepTable, element_of_order
from rayclass.arith.primes import is_prime, odd_prime_divisors
from rayclass.criterion.context import SplitPrimeContext, build_context, unit_residues
from rayclass.fields.multiquad import MultiquadField, splits_completely
from rayclass.fields.units import UnitSystem
from rayclass.types import (
    DomainError,
    InputError,
    InvariantViolation,
    NormStatus,
    PhiRankReport,
    RankCheck,
    UndecidedError,
    UnsupportedFieldError,
    VerdictReason,
)

logger = logging.getLogger(__name__)

MAX_CRITERION_RADICALS = 2


def phi_l_matrix(
    ctx: SplitPrimeContext,
    units: UnitSystem,
    l: int,
    seed: int = 0,
    residues: Optional[List[List[int]]] = None,
) -> List[List[int]]:
    """Discrete logs base zeta of the l-th power classes of each generator at each embedding."""
    p = ctx.p
    if l == 2 or not is_prime(l) or (p - 1) % l:
        raise DomainError(f"{l} is not an odd prime divisor of {p} - 1")
    residues = residues or unit_residues(ctx, units)
    zeta = element_of_order(l, p, seed)
    e = (p - 1) // l
    table = BabyStepTable(zeta, l, p, lookups=sum(len(row) for row in residues))
    matrix = [[table.log(pow(x, e, p)) for x in row] for row in residues]
    for i, row in enumerate(matrix):
        if sum(row) % l:
            raise InvariantViolation(
                f"row {i} of the phi_{l} matrix at p = {p} does not sum to zero",
                data={"row": row},
            )
    return matrix


def phi_rank_checks(ctx: SplitPrimeContext, units: UnitSystem, seed: int = 0) -> Dict[int, RankCheck]:
    residues = unit_residues(ctx, units)
    required = ctx.field.n - 1
    checks = {}
    for l in ctx.odd_l:
        rank = rank_mod(phi_l_matrix(ctx, units, l, seed, residues), l)
        checks[l] = RankCheck(l=l, rank=rank, required=required, passed=rank == required)
    return checks


def ray_class_equals(field: MultiquadField, units: UnitSystem, p: int, seed: int = 0) -> PhiRankReport:
    if p < 2 or not is_prime(p):
        raise InputError(f"{p} is not prime")
    odd_l = odd_prime_divisors(p - 1) if p > 2 else []

    def shortcut(reason: VerdictReason, split: bool) -> PhiRankReport:
        return PhiRankReport(
            p=p,
            split=split,
            p_mod_4=p % 4,
            passed_2=p % 4 == 3,
            odd_l=odd_l,
            verdict=False,
            reason=reason,
        )

    if p in field.discriminant_support:
        return shortcut(VerdictReason.RAMIFIED, False)
    if not splits_completely(field, p):
        return shortcut(VerdictReason.NON_SPLIT, False)
    if p == 2:
        return shortcut(VerdictReason.EVEN_PRIME, True)
    status = units.contains_norm_minus_one
    if status == NormStatus.NO:
        return shortcut(VerdictReason.NO_NORM_MINUS_ONE, True)
    if field.m > MAX_CRITERION_RADICALS:
        raise UnsupportedFieldError(
            f"the rank criterion needs a unit system of odd index, unproven for {field}",
            data={"candidate_based": units.candidate_based},
        )
    if status == NormStatus.UNKNOWN:
        raise UndecidedError(f"norm -1 status of {field} is unknown")
    if p % 4 == 1:
        return shortcut(VerdictReason.P_1_MOD_4, True)

    ctx = build_context(field, units, p)
    checks = phi_rank_checks(ctx, units, seed)
    verdict = all(c.passed for c in checks.values())
    logger.debug(f"p = {p}: ranks {[c.rank for c in checks.values()]} verdict {verdict}")
    return PhiRankReport(
        p=p,
        split=True,
        p_mod_4=p % 4,
        passed_2=True,
        odd_l=odd_l,
        per_l=checks,
        verdict=verdict,
        reason=VerdictReason.PASSED if verdict else VerdictReason.RANK_DEFICIENT,
    )
