"""Direct computation of the image of the units in (O_K / p)^*."""

import logging
from typing import List, Tuple

from rayclass.arith.linalg import lattice_index
from rayclass.arith.modular import dlog_table
from rayclass.criterion.context import split_context, unit_residues
from rayclass.fields.multiquad import MultiquadField
from rayclass.fields.units import UnitSystem
from rayclass.types import DomainError, InvariantViolation, ResourceError
from rayclass.utils.settings import get_settings

logger = logging.getLogger(__name__)

AUTO_CLOSURE_LIMIT = 200_000


def _closure_order(p: int, generators: List[Tuple[int, ...]]) -> int:
    identity = tuple(1 for _ in generators[0])
    seen = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for x in frontier:
            for g in generators:
                y = tuple(a * b % p for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    fresh.append(y)
        frontier = fresh
    return len(seen)


def _lattice_order(p: int, generators: List[Tuple[int, ...]], n: int) -> int:
    table = dlog_table(p)
    vectors = [[int(table[x]) for x in g] for g in generators]
    return (p - 1) ** n // lattice_index(vectors, p - 1, n)


def brute_force_psi_order(field: MultiquadField, units: UnitSystem, p: int, method: str = "auto") -> int:
    """Order of the subgroup of (F_p^*)^n generated by -1 and the embedded unit generators.

    "closure" enumerates the subgroup; "lattice" computes the index of the exponent
    lattice from a full discrete log table.
    """
    ctx = split_context(field, p)
    n = field.n
    generators = [tuple(p - 1 for _ in range(n))] + [tuple(row) for row in unit_residues(ctx, units)]
    ceiling = 2 * (p - 1) ** (n - 1)
    if method == "auto":
        method = "closure" if ceiling <= AUTO_CLOSURE_LIMIT else "lattice"
    if method == "closure":
        budget = get_settings().enumeration_budget
        if (p - 1) ** n > budget:
            raise ResourceError(f"(p - 1)^n = {(p - 1) ** n} exceeds the enumeration budget {budget}")
        order = _closure_order(p, generators)
    elif method == "lattice":
        order = _lattice_order(p, generators, n)
    else:
        raise DomainError(f"unknown method {method!r}")
    if ceiling % order:
        raise InvariantViolation(f"image order {order} does not divide {ceiling}")
    logger.debug(f"{field}, p = {p}: image order {order} by {method}")
    return order


def power_of_two_gap(field: MultiquadField, units: UnitSystem, p: int) -> Tuple[int, bool]:
    """(k, k is a power of 2) where k * order = 2 (p - 1)^(n - 1)."""
    order = brute_force_psi_order(field, units, p)
    gap = 2 * (p - 1) ** (field.n - 1) // order
    return gap, gap & (gap - 1) == 0
