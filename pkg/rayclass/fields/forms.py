"""Reduced indefinite binary quadratic forms and their cycles."""

import logging
import math
from typing import List, Set, Tuple

from rayclass.types import DomainError

logger = logging.getLogger(__name__)

Form = Tuple[int, int, int]


def reduced_forms(discriminant: int) -> List[Form]:
    """Primitive reduced forms (a, b, c) with b^2 - 4ac = discriminant.

    Reduced means 0 < b <= s and s - b < 2|a| <= s + b, where s = floor(sqrt(discriminant)).
    """
    if discriminant <= 0 or discriminant % 4 not in (0, 1) or math.isqrt(discriminant) ** 2 == discriminant:
        raise DomainError(f"{discriminant} is not a non-square positive discriminant")
    s = math.isqrt(discriminant)
    forms: List[Form] = []
    for b in range(s, 0, -1):
        if (b - discriminant) % 2:
            continue
        ac = (b * b - discriminant) // 4
        for a_abs in range((s - b) // 2 + 1, (s + b) // 2 + 1):
            if ac % a_abs:
                continue
            for a in (a_abs, -a_abs):
                c = ac // a
                if math.gcd(math.gcd(a, b), c) == 1:
                    forms.append((a, b, c))
    return sorted(forms)


def rho(form: Form, discriminant: int) -> Form:
    """One reduction step: the right neighbour of a reduced form is again reduced."""
    _, b, c = form
    s = math.isqrt(discriminant)
    two_c = 2 * abs(c)
    r = s - (s + b) % two_c
    return (c, r, (r * r - discriminant) // (4 * c))


def form_cycles(discriminant: int) -> List[List[Form]]:
    remaining: Set[Form] = set(reduced_forms(discriminant))
    cycles: List[List[Form]] = []
    while remaining:
        start = min(remaining)
        cycle = [start]
        remaining.discard(start)
        current = rho(start, discriminant)
        while current != start:
            if current not in remaining:
                raise DomainError(f"reduction cycle through {start} left the set of reduced forms")
            cycle.append(current)
            remaining.discard(current)
            current = rho(current, discriminant)
        cycles.append(cycle)
    logger.debug(f"discriminant {discriminant}: {len(cycles)} cycles")
    return cycles
