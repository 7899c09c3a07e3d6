"""Real quadratic fields: continued fractions, fundamental units, class numbers."""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from mpmath import mpf, sqrt

from rayclass.arith.primes import factorize, is_squarefree
from rayclass.fields.forms import form_cycles
from rayclass.types import DomainError, InvariantViolation, ResourceError
from rayclass.utils.cache import ComputationCache
from rayclass.utils.settings import get_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RealQuadraticField:
    d: int

    def __post_init__(self):
        if self.d < 2 or math.isqrt(self.d) ** 2 == self.d:
            raise DomainError(f"d = {self.d} must be a non-square integer greater than 1")
        if not is_squarefree(self.d):
            raise DomainError(f"d = {self.d} is not squarefree")

    @property
    def discriminant(self) -> int:
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def half_integral(self) -> bool:
        """True when the ring of integers is Z[(1+sqrt d)/2]."""
        return self.d % 4 == 1


@dataclass(frozen=True)
class CFExpansion:
    d: int
    a0: int
    period: Tuple[int, ...]
    # (P, Q) before each partial quotient, the quantity being (P + sqrt d) / Q
    states: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if not self.period:
            raise InvariantViolation(f"empty continued fraction period for d = {self.d}")
        bound = 2 * math.isqrt(self.d) + 2
        if any(abs(P) > bound or not 0 < Q <= bound for P, Q in self.states):
            raise InvariantViolation(f"continued fraction state out of range for d = {self.d}")

    @property
    def quotients(self) -> Tuple[int, ...]:
        return (self.a0,) + self.period

    def __len__(self) -> int:
        return len(self.period)


def continued_fraction(field: RealQuadraticField) -> CFExpansion:
    """Expansion of (1 + sqrt d)/2 when d = 1 mod 4, of sqrt d otherwise."""
    d = field.d
    s = math.isqrt(d)
    P, Q = (1, 2) if field.half_integral else (0, 1)
    states = [(P, Q)]
    quotients = []
    seen = {}
    while True:
        a = (P + s) // Q
        quotients.append(a)
        P = a * Q - P
        Q = (d - P * P) // Q
        if (P, Q) in seen:
            start = seen[(P, Q)]
            break
        seen[(P, Q)] = len(quotients)
        states.append((P, Q))
    if start != 1:
        raise InvariantViolation(f"expansion for d = {d} is not purely periodic after the first term")
    return CFExpansion(d=d, a0=quotients[0], period=tuple(quotients[1:]), states=tuple(states))


def _convergent(quotients, modulus: Optional[int] = None) -> Tuple[int, int]:
    h_prev, h = 1, quotients[0]
    k_prev, k = 0, 1
    for a in quotients[1:]:
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        if modulus is not None:
            h %= modulus
            k %= modulus
    return h, k


@dataclass(frozen=True)
class FundamentalUnit:
    """The unit (a + b sqrt d)/q > 1 generating the units modulo sign."""

    a: int
    b: int
    q: int
    d: int
    norm: int
    expansion: Optional[CFExpansion] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.q not in (1, 2) or self.b < 1:
            raise InvariantViolation(f"malformed unit coordinates ({self.a}, {self.b}, {self.q})")
        if self.q == 2 and ((self.a - self.b) % 2 or self.d % 4 != 1):
            raise InvariantViolation(f"half-integral unit for d = {self.d} has wrong parity")
        if self.norm not in (1, -1) or self.a * self.a - self.d * self.b * self.b != self.norm * self.q * self.q:
            raise InvariantViolation(f"norm identity fails for ({self.a} + {self.b} sqrt {self.d})/{self.q}")
        if self.a <= 0:
            raise InvariantViolation("fundamental unit must exceed 1")

    def conjugate(self) -> Tuple[int, int, int]:
        """Coordinates (a, -b, q) of the Galois conjugate, which has absolute value below 1."""
        return self.a, -self.b, self.q

    def to_mpf(self) -> mpf:
        return (self.a + self.b * sqrt(self.d)) / self.q

    def __str__(self) -> str:
        body = f"{self.a} + {self.b}*sqrt({self.d})" if self.b != 1 else f"{self.a} + sqrt({self.d})"
        return f"({body})/2" if self.q == 2 else body


def _compute_fundamental_unit(field: RealQuadraticField) -> FundamentalUnit:
    expansion = continued_fraction(field)
    r = len(expansion)
    # convergent just before the end of the first period
    h, k = _convergent(expansion.quotients[:r])
    if h.bit_length() > get_settings().unit_bit_budget:
        raise ResourceError(f"fundamental unit of Q(sqrt {field.d}) exceeds the bignum budget")
    if field.half_integral:
        a, b, q = 2 * h - k, k, 2
        if a % 2 == 0 and b % 2 == 0:
            a, b, q = a // 2, b // 2, 1
    else:
        a, b, q = h, k, 1
    norm = -1 if r % 2 else 1
    unit = FundamentalUnit(a=a, b=b, q=q, d=field.d, norm=norm, expansion=expansion)
    logger.debug(f"fundamental unit of Q(sqrt {field.d}): {unit}, period {r}")
    return unit


def fundamental_unit(field: RealQuadraticField) -> FundamentalUnit:
    return ComputationCache().get_or_create(("unit", field.d), lambda: _compute_fundamental_unit(field))


def has_norm_minus_one(field: RealQuadraticField) -> bool:
    if field.d % 4 == 3 or any(q % 4 == 3 for q in factorize(field.d).primes):
        return False
    return fundamental_unit(field).norm == -1


def narrow_class_number(field: RealQuadraticField) -> int:
    bound = get_settings().class_number_bound
    if field.discriminant > bound:
        raise ResourceError(
            f"discriminant {field.discriminant} exceeds the class number bound {bound}",
            data={"discriminant": field.discriminant, "bound": bound},
        )
    return len(form_cycles(field.discriminant))


def class_number(field: RealQuadraticField) -> int:
    def compute() -> int:
        narrow = narrow_class_number(field)
        if has_norm_minus_one(field):
            return narrow
        if narrow % 2:
            raise InvariantViolation(f"odd narrow class number {narrow} without a unit of norm -1")
        return narrow // 2

    return ComputationCache().get_or_create(("class_number", field.d), compute)


def solve_negative_pell(d: int) -> Optional[Tuple[int, int]]:
    """Least positive solution of x^2 - d y^2 = -1, or None when there is none."""
    field = RealQuadraticField(d)
    if not has_norm_minus_one(field):
        return None
    unit = fundamental_unit(field)
    a, b = unit.a, unit.b
    if unit.q == 2:
        # ((a + b sqrt d)/2)^3 has integral coordinates
        a, b = (a**3 + 3 * a * b * b * d) // 8, (3 * a * a * b + b**3 * d) // 8
    if a * a - d * b * b != -1:
        raise InvariantViolation(f"negative Pell solution for d = {d} fails verification")
    return a, b


def unit_mod_prime(unit: FundamentalUnit, p: int, root: int, streaming: bool = False) -> int:
    """Image of the unit under sqrt d -> root in F_p.

    The streaming path runs the convergent recurrence modulo p and never forms the
    full coordinates.
    """
    if p < 3 or unit.d % p == 0 or (root * root - unit.d) % p:
        raise DomainError(f"{root} is not a square root of {unit.d} modulo {p}")
    if streaming and unit.expansion is not None:
        r = len(unit.expansion)
        h, k = _convergent(unit.expansion.quotients[:r], modulus=p)
        if unit.d % 4 == 1:
            # h - k * conj(omega) with conj(omega) = (1 - root)/2
            value = (h - k * (1 - root) * pow(2, -1, p)) % p
        else:
            value = (h + k * root) % p
    else:
        value = (unit.a + unit.b * root) * pow(unit.q, -1, p) % p
    if value == 0:
        raise InvariantViolation(f"unit reduced to zero modulo {p}")
    return value
