"""Completely split primes and the residue maps they induce."""

import logging
from dataclasses import dataclass
from typing import List, Tuple

from rayclass.arith.modular import sqrt_mod
from rayclass.arith.primes import PrimeFactorization, factorize, is_prime
from rayclass.fields.multiquad import MultiquadField, basis_images, splits_completely
from rayclass.fields.quadratic import unit_mod_prime
from rayclass.fields.units import UnitSystem
from rayclass.types import DomainError, InputError, InvariantViolation, NormStatus

logger = logging.getLogger(__name__)


def gray_code(m: int) -> Tuple[int, ...]:
    return tuple(j ^ (j >> 1) for j in range(1 << m))


@dataclass(frozen=True)
class SplitPrimeContext:
    field: MultiquadField
    p: int
    roots: Tuple[int, ...]
    # masks of negated radicals, in Gray-code order
    embeddings: Tuple[int, ...]
    images: Tuple[Tuple[int, ...], ...]
    factorization: PrimeFactorization

    def __post_init__(self):
        for d, r in zip(self.field.radicals, self.roots):
            if (r * r - d) % self.p:
                raise InvariantViolation(f"{r} is not a square root of {d} modulo {self.p}")
        if len(set(self.images)) != len(self.images):
            raise InvariantViolation(f"embeddings modulo {self.p} are not distinct")

    @property
    def p_mod_4(self) -> int:
        return self.p % 4

    @property
    def odd_l(self) -> List[int]:
        return [q for q in self.factorization.primes if q != 2]


def split_context(field: MultiquadField, p: int) -> SplitPrimeContext:
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if p == 2:
        raise DomainError("split contexts are built at odd primes only")
    if not splits_completely(field, p):
        raise DomainError(f"{p} does not split completely in {field}")
    roots = tuple(sqrt_mod(d, p) for d in field.radicals)
    embeddings = gray_code(field.m)
    return SplitPrimeContext(
        field=field,
        p=p,
        roots=roots,
        embeddings=embeddings,
        images=tuple(basis_images(field, p, roots, T) for T in embeddings),
        factorization=factorize(p - 1),
    )


def build_context(field: MultiquadField, units: UnitSystem, p: int) -> SplitPrimeContext:
    if units.field != field:
        raise DomainError(f"unit system belongs to {units.field}, not {field}")
    if units.contains_norm_minus_one != NormStatus.YES:
        raise DomainError(f"{field} has no known unit of norm -1")
    return split_context(field, p)


def unit_residues(ctx: SplitPrimeContext, units: UnitSystem) -> List[List[int]]:
    """Row i, column j: generator i under embedding j."""
    p = ctx.p
    if ctx.field.m == 1 and units.index_exponent == 0:
        unit = units.subfield_units[0][1]
        r = ctx.roots[0]
        return [[unit_mod_prime(unit, p, p - r if T & 1 else r, streaming=True) for T in ctx.embeddings]]
    rows = []
    for g in units.generators:
        row = [g.mod_prime(p, images) for images in ctx.images]
        if 0 in row:
            raise InvariantViolation(f"a unit reduced to zero modulo {p}")
        rows.append(row)
    return rows
