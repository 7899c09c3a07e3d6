"""Multiquadratic fields Q(sqrt d_1, ..., sqrt d_m) with exact element arithmetic."""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from mpmath import mp, mpf, nint, sqrt

from rayclass.arith.modular import euler_symbol
from rayclass.arith.primes import factorize, squarefree_part
from rayclass.types import DomainError, InputError, UndecidedError, UnsupportedFieldError
from rayclass.utils.settings import get_settings

logger = logging.getLogger(__name__)

MAX_RADICALS = 8


def _popcount_parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True)
class MultiquadField:
    """K = Q(sqrt d_1, ..., sqrt d_m).

    Basis elements and embeddings are both indexed by bitmasks over the radicals:
    basis S is sqrt(d_S) with d_S the squarefree part of the product over S, and
    embedding T negates the radicals in T.
    """

    radicals: Tuple[int, ...]

    def __post_init__(self):
        if not self.radicals:
            raise DomainError("a field needs at least one radical")
        if len(self.radicals) > MAX_RADICALS:
            raise UnsupportedFieldError(f"at most {MAX_RADICALS} radicals are supported")
        for d in self.radicals:
            if d < 2 or squarefree_part(d) != d:
                raise DomainError(f"radical {d} must be a squarefree integer greater than 1")
        for i, di in enumerate(self.radicals):
            for j, dj in enumerate(self.radicals):
                if i != j and dj % di == 0:
                    raise DomainError(f"radical {di} divides radical {dj}")
        basis = self.basis_radicals
        if len(set(basis)) != len(basis):
            raise DomainError(
                f"radicals {list(self.radicals)} are dependent modulo squares",
                data={"subfield_radicals": list(basis[1:])},
            )

    @property
    def m(self) -> int:
        return len(self.radicals)

    @property
    def n(self) -> int:
        return 1 << len(self.radicals)

    @cached_property
    def basis_radicals(self) -> Tuple[int, ...]:
        """d_S for every mask S, with d_0 = 1."""
        return tuple(
            squarefree_part(math.prod(d for i, d in enumerate(self.radicals) if mask >> i & 1))
            for mask in range(self.n)
        )

    @cached_property
    def basis_cofactors(self) -> Tuple[int, ...]:
        """g_S with prod_{i in S} d_i = g_S^2 * d_S."""
        out = []
        for mask, dS in enumerate(self.basis_radicals):
            prod = math.prod(d for i, d in enumerate(self.radicals) if mask >> i & 1)
            out.append(math.isqrt(prod // dS))
        return tuple(out)

    @cached_property
    def product_table(self) -> Tuple[Tuple[int, ...], ...]:
        """g with sqrt(d_S) * sqrt(d_T) = g * sqrt(d_{S xor T})."""
        b = self.basis_radicals
        return tuple(
            tuple(math.isqrt(b[S] * b[T] // b[S ^ T]) for T in range(self.n)) for S in range(self.n)
        )

    @property
    def subfield_radicals(self) -> Tuple[int, ...]:
        return tuple(sorted(self.basis_radicals[1:]))

    def mask_of(self, d: int) -> int:
        try:
            return self.basis_radicals.index(d)
        except ValueError:
            raise DomainError(f"sqrt({d}) does not lie in {self}") from None

    @cached_property
    def discriminant_support(self) -> frozenset:
        primes = set()
        for d in self.basis_radicals[1:]:
            primes.update(factorize(d).primes)
        if any(d % 4 != 1 for d in self.radicals):
            primes.add(2)
        return frozenset(primes)

    def __str__(self) -> str:
        return "Q(" + ", ".join(f"sqrt({d})" for d in self.radicals) + ")"

    @property
    def spec(self) -> str:
        return ",".join(str(d) for d in self.radicals)


def parse_field_spec(text: str) -> MultiquadField:
    """Parse "5,13" style radical lists; entries are reduced to squarefree parts and sorted."""
    parts = [t.strip() for t in text.split(",") if t.strip()]
    if not parts:
        raise InputError(f"empty field specification {text!r}")
    radicals = []
    for t in parts:
        try:
            value = int(t)
        except ValueError:
            raise InputError(f"radical {t!r} is not an integer") from None
        if value < 2:
            raise DomainError(f"radical {value} must be greater than 1 for a totally real field")
        reduced = squarefree_part(value)
        if reduced == 1:
            raise DomainError(f"radical {value} is a perfect square")
        radicals.append(reduced)
    return MultiquadField(tuple(sorted(radicals)))


def quadratic_subfields(field: MultiquadField) -> List[int]:
    return list(field.subfield_radicals)


def splits_completely(field: MultiquadField, p: int) -> bool:
    if p in field.discriminant_support:
        return False
    if p == 2:
        # 2 splits in Q(sqrt d) exactly when d is 1 mod 8
        return all(d % 8 == 1 for d in field.subfield_radicals)
    return all(euler_symbol(d, p) == 1 for d in field.radicals)


@dataclass(frozen=True)
class FieldElement:
    field: MultiquadField
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.field.n:
            raise DomainError(f"expected {self.field.n} coordinates, got {len(self.coords)}")

    @classmethod
    def from_coords(cls, field: MultiquadField, coords: Iterable) -> "FieldElement":
        return cls(field, tuple(Fraction(c) for c in coords))

    @classmethod
    def rational(cls, field: MultiquadField, value) -> "FieldElement":
        coords = [Fraction(0)] * field.n
        coords[0] = Fraction(value)
        return cls(field, tuple(coords))

    @classmethod
    def quadratic(cls, field: MultiquadField, d: int, a, b, q=1) -> "FieldElement":
        """(a + b sqrt d)/q for a subfield radical d."""
        coords = [Fraction(0)] * field.n
        coords[0] = Fraction(a, q)
        coords[field.mask_of(d)] += Fraction(b, q)
        return cls(field, tuple(coords))

    def _check(self, other: "FieldElement") -> None:
        if other.field != self.field:
            raise DomainError(f"cannot combine elements of {self.field} and {other.field}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, tuple(-x for x in self.coords))

    def __mul__(self, other) -> "FieldElement":
        if not isinstance(other, FieldElement):
            c = Fraction(other)
            return FieldElement(self.field, tuple(x * c for x in self.coords))
        self._check(other)
        n = self.field.n
        table = self.field.product_table
        out = [Fraction(0)] * n
        for S, x in enumerate(self.coords):
            if not x:
                continue
            row = table[S]
            for T, y in enumerate(other.coords):
                if y:
                    out[S ^ T] += x * y * row[T]
        return FieldElement(self.field, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FieldElement":
        if k < 0:
            return self.inverse() ** (-k)
        result = FieldElement.rational(self.field, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def conjugate(self, T: int) -> "FieldElement":
        """Galois image negating the radicals in mask T."""
        return FieldElement(
            self.field,
            tuple(-x if _popcount_parity(S & T) else x for S, x in enumerate(self.coords)),
        )

    def conjugates(self) -> List["FieldElement"]:
        return [self.conjugate(T) for T in range(self.field.n)]

    def norm(self) -> Fraction:
        result = self
        for T in range(1, self.field.n):
            result = result * self.conjugate(T)
        if any(result.coords[1:]):
            raise DomainError("norm product left irrational coordinates")
        return result.coords[0]

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DomainError("zero has no inverse")
        others = FieldElement.rational(self.field, 1)
        for T in range(1, self.field.n):
            others = others * self.conjugate(T)
        return others * (1 / self.norm())

    def magnitude_bound(self) -> mpf:
        """Upper bound for |sigma(x)| over every embedding."""
        return sum(
            abs(mpf(x.numerator) / x.denominator) * sqrt(d)
            for x, d in zip(self.coords, self.field.basis_radicals)
        )

    def embed(self, prec: int = 128) -> List[mpf]:
        """Values under the n real embeddings, indexed by the mask of negated radicals."""
        with mp.workprec(prec):
            terms = [
                mpf(x.numerator) / x.denominator * sqrt(d)
                for x, d in zip(self.coords, self.field.basis_radicals)
            ]
            return [
                sum(-t if _popcount_parity(S & T) else t for S, t in enumerate(terms))
                for T in range(self.field.n)
            ]

    def signs(self) -> Tuple[int, ...]:
        """Exact signs of every embedding, found at increasing precision."""
        settings = get_settings()
        prec = settings.square_precision_start
        while prec <= settings.square_precision_cap:
            with mp.workprec(prec):
                values = self.embed(prec)
                err = self.magnitude_bound() * mpf(2) ** (8 - prec)
                if all(abs(v) > err for v in values):
                    return tuple(1 if v > 0 else -1 for v in values)
            prec *= 2
        raise UndecidedError("embedding signs undecided at the precision cap")

    @cached_property
    def integral_form(self) -> Tuple[Tuple[int, ...], int]:
        """(numerators, common denominator)."""
        den = math.lcm(*(x.denominator for x in self.coords))
        return tuple(int(x * den) for x in self.coords), den

    def mod_prime(self, p: int, basis_images: Sequence[int]) -> int:
        nums, den = self.integral_form
        if den % p == 0:
            raise DomainError(f"denominator {den} vanishes modulo {p}")
        total = sum(c * b for c, b in zip(nums, basis_images))
        return total * pow(den, -1, p) % p

    def __str__(self) -> str:
        terms = []
        for x, d in zip(self.coords, self.field.basis_radicals):
            if x:
                terms.append(str(x) if d == 1 else f"{x}*sqrt({d})")
        return " + ".join(terms) if terms else "0"


def norm(x: FieldElement) -> Fraction:
    return x.norm()


def conjugates(x: FieldElement) -> List[FieldElement]:
    return x.conjugates()


def embed(x: FieldElement, precision: int = 128) -> List[mpf]:
    return x.embed(precision)


_INSUFFICIENT = object()


def _square_root_attempt(x: FieldElement, prec: int):
    """Return a verified root, None when refuted, or _INSUFFICIENT to ask for more precision."""
    field = x.field
    n = field.n
    denominator = 1 << field.m
    with mp.workprec(prec):
        values = x.embed(prec)
        err = x.magnitude_bound() * mpf(2) ** (8 - prec)
        smallest = min(abs(v) for v in values)
        if smallest <= 4 * err:
            return _INSUFFICIENT
        if any(v < 0 for v in values):
            return None
        # error of each sqrt(sigma(x)) is at most err / sqrt(smallest)
        if denominator * err / sqrt(smallest) > mpf(1) / 16:
            return _INSUFFICIENT
        roots = [sqrt(v) for v in values]
        scales = [denominator / (n * sqrt(d)) for d in field.basis_radicals]
        for pattern in range(1 << (n - 1)):
            signed = [roots[0]] + [
                -roots[T] if pattern >> (T - 1) & 1 else roots[T] for T in range(1, n)
            ]
            numerators = []
            for S in range(n):
                total = sum(-y if _popcount_parity(S & T) else y for T, y in enumerate(signed))
                scaled = total * scales[S]
                rounded = nint(scaled)
                if abs(scaled - rounded) > mpf(1) / 4:
                    break
                numerators.append(int(rounded))
            else:
                candidate = FieldElement(field, tuple(Fraction(c, denominator) for c in numerators))
                if candidate * candidate == x:
                    return candidate
    return None


def is_square_in_field(x: FieldElement) -> Optional[FieldElement]:
    """A square root of x in K with positive identity embedding, or None.

    Candidates come from the numeric square roots at every embedding; a candidate is
    returned only after exact verification. Assumes x is an algebraic integer so the
    root's coordinates have denominator dividing 2^m.
    """
    if x.is_zero():
        raise DomainError("zero is excluded from the square test")
    settings = get_settings()
    prec = settings.square_precision_start
    while prec <= settings.square_precision_cap:
        outcome = _square_root_attempt(x, prec)
        if outcome is not _INSUFFICIENT:
            return outcome
        logger.debug(f"square test in {x.field} needs more than {prec} bits; escalating")
        prec *= 2
    logger.warning(f"square test in {x.field} still undecided at {settings.square_precision_cap} bits")
    raise UndecidedError(
        f"square test in {x.field} undecided at {settings.square_precision_cap} bits",
        data={"element": str(x)},
    )


def basis_images(field: MultiquadField, p: int, roots: Sequence[int], T: int) -> Tuple[int, ...]:
    """Residues of every basis element under the embedding negating the radicals in T."""
    images = []
    for S, g in enumerate(field.basis_cofactors):
        value = 1
        for i, r in enumerate(roots):
            if S >> i & 1:
                value = value * (p - r if T >> i & 1 else r) % p
        images.append(value * pow(g, -1, p) % p)
    return tuple(images)
