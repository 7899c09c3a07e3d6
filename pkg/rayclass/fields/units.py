"""Unit groups of multiquadratic fields, the norm -1 decision and Kuroda's class number formula."""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from mpmath import log, matrix, mp, mpf, det

from rayclass.arith.linalg import row_reduce_mod
from rayclass.fields.multiquad import FieldElement, MultiquadField, is_square_in_field
from rayclass.fields.quadratic import (
    FundamentalUnit,
    RealQuadraticField,
    class_number,
    fundamental_unit,
    has_norm_minus_one,
)
from rayclass.types import (
    InvariantViolation,
    KurodaReport,
    NecessaryConditions,
    NormDecision,
    NormStatus,
    RayClassError,
    UndecidedError,
    UnsupportedFieldError,
)
from rayclass.utils.cache import ComputationCache
from rayclass.utils.settings import get_settings

logger = logging.getLogger(__name__)

MAX_UNIT_RADICALS = 3


@dataclass(frozen=True)
class UnitSystem:
    field: MultiquadField
    generators: Tuple[FieldElement, ...]
    norms: Tuple[int, ...]
    contains_norm_minus_one: NormStatus
    norm_rule: str
    # log2 of the index over the product of the quadratic subfield unit groups
    index_exponent: int
    candidate_based: bool
    subfield_units: Tuple[Tuple[int, FundamentalUnit], ...]

    def __post_init__(self):
        if len(self.generators) != self.field.n - 1:
            raise InvariantViolation(f"expected {self.field.n - 1} generators, got {len(self.generators)}")
        if any(abs(nm) != 1 for nm in self.norms):
            raise InvariantViolation("every generator must have norm +1 or -1")

    @property
    def index_over_subfield_units(self) -> int:
        return 1 << self.index_exponent

    @property
    def decision(self) -> NormDecision:
        return NormDecision(status=self.contains_norm_minus_one, rule=self.norm_rule)


def subfield_unit_element(field: MultiquadField, unit: FundamentalUnit) -> FieldElement:
    return FieldElement.quadratic(field, unit.d, unit.a, unit.b, unit.q)


def _subset_products(generators: List[FieldElement]):
    cache: Dict[int, FieldElement] = {0: FieldElement.rational(generators[0].field, 1)}

    def product(mask: int) -> FieldElement:
        if mask not in cache:
            low = mask & -mask
            cache[mask] = product(mask ^ low) * generators[low.bit_length() - 1]
        return cache[mask]

    return product


def square_classes(generators: List[FieldElement]) -> Dict[int, FieldElement]:
    """Masks A for which a signed product of generators over A is a square, with a root.

    Only sign-coherent products can be squares, so signatures prune the search.
    """
    k = len(generators)
    signatures = [g.signs() for g in generators]
    product = _subset_products(generators)
    found: Dict[int, FieldElement] = {}
    for mask in range(1, 1 << k):
        signature = [1] * len(signatures[0])
        for i in range(k):
            if mask >> i & 1:
                signature = [s * t for s, t in zip(signature, signatures[i])]
        if all(s == 1 for s in signature):
            sign = 1
        elif all(s == -1 for s in signature):
            sign = -1
        else:
            continue
        root = is_square_in_field(product(mask) * sign)
        if root is not None:
            found[mask] = root
    return found


def _saturate(generators: List[FieldElement]) -> Tuple[List[FieldElement], int]:
    """One round: replace a generator by a square root for every independent square class."""
    k = len(generators)
    found = square_classes(generators)
    if not found:
        return generators, 0
    # columns run from the last generator down so pivots land on the highest index
    vectors = [[mask >> (k - 1 - c) & 1 for c in range(k)] for mask in found]
    rows, pivots = row_reduce_mod(vectors, 2)
    replaced = list(generators)
    for row, c in zip(rows, pivots):
        mask = sum(1 << (k - 1 - j) for j, bit in enumerate(row) if bit)
        if mask not in found:
            raise InvariantViolation(f"square classes are not closed under products (mask {mask:b})")
        replaced[k - 1 - c] = found[mask]
    return replaced, len(pivots)


def _regulator(field: MultiquadField, generators: Tuple[FieldElement, ...], prec: int) -> mpf:
    with mp.workprec(prec):
        rows = []
        for g in generators:
            values = g.embed(prec)
            rows.append([log(abs(v)) for v in values[: field.n - 1]])
        return abs(det(matrix(rows)))


def _check_independent(field: MultiquadField, generators: Tuple[FieldElement, ...]) -> None:
    """Numeric regulator test, retried at double precision, then an exact square-class test.

    A dependent system always has a signed product over some nonempty subset that is a
    square, so an empty square-class set proves independence.
    """
    if field.n == 2:
        return
    base = get_settings().log_embedding_precision
    bits = max(int(mp.log(g.magnitude_bound(), 2)) for g in generators)
    prec = base + field.n * max(bits, 1)
    threshold = mpf(2) ** (-base // 4)
    regulator = _regulator(field, generators, prec)
    if regulator >= threshold:
        logger.debug(f"regulator of {field}: {mp.nstr(regulator, 12)}")
        return
    regulator = _regulator(field, generators, 2 * prec)
    if regulator >= threshold:
        logger.debug(f"regulator of {field} at {2 * prec} bits: {mp.nstr(regulator, 12)}")
        return
    logger.info(f"regulator of {field} looks degenerate ({mp.nstr(regulator, 6)}); trying square classes")
    found = square_classes(list(generators))
    if found:
        raise InvariantViolation(
            f"unit generators of {field} are dependent (regulator {mp.nstr(regulator, 6)})",
            data={"square_classes": sorted(found)},
        )
    logger.debug(f"generators of {field} have no square classes, so they are independent")


def _subfield_norm_rule(field: MultiquadField) -> Optional[NormDecision]:
    for d in field.subfield_radicals:
        if not has_norm_minus_one(RealQuadraticField(d)):
            return NormDecision(
                status=NormStatus.NO,
                rule=f"the subfield Q(sqrt {d}) has no unit of norm -1, so neither does K",
            )
    return None


def _compute_unit_system(field: MultiquadField) -> UnitSystem:
    if field.m > MAX_UNIT_RADICALS:
        raise UnsupportedFieldError(
            f"unit systems are computed for at most {MAX_UNIT_RADICALS} radicals, {field} has {field.m}"
        )
    subfield_units = tuple(
        (d, fundamental_unit(RealQuadraticField(d))) for d in field.subfield_radicals
    )
    generators = [subfield_unit_element(field, u) for _, u in subfield_units]
    exponent = 0
    for round_no in range(max(field.m - 1, 0)):
        generators, found = _saturate(generators)
        logger.info(f"{field}: saturation round {round_no + 1} found {found} independent square classes")
        exponent += found
        if not found:
            break
    generators_t = tuple(generators)
    _check_independent(field, generators_t)
    norms = tuple(int(g.norm()) for g in generators_t)

    decision = _subfield_norm_rule(field)
    if decision is None:
        if -1 in norms:
            decision = NormDecision(status=NormStatus.YES, rule="a unit generator has norm -1")
        elif field.m <= 2:
            decision = NormDecision(
                status=NormStatus.NO, rule="every generator of the full unit group has norm +1"
            )
        else:
            decision = NormDecision(status=NormStatus.UNKNOWN, rule="no norm -1 unit among the candidates")
    system = UnitSystem(
        field=field,
        generators=generators_t,
        norms=norms,
        contains_norm_minus_one=decision.status,
        norm_rule=decision.rule,
        index_exponent=exponent,
        candidate_based=field.m == 3,
        subfield_units=subfield_units,
    )
    if decision.status == NormStatus.UNKNOWN:
        system = _decide_by_class_number(system)
    logger.info(
        f"unit system of {field}: index {system.index_over_subfield_units}, norm -1 {system.contains_norm_minus_one.value}"
    )
    return system


def _decide_by_class_number(system: UnitSystem) -> UnitSystem:
    try:
        report = kuroda_class_number(system.field, system)
    except RayClassError as e:
        logger.warning(f"class number of {system.field} unavailable: {e.message}")
        return system
    if report.class_number % 2 == 0:
        return system
    return UnitSystem(
        field=system.field,
        generators=system.generators,
        norms=system.norms,
        contains_norm_minus_one=NormStatus.NO,
        norm_rule=f"odd class number {report.class_number} with norm -1 in every quadratic subfield",
        index_exponent=system.index_exponent,
        candidate_based=system.candidate_based,
        subfield_units=system.subfield_units,
    )


def unit_system(field: MultiquadField) -> UnitSystem:
    return ComputationCache().get_or_create(("unit_system", field.radicals), lambda: _compute_unit_system(field))


def has_norm_minus_one_unit(field: MultiquadField) -> NormDecision:
    decision = _subfield_norm_rule(field)
    if decision is not None:
        return decision
    if field.m == 1:
        return NormDecision(status=NormStatus.YES, rule="the fundamental unit has norm -1")
    if field.m == 2:
        product = FieldElement.rational(field, 1)
        for d in field.subfield_radicals:
            product = product * subfield_unit_element(field, fundamental_unit(RealQuadraticField(d)))
        signs = set(product.signs())
        if len(signs) == 1:
            try:
                root = is_square_in_field(product * signs.pop())
            except UndecidedError:
                return NormDecision(status=NormStatus.UNKNOWN, rule="the square test was undecided")
            if root is not None:
                return NormDecision(
                    status=NormStatus.YES,
                    rule="the product of the three subfield units is a square in K",
                )
        return NormDecision(
            status=NormStatus.NO,
            rule="the product of the three subfield units is not a square, so every unit has norm +1",
        )
    if field.m > MAX_UNIT_RADICALS:
        return NormDecision(status=NormStatus.UNKNOWN, rule=f"unit systems stop at {MAX_UNIT_RADICALS} radicals")
    try:
        return unit_system(field).decision
    except UndecidedError:
        return NormDecision(status=NormStatus.UNKNOWN, rule="the square test was undecided")


def kuroda_class_number(field: MultiquadField, units: Optional[UnitSystem] = None) -> KurodaReport:
    """h = Q * prod(h_i) / 2^v with v = m (2^(m-1) - 1) and Q the unit index."""
    if field.m > MAX_UNIT_RADICALS:
        raise UnsupportedFieldError(f"class numbers are computed for at most {MAX_UNIT_RADICALS} radicals")
    units = units or unit_system(field)
    class_numbers = {d: class_number(RealQuadraticField(d)) for d in field.subfield_radicals}
    v = field.m * ((1 << (field.m - 1)) - 1)
    numerator = units.index_over_subfield_units * math.prod(class_numbers.values())
    if numerator % (1 << v):
        raise InvariantViolation(
            f"class number formula for {field} is not integral: {numerator}/2^{v}",
            data={"unit_index": units.index_over_subfield_units, "class_numbers": class_numbers},
        )
    return KurodaReport(
        class_number=numerator >> v,
        unit_index=units.index_over_subfield_units,
        v=v,
        subfield_class_numbers=class_numbers,
        candidate_based=units.candidate_based,
    )


def necessary_conditions(field: MultiquadField) -> NecessaryConditions:
    decision = has_norm_minus_one_unit(field)
    return NecessaryConditions(
        # positive radicals give real embeddings only
        totally_real=all(d > 0 for d in field.radicals),
        norm_minus_one=decision,
        criterion_possible=decision.status != NormStatus.NO,
    )
