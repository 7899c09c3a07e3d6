"""Command implementations. Each returns a report model; rendering lives in render.py."""

import logging
from typing import List

import aiofiles

from rayclass.arith.primes import is_prime, sieve_primes
from rayclass.cli.config import RunConfig
from rayclass.criterion.oracle import brute_force_psi_order
from rayclass.criterion.phi import MAX_CRITERION_RADICALS, ray_class_equals
from rayclass.density.factors import conjectural_density
from rayclass.density.scan import scan_primes, summarize
from rayclass.fields.candidates import class_number_one_candidates
from rayclass.fields.multiquad import MultiquadField, parse_field_spec, splits_completely
from rayclass.fields.quadratic import RealQuadraticField, class_number
from rayclass.fields.units import MAX_UNIT_RADICALS, kuroda_class_number, necessary_conditions, unit_system
from rayclass.types import (
    CandidateField,
    DensityEstimate,
    FieldReport,
    InputError,
    NormStatus,
    PhiRankReport,
    QuadraticUnitReport,
    ScanReport,
    UnsupportedFieldError,
    VerifyReport,
    VerifyRow,
)

logger = logging.getLogger(__name__)


def _field(config: RunConfig) -> MultiquadField:
    config.require("field")
    return parse_field_spec(config.field)


def cmd_field_report(config: RunConfig) -> FieldReport:
    field = _field(config)
    if field.m > MAX_UNIT_RADICALS:
        raise UnsupportedFieldError(
            f"field reports cover at most {MAX_UNIT_RADICALS} radicals; {field} has {field.m}"
        )
    units = unit_system(field)
    conditions = necessary_conditions(field)
    decision = conditions.norm_minus_one
    fundamental = []
    for d, unit in units.subfield_units:
        fundamental.append(
            QuadraticUnitReport(
                d=d, unit=str(unit), norm=unit.norm, class_number=class_number(RealQuadraticField(d))
            )
        )
    kuroda = kuroda_class_number(field, units)
    supported = field.m <= MAX_CRITERION_RADICALS and decision.status == NormStatus.YES
    if supported:
        note = "rank criterion available"
    elif decision.status == NormStatus.NO:
        note = "no unit of norm -1: the ray class field is never H(zeta_p + 1/zeta_p)"
    else:
        note = f"rank criterion implemented for at most {MAX_CRITERION_RADICALS} radicals"
    notes = ["the multiquadratic field satisfies the genus field condition automatically"]
    if units.candidate_based:
        notes.append("unit index from the square-class search over subfield units; class number is candidate-based")
    return FieldReport(
        field=field.spec,
        degree=field.n,
        subfields=list(field.subfield_radicals),
        fundamental_units=fundamental,
        totally_real=conditions.totally_real,
        norm_minus_one=decision,
        unit_generators=[str(g) for g in units.generators],
        unit_generator_norms=list(units.norms),
        unit_index=units.index_over_subfield_units,
        kuroda=kuroda,
        criterion_supported=supported,
        criterion_note=note,
        notes=notes,
    )


def cmd_check(config: RunConfig) -> PhiRankReport:
    field = _field(config)
    config.require("prime")
    if not is_prime(config.prime):
        raise InputError(f"{config.prime} is not prime")
    return ray_class_equals(field, unit_system(field), config.prime, config.seed)


async def cmd_scan(config: RunConfig) -> ScanReport:
    field = _field(config)
    config.require("num_primes")
    rows = await scan_primes(
        field, unit_system(field), config.num_primes, workers=config.workers, seed=config.seed
    )
    return ScanReport(field=field.spec, seed=config.seed, rows=rows, summary=summarize(rows))


async def cmd_density(config: RunConfig) -> DensityEstimate:
    field = _field(config)
    units = unit_system(field)
    estimate = conjectural_density(field, units, config.cutoff, config.precision)
    if config.num_primes:
        rows = await scan_primes(field, units, config.num_primes, workers=config.workers, seed=config.seed)
        estimate = estimate.model_copy(update={"empirical": summarize(rows)})
    return estimate


def cmd_verify(config: RunConfig) -> VerifyReport:
    field = _field(config)
    units = unit_system(field)
    rows: List[VerifyRow] = []
    for p in sieve_primes(config.bound):
        if p == 2 or not splits_completely(field, p):
            continue
        report = ray_class_equals(field, units, p, config.seed)
        order = brute_force_psi_order(field, units, p)
        target = 2 * (p - 1) ** (field.n - 1)
        rows.append(
            VerifyRow(
                p=p,
                verdict=report.verdict,
                psi_order=order,
                target_order=target,
                agree=report.verdict == (order == target),
            )
        )
    mismatches = sum(1 for row in rows if not row.agree)
    logger.info(f"verified {len(rows)} split primes up to {config.bound}: {mismatches} mismatches")
    return VerifyReport(field=field.spec, bound=config.bound, rows=rows, mismatches=mismatches)


def cmd_candidates(config: RunConfig) -> List[CandidateField]:
    return class_number_one_candidates(config.bound, config.m)


async def write_output(path: str, text: str) -> None:
    if path == "-":
        print(text, end="")
        return
    try:
        async with aiofiles.open(path, "w") as fh:
            await fh.write(text)
    except OSError as e:
        raise InputError(f"cannot write {path}: {e.strerror}", data={"path": path}) from e
    logger.info(f"wrote {path}")
