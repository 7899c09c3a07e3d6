"""Scans over the first N primes, optionally fanned out to worker processes."""

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from rayclass.arith.primes import first_primes
from rayclass.criterion.phi import ray_class_equals
from rayclass.density.factors import conjectural_density
from rayclass.fields.multiquad import MultiquadField
from rayclass.fields.units import UnitSystem
from rayclass.types import DensityEstimate, DomainError, EmpiricalCount, ScanRow

logger = logging.getLogger(__name__)

DEFAULT_CHUNK = 5_000


def evaluate_primes(
    radicals: Tuple[int, ...], units: UnitSystem, primes: Sequence[int], seed: int
) -> List[ScanRow]:
    field = MultiquadField(radicals)
    return [ScanRow.from_report(ray_class_equals(field, units, p, seed)) for p in primes]


def _chunks(primes: List[int], size: int) -> List[List[int]]:
    return [primes[i : i + size] for i in range(0, len(primes), size)]


async def scan_primes(
    field: MultiquadField,
    units: UnitSystem,
    count: int,
    workers: int = 1,
    seed: int = 0,
    chunk_size: Optional[int] = None,
) -> List[ScanRow]:
    """Rows for the first count primes, in prime order whatever the worker count.

    Without a chunk size the primes are split into one chunk per worker, each capped at DEFAULT_CHUNK.
    """
    if count < 1:
        raise DomainError(f"number of primes must be positive, got {count}")
    if chunk_size is None:
        chunk_size = min(DEFAULT_CHUNK, -(-count // max(workers, 1)))
    primes = first_primes(count)
    chunks = _chunks(primes, chunk_size)
    if workers <= 1:
        rows: List[ScanRow] = []
        for i, chunk in enumerate(chunks):
            rows.extend(evaluate_primes(field.radicals, units, chunk, seed))
            logger.info(f"chunk {i + 1}/{len(chunks)} done, up to p = {chunk[-1]}")
            await asyncio.sleep(0)
        return rows

    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=workers) as pool:

        async def run_chunk(i: int, chunk: List[int]) -> List[ScanRow]:
            result = await loop.run_in_executor(pool, evaluate_primes, field.radicals, units, chunk, seed)
            logger.info(f"chunk {i + 1}/{len(chunks)} done, up to p = {chunk[-1]}")
            return result

        results = await asyncio.gather(*(run_chunk(i, chunk) for i, chunk in enumerate(chunks)))
    return [row for chunk_rows in results for row in chunk_rows]


def summarize(rows: Sequence[ScanRow]) -> EmpiricalCount:
    hits = sum(1 for row in rows if row.verdict)
    return EmpiricalCount(hits=hits, total_primes=len(rows), ratio=Fraction(hits, len(rows)))


async def empirical_density_async(
    field: MultiquadField,
    units: UnitSystem,
    count: int,
    workers: int = 1,
    seed: int = 0,
    cutoff: int = 10_000,
) -> DensityEstimate:
    rows = await scan_primes(field, units, count, workers=workers, seed=seed)
    estimate = conjectural_density(field, units, cutoff)
    return estimate.model_copy(update={"empirical": summarize(rows)})


def empirical_density(
    field: MultiquadField,
    units: UnitSystem,
    count: int,
    workers: int = 1,
    seed: int = 0,
    cutoff: int = 10_000,
) -> DensityEstimate:
    return asyncio.run(empirical_density_async(field, units, count, workers, seed, cutoff))
