from rayclass.density.factors import (
    LocalFactor,
    conjectural_density,
    exact_truncated_product,
    local_factor,
    p2_factor,
    published_reference_values,
)
from rayclass.density.scan import empirical_density, empirical_density_async, scan_primes, summarize

__all__ = [
    "LocalFactor",
    "conjectural_density",
    "empirical_density",
    "empirical_density_async",
    "exact_truncated_product",
    "local_factor",
    "p2_factor",
    "published_reference_values",
    "scan_primes",
    "summarize",
]
