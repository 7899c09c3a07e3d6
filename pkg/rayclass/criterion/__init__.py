from rayclass.criterion.context import SplitPrimeContext, build_context, split_context, unit_residues
from rayclass.criterion.oracle import brute_force_psi_order, power_of_two_gap
from rayclass.criterion.phi import phi_l_matrix, phi_rank_checks, ray_class_equals

__all__ = [
    "SplitPrimeContext",
    "brute_force_psi_order",
    "build_context",
    "phi_l_matrix",
    "phi_rank_checks",
    "power_of_two_gap",
    "ray_class_equals",
    "split_context",
    "unit_residues",
]
