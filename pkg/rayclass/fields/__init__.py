from rayclass.fields.candidates import class_number_one_candidates
from rayclass.fields.forms import form_cycles, reduced_forms
from rayclass.fields.multiquad import (
    FieldElement,
    MultiquadField,
    conjugates,
    embed,
    is_square_in_field,
    norm,
    parse_field_spec,
    quadratic_subfields,
    splits_completely,
)
from rayclass.fields.quadratic import (
    CFExpansion,
    FundamentalUnit,
    RealQuadraticField,
    class_number,
    continued_fraction,
    fundamental_unit,
    has_norm_minus_one,
    narrow_class_number,
    solve_negative_pell,
    unit_mod_prime,
)
from rayclass.fields.units import (
    UnitSystem,
    has_norm_minus_one_unit,
    kuroda_class_number,
    necessary_conditions,
    unit_system,
)

__all__ = [
    "CFExpansion",
    "FieldElement",
    "FundamentalUnit",
    "MultiquadField",
    "RealQuadraticField",
    "UnitSystem",
    "class_number",
    "class_number_one_candidates",
    "conjugates",
    "continued_fraction",
    "embed",
    "form_cycles",
    "fundamental_unit",
    "has_norm_minus_one",
    "has_norm_minus_one_unit",
    "is_square_in_field",
    "kuroda_class_number",
    "narrow_class_number",
    "necessary_conditions",
    "norm",
    "parse_field_spec",
    "quadratic_subfields",
    "reduced_forms",
    "solve_negative_pell",
    "splits_completely",
    "unit_mod_prime",
    "unit_system",
]
