from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mpf

from rayclass.arith import is_squarefree, legendre_symbol, sieve_primes
from rayclass.fields import (
    FieldElement,
    MultiquadField,
    RealQuadraticField,
    fundamental_unit,
    has_norm_minus_one_unit,
    is_square_in_field,
    kuroda_class_number,
    necessary_conditions,
    parse_field_spec,
    quadratic_subfields,
    splits_completely,
    unit_system,
)
from rayclass.fields import units as units_module
from rayclass.fields.units import subfield_unit_element
from rayclass.types import (
    DomainError,
    InputError,
    InvariantViolation,
    NormStatus,
    UndecidedError,
    UnsupportedFieldError,
)

K_5_13 = MultiquadField((5, 13))
K_2_3 = MultiquadField((2, 3))


def unit_element(field, d):
    return subfield_unit_element(field, fundamental_unit(RealQuadraticField(d)))


def elements(field):
    coords = st.lists(
        st.fractions(min_value=-20, max_value=20, max_denominator=4), min_size=field.n, max_size=field.n
    )
    return coords.map(lambda c: FieldElement.from_coords(field, c))


@pytest.mark.parametrize(
    "radicals,expected",
    [
        ((5, 13), [5, 13, 65]),
        ((2, 3), [2, 3, 6]),
        ((5, 13, 37), [5, 13, 37, 65, 185, 481, 2405]),
        ((6, 10), [6, 10, 15]),
    ],
)
def test_quadratic_subfields(radicals, expected):
    assert quadratic_subfields(MultiquadField(radicals)) == expected


def test_parse_field_spec_normalizes():
    assert parse_field_spec("13, 5").radicals == (5, 13)
    assert parse_field_spec("20,13").radicals == (5, 13)
    assert parse_field_spec("5,13").spec == "5,13"


@pytest.mark.parametrize("text", ["4", "5,5", "5,15", "5,13,65", "0", "-5"])
def test_parse_field_spec_rejects_invalid_fields(text):
    with pytest.raises(DomainError):
        parse_field_spec(text)


@pytest.mark.parametrize("text", ["", "x", "5,,a"])
def test_parse_field_spec_rejects_malformed_text(text):
    with pytest.raises(InputError):
        parse_field_spec(text)


def test_discriminant_support():
    assert K_5_13.discriminant_support == {5, 13}
    assert K_2_3.discriminant_support == {2, 3}
    assert MultiquadField((3, 5)).discriminant_support == {2, 3, 5}


@pytest.mark.parametrize("p,expected", [(79, True), (5, False), (3, False), (61, True), (73, False), (2, False)])
def test_splits_completely(p, expected):
    assert splits_completely(K_5_13, p) is expected


@pytest.mark.parametrize(
    "radicals,expected",
    [((17,), True), ((41,), True), ((17, 41), True), ((5,), False), ((5, 13), False), ((17, 5), False), ((3,), False)],
)
def test_two_splits_when_every_radical_is_1_mod_8(radicals, expected):
    assert splits_completely(MultiquadField(radicals), 2) is expected


@given(st.sampled_from(sieve_primes(3000)[1:]))
def test_split_primes_split_every_subfield(p):
    if splits_completely(K_5_13, p):
        assert all(legendre_symbol(d, p) == 1 for d in K_5_13.subfield_radicals)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_arithmetic_is_associative_and_norm_multiplicative(data):
    field = data.draw(st.sampled_from([K_5_13, K_2_3, MultiquadField((3,))]))
    x, y, z = (data.draw(elements(field)) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).norm() == x.norm() * y.norm()


def test_basis_multiplication():
    sqrt5 = FieldElement.quadratic(K_5_13, 5, 0, 1)
    sqrt13 = FieldElement.quadratic(K_5_13, 13, 0, 1)
    sqrt65 = FieldElement.quadratic(K_5_13, 65, 0, 1)
    assert sqrt5 * sqrt13 == sqrt65
    assert sqrt65 * sqrt5 == sqrt13 * 5
    assert (sqrt5 * sqrt5).coords[0] == 5


def test_inverse_and_conjugates():
    eps = unit_element(K_5_13, 5)
    assert eps * eps.inverse() == FieldElement.rational(K_5_13, 1)
    assert len(eps.conjugates()) == 4
    assert eps.norm() == 1


def test_square_of_quadratic_unit():
    field = MultiquadField((3,))
    unit = FieldElement.quadratic(field, 3, 2, 1)
    assert is_square_in_field(unit * unit) == unit


def test_two_plus_sqrt3_is_a_square_in_the_biquadratic_field():
    x = FieldElement.quadratic(K_2_3, 3, 2, 1)
    root = is_square_in_field(x)
    assert root is not None
    assert root * root == x
    assert root.coords == (0, Fraction(1, 2), 0, Fraction(1, 2))


def test_product_of_subfield_units_is_a_square():
    x = unit_element(K_5_13, 5) * unit_element(K_5_13, 13) * unit_element(K_5_13, 65)
    assert x.signs() == (1, 1, 1, 1)
    z = is_square_in_field(x)
    assert z is not None
    assert z * z == x
    assert abs(z.norm()) == 1


def test_non_squares_are_absent():
    field = MultiquadField((5,))
    assert is_square_in_field(FieldElement.quadratic(field, 5, 1, 1, 2)) is None
    assert is_square_in_field(FieldElement.rational(field, 2)) is None
    assert is_square_in_field(FieldElement.rational(field, 4)) == FieldElement.rational(field, 2)


def test_zero_is_rejected():
    with pytest.raises(DomainError):
        is_square_in_field(FieldElement.rational(K_5_13, 0))


def test_routine_square_tests_stay_quiet(caplog):
    x = unit_element(K_5_13, 5) * unit_element(K_5_13, 13) * unit_element(K_5_13, 65)
    with caplog.at_level("DEBUG", logger="rayclass"):
        assert is_square_in_field(x) is not None
    assert not [r for r in caplog.records if r.levelname == "WARNING"]


def test_precision_cap_warns_once_then_gives_up(budget_env, caplog):
    budget_env(square_precision_start=53, square_precision_cap=53)
    field = MultiquadField((5,))
    golden = FieldElement.quadratic(field, 5, 1, 1, 2)
    x = FieldElement.rational(field, 1)
    for _ in range(40):
        x = x * golden
    # the conjugate of golden^40 is below the rounding error at 53 bits
    with caplog.at_level("DEBUG", logger="rayclass"):
        with pytest.raises(UndecidedError):
            is_square_in_field(x)
    warnings = [r for r in caplog.records if r.levelname == "WARNING"]
    assert len(warnings) == 1
    assert "undecided" in warnings[0].getMessage()
    assert any("escalating" in r.getMessage() for r in caplog.records if r.levelname == "DEBUG")


def test_unit_system_of_5_13():
    units = unit_system(K_5_13)
    assert units.generators[0] == unit_element(K_5_13, 5)
    assert units.generators[1] == unit_element(K_5_13, 13)
    z = units.generators[2]
    assert z * z == unit_element(K_5_13, 5) * unit_element(K_5_13, 13) * unit_element(K_5_13, 65)
    assert units.index_over_subfield_units == 2
    assert units.contains_norm_minus_one == NormStatus.YES
    assert -1 in units.norms
    assert not units.candidate_based


def test_duplicated_generator_is_rejected():
    eps = unit_element(K_5_13, 5)
    with pytest.raises(InvariantViolation):
        units_module._check_independent(K_5_13, (eps, eps, unit_element(K_5_13, 13)))


def test_square_classes_confirm_a_degenerate_looking_regulator(monkeypatch):
    generators = unit_system(K_5_13).generators
    monkeypatch.setattr(units_module, "_regulator", lambda field, gens, prec: mpf(0))
    units_module._check_independent(K_5_13, generators)
    with pytest.raises(InvariantViolation):
        units_module._check_independent(K_5_13, (generators[0], generators[0] * generators[1], generators[1]))


def test_unit_system_of_3_5():
    units = unit_system(MultiquadField((3, 5)))
    assert units.contains_norm_minus_one == NormStatus.NO
    assert "sqrt 3" in units.norm_rule


def test_unit_system_of_one_radical():
    units = unit_system(MultiquadField((5,)))
    assert units.generators == (unit_element(MultiquadField((5,)), 5),)
    assert units.index_over_subfield_units == 1
    assert units.norms == (-1,)


def test_unit_system_of_2_3():
    units = unit_system(K_2_3)
    assert units.index_over_subfield_units == 4
    assert all(abs(nm) == 1 for nm in units.norms)


def test_unit_system_rejects_four_radicals():
    with pytest.raises(UnsupportedFieldError):
        unit_system(MultiquadField((2, 3, 5, 7)))


@pytest.mark.parametrize(
    "radicals,status", [((5, 13), NormStatus.YES), ((7,), NormStatus.NO), ((3, 5), NormStatus.NO), ((5,), NormStatus.YES)]
)
def test_has_norm_minus_one_unit(radicals, status):
    assert has_norm_minus_one_unit(MultiquadField(radicals)).status == status


def test_norm_decision_agrees_with_unit_system():
    for radicals in [(5, 13), (2, 5), (5, 29), (13, 17), (2, 3)]:
        field = MultiquadField(radicals)
        assert has_norm_minus_one_unit(field).status == unit_system(field).contains_norm_minus_one


PAIRS_ONE_MOD_FOUR = [
    (p, q)
    for p in sieve_primes(100)
    for q in sieve_primes(100)
    if p < q and p % 4 == 1 and q % 4 == 1 and legendre_symbol(p, q) == -1
]


@pytest.mark.parametrize("p,q", PAIRS_ONE_MOD_FOUR)
def test_biquadratic_norm_minus_one_for_nonresidue_pairs(p, q):
    assert has_norm_minus_one_unit(MultiquadField((p, q))).status == NormStatus.YES


def test_kuroda_5_13():
    report = kuroda_class_number(K_5_13)
    assert report.class_number == 1
    assert report.unit_index == 2
    assert report.v == 2
    assert report.subfield_class_numbers == {5: 1, 13: 1, 65: 2}


def test_kuroda_2_3():
    assert kuroda_class_number(K_2_3).class_number == 1


@pytest.mark.parametrize("radicals", [(2, 5), (3, 7), (5, 17), (13, 17), (2, 7), (3, 11), (6, 10), (17, 41)])
def test_kuroda_is_integral(radicals):
    report = kuroda_class_number(MultiquadField(radicals))
    assert report.class_number >= 1


@pytest.mark.slow
def test_kuroda_is_integral_below_200():
    radicals = [d for d in range(2, 200) if is_squarefree(d)]
    fields = [(a, b) for i, a in enumerate(radicals) for b in radicals[i + 1 :] if b % a]
    for pair in fields:
        # a non-integral quotient raises InvariantViolation
        assert kuroda_class_number(MultiquadField(pair)).class_number >= 1


def test_necessary_conditions():
    conditions = necessary_conditions(K_5_13)
    assert conditions.totally_real
    assert conditions.criterion_possible
    assert not necessary_conditions(MultiquadField((3,))).criterion_possible


def test_kuroda_5_13_37():
    field = MultiquadField((5, 13, 37))
    report = kuroda_class_number(field)
    assert report.candidate_based
    assert report.unit_index == 32
    assert report.class_number == 2
    assert has_norm_minus_one_unit(field).status == NormStatus.YES


def test_kuroda_5_13_97():
    field = MultiquadField((5, 13, 97))
    report = kuroda_class_number(field)
    assert report.unit_index == 16
    assert report.class_number == 1
    assert has_norm_minus_one_unit(field).status == NormStatus.NO
