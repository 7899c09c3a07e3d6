import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from rayclass.arith import is_squarefree, legendre_symbol, sieve_primes, sqrt_mod
from rayclass.fields import (
    RealQuadraticField,
    class_number,
    continued_fraction,
    form_cycles,
    fundamental_unit,
    has_norm_minus_one,
    narrow_class_number,
    reduced_forms,
    solve_negative_pell,
    unit_mod_prime,
)
from rayclass.types import DomainError, ResourceError

SQUAREFREE = [d for d in range(2, 2000) if is_squarefree(d)]
ODD_PRIMES = sieve_primes(5000)[1:]


def test_field_discriminant():
    assert RealQuadraticField(5).discriminant == 5
    assert RealQuadraticField(3).discriminant == 12
    assert RealQuadraticField(2).discriminant == 8


@pytest.mark.parametrize("d", [1, 4, 12, 0, -5])
def test_field_rejects_bad_radicals(d):
    with pytest.raises(DomainError):
        RealQuadraticField(d)


def test_continued_fraction_sqrt3():
    cf = continued_fraction(RealQuadraticField(3))
    assert cf.a0 == 1
    assert cf.period == (1, 2)


def test_continued_fraction_golden_ratio():
    cf = continued_fraction(RealQuadraticField(5))
    assert cf.a0 == 1
    assert cf.period == (1,)


def test_continued_fraction_13_has_odd_period():
    cf = continued_fraction(RealQuadraticField(13))
    assert cf.a0 == 2
    assert len(cf.period) % 2 == 1


@pytest.mark.parametrize(
    "d,a,b,q,norm",
    [(3, 2, 1, 1, 1), (5, 1, 1, 2, -1), (13, 3, 1, 2, -1), (34, 35, 6, 1, 1), (2, 1, 1, 1, -1)],
)
def test_fundamental_units(d, a, b, q, norm):
    unit = fundamental_unit(RealQuadraticField(d))
    assert (unit.a, unit.b, unit.q, unit.norm) == (a, b, q, norm)


def test_norm_identity_and_period_parity_below_10000():
    for d in filter(is_squarefree, range(2, 10_000)):
        unit = fundamental_unit(RealQuadraticField(d))
        assert unit.a * unit.a - d * unit.b * unit.b == unit.norm * unit.q * unit.q, d
        assert (unit.norm == -1) == (len(unit.expansion.period) % 2 == 1), d
        assert unit.to_mpf() > 1, d


@pytest.mark.parametrize("d,expected", [(7, False), (65, True), (34, False), (5, True), (21, False)])
def test_has_norm_minus_one(d, expected):
    assert has_norm_minus_one(RealQuadraticField(d)) is expected


@pytest.mark.parametrize("d,h", [(5, 1), (13, 1), (65, 2), (3, 1), (10, 2), (79, 3), (2, 1)])
def test_class_numbers(d, h):
    assert class_number(RealQuadraticField(d)) == h


def test_narrow_class_number_without_norm_minus_one():
    assert narrow_class_number(RealQuadraticField(3)) == 2
    assert narrow_class_number(RealQuadraticField(5)) == 1


def test_reduced_forms_of_twelve():
    assert reduced_forms(12) == [(-2, 2, 1), (-1, 2, 2), (1, 2, -2), (2, 2, -1)]
    assert len(form_cycles(12)) == 2


def test_reduced_forms_rejects_square():
    with pytest.raises(DomainError):
        reduced_forms(16)


def test_class_number_bound(budget_env):
    budget_env(class_number_bound=100)
    with pytest.raises(ResourceError):
        class_number(RealQuadraticField(103))


@pytest.mark.parametrize("p", [p for p in sieve_primes(500) if p % 4 == 1])
def test_prime_one_mod_four_has_odd_class_number(p):
    assert class_number(RealQuadraticField(p)) % 2 == 1


@pytest.mark.parametrize("d,solution", [(2, (1, 1)), (5, (2, 1)), (13, (18, 5)), (10, (3, 1)), (3, None)])
def test_negative_pell(d, solution):
    assert solve_negative_pell(d) == solution


@pytest.mark.parametrize("d,p,root,expected", [(5, 19, 9, 5), (5, 19, 10, 15), (3, 11, 5, 7)])
def test_unit_mod_prime_examples(d, p, root, expected):
    unit = fundamental_unit(RealQuadraticField(d))
    assert unit_mod_prime(unit, p, root) == expected
    assert unit_mod_prime(unit, p, root, streaming=True) == expected


def test_unit_mod_prime_needs_root():
    unit = fundamental_unit(RealQuadraticField(5))
    with pytest.raises(DomainError):
        unit_mod_prime(unit, 19, 4)


@settings(max_examples=300)
@given(st.sampled_from(SQUAREFREE), st.sampled_from(ODD_PRIMES))
def test_unit_times_conjugate_is_norm(d, p):
    assume(d % p and legendre_symbol(d, p) == 1)
    unit = fundamental_unit(RealQuadraticField(d))
    r = sqrt_mod(d, p)
    exact = unit_mod_prime(unit, p, r)
    assert unit_mod_prime(unit, p, r, streaming=True) == exact
    assert exact * unit_mod_prime(unit, p, p - r) % p == unit.norm % p


@pytest.mark.parametrize("d", [d for d in SQUAREFREE if d < 200 and d % 4 == 3])
def test_three_mod_four_has_no_norm_minus_one(d):
    assert not has_norm_minus_one(RealQuadraticField(d))


@pytest.mark.parametrize("p", [p for p in sieve_primes(200) if p % 4 == 1])
def test_primes_one_mod_four_have_norm_minus_one(p):
    assert has_norm_minus_one(RealQuadraticField(p))
    assert fundamental_unit(RealQuadraticField(p)).norm == -1


def test_unit_string():
    assert str(fundamental_unit(RealQuadraticField(5))) == "(1 + sqrt(5))/2"
    assert str(fundamental_unit(RealQuadraticField(3))) == "2 + sqrt(3)"
    assert math.isclose(float(fundamental_unit(RealQuadraticField(34)).to_mpf()), 35 + 6 * math.sqrt(34))
