import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rayclass.arith import rank_mod, sieve_primes
from rayclass.criterion import (
    brute_force_psi_order,
    build_context,
    phi_l_matrix,
    phi_rank_checks,
    power_of_two_gap,
    ray_class_equals,
    split_context,
    unit_residues,
)
from rayclass.criterion.context import gray_code
from rayclass.fields import MultiquadField, splits_completely, unit_system
from rayclass.types import (
    DomainError,
    InputError,
    InvariantViolation,
    ResourceError,
    UnsupportedFieldError,
    VerdictReason,
)

K5 = MultiquadField((5,))
K_5_13 = MultiquadField((5, 13))


def split_primes(field, bound):
    return [p for p in sieve_primes(bound)[1:] if splits_completely(field, p)]


def test_gray_code():
    assert gray_code(1) == (0, 1)
    assert gray_code(2) == (0, 1, 3, 2)
    codes = gray_code(3)
    assert sorted(codes) == list(range(8))
    assert all(bin(a ^ b).count("1") == 1 for a, b in zip(codes, codes[1:]))


def test_split_context_roots_and_images():
    ctx = split_context(K_5_13, 79)
    assert ctx.p_mod_4 == 3
    assert ctx.odd_l == [3, 13]
    assert ctx.embeddings == (0, 1, 3, 2)
    for d, r in zip(K_5_13.radicals, ctx.roots):
        assert (r * r - d) % 79 == 0
    assert len(set(ctx.images)) == 4


def test_split_context_rejects_bad_primes():
    with pytest.raises(InputError):
        split_context(K_5_13, 77)
    with pytest.raises(DomainError):
        split_context(K_5_13, 73)


def test_build_context_needs_a_norm_minus_one_unit():
    field = MultiquadField((3, 5))
    with pytest.raises(DomainError):
        build_context(field, unit_system(field), 11)
    with pytest.raises(DomainError):
        build_context(K_5_13, unit_system(K5), 79)


def test_unit_residues_are_units():
    ctx = split_context(K_5_13, 79)
    rows = unit_residues(ctx, unit_system(K_5_13))
    assert len(rows) == 3
    assert all(0 < x < 79 for row in rows for x in row)


def test_phi_matrix_for_sqrt5_at_19():
    ctx = split_context(K5, 19)
    matrix = phi_l_matrix(ctx, unit_system(K5), 3)
    assert matrix in ([[1, 2]], [[2, 1]])


def test_phi_matrix_rejects_bad_l():
    ctx = split_context(K5, 19)
    for l in (2, 5, 9):
        with pytest.raises(DomainError):
            phi_l_matrix(ctx, unit_system(K5), l)


def test_phi_matrix_rows_sum_to_zero_at_79():
    units = unit_system(K_5_13)
    ctx = split_context(K_5_13, 79)
    for l in (3, 13):
        matrix = phi_l_matrix(ctx, units, l)
        assert len(matrix) == 3 and all(len(row) == 4 for row in matrix)
        assert all(sum(row) % l == 0 for row in matrix)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(split_primes(K_5_13, 3000)), st.integers(min_value=0, max_value=1000))
def test_phi_rows_sum_to_zero(p, seed):
    units = unit_system(K_5_13)
    ctx = split_context(K_5_13, p)
    for l in ctx.odd_l:
        assert all(sum(row) % l == 0 for row in phi_l_matrix(ctx, units, l, seed))


ROW_SUM_FIELDS = [(5,), (13,), (2,), (5, 13), (2, 5), (5, 29), (13, 17), (5, 13, 37)]


@pytest.mark.slow
def test_phi_rows_sum_to_zero_on_every_split_prime():
    triples = 0
    for radicals in ROW_SUM_FIELDS:
        field = MultiquadField(radicals)
        units = unit_system(field)
        for p in split_primes(field, 40_000):
            ctx = split_context(field, p)
            residues = unit_residues(ctx, units)
            for l in ctx.odd_l:
                matrix = phi_l_matrix(ctx, units, l, p, residues)
                assert all(sum(row) % l == 0 for row in matrix), (radicals, p, l)
                triples += 1
    assert triples >= 10_000


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(split_primes(K_5_13, 3000)), st.integers(min_value=1, max_value=1000))
def test_ranks_do_not_depend_on_the_seed(p, seed):
    units = unit_system(K_5_13)
    ctx = split_context(K_5_13, p)
    first = {l: c.rank for l, c in phi_rank_checks(ctx, units, 0).items()}
    second = {l: c.rank for l, c in phi_rank_checks(ctx, units, seed).items()}
    assert first == second


def test_ranks_do_not_depend_on_column_order():
    units = unit_system(K_5_13)
    ctx = split_context(K_5_13, 79)
    for l in ctx.odd_l:
        matrix = phi_l_matrix(ctx, units, l)
        reversed_columns = [row[::-1] for row in matrix]
        assert rank_mod(matrix, l) == rank_mod(reversed_columns, l)


def test_verdict_passes_for_sqrt5_at_19():
    report = ray_class_equals(K5, unit_system(K5), 19)
    assert report.verdict
    assert report.reason == VerdictReason.PASSED
    assert report.ranks == [1]
    assert report.passed_2


@pytest.mark.parametrize(
    "p,reason,split",
    [
        (5, VerdictReason.RAMIFIED, False),
        (13, VerdictReason.RAMIFIED, False),
        (73, VerdictReason.NON_SPLIT, False),
        (2, VerdictReason.NON_SPLIT, False),
        (61, VerdictReason.P_1_MOD_4, True),
        (29, VerdictReason.P_1_MOD_4, True),
    ],
)
def test_shortcut_verdicts(p, reason, split):
    report = ray_class_equals(K_5_13, unit_system(K_5_13), p)
    assert not report.verdict
    assert report.reason == reason
    assert report.split is split
    assert report.per_l == {}


def test_even_prime_verdict_reports_the_split():
    K17 = MultiquadField((17,))
    report = ray_class_equals(K17, unit_system(K17), 2)
    assert report.split
    assert report.reason == VerdictReason.EVEN_PRIME
    assert not report.verdict
    with pytest.raises(DomainError):
        split_context(K17, 2)


def test_verdict_at_79_checks_every_odd_l():
    report = ray_class_equals(K_5_13, unit_system(K_5_13), 79)
    assert report.odd_l == [3, 13]
    assert set(report.per_l) == {3, 13}
    assert all(c.required == 3 for c in report.per_l.values())
    assert report.reason in (VerdictReason.PASSED, VerdictReason.RANK_DEFICIENT)


def test_verdict_without_norm_minus_one():
    field = MultiquadField((3, 5))
    p = split_primes(field, 500)[0]
    report = ray_class_equals(field, unit_system(field), p)
    assert report.reason == VerdictReason.NO_NORM_MINUS_ONE
    assert report.split


def test_verdict_rejects_composite():
    with pytest.raises(InputError):
        ray_class_equals(K_5_13, unit_system(K_5_13), 91)


def test_verdict_rejects_three_radicals():
    field = MultiquadField((5, 13, 37))
    units = unit_system(field)
    p = next(p for p in split_primes(field, 20_000) if p % 4 == 3)
    with pytest.raises(UnsupportedFieldError):
        ray_class_equals(field, units, p)


def test_brute_force_order_for_sqrt5_at_19():
    assert brute_force_psi_order(K5, unit_system(K5), 19) == 36
    assert power_of_two_gap(K5, unit_system(K5), 19) == (1, True)


def test_brute_force_unknown_method():
    with pytest.raises(DomainError):
        brute_force_psi_order(K5, unit_system(K5), 19, method="guess")


def test_closure_respects_the_enumeration_budget(budget_env):
    budget_env(enumeration_budget=100)
    with pytest.raises(ResourceError):
        brute_force_psi_order(K5, unit_system(K5), 19, method="closure")


@pytest.mark.parametrize("field,bound", [(K5, 300), (K_5_13, 80)])
def test_closure_and_lattice_agree(field, bound):
    units = unit_system(field)
    for p in split_primes(field, bound):
        closure = brute_force_psi_order(field, units, p, method="closure")
        assert closure == brute_force_psi_order(field, units, p, method="lattice")


def agrees_with_oracle(field, p):
    units = unit_system(field)
    report = ray_class_equals(field, units, p)
    order = brute_force_psi_order(field, units, p)
    return report.verdict == (order == 2 * (p - 1) ** (field.n - 1))


def test_criterion_matches_oracle_for_sqrt5():
    assert all(agrees_with_oracle(K5, p) for p in split_primes(K5, 2000))


def test_criterion_matches_oracle_for_5_13():
    assert all(agrees_with_oracle(K_5_13, p) for p in split_primes(K_5_13, 500))


@pytest.mark.slow
def test_criterion_matches_oracle_for_5_13_up_to_2000():
    assert all(agrees_with_oracle(K_5_13, p) for p in split_primes(K_5_13, 2000))


def test_image_is_never_full_at_1_mod_4():
    units = unit_system(K_5_13)
    for p in (29, 61):
        gap, _ = power_of_two_gap(K_5_13, units, p)
        assert gap >= 2


@pytest.mark.parametrize(
    "radicals",
    [(5,), pytest.param((5, 13), marks=pytest.mark.slow), pytest.param((2, 5), marks=pytest.mark.slow)],
)
def test_gap_is_a_power_of_two_when_every_odd_rank_is_full(radicals):
    field = MultiquadField(radicals)
    units = unit_system(field)
    checked = 0
    for p in split_primes(field, 1500):
        if p % 4 != 1:
            continue
        if not all(c.passed for c in phi_rank_checks(split_context(field, p), units).values()):
            continue
        gap, is_power_of_two = power_of_two_gap(field, units, p)
        assert is_power_of_two, (p, gap)
        checked += 1
    assert checked > 0


def test_oracle_invariant_is_checked(monkeypatch):
    monkeypatch.setattr("rayclass.criterion.oracle._closure_order", lambda p, generators: 7)
    with pytest.raises(InvariantViolation):
        brute_force_psi_order(K5, unit_system(K5), 19, method="closure")
