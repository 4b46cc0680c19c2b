from itertools import permutations, product

import pytest
from sympy import interpolate, symbols

from exceptions import BudgetExceededError, InputError
from models.schemas import CycleType
from services.fixed_polytope import ehrhart_quasipolynomial
from services.oracle import LatticePointOracle, count_slice, lattice_point_oracle


def brute_force(cycle_type, t):
    """Fixed lattice points by plain enumeration of the cycle coordinates."""
    n = cycle_type.n
    count = 0
    for y in product(range(t, t * n + 1), repeat=cycle_type.m):
        x = [value for value, length in zip(y, cycle_type.parts) for _ in range(length)]
        if LatticePointOracle.in_dilated_permutahedron(x, t):
            count += 1
    return count


@pytest.mark.parametrize(
    "x,t,expected", [((1, 2, 3), 1, True), ((2, 2, 2), 1, True), ((3, 3, 0), 1, False), ((2, 4, 6), 2, True)]
)
def test_membership(x, t, expected):
    assert LatticePointOracle.in_dilated_permutahedron(x, t) is expected


def test_membership_rejects_non_positive_t():
    with pytest.raises(InputError):
        LatticePointOracle.in_dilated_permutahedron((1, 2, 3), 0)


@pytest.mark.parametrize(
    "parts,t,expected", [((2, 1, 1), 1, 6), ((1, 1, 1), 1, 7), ((4,), 1, 0), ((4,), 2, 1), ((2, 2), 3, 6)]
)
def test_fixed_lattice_point_counts(parts, t, expected):
    assert lattice_point_oracle.count_fixed_lattice_points(CycleType.of(*parts), t) == expected


@pytest.mark.parametrize("parts", [(1, 1, 1), (2, 1, 1), (3, 1), (2, 2), (2, 1, 1, 1), (3, 2), (2, 2, 1)])
@pytest.mark.parametrize("t", [1, 2, 3])
def test_vectorized_slices_match_plain_enumeration(parts, t):
    cycle_type = CycleType.of(*parts)
    total = sum(count_slice(cycle_type.parts, t, first) for first in range(t, t * cycle_type.n + 1))
    assert total == brute_force(cycle_type, t)


@pytest.mark.parametrize("parts", [(2, 1, 1), (3, 2, 1), (4, 2, 1)])
@pytest.mark.parametrize("t", [1, 2, 3])
def test_counts_do_not_depend_on_the_order_of_cycles(parts, t):
    cycle_type = CycleType.of(*parts)
    expected = lattice_point_oracle.count_fixed_lattice_points(cycle_type, t)
    for order in set(permutations(parts)):
        assert sum(count_slice(order, t, first) for first in range(t, t * cycle_type.n + 1)) == expected


@pytest.mark.parametrize("parts", [(3,), (1, 1), (3, 1), (5, 3), (1, 1, 1), (3, 1, 1)])
def test_all_odd_cycles_give_one_polynomial(parts):
    cycle_type = CycleType.of(*parts)
    oracle = LatticePointOracle(max_dilation_size=60)
    t = symbols("t")
    # degree m - 1 needs m even samples; one more checks the fit
    even = [(2 * k, oracle.count_fixed_lattice_points(cycle_type, 2 * k)) for k in range(1, cycle_type.m + 2)]
    polynomial = interpolate(even, t)
    for odd in range(1, 2 * cycle_type.m + 2, 2):
        assert polynomial.subs(t, odd) == oracle.count_fixed_lattice_points(cycle_type, odd)


def test_dilation_budget():
    oracle = LatticePointOracle(max_dilation_size=10)
    with pytest.raises(BudgetExceededError) as info:
        oracle.count_fixed_lattice_points(CycleType.of(2, 1, 1), 3)
    assert info.value.value == 12
    assert info.value.bound == 10


def test_candidate_budget():
    oracle = LatticePointOracle(max_candidates=100)
    with pytest.raises(BudgetExceededError):
        oracle.count_fixed_lattice_points(CycleType.identity(4), 2)
    assert oracle.count_fixed_lattice_points(CycleType.of(4), 2) == 1


def test_count_rejects_non_positive_t():
    with pytest.raises(InputError):
        lattice_point_oracle.count_fixed_lattice_points(CycleType.of(2, 1), 0)


def test_worker_pool_matches_serial_count():
    cycle_type = CycleType.of(2, 1, 1)
    parallel = LatticePointOracle(workers=2).count_fixed_lattice_points(cycle_type, 2)
    assert parallel == ehrhart_quasipolynomial(cycle_type)(2)


def test_sweep_rejects_bad_bounds():
    with pytest.raises(InputError):
        lattice_point_oracle.sweep(0, 3)


def test_sweep_checks_budget_up_front():
    with pytest.raises(BudgetExceededError):
        LatticePointOracle(max_dilation_size=8).sweep(3, 3)


def test_identity_sweep():
    report = lattice_point_oracle.sweep(5, 3, select=lambda c: c.m == c.n)
    assert len(report.comparisons) == 15
    assert report.passed


@pytest.mark.slow
def test_sweep_up_to_six():
    report = lattice_point_oracle.sweep(6, 4)
    assert len(report.comparisons) == 4 * (1 + 2 + 3 + 5 + 7 + 11)
    assert report.mismatches == []


@pytest.mark.slow
def test_sweep_covers_both_parities():
    report = lattice_point_oracle.sweep(4, 6)
    assert report.passed
    assert {c.t % 2 for c in report.comparisons} == {0, 1}
