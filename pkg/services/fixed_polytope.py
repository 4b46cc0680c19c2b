"""Closed formulas for the fixed polytope Π_n^σ of a permutation with cycle type λ.

Everything here is a function of the cycle type alone: the half-open parallelotope
decomposition of the zonotope is indexed by forests on the m cycles, and the
lattice-point counts only depend on the set partition a forest induces.
"""

import logging
from fractions import Fraction
from math import gcd, prod
from typing import List, Optional

from config import settings
from exceptions import BudgetExceededError, InputError
from models.schemas import CycleType, Forest, IntegerPolynomial, Quasipolynomial, SetPartition
from services.combinatorics import forests_on, set_partitions, two_valuation

logger = logging.getLogger(__name__)


def _block_lengths(cycle_type: CycleType, pi: SetPartition) -> List[List[int]]:
    if pi.m != cycle_type.m:
        raise InputError(
            f"set partition {pi.label()} is on {pi.m} elements but {cycle_type.label()} has {cycle_type.m} cycles"
        )
    return [[cycle_type.parts[j - 1] for j in block] for block in pi.blocks]


def _check_forest(cycle_type: CycleType, forest: Forest) -> None:
    if forest.m != cycle_type.m:
        raise InputError(f"forest is on {forest.m} vertices but {cycle_type.label()} has {cycle_type.m} cycles")


def is_lambda_compatible(cycle_type: CycleType, pi: SetPartition) -> bool:
    """Every block holds an odd cycle length or attains its minimum 2-valuation an even number of times."""
    for lengths in _block_lengths(cycle_type, pi):
        if any(length % 2 == 1 for length in lengths):
            continue
        valuations = [two_valuation(length) for length in lengths]
        if valuations.count(min(valuations)) % 2 == 0:
            continue
        return False
    return True


def affine_span_meets_lattice(cycle_type: CycleType, pi: SetPartition) -> bool:
    """Divisibility form of the same condition.

    The affine span of a tile with component partition π is cut out by
    Σ_{j∈B} ℓ_j x_j = Σ_{j∈B} ℓ_j(ℓ_j+1)/2 for each block B, which has an integer
    solution exactly when gcd(ℓ_j : j ∈ B) divides the right-hand side.
    """
    for lengths in _block_lengths(cycle_type, pi):
        target = sum(length * (length + 1) // 2 for length in lengths)
        if target % gcd(*lengths) != 0:
            return False
    return True


def v_pi(cycle_type: CycleType, pi: SetPartition) -> int:
    """∏_blocks gcd(ℓ_j : j∈B)·(Σ_{j∈B} ℓ_j)^(|B|-2); singleton blocks contribute 1."""
    weight = 1
    for lengths in _block_lengths(cycle_type, pi):
        if len(lengths) == 1:
            continue
        weight *= gcd(*lengths) * sum(lengths) ** (len(lengths) - 2)
    return weight


def ehrhart_quasipolynomial(cycle_type: CycleType) -> Quasipolynomial:
    """L(t) = Σ_π v_π t^(m-|π|) for even t; the same sum over λ-compatible π for odd t."""
    m = cycle_type.m
    even = [0] * m
    odd = [0] * m
    for pi in set_partitions(m):
        weight = v_pi(cycle_type, pi)
        degree = m - len(pi)
        even[degree] += weight
        if is_lambda_compatible(cycle_type, pi):
            odd[degree] += weight
    return Quasipolynomial(
        even_branch=IntegerPolynomial(coefficients=even),
        odd_branch=IntegerPolynomial(coefficients=odd),
    )


def dimension(cycle_type: CycleType) -> int:
    return cycle_type.m - 1


def volume(cycle_type: CycleType) -> int:
    """n^(m-2)·gcd(λ); a single cycle gives a point, whose volume is 1."""
    if cycle_type.m == 1:
        return 1
    return cycle_type.n ** (cycle_type.m - 2) * gcd(*cycle_type.parts)


def is_lattice(cycle_type: CycleType) -> bool:
    return all(part % 2 == 1 for part in cycle_type.parts)


def index(cycle_type: CycleType) -> int:
    """Smallest k ≥ 1 such that the affine span of kΠ_n^σ contains a lattice point."""
    return 1 if affine_span_meets_lattice(cycle_type, SetPartition.one_block(cycle_type.m)) else 2


def box_volume(cycle_type: CycleType, forest: Forest) -> int:
    """Volume of the half-open parallelotope of a forest, evaluated component by component."""
    _check_forest(cycle_type, forest)
    result = 1
    for block in forest.components().blocks:
        if len(block) == 1:
            continue
        lengths = [cycle_type.parts[j - 1] for j in block]
        result *= gcd(*lengths)
        for j in block:
            result *= cycle_type.parts[j - 1] ** (forest.degree(j) - 1)
    return result


def box_lattice_point_count(cycle_type: CycleType, forest: Forest, t: int) -> int:
    """Lattice points in the t-th dilate of one half-open tile."""
    if t < 1:
        raise InputError(f"t must be positive, got {t}")
    if t % 2 == 1 and not is_lambda_compatible(cycle_type, forest.components()):
        return 0
    return box_volume(cycle_type, forest) * t ** len(forest.edges)


def _check_forest_bound(m: int, max_m: Optional[int]) -> None:
    bound = settings.forest_check_max_m if max_m is None else max_m
    if m > bound:
        raise BudgetExceededError("number of cycles m", m, bound)


def ehrhart_via_forests(cycle_type: CycleType, t: int, max_m: Optional[int] = None) -> int:
    """Count tΠ_n^σ ∩ Z^n tile by tile over the forest decomposition."""
    _check_forest_bound(cycle_type.m, max_m)
    return sum(box_lattice_point_count(cycle_type, forest, t) for forest in forests_on(cycle_type.m))


def forest_sum_identity_check(cycle_type: CycleType, pi: SetPartition, max_m: Optional[int] = None) -> bool:
    """Check Σ_{F inducing π} ∏_j ℓ_j^(deg_F(j)-1) = ∏_B (Σ_{j∈B} ℓ_j)^(|B|-2) by enumeration."""
    _check_forest_bound(cycle_type.m, max_m)
    lengths = _block_lengths(cycle_type, pi)
    expected = prod((Fraction(sum(block)) ** (len(block) - 2) for block in lengths), start=Fraction(1))
    total = Fraction(0)
    for forest in forests_on(cycle_type.m):
        if forest.components() != pi:
            continue
        total += prod(
            (Fraction(cycle_type.parts[j - 1]) ** (forest.degree(j) - 1) for j in range(1, cycle_type.m + 1)),
            start=Fraction(1),
        )
    if total != expected:
        logger.warning(f"Forest sum {total} differs from {expected} for {cycle_type.label()} and {pi.label()}")
    return total == expected
