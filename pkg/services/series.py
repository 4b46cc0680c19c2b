"""Rational generating functions: Ehrhart series and the equivariant φ-series.

Denominators are products of Ψ_1 = 1 - z and the cyclotomic polynomials Ψ_d = Φ_d (d ≥ 2).
Because 1 - z^a = ∏_{d|a} Ψ_d exactly, products of binomials (1 - z^a) and the (1 + z)
factors that survive reduction are both representable, and reduction never has to
factor anything it did not build itself.
"""

import logging
from collections import defaultdict
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from sympy import divisors
from sympy.polys.densetools import dup_shift
from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd

from config import settings
from exceptions import InvariantViolation
from models.schemas import CycleType, IntegerPolynomial, PartialFractionTail, RationalFunction, psi_factor
from services.combinatorics import eulerian_polynomial, set_partitions
from services.fixed_polytope import is_lambda_compatible, v_pi

logger = logging.getLogger(__name__)

ONE_PLUS_Z = 2


def from_binomials(numerator: IntegerPolynomial, binomials: Iterable[Tuple[int, int]]) -> RationalFunction:
    """numerator / ∏ (1 - z^a)^e for the given (a, e) pairs."""
    factors: List[Tuple[int, int]] = []
    for a, e in binomials:
        factors.extend((int(d), e) for d in divisors(a))
    return RationalFunction(numerator=numerator, denominator_factors=factors)


def _psi_power(exponents: Dict[int, int]) -> IntegerPolynomial:
    result = IntegerPolynomial.of(1)
    for d, e in exponents.items():
        if e > 0:
            result = result * psi_factor(d) ** e
    return result


def add(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    ef, eg = dict(f.denominator_factors), dict(g.denominator_factors)
    common = {d: max(ef.get(d, 0), eg.get(d, 0)) for d in set(ef) | set(eg)}
    numerator = (
        f.numerator * _psi_power({d: e - ef.get(d, 0) for d, e in common.items()})
        + g.numerator * _psi_power({d: e - eg.get(d, 0) for d, e in common.items()})
    )
    return RationalFunction(numerator=numerator, denominator_factors=tuple(common.items()))


def multiply(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    return RationalFunction(
        numerator=f.numerator * g.numerator,
        denominator_factors=f.denominator_factors + g.denominator_factors,
    )


def multiply_by_binomials(rf: RationalFunction, lengths: Iterable[int]) -> RationalFunction:
    """rf·∏(1 - z^ℓ), cancelling against the denominator before touching the numerator."""
    exponents = defaultdict(int, dict(rf.denominator_factors))
    for length in lengths:
        for d in divisors(length):
            exponents[int(d)] -= 1
    numerator = rf.numerator * _psi_power({d: -e for d, e in exponents.items() if e < 0})
    return RationalFunction(
        numerator=numerator,
        denominator_factors=tuple((d, e) for d, e in exponents.items() if e > 0),
    )


def reduce(rf: RationalFunction) -> RationalFunction:
    """Cancel the gcd of numerator and denominator.

    The gcd is computed over ZZ and then peeled off factor by factor; whatever is left
    must be a unit, otherwise the factored denominator was inconsistent.
    """
    if rf.numerator.is_zero:
        return RationalFunction(numerator=rf.numerator)
    common = IntegerPolynomial.from_dup(dup_gcd(rf.numerator.to_dup(), rf.denominator().to_dup(), ZZ))
    numerator = rf.numerator
    factors = []
    for d, e in rf.denominator_factors:
        psi = psi_factor(d)
        while e > 0 and common.degree > 0:
            quotient, remainder = common.divmod(psi)
            if not remainder.is_zero:
                break
            common = quotient
            numerator, remainder = numerator.divmod(psi)
            if not remainder.is_zero:
                raise InvariantViolation(f"Ψ_{d} divides the gcd but not the numerator {rf.numerator}")
            e -= 1
        factors.append((d, e))
    if common.degree != 0 or abs(common.leading_coefficient) != 1:
        raise InvariantViolation(f"gcd factor {common} is not a product of the denominator factors")
    return RationalFunction(numerator=numerator, denominator_factors=factors)


def equal(f: RationalFunction, g: RationalFunction) -> bool:
    return f.numerator * g.denominator() == g.numerator * f.denominator()


def evaluate(rf: RationalFunction, x: int | Fraction) -> Fraction:
    """Exact value at a rational point; reduces first so removable singularities are fine."""
    reduced = reduce(rf)
    denominator = reduced.denominator()(Fraction(x))
    if denominator == 0:
        raise InvariantViolation(f"{reduced} has a pole at z = {x}")
    return Fraction(reduced.numerator(Fraction(x))) / denominator


def series_coefficients(rf: RationalFunction, count: Optional[int] = None) -> List[int]:
    """First ``count`` Maclaurin coefficients, by exact long division (denominator(0) = 1)."""
    count = settings.series_terms if count is None else count
    numerator = rf.numerator
    denominator = rf.denominator()
    coefficients: List[int] = []
    for i in range(count):
        value = numerator.coefficient(i)
        for j in range(1, min(i, denominator.degree) + 1):
            value -= denominator.coefficient(j) * coefficients[i - j]
        coefficients.append(value)
    return coefficients


def ehrhart_series(cycle_type: CycleType) -> RationalFunction:
    """Σ_t L(t) z^t as a reduced rational function.

    λ-compatible partitions contribute v_π A_k(z)/(1-z)^(k+1) and the others contribute
    v_π 2^k A_k(z^2)/(1-z^2)^(k+1), where k = m - |π|.
    """
    m = cycle_type.m
    weights: Dict[Tuple[int, bool], int] = defaultdict(int)
    for pi in set_partitions(m):
        weights[(m - len(pi), is_lambda_compatible(cycle_type, pi))] += v_pi(cycle_type, pi)

    total = RationalFunction(numerator=IntegerPolynomial())
    for (k, compatible), weight in sorted(weights.items()):
        eulerian = eulerian_polynomial(k)
        if compatible:
            term = from_binomials(eulerian * weight, [(1, k + 1)])
        else:
            term = from_binomials(eulerian.substitute_power(2) * (weight * 2**k), [(2, k + 1)])
        total = add(total, term)
    return reduce(total)


def phi_series(cycle_type: CycleType) -> RationalFunction:
    """∏(1 - z^ℓ_i)·Ehr(z), reduced; a polynomial exactly when no factors remain."""
    result = reduce(multiply_by_binomials(ehrhart_series(cycle_type), cycle_type.parts))
    logger.debug(f"phi[z]{cycle_type.label()} = {result}")
    return result


def is_polynomial(rf: RationalFunction) -> bool:
    return not reduce(rf).denominator_factors


def polynomiality_predicate(cycle_type: CycleType) -> bool:
    """The number of even cycle lengths is 0, m - 1 or m."""
    evens = sum(1 for part in cycle_type.parts if part % 2 == 0)
    return evens in (0, cycle_type.m - 1, cycle_type.m)


def partial_fraction_tail(rf: RationalFunction) -> PartialFractionTail:
    """Split rf = P(z) + Σ_{j=1}^r c_j/(1+z)^j.

    The remainder R of P's division by (1+z)^r is rewritten in powers of w = 1 + z, and
    R/(1+z)^r = Σ_i b_i w^(i-r) gives c_j = b_(r-j).
    """
    reduced = reduce(rf)
    if any(d != ONE_PLUS_Z for d, _ in reduced.denominator_factors):
        raise InvariantViolation(f"denominator of {reduced} is not a power of (1+z)")
    r = reduced.pole_order(ONE_PLUS_Z)
    if r == 0:
        return PartialFractionTail(polynomial_part=reduced.numerator)
    polynomial_part, remainder = reduced.numerator.divmod(psi_factor(ONE_PLUS_Z) ** r)
    shifted = IntegerPolynomial.from_dup(dup_shift(remainder.to_dup(), ZZ(-1), ZZ))
    return PartialFractionTail(
        polynomial_part=polynomial_part,
        tail_numerators=tuple(shifted.coefficient(r - j) for j in range(1, r + 1)),
    )


def reconstruct_from_tail(tail: PartialFractionTail) -> RationalFunction:
    total = RationalFunction(numerator=tail.polynomial_part)
    for j, c in enumerate(tail.tail_numerators, start=1):
        total = add(total, RationalFunction(numerator=IntegerPolynomial.of(c), denominator_factors=((ONE_PLUS_Z, j),)))
    return total
