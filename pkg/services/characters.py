"""Characters of S_n and the decomposition of the equivariant φ-series of Π_n."""

import logging
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd, prod
from typing import Dict, List, Optional, Tuple

from exceptions import InputError, InvariantViolation
from models.schemas import (
    CharacterDecomposition,
    ClassFunction,
    CycleType,
    IntegerPolynomial,
    Parts,
    PhiData,
    RationalFunction,
    Verdict,
)
from services import series
from services.combinatorics import class_size, partitions_of
from services.fixed_polytope import ehrhart_quasipolynomial, index

logger = logging.getLogger(__name__)


def _parts(value: CycleType | Parts) -> Parts:
    return value.parts if isinstance(value, CycleType) else tuple(value)


@lru_cache(maxsize=None)
def _border_strip_sum(beta: Tuple[int, ...], lengths: Tuple[int, ...]) -> int:
    """Murnaghan-Nakayama on beta-numbers.

    Removing a border strip of length r moves one bead b to b - r; the sign is -1 to the
    number of beads jumped over.
    """
    if not lengths:
        return 1
    r, rest = lengths[0], lengths[1:]
    beads = set(beta)
    total = 0
    for b in beta:
        c = b - r
        if c < 0 or c in beads:
            continue
        jumped = sum(1 for x in beta if c < x < b)
        moved = tuple(sorted((beads - {b}) | {c}, reverse=True))
        total += (-1) ** jumped * _border_strip_sum(moved, rest)
    return total


def irreducible_character(mu: CycleType | Parts, cycle_type: CycleType | Parts) -> int:
    """χ^μ evaluated on the class with the given cycle type."""
    shape, lengths = _parts(mu), _parts(cycle_type)
    if sum(shape) != sum(lengths):
        raise InputError(f"irrep {shape} and class {lengths} belong to different symmetric groups")
    k = len(shape)
    beta = tuple(part + k - i for i, part in enumerate(shape, start=1))
    return _border_strip_sum(beta, tuple(sorted(lengths, reverse=True)))


def character_table(n: int) -> Dict[Parts, ClassFunction]:
    classes = partitions_of(n)
    return {
        mu.parts: ClassFunction(n=n, values={c.parts: irreducible_character(mu, c) for c in classes})
        for mu in classes
    }


def irrep_name(mu: CycleType | Parts) -> str:
    shape = _parts(mu)
    n = sum(shape)
    if shape == (n,):
        return "triv"
    if shape == (1,) * n:
        return "alt"
    if n >= 3 and shape == (n - 1, 1):
        return "std"
    return "(" + ",".join(str(part) for part in shape) + ")"


def character_text(decomposition: CharacterDecomposition) -> str:
    """``3*chi_triv + chi_alt - chi_(2,1,1)``; the zero character prints as ``0``."""
    text = ""
    for mu, mult in decomposition.nonzero().items():
        term = f"chi_{irrep_name(mu)}" if abs(mult) == 1 else f"{abs(mult)}*chi_{irrep_name(mu)}"
        if not text:
            text = term if mult > 0 else f"-{term}"
        else:
            text += f" + {term}" if mult > 0 else f" - {term}"
    return text or "0"


def decompose(f: ClassFunction) -> CharacterDecomposition:
    """Multiplicities ⟨f, χ^μ⟩ = (1/n!) Σ_λ |C_λ| χ^μ(λ) f(λ), certified integral."""
    classes = partitions_of(f.n)
    order = factorial(f.n)
    multiplicities = {}
    for mu in classes:
        pairing = sum(class_size(c) * irreducible_character(mu, c) * f(c) for c in classes)
        multiplicity, remainder = divmod(pairing, order)
        if remainder:
            raise InvariantViolation(
                f"<f, χ^{mu.label()}> = {Fraction(pairing, order)} is not an integer; f is not a virtual character"
            )
        multiplicities[mu.parts] = multiplicity
    return CharacterDecomposition(n=f.n, multiplicities=multiplicities)


def reconstruct(decomposition: CharacterDecomposition) -> ClassFunction:
    classes = partitions_of(decomposition.n)
    return ClassFunction(
        n=decomposition.n,
        values={
            c.parts: sum(mult * irreducible_character(mu, c) for mu, mult in decomposition.multiplicities.items())
            for c in classes
        },
    )


def _coefficient_characters(n: int, rational: Dict[Parts, RationalFunction], count: int) -> List[ClassFunction]:
    expansions = {parts: series.series_coefficients(rf, count) for parts, rf in rational.items()}
    return [ClassFunction(n=n, values={parts: expansions[parts][i] for parts in rational}) for i in range(count)]


def phi_coefficients(n: int, count: int) -> List[ClassFunction]:
    """The virtual characters φ_0, ..., φ_{count-1}."""
    return _coefficient_characters(n, {c.parts: series.phi_series(c) for c in partitions_of(n)}, count)


def phi_data(n: int) -> PhiData:
    """Coefficientwise φ-series of Π_n together with the (1+z)-power tail of every class."""
    logger.info(f"Computing the equivariant phi-series of the permutahedron of S_{n}")
    classes = partitions_of(n)
    rational = {c.parts: series.phi_series(c) for c in classes}
    tails = {parts: series.partial_fraction_tail(rf) for parts, rf in rational.items()}

    is_polynomial = all(not tail.tail_numerators for tail in tails.values())
    tail_start = max(tail.polynomial_part.degree + 1 for tail in tails.values())
    coefficients = tuple(_coefficient_characters(n, rational, tail_start))
    decompositions = tuple(decompose(phi_i) for phi_i in coefficients)

    depth = max(len(tail.tail_numerators) for tail in tails.values())
    sign = (-1) ** tail_start
    tail_characters = tuple(
        ClassFunction(
            n=n,
            values={
                parts: sign * (tail.tail_numerators[j] if j < len(tail.tail_numerators) else 0)
                for parts, tail in tails.items()
            },
        )
        for j in range(depth)
    )
    tail_decompositions = tuple(decompose(t) for t in tail_characters)

    is_effective = is_polynomial and all(d.is_effective for d in decompositions)
    return PhiData(
        n=n,
        polynomial_coefficients=coefficients,
        decompositions=decompositions,
        tail_start=tail_start,
        tail={parts: tail.tail_numerators for parts, tail in tails.items()},
        tail_characters=tail_characters,
        tail_decompositions=tail_decompositions,
        is_polynomial=is_polynomial,
        is_effective=is_effective,
    )


def is_polynomial(n: int) -> bool:
    return phi_data(n).is_polynomial


def is_effective(n: int) -> bool:
    """Effectiveness implies polynomiality, so a non-polynomial φ is rejected outright."""
    data = phi_data(n)
    if not data.is_polynomial:
        return False
    return data.is_effective


def verdict(n: int) -> Verdict:
    """Polynomial and effective verdicts for Π_n with witnesses for each failure."""
    data = phi_data(n)
    non_polynomial: Optional[Parts] = next(
        (c.parts for c in partitions_of(n) if data.tail[c.parts]), None
    )
    negative: Optional[Tuple[str, Parts, int]] = None
    labelled = [(f"phi_{i}", d) for i, d in enumerate(data.decompositions)]
    labelled += [(f"tail_{j}", d) for j, d in enumerate(data.tail_decompositions, start=1)]
    for where, decomposition in labelled:
        for mu, mult in decomposition.multiplicities.items():
            if mult < 0:
                negative = (where, mu, mult)
                break
        if negative:
            break
    return Verdict(
        n=n,
        is_polynomial=data.is_polynomial,
        is_effective=data.is_effective,
        non_polynomial_witness=non_polynomial,
        negative_multiplicity_witness=negative,
    )


def h_star(n: int) -> IntegerPolynomial:
    """φ[z] at the identity, i.e. the h*-polynomial of Π_n."""
    rf = series.phi_series(CycleType.identity(n))
    if rf.denominator_factors:
        raise InvariantViolation(f"the h*-series of the permutahedron of S_{n} is not a polynomial: {rf}")
    return rf.numerator


def phi_at_one_formula(cycle_type: CycleType) -> int:
    """(m-1)!·n^(m-2)·gcd(λ)·∏ℓ_i / ind, the closed value of φ[1] on the class of λ."""
    n, m = cycle_type.n, cycle_type.m
    numerator = factorial(m - 1) * Fraction(n) ** (m - 2) * gcd(*cycle_type.parts) * prod(cycle_type.parts)
    value = numerator / index(cycle_type)
    if value.denominator != 1 or value < 0:
        raise InvariantViolation(f"phi[1]{cycle_type.label()} = {value} is not a nonnegative integer")
    return int(value)


def lattice_point_character(n: int, t: int) -> ClassFunction:
    """χ_{tΠ_n}: the permutation character of S_n on the lattice points of tΠ_n."""
    if t < 0:
        raise InputError(f"t must be nonnegative, got {t}")
    return ClassFunction(n=n, values={c.parts: ehrhart_quasipolynomial(c)(t) for c in partitions_of(n)})


def phi_at_one(data: PhiData) -> ClassFunction:
    """Σ_i φ_i for a polynomial φ-series."""
    total = data.polynomial_coefficients[0]
    for phi_i in data.polynomial_coefficients[1:]:
        total = total + phi_i
    return total


def tail_generator(tail_start: int, j: int, count: int) -> List[int]:
    """Coefficients of G_j = Σ_{i≥s} (-1)^(i-s)·C(i+j-1, j-1)·z^i up to z^(count-1)."""
    return [0 if i < tail_start else (-1) ** (i - tail_start) * comb(i + j - 1, j - 1) for i in range(count)]
