"""Checks of the remaining equivariant Ehrhart conjectures for the permutahedron.

Each check returns a ConjectureReport; a failed check is reported, never raised.
"""

import logging
from fractions import Fraction
from typing import List, Optional

from config import settings
from exceptions import InputError, PreconditionError
from models.schemas import ConjectureReport, PhiData
from services import series
from services.characters import character_text, decompose, h_star, phi_at_one, phi_at_one_formula, phi_data
from services.combinatorics import partitions_of

logger = logging.getLogger(__name__)

# φ[1] of Π_3 decomposes as 3·triv + alt + std
PI_3_PHI_AT_ONE = {(3,): 3, (2, 1): 1, (1, 1, 1): 1}


def _require_polynomial(n: int, conjecture: str) -> PhiData:
    data = phi_data(n)
    if not data.is_polynomial:
        raise PreconditionError(f"conjecture {conjecture} needs a polynomial phi-series, which fails for n = {n}")
    return data


def check_permutation_representation(n: int) -> ConjectureReport:
    """φ[1] should be a permutation character whenever φ is effective.

    Only necessary conditions are tested (nonnegative multiplicities and values, value at
    the identity maximal, trivial constituent present), plus the exact decomposition at n = 3.
    """
    data = _require_polynomial(n, "12.2")
    total = phi_at_one(data)
    decomposition = decompose(total)
    identity = (1,) * n
    details: List[str] = []

    if not decomposition.is_effective:
        details.append("phi[1] has a negative multiplicity")
    if any(value < 0 for value in total.values.values()):
        details.append("phi[1] takes a negative value")
    if any(value > total(identity) for value in total.values.values()):
        details.append("phi[1] is not maximal at the identity")
    if decomposition.multiplicity((n,)) < 1:
        details.append("phi[1] has no trivial constituent")
    if n == 3 and decomposition.nonzero() != PI_3_PHI_AT_ONE:
        details.append(f"phi[1] of Pi_3 decomposes as {decomposition.nonzero()}")

    passed = not details
    details.append(f"phi[1] = {character_text(decomposition)}")
    return ConjectureReport(
        conjecture="12.2", scope=f"n={n}", passed=passed, details=details, decomposition=decomposition.nonzero()
    )


def check_phi_at_one_integrality(n_max: int, crosscheck_max_n: Optional[int] = None) -> ConjectureReport:
    """The closed value of φ[1](σ) is a nonnegative integer for every class of every n ≤ n_max.

    For n ≤ crosscheck_max_n the reduced φ-series is also evaluated at z = 1 and compared.
    """
    if n_max < 1:
        raise InputError(f"n_max must be positive, got {n_max}")
    bound = settings.phi_crosscheck_max_n if crosscheck_max_n is None else crosscheck_max_n
    details: List[str] = []
    checked = 0
    for n in range(1, n_max + 1):
        for cycle_type in partitions_of(n):
            value = phi_at_one_formula(cycle_type)
            checked += 1
            if n <= bound:
                direct = series.evaluate(series.phi_series(cycle_type), 1)
                if direct != Fraction(value):
                    details.append(f"{cycle_type.label()}: formula {value}, phi-series at 1 gives {direct}")
    passed = not details
    details.append(f"{checked} cycle types checked; phi-series cross-check for n <= {min(bound, n_max)}")
    logger.info(f"Conjecture 12.3: {checked} cycle types checked up to n = {n_max}")
    return ConjectureReport(conjecture="12.3", scope=f"n<={n_max}", passed=passed, details=details)


def check_trivial_constituents(n: int) -> ConjectureReport:
    """Every φ_i with h*_i > 0 contains the trivial character."""
    data = _require_polynomial(n, "12.4")
    h = h_star(n)
    details: List[str] = []
    for i, decomposition in enumerate(data.decompositions):
        if h.coefficient(i) > 0 and decomposition.multiplicity((n,)) < 1:
            details.append(f"phi_{i} has no trivial constituent although h*_{i} = {h.coefficient(i)}")
    passed = not details
    details.append(f"h* = {h}")
    return ConjectureReport(conjecture="12.4", scope=f"n={n}", passed=passed, details=details)


def check_conjecture(name: str, n: int) -> ConjectureReport:
    checks = {
        "12.2": check_permutation_representation,
        "12.3": check_phi_at_one_integrality,
        "12.4": check_trivial_constituents,
    }
    if name not in checks:
        raise InputError(f"unknown conjecture {name!r}; expected one of {', '.join(checks)}")
    return checks[name](n)
