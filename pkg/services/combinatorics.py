"""Enumeration and elementary number theory shared by the other services."""

import logging
from functools import lru_cache
from math import factorial
from typing import List, Tuple

from sympy import bell
from sympy.utilities.iterables import partitions

from exceptions import InputError
from models.schemas import CycleType, Forest, IntegerPolynomial, SetPartition

logger = logging.getLogger(__name__)


def _require_positive(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise InputError(f"{name} must be a positive integer, got {value!r}")


def partitions_of(n: int) -> List[CycleType]:
    """All integer partitions of n, weakly decreasing, in reverse-lexicographic order."""
    _require_positive("n", n)
    result = []
    # sympy reuses the yielded dict, so it is expanded immediately
    for multiplicities in partitions(n):
        parts = []
        for part in sorted(multiplicities, reverse=True):
            parts.extend([part] * multiplicities[part])
        result.append(tuple(parts))
    result.sort(reverse=True)
    return [CycleType(parts=parts) for parts in result]


def set_partitions(m: int) -> List[SetPartition]:
    """All set partitions of {1..m}, generated from restricted-growth strings.

    The growth strings are produced in lexicographic order, which for m = 3 gives
    123, 12|3, 13|2, 1|23, 1|2|3.
    """
    _require_positive("m", m)
    return list(_set_partitions(m))


@lru_cache(maxsize=None)
def _set_partitions(m: int) -> Tuple[SetPartition, ...]:
    result: List[SetPartition] = []
    growth = [0] * m

    def extend(position: int, largest: int) -> None:
        if position == m:
            blocks: List[List[int]] = [[] for _ in range(largest + 1)]
            for element, block in enumerate(growth, start=1):
                blocks[block].append(element)
            result.append(SetPartition(m=m, blocks=tuple(tuple(b) for b in blocks)))
            return
        for block in range(largest + 2):
            growth[position] = block
            extend(position + 1, max(largest, block))

    growth[0] = 0
    extend(1, 0)
    return tuple(result)


def bell_number(m: int) -> int:
    _require_positive("m", m)
    return int(bell(m))


def forests_on(m: int) -> List[Forest]:
    """All labeled forests on {1..m}.

    Edges {i, j} are considered in lexicographic order; an edge is only added when its
    endpoints lie in different components, so every branch of the search stays acyclic.
    """
    _require_positive("m", m)
    return list(_forests_on(m))


@lru_cache(maxsize=None)
def _forests_on(m: int) -> Tuple[Forest, ...]:
    candidate_edges = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    result: List[Forest] = []

    def search(index: int, chosen: List[tuple], component: List[int]) -> None:
        if index == len(candidate_edges):
            result.append(Forest(m=m, edges=tuple(chosen)))
            return
        search(index + 1, chosen, component)
        i, j = candidate_edges[index]
        if component[i] != component[j]:
            merged = component[j]
            relabeled = [component[i] if c == merged else c for c in component]
            search(index + 1, chosen + [(i, j)], relabeled)

    search(0, [], list(range(m + 1)))
    logger.debug(f"Enumerated {len(result)} forests on {m} vertices")
    return tuple(result)


def forest_components(forest: Forest) -> SetPartition:
    return forest.components()


def two_valuation(k: int) -> int:
    """Largest e with 2^e dividing k."""
    _require_positive("k", k)
    return (k & -k).bit_length() - 1


def eulerian_polynomial(k: int) -> IntegerPolynomial:
    """A_k(z) with Σ_{t≥0} t^k z^t = A_k(z)/(1-z)^(k+1), so A_0 = 1 and A_1 = z.

    Uses A_k = z(1-z)A_{k-1}' + k·z·A_{k-1}, which is the operator z·d/dz applied to the
    generating function.
    """
    if not isinstance(k, int) or k < 0:
        raise InputError(f"k must be a nonnegative integer, got {k!r}")
    z = IntegerPolynomial.of(0, 1)
    z_times_one_minus_z = IntegerPolynomial.of(0, 1, -1)
    current = IntegerPolynomial.of(1)
    for j in range(1, k + 1):
        current = z_times_one_minus_z * current.derivative() + z * current * j
    return current


def class_size(cycle_type: CycleType) -> int:
    """Size of the conjugacy class n!/z_λ with z_λ = ∏ k^{m_k}·m_k!."""
    centralizer = 1
    for part in set(cycle_type.parts):
        multiplicity = cycle_type.parts.count(part)
        centralizer *= part ** multiplicity * factorial(multiplicity)
    size, remainder = divmod(factorial(cycle_type.n), centralizer)
    assert remainder == 0
    return size


def cayley_count(size: int) -> int:
    """Number of labeled trees on ``size`` vertices (1 for a single vertex)."""
    _require_positive("size", size)
    return size ** (size - 2) if size >= 2 else 1
