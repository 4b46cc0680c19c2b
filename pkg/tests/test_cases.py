from typing import Dict, Iterable, NamedTuple, Optional, Tuple

Parts = Tuple[int, ...]


class QuasipolynomialCase(NamedTuple):
    """
    Ehrhart quasipolynomial of one fixed polytope, branches lowest degree first, with its
    φ-series when that is a polynomial.
    """

    cycle_type: Parts
    even_branch: Tuple[int, ...]
    odd_branch: Tuple[int, ...]
    phi: Optional[Tuple[int, ...]]


class SegmentCase(NamedTuple):
    """
    Two cycles give a segment: L(t) = gcd(ℓ_1, ℓ_2)·t + 1 for even t.
    """

    cycle_type: Parts
    even_branch: Tuple[int, ...]
    odd_branch: Tuple[int, ...]


class CompatibilityCase(NamedTuple):
    """
    One row of the m = 3 compatibility grid: a cycle type whose 2-valuations follow
    ``pattern`` (v_1 ≥ v_2 ≥ v_3), and which of 123, 12|3, 13|2, 23|1, 1|2|3 are compatible.
    """

    pattern: str
    cycle_type: Parts
    compatible: Tuple[bool, bool, bool, bool, bool]


class DecompositionCase(NamedTuple):
    n: int
    index: int
    multiplicities: Dict[Parts, int]


def quasipolynomial_cases() -> Iterable[QuasipolynomialCase]:
    # S_3
    yield QuasipolynomialCase((1, 1, 1), (1, 3, 3), (1, 3, 3), (1, 4, 1))
    yield QuasipolynomialCase((2, 1), (1, 1), (0, 1), (1, 0, 1))
    yield QuasipolynomialCase((3,), (1,), (1,), (1, 1, 1))

    # S_4
    yield QuasipolynomialCase((1, 1, 1, 1), (1, 6, 15, 16), (1, 6, 15, 16), (1, 34, 55, 6))
    yield QuasipolynomialCase((2, 1, 1), (1, 3, 4), (0, 2, 4), None)
    yield QuasipolynomialCase((3, 1), (1, 1), (1, 1), (1, 1, 1))
    yield QuasipolynomialCase((4,), (1,), (), (1, 0, 1))
    yield QuasipolynomialCase((2, 2), (1, 2), (0, 2), (1, 2, 3, 2))


def segment_cases() -> Iterable[SegmentCase]:
    # both odd: gcd·t + 1 on every t
    yield SegmentCase((1, 1), (1, 1), (1, 1))
    yield SegmentCase((3, 1), (1, 1), (1, 1))
    yield SegmentCase((5, 1), (1, 1), (1, 1))
    yield SegmentCase((7, 1), (1, 1), (1, 1))
    yield SegmentCase((3, 3), (1, 3), (1, 3))
    yield SegmentCase((5, 3), (1, 1), (1, 1))

    # different parity: gcd·t on odd t
    yield SegmentCase((2, 1), (1, 1), (0, 1))
    yield SegmentCase((4, 1), (1, 1), (0, 1))
    yield SegmentCase((6, 1), (1, 1), (0, 1))
    yield SegmentCase((8, 1), (1, 1), (0, 1))
    yield SegmentCase((3, 2), (1, 1), (0, 1))
    yield SegmentCase((5, 2), (1, 1), (0, 1))
    yield SegmentCase((7, 2), (1, 1), (0, 1))
    yield SegmentCase((4, 3), (1, 1), (0, 1))
    yield SegmentCase((6, 3), (1, 3), (0, 3))

    # both even, equal 2-valuation: gcd·t on odd t
    yield SegmentCase((2, 2), (1, 2), (0, 2))
    yield SegmentCase((6, 2), (1, 2), (0, 2))
    yield SegmentCase((4, 4), (1, 4), (0, 4))

    # both even, different 2-valuation: empty on odd t
    yield SegmentCase((4, 2), (1, 2), ())
    yield SegmentCase((6, 4), (1, 2), ())


# Column order of the compatibility grid
GRID_PARTITIONS = (((1, 2, 3),), ((1, 2), (3,)), ((1, 3), (2,)), ((2, 3), (1,)), ((1,), (2,), (3,)))


def compatibility_cases() -> Iterable[CompatibilityCase]:
    yield CompatibilityCase("v1=v2=v3=0", (3, 1, 1), (True, True, True, True, True))
    yield CompatibilityCase("v1=v2=v3>0", (2, 2, 2), (False, False, False, False, False))
    yield CompatibilityCase("v1=v2>v3=0", (4, 4, 3), (True, True, False, False, False))
    yield CompatibilityCase("v1=v2>v3>0", (4, 4, 2), (False, False, False, False, False))
    yield CompatibilityCase("v1>v2=v3=0", (4, 3, 1), (True, True, True, False, False))
    yield CompatibilityCase("v1>v2=v3>0", (4, 2, 2), (True, False, False, False, False))
    yield CompatibilityCase("v1>v2>v3=0", (4, 2, 1), (True, False, False, False, False))
    yield CompatibilityCase("v1>v2>v3>0", (8, 4, 2), (False, False, False, False, False))


def decomposition_cases() -> Iterable[DecompositionCase]:
    # n = 3: φ = χ_triv + (χ_triv + χ_alt + χ_std)z + χ_triv z^2
    yield DecompositionCase(3, 0, {(3,): 1})
    yield DecompositionCase(3, 1, {(3,): 1, (2, 1): 1, (1, 1, 1): 1})
    yield DecompositionCase(3, 2, {(3,): 1})

    # n = 4 polynomial part
    yield DecompositionCase(4, 1, {(4,): 3, (3, 1): 5, (2, 2): 3, (2, 1, 1): 3, (1, 1, 1, 1): 1})
    yield DecompositionCase(4, 2, {(4,): 6, (3, 1): 9, (2, 2): 5, (2, 1, 1): 4})
    yield DecompositionCase(4, 3, {(2, 2): 1, (2, 1, 1): 1, (1, 1, 1, 1): 1})


# n -> number of conjugacy classes of S_n
PARTITION_COUNTS = {1: 1, 2: 2, 3: 3, 4: 5, 5: 7, 6: 11, 7: 15, 8: 22, 9: 30, 10: 42}

# labeled forests on m vertices
FOREST_COUNTS = {1: 1, 2: 2, 3: 7, 4: 38, 5: 291}

# n = 4 tail on z^4 - z^5 + z^6 - ...
N4_TAIL = {(4,): 1, (3, 1): 1, (2, 1, 1): -1, (1, 1, 1, 1): -1}
