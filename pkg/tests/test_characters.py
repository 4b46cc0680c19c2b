from math import factorial

import pytest

from exceptions import InputError, InvariantViolation
from models.schemas import CharacterDecomposition, ClassFunction, CycleType
from services import series
from services.characters import (
    character_table,
    decompose,
    h_star,
    irreducible_character,
    irrep_name,
    is_effective,
    is_polynomial,
    lattice_point_character,
    phi_at_one,
    phi_at_one_formula,
    phi_coefficients,
    phi_data,
    reconstruct,
    tail_generator,
    verdict,
)
from services.combinatorics import class_size, partitions_of
from tests.test_cases import N4_TAIL, decomposition_cases


def test_trivial_character_is_one():
    for c in partitions_of(5):
        assert irreducible_character((5,), c) == 1


def test_standard_character_of_s3():
    assert [irreducible_character((2, 1), c) for c in partitions_of(3)] == [-1, 0, 2]


def test_sign_character():
    for c in partitions_of(5):
        assert irreducible_character((1,) * 5, c) == (-1) ** (c.n - c.m)


def test_character_rejects_mismatched_n():
    with pytest.raises(InputError):
        irreducible_character((2, 1), (2, 2))


@pytest.mark.parametrize("n", range(1, 8))
def test_row_orthogonality(n):
    table = character_table(n)
    classes = partitions_of(n)
    for mu, chi in table.items():
        for nu, psi in table.items():
            pairing = sum(class_size(c) * chi(c) * psi(c) for c in classes)
            assert pairing == (factorial(n) if mu == nu else 0)


@pytest.mark.parametrize("n", range(1, 8))
def test_degrees_square_sum_to_group_order(n):
    identity = CycleType.identity(n)
    assert sum(chi(identity) ** 2 for chi in character_table(n).values()) == factorial(n)


def test_irrep_names():
    assert irrep_name((4,)) == "triv"
    assert irrep_name((1, 1, 1, 1)) == "alt"
    assert irrep_name((3, 1)) == "std"
    assert irrep_name((2, 1, 1)) == "(2,1,1)"
    assert irrep_name((1, 1)) == "alt"


def test_decompose_trivial_character():
    triv = ClassFunction(n=4, values={c.parts: 1 for c in partitions_of(4)})
    assert decompose(triv).nonzero() == {(4,): 1}


def test_decompose_rejects_non_characters():
    f = ClassFunction(n=3, values={(3,): 0, (2, 1): 0, (1, 1, 1): 1})
    with pytest.raises(InvariantViolation):
        decompose(f)


def test_class_function_needs_every_class():
    with pytest.raises(ValueError):
        ClassFunction(n=3, values={(3,): 1})


@pytest.mark.parametrize("n", range(1, 6))
def test_decompose_then_reconstruct(n):
    for chi in character_table(n).values():
        doubled = chi.scale(2) + chi
        assert reconstruct(decompose(doubled)) == doubled


@pytest.mark.parametrize("case", list(decomposition_cases()), ids=lambda c: f"n{c.n}-phi{c.index}")
def test_phi_coefficient_decompositions(case):
    data = phi_data(case.n)
    assert data.decompositions[case.index].nonzero() == case.multiplicities


def test_phi_one_of_s3_values():
    phi_1 = phi_data(3).polynomial_coefficients[1]
    assert [phi_1(c) for c in ((1, 1, 1), (2, 1), (3,))] == [4, 0, 1]


@pytest.mark.parametrize("n", [1, 2])
def test_small_permutahedra_are_trivial(n):
    data = phi_data(n)
    assert len(data.decompositions) == 1
    assert data.decompositions[0].nonzero() == {(n,): 1}
    assert data.is_effective


def test_phi_data_of_s3():
    data = phi_data(3)
    assert data.is_polynomial and data.is_effective
    assert data.tail_start == 3
    assert data.tail_characters == ()


def test_phi_data_of_s4():
    data = phi_data(4)
    assert not data.is_polynomial and not data.is_effective
    assert data.tail_start == 4
    assert data.tail[(2, 1, 1)] == (4,)
    assert data.tail[(2, 2)] == ()
    assert len(data.tail_decompositions) == 1
    assert data.tail_decompositions[0].nonzero() == N4_TAIL


@pytest.mark.parametrize("n", range(1, 7))
def test_tail_reproduces_the_series(n):
    data = phi_data(n)
    count = data.tail_start + 6
    coefficients = phi_coefficients(n, count)
    generators = [tail_generator(data.tail_start, j, count) for j in range(1, len(data.tail_characters) + 1)]
    for c in partitions_of(n):
        for i in range(data.tail_start, count):
            expected = sum(t(c) * g[i] for t, g in zip(data.tail_characters, generators))
            assert coefficients[i](c) == expected


@pytest.mark.parametrize("n,expected", [(1, True), (2, True), (3, True), (4, False), (5, False)])
def test_polynomial_and_effective(n, expected):
    assert is_polynomial(n) is expected
    assert is_effective(n) is expected


def test_verdict_of_s4():
    v = verdict(4)
    assert not v.is_polynomial and not v.is_effective
    assert v.non_polynomial_witness == (2, 1, 1)
    assert v.negative_multiplicity_witness == ("tail_1", (2, 1, 1), -1)


def test_verdict_of_s5_names_the_witness():
    v = verdict(5)
    assert v.non_polynomial_witness == (2, 1, 1, 1)
    assert v.negative_multiplicity_witness is not None


def test_verdict_of_s3():
    v = verdict(3)
    assert v.is_polynomial and v.is_effective
    assert v.non_polynomial_witness is None
    assert v.negative_multiplicity_witness is None


@pytest.mark.parametrize("n,expected", [(2, (1,)), (3, (1, 4, 1)), (4, (1, 34, 55, 6))])
def test_h_star(n, expected):
    assert h_star(n).coefficients == expected


@pytest.mark.parametrize("n", range(1, 8))
def test_h_star_sums_to_normalized_volume(n):
    # h*(1) is the normalized volume (n-1)!·n^(n-2) of Π_n
    expected = factorial(n - 1) * n ** (n - 2) if n >= 2 else 1
    assert h_star(n)(1) == expected


def test_phi_at_one_formula_examples():
    assert phi_at_one_formula(CycleType.of(2, 1, 1)) == 16
    assert phi_at_one_formula(CycleType.of(4)) == 2
    assert phi_at_one_formula(CycleType.of(3)) == 3


@pytest.mark.parametrize("n", range(1, 6))
def test_phi_at_one_formula_matches_the_series(n):
    for c in partitions_of(n):
        assert series.evaluate(series.phi_series(c), 1) == phi_at_one_formula(c)


def test_phi_at_one_of_s3():
    assert decompose(phi_at_one(phi_data(3))).nonzero() == {(3,): 3, (2, 1): 1, (1, 1, 1): 1}


def test_lattice_point_character_of_s3():
    chi = lattice_point_character(3, 1)
    assert chi.values == {(3,): 1, (2, 1): 1, (1, 1, 1): 7}
    assert decompose(chi).nonzero() == {(3,): 2, (2, 1): 2, (1, 1, 1): 1}


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("t", range(0, 4))
def test_lattice_point_character_is_a_permutation_character(n, t):
    decomposition = decompose(lattice_point_character(n, t))
    assert decomposition.is_effective
    assert decomposition.multiplicity((n,)) >= 1


def test_lattice_point_character_rejects_negative_t():
    with pytest.raises(InputError):
        lattice_point_character(3, -1)


def test_tail_generator():
    assert tail_generator(4, 1, 8) == [0, 0, 0, 0, 1, -1, 1, -1]
    assert tail_generator(2, 2, 5) == [0, 0, 3, -4, 5]


def test_character_decomposition_helpers():
    decomposition = CharacterDecomposition(n=3, multiplicities={(3,): 1, (2, 1): 0, (1, 1, 1): -1})
    assert not decomposition.is_effective
    assert decomposition.nonzero() == {(3,): 1, (1, 1, 1): -1}
    assert decomposition.multiplicity((2, 1)) == 0


@pytest.mark.parametrize("n", range(1, 8))
def test_degrees_are_positive(n):
    identity = CycleType.identity(n)
    assert all(chi(identity) > 0 for chi in character_table(n).values())


@pytest.mark.parametrize("n", range(1, 6))
def test_phi_coefficients_reconstruct_and_start_trivially(n):
    data = phi_data(n)
    assert data.decompositions[0].nonzero() == {(n,): 1}
    for phi_i, decomposition in zip(data.polynomial_coefficients, data.decompositions):
        assert reconstruct(decomposition) == phi_i


@pytest.mark.parametrize("n", [1, 2, 3])
def test_phi_at_one_matches_formula_for_polynomial_cases(n):
    total = phi_at_one(phi_data(n))
    for c in partitions_of(n):
        assert total(c) == phi_at_one_formula(c)
