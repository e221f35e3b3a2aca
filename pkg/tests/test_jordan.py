from fractions import Fraction

import pytest

from cremona_lab import linalg
from cremona_lab.catalog import algebra_from_table
from cremona_lab.constructions import standard_involution
from cremona_lab.cremona import RationalMap, check_involution
from cremona_lab.errors import DomainError, InputError, StructuralError
from cremona_lab.jordan import (
    Algebra,
    adjoint_map,
    change_basis,
    check_jordan,
    direct_product,
    from_adjoint,
    is_exact_adjoint,
    is_nil,
    is_power_associative,
    norm_expansion,
    peirce,
    quadratic_sharp,
    radical,
    rank_profile,
    sharp,
    spin_factor,
    unitalize,
)

C = Algebra(1, {(0, 0): [1]}, [1], ["c"], "C")


def test_spin_factor_has_rank_two(poly):
    A = spin_factor([1, 1])
    assert check_jordan(A).ok
    prof = rank_profile(A)
    assert prof.rank == 2
    assert prof.trace == poly("2*x", n=3)
    assert prof.norm == poly("x^2 + y^2 + z^2", n=3)


def test_c3_profile(poly):
    A = direct_product(direct_product(C, C), C)
    prof = rank_profile(A)
    assert prof.rank == 3
    assert prof.trace == poly("x + y + z", n=3)
    assert prof.quad == poly("x*y + x*z + y*z", n=3)
    assert prof.norm == poly("x*y*z", n=3)
    assert adjoint_map(A) == standard_involution(3)


def test_adjoint_satisfies_the_sharp_identity():
    A = direct_product(C, spin_factor([1, 1, 0]))
    F = adjoint_map(A, check=False)
    res = check_involution(F)
    assert res.ok
    assert res.scaling == rank_profile(A).norm


def test_quadratic_sharp_polarizes():
    A = direct_product(direct_product(C, C), C)
    x = A.generic_element()
    assert quadratic_sharp(A, x, x) == [p.scale(2) for p in sharp(A, x)]


def test_product_with_a_spin_factor_matches_the_printed_adjoint(catalog):
    A = direct_product(C, spin_factor([1, 1]))
    assert adjoint_map(A) == catalog.get("J4_1").expected_adjoint()


def test_unitalized_nilalgebra_matches_the_printed_adjoint(catalog):
    A = unitalize(catalog.algebra("R3_1"))
    assert adjoint_map(A) == catalog.get("J4_7").expected_adjoint()


def test_from_adjoint_recovers_c3():
    A = from_adjoint(standard_involution(3), [1, 1, 1])
    for i in range(3):
        e = A.basis_vector(i)
        assert A.mul(e, e) == e
    assert A.mul(A.basis_vector(0), A.basis_vector(1)) == [0, 0, 0]


def test_from_adjoint_preconditions(rmap):
    with pytest.raises(DomainError):
        from_adjoint(standard_involution(3), [1, 1, 0])
    with pytest.raises(DomainError):
        from_adjoint(rmap(["x^2", "y^2", "z^2"]), [1, 1, 1])


def test_norm_expansion(poly):
    N = poly("x*y*z", n=3)
    T, S = norm_expansion(N, [1, 1, 1])
    assert T == poly("x + y + z", n=3)
    assert S == poly("x*y + x*z + y*z", n=3)


def test_exact_adjoint_detection(catalog):
    e = catalog.get("J4_2")
    assert is_exact_adjoint(e.expected_adjoint(), [1, 1, 1, 0])
    printed = RationalMap.parse(e.expected["adjoint"], e.vars)
    assert not is_exact_adjoint(printed, [1, 1, 1, 0])


def test_control_table_fails_the_jordan_identity(catalog):
    res = check_jordan(catalog.algebra("NJ5"))
    assert not res.ok
    assert not res.witness.is_zero()
    assert res.to_json()["ok"] is False


def test_nilalgebras(catalog):
    assert is_nil(catalog.algebra("R3_1"), 3)
    assert not is_nil(catalog.algebra("R2"), 2)
    assert check_jordan(catalog.algebra("R4_5")).ok


@pytest.mark.parametrize("entry, dim", [("C3", 0), ("CxCe2", 1), ("Ce3", 2), ("J4_6", 3), ("J5_12", 3)])
def test_radical_dimensions(catalog, entry, dim):
    R = radical(catalog.algebra(entry))
    assert R.dim == dim
    assert R.forms_agree


@pytest.mark.parametrize("entry, dim", [("C3", 0), ("CxCe2", 1), ("Ce3", 2)])
def test_radical_falls_back_to_enumeration(catalog, monkeypatch, entry, dim):
    A = catalog.algebra(entry)
    expected = radical(A)
    monkeypatch.setattr("cremona_lab.jordan.trace_form", lambda B: [[Fraction(0)] * B.dim for _ in range(B.dim)])
    R = radical(A)
    assert R.method == "enumeration"
    assert not R.forms_agree
    assert R.dim == dim
    assert all(linalg.in_span(R.basis, v) for v in expected.basis)


def test_peirce_decomposition_of_c_times_c():
    A = direct_product(C, C)
    P = peirce(A, [1, 0])
    assert P.dims() == {"0": 1, "1": 1, "1/2": 0}
    with pytest.raises(DomainError):
        peirce(A, [2, 0])
    with pytest.raises(StructuralError):
        peirce(A, [1, 0, 0])


def test_peirce_dimensions_survive_a_change_of_basis(catalog):
    A = catalog.algebra("J5_13")
    B = change_basis(A, [[1, 1, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 1], [0, 0, 0, 0, 1]])
    # first new basis vector is e1
    assert peirce(A, [1, 0, 0, 0, 0]).dims() == {"0": 2, "1": 1, "1/2": 2}
    assert peirce(B, [1, 0, 0, 0, 0]).dims() == {"0": 2, "1": 1, "1/2": 2}
    assert is_power_associative(B)


def test_algebra_validation():
    with pytest.raises(DomainError):
        Algebra(2, {(0, 0): [1, 0]}, [1, 1])
    with pytest.raises(StructuralError):
        Algebra(2, {(0, 0): [1, 0, 0]})
    with pytest.raises(StructuralError):
        Algebra(2, {(0, 1): [1, 0], (1, 0): [0, 1]})


def test_algebra_json_round_trip_and_errors(catalog):
    A = catalog.algebra("J5_13")
    B = Algebra.from_json(A.to_json())
    assert B.c == A.c and B.unit == A.unit
    with pytest.raises(InputError) as e:
        Algebra.from_json({"dim": 2, "table": [{"i": 0, "j": 0, "coeffs": [1]}]})
    assert e.value.field == "algebra.table[0].coeffs"


def test_algebra_from_a_product_table():
    A = algebra_from_table({"basis": ["e", "n"], "unit": "e", "products": {"e*e": "e", "e*n": "n"}})
    assert A.basis == ("e", "n")
    assert A.mul([0, 1], [0, 1]) == [0, 0]
