import pytest
from hypothesis import given
from hypothesis import strategies as st

from cremona_lab.errors import InputError, StructuralError
from cremona_lab.exact_poly import LEX, Polynomial, default_vars
from cremona_lab.groebner import (
    Ideal,
    buchberger,
    contains,
    ideal_equal,
    ideal_intersection,
    ideal_quotient,
    intersect_all,
    is_groebner,
    normal_form,
    saturate_irrelevant,
    saturate_variable,
    saturation,
)

V3 = default_vars(3)

small_exps = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)).filter(lambda e: sum(e) <= 2)
small_polys = st.dictionaries(small_exps, st.integers(-3, 3), min_size=1, max_size=4).map(lambda d: Polynomial(V3, d))
monomials = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)).filter(lambda e: sum(e) > 0)


@given(st.lists(small_polys, min_size=1, max_size=3))
def test_buchberger_output_satisfies_the_criterion(gens):
    G = buchberger(gens)
    assert is_groebner(G)
    I = Ideal(G, V3)
    for g in gens:
        assert contains(I, g)
    for g in G:
        assert g.leading_coefficient() == 1


@given(st.lists(monomials, min_size=1, max_size=4))
def test_saturation_by_a_variable_strips_it_from_monomial_ideals(exps):
    I = Ideal([Polynomial.monomial(V3, e) for e in exps], V3)
    stripped = Ideal([Polynomial.monomial(V3, (a, b, 0)) for a, b, _ in exps], V3)
    assert ideal_equal(saturate_variable(I, 2), stripped)


@given(st.lists(monomials, min_size=1, max_size=4))
def test_saturation_is_idempotent(exps):
    I = Ideal([Polynomial.monomial(V3, e) for e in exps], V3)
    S = saturate_irrelevant(I)
    assert ideal_equal(saturate_irrelevant(S), S)


def test_reduced_basis_is_sorted_and_monic(ideal):
    G = buchberger(ideal(["2*x*y", "3*y^2"], n=3).gens)
    assert [g.render() for g in G] == ["x*y", "y^2"]


def test_lex_basis_eliminates(ideal, poly):
    G = ideal(["x - y^2", "y - z^2"], n=3).groebner_basis(LEX)
    assert G == [poly("x - z^4", n=3), poly("y - z^2", n=3)]


def test_equal_ideals_from_different_generators(ideal):
    assert ideal_equal(ideal(["x + y", "x - y"], n=3), ideal(["x", "y"], n=3))
    assert not ideal_equal(ideal(["x"], n=3), ideal(["x", "y"], n=3))


def test_normal_form(ideal, poly):
    I = ideal(["x - y"], n=3)
    assert normal_form(poly("x^2", n=3), I) == poly("y^2", n=3)
    assert contains(I, poly("x^2 - y^2", n=3))


def test_unit_ideal(ideal):
    assert ideal(["x", "1 - x"], n=3).is_unit()
    assert not ideal(["x", "y"], n=3).is_unit()


def test_intersection_of_monomial_ideals(ideal):
    K = ideal_intersection(ideal(["x^2", "y"], n=3), ideal(["x", "z"], n=3))
    assert ideal_equal(K, ideal(["x^2", "x*y", "y*z"], n=3))
    assert ideal_equal(ideal_intersection(ideal(["x"], n=3), ideal(["y"], n=3)), ideal(["x*y"], n=3))


def test_intersect_all_matches_pairwise(ideal):
    parts = [ideal(["x"], n=3), ideal(["y"], n=3), ideal(["z"], n=3)]
    assert ideal_equal(intersect_all(parts), ideal(["x*y*z"], n=3))
    with pytest.raises(StructuralError):
        intersect_all([])


def test_intersection_of_a_decomposition_on_p4(ideal):
    K = intersect_all([ideal(["x^2", "y"]), ideal(["x", "z", "t", "u"])])
    assert ideal_equal(K, ideal(["x^2", "x*y", "y*z", "y*t", "y*u"]))


def test_quotient(ideal, poly):
    assert ideal_equal(ideal_quotient(ideal(["x*y", "x*z"], n=3), poly("x", n=3)), ideal(["y", "z"], n=3))
    assert ideal_equal(ideal_quotient(ideal(["x^2*y"], n=3), poly("x", n=3)), ideal(["x*y"], n=3))


def test_saturation_removes_embedded_irrelevant_component(ideal):
    I = ideal(["x^2", "x*y", "x*z"], n=3)
    assert ideal_equal(saturate_irrelevant(I), ideal(["x"], n=3))


def test_saturation_by_a_non_variable_element(ideal):
    I = ideal(["x*(x + y)", "y*(x + y)"], n=3)
    S = saturation(I, ideal(["x + y"], n=3))
    assert S.is_unit()
    S = saturation(ideal(["x^2*(y - z)"], n=3), ideal(["x"], n=3))
    assert ideal_equal(S, ideal(["y - z"], n=3))


def test_ideal_json_round_trip_with_strings():
    I = Ideal.from_json({"vars": ["x", "y"], "gens": ["x^2 - y", {"vars": ["x", "y"], "terms": [{"num": "1", "exp": [0, 1]}]}]})
    assert len(I) == 2
    assert Ideal.from_json(I.to_json()).gens == I.gens


def test_ideal_json_errors_name_the_field():
    with pytest.raises(InputError) as e:
        Ideal.from_json({"gens": []})
    assert e.value.field == "ideal"
    with pytest.raises(InputError):
        Ideal.from_json({"vars": ["x"], "gens": ["x + w"]})


def test_mismatched_variable_lists(ideal):
    with pytest.raises(StructuralError):
        ideal_equal(ideal(["x"], n=3), ideal(["x"], n=4))
