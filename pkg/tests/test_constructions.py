import pytest
from hypothesis import given
from hypothesis import strategies as st

from cremona_lab.catalog import load_catalog
from cremona_lab.constructions import (
    GluingSpec,
    f_lambda,
    f_n,
    falpha,
    glue,
    spampinato_lift,
    standard_involution,
    verify_zorn,
    zorn_cubic_map,
)
from cremona_lab.cremona import check_involution
from cremona_lab.errors import DomainError, InputError
from cremona_lab.exact_poly import Polynomial
from cremona_lab.jordan import spin_factor

HALF = "1/2"
P4_IDS = [e.id for e in load_catalog().table("p4")]
CYCLE = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]


def _peirce_half_spec(pairs, twists=None):
    """Module blocks R = C m with e_i m = e_j m = m/2 for each pair (i, j)."""
    blocks = []
    for i, j in pairs:
        action = [[[HALF if k in (i, j) else 0]] for k in range(3)]
        blocks.append({"kind": "module", "dim": 1, "action": action})
    spec = {"Fss": {"components": ["y*z", "x*z", "x*y"]}, "unit": [1, 1, 1], "blocks": blocks}
    if twists is not None:
        spec["twists"] = twists
    return spec


def test_standard_involutions():
    for n in (3, 4, 5):
        f = standard_involution(n)
        res = check_involution(f)
        assert res.ok
        assert res.scaling.degree() == n * (n - 2)
    with pytest.raises(DomainError):
        standard_involution(2)


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_falpha_is_an_involution_scaled_by_the_first_three_coordinates(a1, a2, a3):
    f = falpha(a1, a2, a3)
    assert f.n == 2 + a1 + a2 + a3
    res = check_involution(f)
    assert res.ok
    assert res.scaling.render() == "x*y*z"


def test_falpha_zero_is_the_standard_involution():
    assert falpha(0, 0, 0) == standard_involution(3)
    with pytest.raises(DomainError):
        falpha(-1, 0, 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_f_n_scaling_is_a_cubed(n):
    f = f_n(n)
    assert f.n == 2 * n
    res = check_involution(f)
    assert res.ok
    assert res.scaling.render() == "a^3"


@pytest.mark.parametrize("lam", [0, 1, -1, "1/2", 3])
def test_f_lambda_family(lam):
    res = check_involution(f_lambda(lam))
    assert res.ok
    assert res.scaling.render() == "x^3"


def test_f_lambda_endpoints_are_catalog_rows(catalog):
    assert f_lambda(0) == catalog.get("J5_1").expected_adjoint()
    assert f_lambda(1) == catalog.get("J5_2").expected_adjoint()


def test_lift_of_the_plane_involution_is_the_p3_one():
    assert spampinato_lift(standard_involution(3)) == standard_involution(4)


@pytest.mark.parametrize("entry", ["J4_1", "J4_2", "J4_7"])
def test_lift_of_p3_adjoints(catalog, entry):
    g = spampinato_lift(catalog.get(entry).expected_adjoint())
    assert g.n == 4 and g.degree == 3
    assert check_involution(g).scaling.degree() == 8


def test_lift_rejects_non_involutions(rmap):
    with pytest.raises(DomainError):
        spampinato_lift(rmap(["x^2", "y^2", "z^2"]))


@pytest.mark.parametrize("entry", P4_IDS)
def test_lift_of_p4_adjoints(catalog, entry):
    f = catalog.get(entry).expected_adjoint()
    N = check_involution(f).scaling
    g = spampinato_lift(f)
    assert g.n == 5 and g.degree == 3
    r = Polynomial.variable(g.vars, len(g.vars) - 1)
    assert check_involution(g).scaling == (r * N.with_vars(g.vars)) ** 2


def test_gluing_two_peirce_half_blocks_gives_the_generic_type_ii_map(catalog):
    G = glue(GluingSpec.from_json(_peirce_half_spec([(0, 1), (0, 2)])))
    assert G == catalog.get("g4_II").expected_adjoint()
    assert check_involution(G).scaling.render() == "x*y*z"


def _linear_blocks_spec(twists=None):
    """Three 1-dim blocks F_i(x, m) = x_i m over the plane involution."""
    blocks = [{"kind": "adjoint", "dim": 1, "components": [f"{v}*m1"]} for v in "xyz"]
    spec = {"Fss": {"components": ["y*z", "x*z", "x*y"]}, "blocks": blocks}
    if twists is not None:
        spec["twists"] = twists
    return spec


def test_gluing_linear_blocks_gives_falpha():
    G = glue(GluingSpec.from_json(_linear_blocks_spec()))
    assert G == falpha(1, 1, 1)
    assert check_involution(G).scaling.render() == "x*y*z"


def test_gluing_without_blocks_returns_the_semisimple_map():
    G = glue(GluingSpec.from_json({"Fss": {"components": ["y*z", "x*z", "x*y"]}, "blocks": []}))
    assert G == standard_involution(3)


def test_gluing_with_a_cyclic_twist():
    G = glue(GluingSpec.from_json(_linear_blocks_spec(twists=[CYCLE, CYCLE, CYCLE])))
    assert G.n == 5
    assert G.render() == ["y*z", "x*z", "x*y", "y*t", "z*u", "x*v"]
    res = check_involution(G)
    assert res.ok
    assert res.scaling.render() == "x*y*z"
    assert G != falpha(1, 1, 1)


def test_gluing_rejects_a_twist_that_does_not_commute():
    spec = _peirce_half_spec([(0, 1)], twists=[[[2, 0, 0], [0, 1, 0], [0, 0, 1]]])
    with pytest.raises(DomainError):
        glue(GluingSpec.from_json(spec))


def test_gluing_spec_errors_name_the_field():
    with pytest.raises(InputError) as e:
        GluingSpec.from_json({"Fss": {"components": ["y*z", "x*z", "x*y"]}, "blocks": [{"kind": "odd", "dim": 1}]})
    assert e.value.field == "spec.blocks[0].kind"
    with pytest.raises(InputError) as e:
        GluingSpec.from_json({"blocks": []})
    assert e.value.field == "spec"


def test_zorn_map_is_cubic_on_p7(catalog):
    g = zorn_cubic_map(catalog.algebra("C3"))
    assert g.n == 7
    assert g.degree == 3


def test_zorn_sampled_check(catalog):
    res = verify_zorn(catalog.algebra("C3"), mode="sampled", seed=3, points=4)
    assert res.ok
    assert res.points == 4
    assert res.to_json()["mode"] == "sampled"


@pytest.mark.slow
@pytest.mark.parametrize("algebra", ["C3", "Ce3"])
def test_zorn_symbolic_check(catalog, algebra):
    res = verify_zorn(catalog.algebra(algebra), mode="symbolic")
    assert res.ok
    assert res.scaling_degree == 8


def test_zorn_needs_a_rank_three_algebra():
    with pytest.raises(DomainError):
        zorn_cubic_map(spin_factor([1, 1]))
    with pytest.raises(InputError):
        verify_zorn(spin_factor([1, 1]), mode="bogus")
