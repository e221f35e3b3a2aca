import pytest
from hypothesis import given
from hypothesis import strategies as st

from cremona_lab import linalg
from cremona_lab.errors import DomainError
from cremona_lab.exact_poly import Polynomial, default_vars, parse_polynomial

V3 = default_vars(3)
square3 = st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3)


@given(square3)
def test_inverse_times_matrix_is_identity(rows):
    m = linalg.to_matrix(rows)
    if linalg.det(m) == 0:
        with pytest.raises(DomainError):
            linalg.inverse(m)
        return
    assert linalg.matmul(m, linalg.inverse(m)) == linalg.identity(3)


@given(square3)
def test_kernel_dimension_is_corank(rows):
    m = linalg.to_matrix(rows)
    K = linalg.kernel(m)
    assert len(K) == 3 - linalg.rank(m)
    for v in K:
        assert linalg.matvec(m, v) == [0, 0, 0]


@given(square3)
def test_bareiss_det_agrees_with_gauss_on_constants(rows):
    m = [[Polynomial.constant(V3, a) for a in row] for row in rows]
    assert linalg.bareiss_det(m).constant_term() == linalg.det(linalg.to_matrix(rows))


def test_det():
    assert linalg.det(linalg.to_matrix([[2, 1], [1, 1]])) == 1
    assert linalg.det(linalg.to_matrix([[0, 1], [1, 0]])) == -1


def test_solve():
    a = linalg.to_matrix([[1, 1], [1, -1]])
    assert linalg.solve(a, [3, 1]) == [2, 1]
    assert linalg.solve(linalg.to_matrix([[1, 1], [1, 1]]), [1, 2]) is None


def test_span():
    basis = linalg.span_basis([[1, 1, 0], [2, 2, 0], [0, 0, 1]])
    assert len(basis) == 2
    inside, outside = linalg.to_matrix([[3, 3, -1], [1, 0, 0]])
    assert linalg.in_span(basis, inside)
    assert not linalg.in_span(basis, outside)


def test_symbolic_determinant():
    P = lambda s: parse_polynomial(s, V3)
    m = [[P("x"), P("y")], [P("z"), P("x")]]
    assert linalg.bareiss_det(m) == P("x^2 - y*z")
    m = [[P("x"), P("1"), P("0")], [P("0"), P("y"), P("1")], [P("1"), P("0"), P("z")]]
    assert linalg.bareiss_det(m) == P("x*y*z + 1")


def test_cramer_on_polynomial_columns():
    P = lambda s: parse_polynomial(s, V3)
    cols = [[P("1"), P("0")], [P("x"), P("1")]]
    rhs = [P("x^2 + y"), P("x")]
    # c0 * (1, 0) + c1 * (x, 1) = (x^2 + y, x)  ->  c1 = x, c0 = y
    assert linalg.cramer(cols, rhs, [0, 1]) == [P("y"), P("x")]


def test_bareiss_echelon_finds_dependent_column():
    P = lambda s: parse_polynomial(s, V3)
    cols = [[P("1"), P("0"), P("0")], [P("x"), P("y"), P("0")], [P("x^2"), P("x*y"), P("0")]]
    pivots, rows = linalg.bareiss_echelon(cols)
    assert pivots == [0, 1]
    assert rows == [0, 1]
