"""Exact linear algebra: Gauss-Jordan over Q and Bareiss over Q[x]."""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import DomainError, InternalError
from .exact_poly import Polynomial

Matrix = List[List[Fraction]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(a) for a in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence[Fraction]) -> List[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


# ------------ Gauss-Jordan over Q ------------
def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1]) if m else 0


def kernel(m: Matrix, ncols: Optional[int] = None) -> List[List[Fraction]]:
    """Basis of {v : m v = 0}."""
    n = len(m[0]) if m else (ncols or 0)
    if not m:
        return identity(n)
    red, pivots = rref(m)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """One solution of a v = b, or None."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [Fraction(bi)] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    v = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        v[p] = row[n]
    return v


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(row) + e for row, e in zip(m, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise DomainError("matrix is singular")
    return [row[n:] for row in red]


def det(m: Matrix) -> Fraction:
    a = [list(row) for row in m]
    n = len(a)
    sign = 1
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        d *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d * sign


def span_basis(vectors: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Row-reduced basis of the span."""
    if not vectors:
        return []
    red, pivots = rref([list(v) for v in vectors])
    return [red[i] for i in range(len(pivots))]


def in_span(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    return rank([list(b) for b in basis] + [list(v)]) == rank([list(b) for b in basis])


# ------------ Bareiss over Q[x] ------------
def bareiss_echelon(columns: Sequence[Sequence[Polynomial]]):
    """Fraction-free elimination scanning columns left to right.

    Returns (pivot_columns, pivot_rows): the greedy independent columns and
    the original row indices carrying their pivots.
    """
    if not columns:
        return [], []
    nrows = len(columns[0])
    a = [[columns[c][r] for c in range(len(columns))] for r in range(nrows)]
    order = list(range(nrows))
    vars = a[0][0].vars
    prev = Polynomial.constant(vars, 1)
    pivot_cols: List[int] = []
    r = 0
    for c in range(len(columns)):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if not a[i][c].is_zero()), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        order[r], order[p] = order[p], order[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            lead = a[i][c]
            for l in range(c + 1, len(columns)):
                val = piv * a[i][l] - lead * a[r][l]
                try:
                    a[i][l] = val.exact_divide(prev) if not val.is_zero() else val
                except DomainError:
                    raise InternalError("Bareiss step left a non-exact quotient")
            a[i][c] = Polynomial.zero(vars)
        prev = piv
        pivot_cols.append(c)
        r += 1
    return pivot_cols, order[:r]


def bareiss_det(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    n = len(m)
    a = [list(row) for row in m]
    vars = a[0][0].vars
    prev = Polynomial.constant(vars, 1)
    sign = 1
    for k in range(n - 1):
        p = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
        if p is None:
            return Polynomial.zero(vars)
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                try:
                    a[i][j] = val.exact_divide(prev) if not val.is_zero() else val
                except DomainError:
                    raise InternalError("Bareiss determinant left a non-exact quotient")
        prev = a[k][k]
    return a[n - 1][n - 1].scale(sign)


def cramer(columns: Sequence[Sequence[Polynomial]], rhs: Sequence[Polynomial], rows: Sequence[int]) -> List[Polynomial]:
    """Solve sum_k c_k columns[k] = rhs on the given rows; quotients must be exact."""
    sub = [[col[r] for col in columns] for r in rows]
    d = bareiss_det(sub)
    if d.is_zero():
        raise InternalError("chosen minor is singular")
    out = []
    for k in range(len(columns)):
        m = [[rhs[r] if j == k else col[r] for j, col in enumerate(columns)] for r in rows]
        dk = bareiss_det(m)
        try:
            out.append(dk.exact_divide(d) if not dk.is_zero() else dk)
        except DomainError:
            raise InternalError("Cramer quotient is not a polynomial")
    return out
