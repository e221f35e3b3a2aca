"""Commutative algebras from structure constants and their rank-3 Jordan data.

b_i * b_j = sum_k c[i][j][k] b_k. Sparse input tables list products with
i <= j; missing products are zero.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .cremona import RationalMap, check_involution
from .errors import DomainError, InputError, InternalError, StructuralError
from .exact_poly import Polynomial, as_fraction, default_vars

log = logging.getLogger(__name__)

Vector = List[Fraction]

ENUMERATION_MAX_DIM = 6


class Algebra:
    """Finite-dimensional commutative algebra; ``unit`` is None for nilalgebras."""

    def __init__(
        self,
        dim: int,
        table: Dict[Tuple[int, int], Sequence],
        unit: Optional[Sequence] = None,
        basis: Optional[Sequence[str]] = None,
        name: str = "",
    ):
        if dim < 1:
            raise StructuralError("dimension must be positive")
        self.dim = dim
        self.name = name
        self.basis = tuple(basis or [f"b{i + 1}" for i in range(dim)])
        if len(self.basis) != dim:
            raise StructuralError(f"{len(self.basis)} basis names for dimension {dim}")
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        seen = {}
        for (i, j), coeffs in table.items():
            if not (0 <= i < dim and 0 <= j < dim) or len(coeffs) != dim:
                raise StructuralError(f"bad product entry ({i},{j})")
            v = [as_fraction(a) for a in coeffs]
            key = (min(i, j), max(i, j))
            if key in seen and seen[key] != v:
                raise StructuralError(f"products b{i}*b{j} and b{j}*b{i} differ")
            seen[key] = v
            c[i][j] = v
            c[j][i] = list(v)
        self.c = c
        self.entries = [(i, j, [(k, a) for k, a in enumerate(c[i][j]) if a]) for i in range(dim) for j in range(i, dim)]
        self.entries = [e for e in self.entries if e[2]]
        self.unit = None
        if unit is not None:
            u = [as_fraction(a) for a in unit]
            if len(u) != dim:
                raise StructuralError("unit has the wrong length")
            for j in range(dim):
                ej = [Fraction(int(k == j)) for k in range(dim)]
                if self.mul(u, ej) != ej:
                    raise DomainError(f"unit axiom fails on {self.basis[j]}")
            self.unit = tuple(u)
        self._profile = None

    # ------------ products ------------
    def mul(self, u: Sequence, v: Sequence) -> list:
        """Product of coordinate vectors; entries may be Fractions or Polynomials."""
        zero = u[0] - u[0]
        out = [zero] * self.dim
        for i, j, ks in self.entries:
            if i == j:
                p = u[i] * v[i]
            else:
                p = u[i] * v[j] + u[j] * v[i]
            for k, a in ks:
                out[k] = out[k] + p * a
        return out

    def power(self, u: Sequence, k: int) -> list:
        if k < 1:
            raise DomainError("power needs k >= 1")
        acc = list(u)
        for _ in range(k - 1):
            acc = self.mul(u, acc)
        return acc

    def basis_vector(self, i: int) -> Vector:
        return [Fraction(int(k == i)) for k in range(self.dim)]

    def coordinate_vars(self) -> Tuple[str, ...]:
        return default_vars(self.dim)

    def generic_element(self, vars: Optional[Sequence[str]] = None) -> List[Polynomial]:
        vars = tuple(vars or self.coordinate_vars())
        return Polynomial.generators(vars)

    def multiplication_operator(self, u: Sequence) -> linalg.Matrix:
        """Matrix of L_u (column j is u * b_j)."""
        cols = [self.mul(list(u), self.basis_vector(j)) for j in range(self.dim)]
        return linalg.transpose(cols)

    def require_unit(self):
        if self.unit is None:
            raise DomainError(f"{self.name or 'algebra'} has no unit")
        return list(self.unit)

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim})"

    # ------------ JSON ------------
    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "basis": list(self.basis),
            "unit": None if self.unit is None else [str(a) for a in self.unit],
            "table": [
                {"i": i, "j": j, "coeffs": [str(a) for a in self.c[i][j]]}
                for i, j, _ in self.entries
            ],
        }

    @classmethod
    def from_json(cls, data, field: str = "algebra", name: str = "") -> "Algebra":
        try:
            dim = int(data["dim"])
            rows = data.get("table", [])
        except (KeyError, TypeError, ValueError):
            raise InputError("missing or bad 'dim'", field=field)
        if not isinstance(rows, list):
            raise InputError("'table' must be a list of entries", field=f"{field}.table")
        table = {}
        for k, row in enumerate(rows):
            where = f"{field}.table[{k}]"
            try:
                i, j = int(row["i"]), int(row["j"])
                coeffs = [as_fraction(a) for a in row["coeffs"]]
            except (KeyError, TypeError, ValueError):
                raise InputError("entry needs 'i', 'j' and 'coeffs'", field=where)
            if len(coeffs) != dim:
                raise InputError(f"expected {dim} coefficients", field=f"{where}.coeffs")
            table[(i, j)] = coeffs
        unit = data.get("unit")
        if unit is not None:
            try:
                unit = [as_fraction(a) for a in unit]
            except (TypeError, ValueError):
                raise InputError("unit must be a numeric vector", field=f"{field}.unit")
        try:
            return cls(dim, table, unit, data.get("basis"), name=name)
        except (StructuralError, DomainError) as e:
            raise InputError(str(e), field=field)


# ------------ Jordan identity ------------
@dataclass(frozen=True)
class JordanCheck:
    ok: bool
    component: Optional[int] = None
    witness: Optional[Polynomial] = None

    def to_json(self) -> dict:
        out = {"ok": self.ok}
        if not self.ok:
            out["component"] = self.component
            out["witness"] = self.witness.render()
        return out


def check_jordan(A: Algebra) -> JordanCheck:
    """Expand x^2(xy) - x(x^2 y) with independent symbolic x, y."""
    n = A.dim
    vars = tuple(f"p{i}" for i in range(n)) + tuple(f"q{i}" for i in range(n))
    gens = Polynomial.generators(vars)
    x, y = gens[:n], gens[n:]
    x2 = A.mul(x, x)
    lhs = A.mul(x2, A.mul(x, y))
    rhs = A.mul(x, A.mul(x2, y))
    for k in range(n):
        d = lhs[k] - rhs[k]
        if not d.is_zero():
            log.debug(f"[jordan] identity fails in component {k}")
            return JordanCheck(False, k, d)
    return JordanCheck(True)


def is_nil(A: Algebra, index: int = 3) -> bool:
    """x^index vanishes identically."""
    x = A.generic_element()
    return all(c.is_zero() for c in A.power(x, index))


def is_power_associative(A: Algebra) -> bool:
    """x^2 x^2 = x (x x^2)."""
    x = A.generic_element()
    x2 = A.mul(x, x)
    return A.mul(x2, x2) == A.mul(x, A.mul(x, x2))


# ------------ rank, trace, norm ------------
@dataclass(frozen=True)
class RankProfile:
    """x^r - s1 x^(r-1) + s2 x^(r-2) - ... + (-1)^r s_r e = 0."""

    rank: int
    vars: Tuple[str, ...]
    sigma: Tuple[Polynomial, ...]

    @property
    def trace(self) -> Polynomial:
        return self.sigma[0]

    @property
    def quad(self) -> Optional[Polynomial]:
        return self.sigma[1] if self.rank >= 3 else None

    @property
    def norm(self) -> Polynomial:
        return self.sigma[-1]

    def to_json(self) -> dict:
        out = {"rank": self.rank, "trace_T": self.trace.render(), "norm_N": self.norm.render()}
        if self.quad is not None:
            out["quad_S"] = self.quad.render()
        return out


def rank_profile(A: Algebra) -> RankProfile:
    if A._profile is not None:
        return A._profile
    e = A.require_unit()
    vars = A.coordinate_vars()
    x = A.generic_element(vars)
    powers = [[Polynomial.constant(vars, a) for a in e], x]
    r = None
    _, rows = linalg.bareiss_echelon(powers[:1])
    for k in range(1, A.dim + 1):
        if k > 1:
            powers.append(A.mul(x, powers[-1]))
        pivots, rows_k = linalg.bareiss_echelon(powers)
        if len(pivots) < len(powers):
            r = k
            break
        rows = rows_k
    if r is None:
        raise InternalError("e, x, ..., x^n are independent; the algebra is not power-associative")
    # x^r = sum_k c_k x^k on the pivot rows of e..x^(r-1)
    coeffs = linalg.cramer(powers[:r], powers[r], rows)
    for row in range(A.dim):
        lhs = Polynomial.zero(vars)
        for c, p in zip(coeffs, powers[:r]):
            lhs = lhs + c * p[row]
        if lhs != powers[r][row]:
            raise InternalError(f"minimal polynomial fails in coordinate {row}")
    sigma = tuple(coeffs[r - k].scale(1 if k % 2 else -1) for k in range(1, r + 1))
    profile = RankProfile(r, vars, sigma)
    A._profile = profile
    log.debug(f"[jordan] {A.name} rank={r} N={profile.norm}")
    return profile


def sharp(A: Algebra, x: Sequence[Polynomial]) -> List[Polynomial]:
    """x^# = x^2 - T(x) x + S(x) e, for x a vector over the coordinate ring."""
    prof = rank_profile(A)
    if prof.rank != 3:
        raise DomainError(f"the adjoint needs rank 3, {A.name or 'algebra'} has rank {prof.rank}")
    e = A.unit
    T = prof.trace.substitute(list(x))
    S = prof.quad.substitute(list(x))
    x2 = A.mul(list(x), list(x))
    return [x2[k] - T * x[k] + S * e[k] for k in range(A.dim)]


def adjoint_map(A: Algebra, check: bool = True) -> RationalMap:
    prof = rank_profile(A)
    F = RationalMap(sharp(A, A.generic_element(prof.vars)))
    if check:
        res = check_involution(F)
        if not res.ok or res.scaling != prof.norm:
            raise InternalError(f"(x#)# = N(x) x fails for {A.name or 'algebra'}: {res.detail}")
    return F


def quadratic_sharp(A: Algebra, x: Sequence[Polynomial], y: Sequence[Polynomial]) -> List[Polynomial]:
    """x#y = (x+y)^# - x^# - y^#."""
    s = [a + b for a, b in zip(x, y)]
    return [a - b - c for a, b, c in zip(sharp(A, s), sharp(A, x), sharp(A, y))]


# ------------ radical ------------
@dataclass(frozen=True)
class RadicalResult:
    basis: Tuple[Tuple[Fraction, ...], ...]
    forms_agree: bool
    method: str = "trace-form"

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "basis": [[str(a) for a in v] for v in self.basis],
            "forms_agree": self.forms_agree,
            "method": self.method,
        }


def trace_form(A: Algebra) -> linalg.Matrix:
    """B_ij = T(b_i b_j)."""
    prof = rank_profile(A)
    t = [prof.trace.coefficient(tuple(int(k == i) for k in range(A.dim))) for i in range(A.dim)]
    return [[sum((t[k] * A.c[i][j][k] for k in range(A.dim)), Fraction(0)) for j in range(A.dim)] for i in range(A.dim)]


def polarized_trace_form(A: Algebra) -> linalg.Matrix:
    """T(x)T(y) - (S(x+y) - S(x) - S(y)) on basis pairs, S the second coefficient."""
    prof = rank_profile(A)
    n = A.dim
    T = prof.trace
    S = prof.sigma[1] if prof.rank >= 2 else Polynomial.zero(prof.vars)
    vec = A.basis_vector
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = [a + b for a, b in zip(vec(i), vec(j))]
            polar = S.evaluate(s) - S.evaluate(vec(i)) - S.evaluate(vec(j))
            row.append(T.evaluate(vec(i)) * T.evaluate(vec(j)) - polar)
        out.append(row)
    return out


def _is_nil_ideal(A: Algebra, W: Sequence[Vector], r: int) -> bool:
    for z in W:
        for j in range(A.dim):
            if not linalg.in_span(W, A.mul(list(z), A.basis_vector(j))):
                return False
        if any(A.power(list(z), r)):
            return False
    return True


def radical(A: Algebra) -> RadicalResult:
    prof = rank_profile(A)
    B = trace_form(A)
    agree = B == polarized_trace_form(A)
    if not agree:
        log.warning(f"[jordan] {A.name}: T(x∘y) and the polarized trace form differ")
    W = linalg.span_basis(linalg.kernel(B))
    if _is_nil_ideal(A, W, prof.rank):
        return RadicalResult(tuple(tuple(v) for v in W), agree)
    log.warning(f"[jordan] {A.name}: trace-form kernel is not a nil ideal, enumerating ideals")
    method = "enumeration"
    W = _radical_by_enumeration(A, prof.rank)
    if not _is_nil_ideal(A, W, prof.rank):
        raise InternalError(f"radical of {A.name or 'algebra'} failed nil-ideal verification")
    return RadicalResult(tuple(tuple(v) for v in W), agree, method)


def _ideal_closure(A: Algebra, z: Vector) -> List[Vector]:
    """Span of z and all iterated products with basis elements."""
    W = linalg.span_basis([z])
    frontier = list(W)
    while frontier:
        new = []
        for w in frontier:
            for j in range(A.dim):
                p = A.mul(list(w), A.basis_vector(j))
                if not linalg.in_span(W, p):
                    W = linalg.span_basis(W + [p])
                    new.append(p)
        frontier = new
    return W


def _radical_by_enumeration(A: Algebra, r: int) -> List[Vector]:
    """Sum of the nil ideals generated by nilpotent {-1, 0, 1} combinations of the basis."""
    if A.dim > ENUMERATION_MAX_DIM:
        raise InternalError(f"trace-form kernel of {A.name or 'algebra'} is not a nil ideal and dim {A.dim} is too large to enumerate")
    found: List[Vector] = []
    for coeffs in itertools.product((0, 1, -1), repeat=A.dim):
        if not any(coeffs):
            continue
        z = [Fraction(c) for c in coeffs]
        if found and linalg.in_span(found, z):
            continue
        if any(A.power(z, r)):
            continue
        I = _ideal_closure(A, z)
        if _is_nil_ideal(A, I, r):
            found = linalg.span_basis(found + I)
    return found


# ------------ Peirce ------------
@dataclass(frozen=True)
class PeirceDecomposition:
    idempotent: Tuple[Fraction, ...]
    spaces: Dict[str, Tuple[Tuple[Fraction, ...], ...]] = field(default_factory=dict)

    def dims(self) -> Dict[str, int]:
        return {k: len(v) for k, v in self.spaces.items()}

    def to_json(self) -> dict:
        return {
            "idempotent": [str(a) for a in self.idempotent],
            "dims": self.dims(),
            "spaces": {k: [[str(a) for a in v] for v in vs] for k, vs in self.spaces.items()},
        }


def peirce(A: Algebra, u: Sequence) -> PeirceDecomposition:
    u = [as_fraction(a) for a in u]
    if len(u) != A.dim:
        raise StructuralError("idempotent has the wrong length")
    if not any(u) or A.mul(u, u) != u:
        raise DomainError("u is not a nonzero idempotent")
    L = A.multiplication_operator(u)
    spaces = {}
    for label, lam in (("0", Fraction(0)), ("1", Fraction(1)), ("1/2", Fraction(1, 2))):
        M = [[L[i][j] - (lam if i == j else 0) for j in range(A.dim)] for i in range(A.dim)]
        spaces[label] = tuple(tuple(v) for v in linalg.kernel(M))
    if sum(len(v) for v in spaces.values()) != A.dim:
        raise DomainError("L_u does not split into eigenvalues 0, 1, 1/2")
    return PeirceDecomposition(tuple(u), spaces)


# ------------ constructors ------------
def _rename_clash(names: Sequence[str], taken: Sequence[str]) -> List[str]:
    out = []
    for nm in names:
        while nm in taken or nm in out:
            nm += "'"
        out.append(nm)
    return out


def direct_product(A: Algebra, B: Algebra, name: str = "") -> Algebra:
    n, m = A.dim, B.dim
    table = {}
    for i, j, ks in A.entries:
        v = [Fraction(0)] * (n + m)
        for k, a in ks:
            v[k] = a
        table[(i, j)] = v
    for i, j, ks in B.entries:
        v = [Fraction(0)] * (n + m)
        for k, a in ks:
            v[n + k] = a
        table[(n + i, n + j)] = v
    unit = None
    if A.unit is not None and B.unit is not None:
        unit = list(A.unit) + list(B.unit)
    basis = list(A.basis) + _rename_clash(B.basis, A.basis)
    return Algebra(n + m, table, unit, basis, name or f"{A.name}x{B.name}")


def unitalize(R: Algebra, name: str = "") -> Algebra:
    """C e + R with e acting as the identity."""
    n = R.dim + 1
    table = {(0, 0): [Fraction(int(k == 0)) for k in range(n)]}
    for j in range(R.dim):
        table[(0, j + 1)] = [Fraction(int(k == j + 1)) for k in range(n)]
    for i, j, ks in R.entries:
        v = [Fraction(0)] * n
        for k, a in ks:
            v[k + 1] = a
        table[(i + 1, j + 1)] = v
    basis = ["e"] + _rename_clash(R.basis, ["e"])
    return Algebra(n, table, [1] + [0] * R.dim, basis, name or f"unit({R.name})")


def spin_factor(q: Sequence, name: str = "") -> Algebra:
    """J_{q,r}^m, m = len(q) + 1: (l,w)(l',w') = (ll' - q(w,w'), lw' + l'w), q diagonal."""
    q = [as_fraction(a) for a in q]
    m = len(q) + 1
    table = {(0, 0): [Fraction(int(k == 0)) for k in range(m)]}
    for i in range(1, m):
        table[(0, i)] = [Fraction(int(k == i)) for k in range(m)]
        table[(i, i)] = [-q[i - 1] if k == 0 else Fraction(0) for k in range(m)]
    basis = ["l"] + [f"w{i}" for i in range(1, m)]
    r = sum(1 for a in q if a)
    return Algebra(m, table, [1] + [0] * (m - 1), basis, name or f"J_q{r}^{m}")


def change_basis(A: Algebra, P: Sequence[Sequence]) -> Algebra:
    """Columns of P are the new basis vectors in old coordinates."""
    P = linalg.to_matrix(P)
    Pinv = linalg.inverse(P)
    cols = linalg.transpose(P)
    table = {}
    for i in range(A.dim):
        for j in range(i, A.dim):
            prod = A.mul(cols[i], cols[j])
            table[(i, j)] = linalg.matvec(Pinv, prod)
    unit = linalg.matvec(Pinv, list(A.unit)) if A.unit is not None else None
    return Algebra(A.dim, table, unit, [f"b{i + 1}'" for i in range(A.dim)], f"{A.name}'")


# ------------ algebra from its adjoint ------------
def norm_expansion(N: Polynomial, e: Vector) -> Tuple[Polynomial, Polynomial]:
    """T = dN_e, S = (1/2) d^2N_e."""
    vars = N.vars
    n = len(vars)
    xs = Polynomial.generators(vars)
    T = Polynomial.zero(vars)
    S = Polynomial.zero(vars)
    first = [N.diff(i) for i in range(n)]
    for i in range(n):
        T = T + xs[i].scale(first[i].evaluate(e))
        for j in range(n):
            c = first[i].diff(j).evaluate(e)
            if c:
                S = S + (xs[i] * xs[j]).scale(c / 2)
    return T, S


def is_exact_adjoint(F: RationalMap, e: Sequence) -> bool:
    """F(e) = e and dF_e(y) = T(y) e - y, with T = dN_e for N the scaling of F∘F."""
    e = [as_fraction(a) for a in e]
    if F(e) != e:
        return False
    res = check_involution(F)
    if not res.ok or res.scaling.evaluate(e) != 1:
        return False
    T, _ = norm_expansion(res.scaling, e)
    n = len(e)
    for j in range(n):
        col = [F.components[i].diff(j).evaluate(e) for i in range(n)]
        tj = T.coefficient(tuple(int(k == j) for k in range(n)))
        want = [tj * e[i] - (1 if i == j else 0) for i in range(n)]
        if col != want:
            return False
    return True


def from_adjoint(F: RationalMap, e: Sequence, name: str = "") -> Algebra:
    """Algebra whose adjoint is F: x^2 = F(x) + T(x) x - S(x) e, product by polarization."""
    e = [as_fraction(a) for a in e]
    n = len(F.vars)
    if len(e) != n or len(F.components) != n:
        raise StructuralError("unit and map dimensions differ")
    if F.degree != 2:
        raise DomainError("an adjoint is quadratic")
    if F(e) != e:
        raise DomainError("F(e) != e")
    res = check_involution(F)
    if not res.ok:
        raise DomainError(f"F∘F is not a multiple of the identity: {res.detail}")
    N = res.scaling
    if N.evaluate(e) != 1:
        raise DomainError(f"N(e) = {N.evaluate(e)}, expected 1")
    T, S = norm_expansion(N, e)
    xs = Polynomial.generators(F.vars)
    square = [F.components[k] + T * xs[k] - S.scale(e[k]) for k in range(n)]

    def sq(v):
        return [p.evaluate(v) for p in square]

    vec = lambda i: [Fraction(int(k == i)) for k in range(n)]
    table = {}
    for i in range(n):
        table[(i, i)] = sq(vec(i))
        for j in range(i + 1, n):
            s = [a + b for a, b in zip(vec(i), vec(j))]
            table[(i, j)] = [(a - b - c) / 2 for a, b, c in zip(sq(s), sq(vec(i)), sq(vec(j)))]
    A = Algebra(n, table, e, list(F.vars), name)
    return A
