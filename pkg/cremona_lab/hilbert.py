"""Hilbert series and Hilbert polynomial of a homogeneous ideal.

The series numerator comes from the degrevlex initial ideal through the
monomial pivot recursion  N(I) = N(I + x_j) + t * N(I : x_j).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Sequence, Tuple

from .errors import DomainError
from .exact_poly import DEGREVLEX, Exp, Polynomial, parse_polynomial
from .groebner import Ideal

log = logging.getLogger(__name__)

T_VARS = ("t",)


# ------------ univariate integer polynomials as coefficient lists ------------
def _padd(a: List[int], b: List[int]) -> List[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pmul(a: List[int], b: List[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _trim(a: List[int]) -> List[int]:
    while a and not a[-1]:
        a.pop()
    return a


def _as_poly(coeffs: Sequence) -> Polynomial:
    return Polynomial(T_VARS, {(i,): c for i, c in enumerate(coeffs)})


# ------------ monomial ideals ------------
def _minimalize(gens: Sequence[Exp]) -> List[Exp]:
    out: List[Exp] = []
    for g in sorted(set(gens), key=sum):
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _pivot_variable(gens: Sequence[Exp]) -> int:
    n = len(gens[0])
    counts = [sum(1 for g in gens if g[j]) for j in range(n)]
    shared = [j for j in range(n) if counts[j] > 1]
    return max(shared, key=lambda j: counts[j])


def _pairwise_coprime(gens: Sequence[Exp]) -> bool:
    seen = set()
    for g in gens:
        support = {j for j, a in enumerate(g) if a}
        if seen & support:
            return False
        seen |= support
    return True


def series_numerator(gens: Sequence[Exp]) -> List[int]:
    """Numerator N(t) of the Hilbert series N(t)/(1-t)^n of S / (gens)."""
    gens = _minimalize(gens)
    if not gens:
        return [1]
    n = len(gens[0])
    if any(sum(g) == 0 for g in gens):
        return []
    if _pairwise_coprime(gens):
        out = [1]
        for g in gens:
            d = sum(g)
            out = _pmul(out, [1] + [0] * (d - 1) + [-1])
        return out
    j = _pivot_variable(gens)
    xj = tuple(int(k == j) for k in range(n))
    left = series_numerator(list(gens) + [xj])
    right = series_numerator([tuple(a - 1 if k == j and a else a for k, a in enumerate(g)) for g in gens])
    return _padd(left, [0] + right)


# ------------ Hilbert data ------------
@dataclass(frozen=True)
class HilbertData:
    series_numerator: Polynomial
    nvars: int
    krull_dimension: int
    dimension: int
    degree: int
    hilbert_polynomial: Polynomial
    regularity_bound: int

    def hilbert_function(self, k: int) -> int:
        n = self.nvars
        total = 0
        for (i,), c in self.series_numerator.terms.items():
            if k - i >= 0:
                total += int(c) * comb(k - i + n - 1, n - 1)
        return total

    def to_json(self) -> dict:
        return {
            "series_numerator": self.series_numerator.render(),
            "dimension": self.dimension,
            "degree": self.degree,
            "hilbert_polynomial": self.hilbert_polynomial.render(),
            "binomial_basis": binomial_basis_text(self.hilbert_polynomial),
            "regularity_bound": self.regularity_bound,
        }


def _interpolate(points: Sequence[Tuple[int, int]]) -> Polynomial:
    """Lagrange interpolation over Q in the variable t."""
    t = Polynomial.variable(T_VARS, 0)
    out = Polynomial.zero(T_VARS)
    for i, (xi, yi) in enumerate(points):
        if not yi:
            continue
        basis = Polynomial.constant(T_VARS, 1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = basis * (t - xj) * Fraction(1, xi - xj)
        out = out + basis.scale(yi)
    return out


def hilbert_from_numerator(numerator: List[int], nvars: int) -> HilbertData:
    num = list(numerator)
    D = nvars
    # strip (1-t) factors
    while num and D > 0 and sum(num) == 0:
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = _trim(q)
        D -= 1
    reg = len(numerator)
    full = HilbertData(
        series_numerator=_as_poly(numerator),
        nvars=nvars,
        krull_dimension=D,
        dimension=-1,
        degree=0,
        hilbert_polynomial=Polynomial.zero(T_VARS),
        regularity_bound=reg,
    )
    if not num or D == 0:
        return full
    pts = [(k, full.hilbert_function(k)) for k in range(reg, reg + D)]
    hp = _interpolate(pts)
    return HilbertData(
        series_numerator=full.series_numerator,
        nvars=nvars,
        krull_dimension=D,
        dimension=D - 1,
        degree=sum(num),
        hilbert_polynomial=hp,
        regularity_bound=reg,
    )


def hilbert(I: Ideal) -> HilbertData:
    if not I.is_homogeneous():
        raise DomainError("Hilbert data needs homogeneous generators")
    G = I.groebner_basis(DEGREVLEX)
    lead = [g.leading_monomial(DEGREVLEX) for g in G]
    data = hilbert_from_numerator(series_numerator(lead) if lead else [1], len(I.vars))
    log.debug(f"[hilbert] dim={data.dimension} deg={data.degree} hp={data.hilbert_polynomial}")
    return data


def _monomials_of_degree(n: int, k: int):
    if n == 1:
        yield (k,)
        return
    for a in range(k, -1, -1):
        for rest in _monomials_of_degree(n - 1, k - a):
            yield (a,) + rest


def hilbert_function(I: Ideal, k: int) -> int:
    """Count standard monomials of degree k (brute force)."""
    lead = [g.leading_monomial(DEGREVLEX) for g in I.groebner_basis(DEGREVLEX)]
    count = 0
    for m in _monomials_of_degree(len(I.vars), k):
        if not any(all(a <= b for a, b in zip(l, m)) for l in lead):
            count += 1
    return count


# ------------ binomial basis P_i(t) = C(t+i, i) ------------
def binomial_polynomial(i: int) -> Polynomial:
    t = Polynomial.variable(T_VARS, 0)
    out = Polynomial.constant(T_VARS, 1)
    for j in range(1, i + 1):
        out = out * (t + j)
    return out.scale(Fraction(1, factorial(i)))


def binomial_basis(hp: Polynomial) -> List[Fraction]:
    """Coefficients c_i with hp = sum c_i P_i."""
    rest = hp
    d = hp.degree()
    coeffs: Dict[int, Fraction] = {}
    for i in range(d, -1, -1):
        c = rest.coefficient((i,)) * factorial(i)
        coeffs[i] = c
        rest = rest - binomial_polynomial(i).scale(c)
    if not rest.is_zero():
        raise DomainError(f"could not express {hp} in the binomial basis")
    return [coeffs[i] for i in range(d + 1)]


def binomial_basis_text(hp: Polynomial) -> str:
    if hp.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(binomial_basis(hp)):
        if not c:
            continue
        a = abs(c)
        body = f"P{i}" if a == 1 else f"{a}*P{i}"
        parts.append(("-" if c < 0 else "+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def parse_hilbert_polynomial(text: str) -> Polynomial:
    return parse_polynomial(text, T_VARS)
