"""Buchberger over Q: reduced bases, normal forms, intersection, colon, saturation.

Pair selection uses the normal strategy (smallest lcm first) and both
Buchberger criteria. Reduced bases are cached per monomial order on the Ideal.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DomainError, InputError, InternalError, StructuralError
from .exact_poly import DEGREVLEX, Exp, MonomialOrder, Polynomial, elimination, parse_polynomial

log = logging.getLogger(__name__)

SATURATION_MAX_ITER = 50


# ------------ monomial helpers ------------
def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Exp, b: Exp) -> bool:
    return not any(x and y for x, y in zip(a, b))


@dataclass
class _Elem:
    lm: Exp
    terms: Dict[Exp, Fraction]


def _monic(terms: Dict[Exp, Fraction], key) -> _Elem:
    lm = max(terms, key=key)
    inv = 1 / terms[lm]
    return _Elem(lm, {e: c * inv for e, c in terms.items()})


def _reduce(terms: Dict[Exp, Fraction], basis: Sequence[_Elem], key) -> Dict[Exp, Fraction]:
    """Full reduction of terms by basis (monic elements)."""
    p = dict(terms)
    r: Dict[Exp, Fraction] = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for g in basis:
            if _divides(g.lm, m):
                shift = tuple(x - y for x, y in zip(m, g.lm))
                for e, a in g.terms.items():
                    f = tuple(x + y for x, y in zip(e, shift))
                    s = p.get(f, 0) - c * a
                    if s:
                        p[f] = s
                    else:
                        p.pop(f, None)
                break
        else:
            r[m] = c
            del p[m]
    return r


def _spoly(f: _Elem, g: _Elem) -> Dict[Exp, Fraction]:
    l = _lcm(f.lm, g.lm)
    out: Dict[Exp, Fraction] = {}
    for elem, sign in ((f, 1), (g, -1)):
        shift = tuple(x - y for x, y in zip(l, elem.lm))
        for e, a in elem.terms.items():
            k = tuple(x + y for x, y in zip(e, shift))
            s = out.get(k, 0) + sign * a
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


# ------------ Buchberger ------------
def _update(basis: List[_Elem], pairs: set, new: _Elem):
    basis.append(new)
    k = len(basis) - 1
    for i in range(k):
        pairs.add((i, k))


def _select(basis: List[_Elem], pairs: set, key) -> Tuple[int, int]:
    return min(pairs, key=lambda p: (key(_lcm(basis[p[0]].lm, basis[p[1]].lm)), p))


def _chain_criterion(basis: List[_Elem], pairs: set, i: int, j: int, l: Exp) -> bool:
    for k in range(len(basis)):
        if k in (i, j) or not _divides(basis[k].lm, l):
            continue
        if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
            return True
    return False


def minimalize(basis: List[_Elem], key) -> List[_Elem]:
    out: List[_Elem] = []
    for g in sorted(basis, key=lambda e: key(e.lm)):
        if not any(_divides(h.lm, g.lm) for h in out):
            out.append(g)
    return out


def interreduce(basis: List[_Elem], key) -> List[_Elem]:
    out = []
    for i, g in enumerate(basis):
        others = basis[:i] + basis[i + 1:]
        tail = {e: c for e, c in g.terms.items() if e != g.lm}
        red = _reduce(tail, others, key)
        red[g.lm] = Fraction(1)
        out.append(_Elem(g.lm, red))
    return out


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX) -> List[Polynomial]:
    """Reduced Groebner basis, monic, sorted by leading monomial (largest first)."""
    if not gens:
        return []
    vars = gens[0].vars
    key = order.key
    basis: List[_Elem] = []
    pairs: set = set()
    for f in gens:
        if f.vars != vars:
            raise StructuralError("generators must share one variable list")
        r = _reduce(f.terms, basis, key) if basis else dict(f.terms)
        if r:
            _update(basis, pairs, _monic(r, key))
    reductions = 0
    while pairs:
        i, j = _select(basis, pairs, key)
        pairs.discard((i, j))
        f, g = basis[i], basis[j]
        if _coprime(f.lm, g.lm):
            continue
        if _chain_criterion(basis, pairs, i, j, _lcm(f.lm, g.lm)):
            continue
        reductions += 1
        r = _reduce(_spoly(f, g), basis, key)
        if r:
            _update(basis, pairs, _monic(r, key))
    reduced = interreduce(minimalize(basis, key), key)
    reduced.sort(key=lambda e: key(e.lm), reverse=True)
    log.debug(f"[groebner] order={order} basis size={len(reduced)} reductions={reductions}")
    return [Polynomial._raw(vars, e.terms) for e in reduced]


def is_groebner(G: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    key = order.key
    elems = [_monic(g.terms, key) for g in G if not g.is_zero()]
    for a in range(len(elems)):
        for b in range(a + 1, len(elems)):
            if _reduce(_spoly(elems[a], elems[b]), elems, key):
                return False
    return True


# ------------ ideals ------------
class Ideal:
    """Generators over a shared variable list plus cached reduced bases."""

    def __init__(self, gens: Iterable[Polynomial], vars: Optional[Sequence[str]] = None):
        gens = list(gens)
        if vars is None:
            if not gens:
                raise StructuralError("an ideal without generators needs explicit vars")
            vars = gens[0].vars
        self.vars = tuple(vars)
        for g in gens:
            if g.vars != self.vars:
                raise StructuralError(f"generator over {g.vars}, ideal over {self.vars}")
        self.gens = [g for g in gens if not g.is_zero()]
        self._cache: Dict[MonomialOrder, List[Polynomial]] = {}

    def groebner_basis(self, order: MonomialOrder = DEGREVLEX) -> List[Polynomial]:
        G = self._cache.get(order)
        if G is None:
            G = buchberger(self.gens, order)
            self._cache[order] = G
        return G

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        G = self.groebner_basis()
        return len(G) == 1 and G[0].is_constant()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]}, vars={list(self.vars)})"

    # ------------ JSON ------------
    def to_json(self) -> dict:
        return {"vars": list(self.vars), "gens": [g.to_json() for g in self.gens]}

    @classmethod
    def from_json(cls, data, field: str = "ideal") -> "Ideal":
        try:
            vars = data["vars"]
            raw = data["gens"]
        except (KeyError, TypeError):
            raise InputError("missing 'vars' or 'gens'", field=field)
        if not isinstance(vars, list) or not all(isinstance(v, str) for v in vars):
            raise InputError("'vars' must be a list of names", field=f"{field}.vars")
        if not isinstance(raw, list):
            raise InputError("'gens' must be a list", field=f"{field}.gens")
        gens = []
        for k, g in enumerate(raw):
            where = f"{field}.gens[{k}]"
            p = parse_polynomial(g, vars) if isinstance(g, str) else Polynomial.from_json(g, field=where)
            if p.vars != tuple(vars):
                raise InputError("generator variables differ from the ideal's", field=where)
            gens.append(p)
        return cls(gens, vars)


def groebner_basis(I: Ideal, order: MonomialOrder = DEGREVLEX) -> List[Polynomial]:
    return I.groebner_basis(order)


def normal_form(p: Polynomial, I: Ideal, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    if p.vars != I.vars:
        raise StructuralError(f"polynomial over {p.vars}, ideal over {I.vars}")
    key = order.key
    elems = [_Elem(g.leading_monomial(order), g.terms) for g in I.groebner_basis(order)]
    return Polynomial._raw(p.vars, _reduce(p.terms, elems, key))


def contains(I: Ideal, p: Polynomial) -> bool:
    return normal_form(p, I).is_zero()


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.vars != J.vars:
        raise StructuralError(f"ideals over {I.vars} and {J.vars}")
    return I.groebner_basis() == J.groebner_basis()


def _fresh_name(vars: Sequence[str], base: str = "_t") -> str:
    name = base
    while name in vars:
        name += "_"
    return name


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t*I + (1-t)*J."""
    if I.vars != J.vars:
        raise StructuralError(f"ideals over {I.vars} and {J.vars}")
    if I.is_zero() or J.is_zero():
        return Ideal([], I.vars)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    big = (_fresh_name(I.vars),) + I.vars
    t = Polynomial.variable(big, 0)
    one_minus_t = 1 - t
    gens = [t * f.with_vars(big) for f in I.gens] + [one_minus_t * g.with_vars(big) for g in J.gens]
    G = buchberger(gens, elimination(1))
    kept = [Polynomial._raw(I.vars, {e[1:]: c for e, c in g.terms.items()}) for g in G if g.leading_monomial(elimination(1))[0] == 0]
    out = Ideal(kept, I.vars)
    out._cache[DEGREVLEX] = buchberger(kept, DEGREVLEX)
    return out


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    if not ideals:
        raise StructuralError("nothing to intersect")
    acc = ideals[0]
    for J in ideals[1:]:
        acc = ideal_intersection(acc, J)
    return acc


def ideal_quotient(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f) = (I ∩ (f)) / f."""
    if f.is_zero():
        raise DomainError("quotient by the zero polynomial")
    if f.vars != I.vars:
        raise StructuralError(f"polynomial over {f.vars}, ideal over {I.vars}")
    if I.is_zero():
        return Ideal([], I.vars)
    K = ideal_intersection(I, Ideal([f]))
    return Ideal([g.exact_divide(f) for g in K.groebner_basis()], I.vars)


def _variable_index(g: Polynomial) -> Optional[int]:
    if len(g.terms) != 1:
        return None
    e = next(iter(g.terms))
    if sum(e) != 1:
        return None
    return e.index(1)


def saturate_variable(I: Ideal, i: int) -> Ideal:
    """(I : x_i^inf) for homogeneous I: degrevlex basis with x_i last, strip x_i powers."""
    n = len(I.vars)
    perm = [j for j in range(n) if j != i] + [i]
    pvars = tuple(I.vars[j] for j in perm)

    def to_perm(p: Polynomial) -> Polynomial:
        return Polynomial._raw(pvars, {tuple(e[j] for j in perm): c for e, c in p.terms.items()})

    G = buchberger([to_perm(g) for g in I.gens], DEGREVLEX)
    stripped = []
    for g in G:
        k = min(e[-1] for e in g.terms)
        back = {}
        for e, c in g.terms.items():
            f = [0] * n
            for pos, j in enumerate(perm):
                f[j] = e[pos]
            f[i] -= k
            back[tuple(f)] = c
        stripped.append(Polynomial._raw(I.vars, back))
    return Ideal(stripped, I.vars)


def saturate_element(I: Ideal, f: Polynomial, max_iter: int = SATURATION_MAX_ITER) -> Ideal:
    """(I : f^inf) by iterated quotients until the reduced basis is stable."""
    if I.is_zero():
        return I
    i = _variable_index(f)
    if i is not None and I.is_homogeneous():
        return saturate_variable(I, i)
    cur = I
    for step in range(max_iter):
        nxt = ideal_quotient(cur, f)
        if ideal_equal(nxt, cur):
            log.debug(f"[groebner] saturation by {f} stable after {step + 1} quotients")
            return cur
        cur = nxt
    raise InternalError(f"saturation by {f} did not stabilise within {max_iter} quotients")


def saturation(I: Ideal, J: Ideal, max_iter: int = SATURATION_MAX_ITER) -> Ideal:
    """(I : J^inf) = ∩_j (I : g_j^inf)."""
    if I.vars != J.vars:
        raise StructuralError(f"ideals over {I.vars} and {J.vars}")
    if I.is_zero():
        return I
    if J.is_zero():
        return Ideal([Polynomial.constant(I.vars, 1)], I.vars)
    parts: List[Ideal] = []
    for g in J.gens:
        S = saturate_element(I, g, max_iter)
        if S.is_unit() or any(ideal_equal(S, P) for P in parts):
            continue
        parts.append(S)
    if not parts:
        return Ideal([Polynomial.constant(I.vars, 1)], I.vars)
    return intersect_all(parts)


def irrelevant_ideal(vars: Sequence[str]) -> Ideal:
    return Ideal(Polynomial.generators(vars), vars)


def saturate_irrelevant(I: Ideal, max_iter: int = SATURATION_MAX_ITER) -> Ideal:
    return saturation(I, irrelevant_ideal(I.vars), max_iter)
