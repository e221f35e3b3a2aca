"""Homogeneous rational maps of projective space.

Composition never cancels common factors: every check is phrased as an exact
identity g∘f = c·id, with c found by exact division.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .errors import DomainError, GenericityError, InputError, StructuralError
from .exact_poly import Polynomial, default_vars, parse_polynomial
from .groebner import Ideal, saturate_irrelevant, saturation
from .hilbert import HilbertData, hilbert, parse_hilbert_polynomial
from .rng import SplitMix64, derive_seed

log = logging.getLogger(__name__)


def _int_field(value, field: str) -> int:
    if isinstance(value, (bool, float)):
        raise InputError(f"expected an integer, got {value!r}", field=field)
    try:
        return int(value)
    except (TypeError, ValueError):
        raise InputError(f"expected an integer, got {value!r}", field=field)


class RationalMap:
    """n+1 homogeneous forms of one degree d >= 1 on P^n."""

    __slots__ = ("components", "vars", "degree", "_base", "_base_sat")

    def __init__(self, components: Sequence[Polynomial]):
        comps = tuple(components)
        if not comps:
            raise StructuralError("a map needs at least one component")
        vars = comps[0].vars
        for c in comps:
            if c.vars != vars:
                raise StructuralError("components must share one variable list")
        if all(c.is_zero() for c in comps):
            raise DomainError("all components are zero")
        degrees = {c.degree() for c in comps if not c.is_zero()}
        if len(degrees) != 1 or not all(c.is_homogeneous() for c in comps):
            raise DomainError(f"components are not homogeneous of one degree: {sorted(degrees)}")
        d = degrees.pop()
        if d < 1:
            raise DomainError("components must have degree >= 1")
        self.components = comps
        self.vars = vars
        self.degree = d
        self._base = None
        self._base_sat = None

    @property
    def n(self) -> int:
        """Dimension of the source projective space."""
        return len(self.vars) - 1

    @property
    def target_n(self) -> int:
        return len(self.components) - 1

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i) -> Polynomial:
        return self.components[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMap):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __call__(self, point: Sequence) -> List[Fraction]:
        return [c.evaluate(point) for c in self.components]

    def __repr__(self):
        return f"RationalMap({self.render()})"

    def __getstate__(self):
        return {"components": self.components}

    def __setstate__(self, state):
        self.__init__(state["components"])

    def render(self) -> List[str]:
        return [c.render() for c in self.components]

    def scaled(self, factors: Sequence) -> "RationalMap":
        """Multiply component i by factors[i] (used for sign normalisations)."""
        if len(factors) != len(self.components):
            raise StructuralError("one factor per component")
        return RationalMap([c.scale(a) for c, a in zip(self.components, factors)])

    def rename(self, vars: Sequence[str]) -> "RationalMap":
        return RationalMap([c.rename(vars) for c in self.components])

    # ------------ JSON ------------
    def to_json(self) -> dict:
        return {
            "n": self.n,
            "degree": self.degree,
            "vars": list(self.vars),
            "components": [c.to_json() for c in self.components],
        }

    @classmethod
    def from_json(cls, data, field: str = "map") -> "RationalMap":
        if not isinstance(data, dict) or "components" not in data:
            raise InputError("expected an object with 'components'", field=field)
        raw = data["components"]
        if not isinstance(raw, list) or not raw:
            raise InputError("'components' must be a non-empty list", field=f"{field}.components")
        n = _int_field(data.get("n", len(raw) - 1), f"{field}.n")
        vars = data.get("vars") or list(default_vars(n + 1))
        if not isinstance(vars, list) or not all(isinstance(v, str) for v in vars):
            raise InputError("'vars' must be a list of names", field=f"{field}.vars")
        comps = []
        for k, c in enumerate(raw):
            where = f"{field}.components[{k}]"
            p = parse_polynomial(c, vars) if isinstance(c, str) else Polynomial.from_json(c, field=where)
            comps.append(p)
        try:
            f = cls(comps)
        except (StructuralError, DomainError) as e:
            raise InputError(str(e), field=field)
        if "degree" in data and _int_field(data["degree"], f"{field}.degree") != f.degree:
            raise InputError(f"declared degree {data['degree']} but components have degree {f.degree}", field=f"{field}.degree")
        if n != f.n:
            raise InputError(f"declared n={n} but there are {len(f.vars)} variables", field=f"{field}.n")
        return f

    @classmethod
    def parse(cls, texts: Sequence[str], vars: Optional[Sequence[str]] = None) -> "RationalMap":
        vars = tuple(vars or default_vars(len(texts)))
        return cls([parse_polynomial(t, vars) for t in texts])


# ------------ linear maps ------------
def identity_map(vars) -> RationalMap:
    if isinstance(vars, int):
        vars = default_vars(vars + 1)
    return RationalMap(Polynomial.generators(vars))


def linear_map(matrix: Sequence[Sequence], vars: Optional[Sequence[str]] = None) -> RationalMap:
    """v -> M v as a degree-1 map."""
    m = linalg.to_matrix(matrix)
    vars = tuple(vars or default_vars(len(m[0])))
    gens = Polynomial.generators(vars)
    comps = []
    for row in m:
        acc = Polynomial.zero(vars)
        for a, g in zip(row, gens):
            if a:
                acc = acc + g.scale(a)
        comps.append(acc)
    return RationalMap(comps)


def compose(f: RationalMap, g: RationalMap) -> RationalMap:
    """f∘g by substitution."""
    if len(g.components) != len(f.vars):
        raise StructuralError(f"cannot compose: f has {len(f.vars)} variables, g has {len(g.components)} components")
    return RationalMap([c.substitute(g.components) for c in f.components])


def conjugate(f: RationalMap, L: Sequence[Sequence], Linv: Optional[Sequence[Sequence]] = None) -> RationalMap:
    """L∘f∘L^-1."""
    if Linv is None:
        Linv = linalg.inverse(linalg.to_matrix(L))
    return compose(linear_map(L, f.vars), compose(f, linear_map(Linv, f.vars)))


def random_invertible(rng: SplitMix64, n: int, bound: int = 3) -> Tuple[linalg.Matrix, linalg.Matrix]:
    while True:
        m = [[rng.coefficient(bound) for _ in range(n)] for _ in range(n)]
        if linalg.det(m):
            return m, linalg.inverse(m)


# ------------ involution and inverse checks ------------
@dataclass(frozen=True)
class InvolutionResult:
    ok: bool
    scaling: Optional[Polynomial] = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"ok": self.ok, "detail": self.detail}
        if self.scaling is not None:
            out["scaling"] = self.scaling.render()
            out["scaling_degree"] = self.scaling.degree()
        return out


def _scaling_against_identity(h: RationalMap) -> InvolutionResult:
    """Find c with h = c * (x_0, ..., x_n)."""
    if len(h.components) != len(h.vars):
        return InvolutionResult(False, detail="source and target dimensions differ")
    xs = Polynomial.generators(h.vars)
    c = None
    for i, comp in enumerate(h.components):
        if comp.is_zero():
            return InvolutionResult(False, detail=f"component {i} of the composite vanishes")
        if c is None:
            try:
                c = comp.exact_divide(xs[i])
            except DomainError:
                return InvolutionResult(False, detail=f"component {i} is not divisible by {h.vars[i]}")
    for i, comp in enumerate(h.components):
        if comp != c * xs[i]:
            return InvolutionResult(False, detail=f"component {i} differs from c*{h.vars[i]}")
    return InvolutionResult(True, c, "")


def check_involution(f: RationalMap) -> InvolutionResult:
    if len(f.components) != len(f.vars):
        raise StructuralError("an involution must map P^n to itself")
    res = _scaling_against_identity(compose(f, f))
    log.debug(f"[cremona] involution ok={res.ok} {res.detail}")
    return res


def verify_inverse(f: RationalMap, g: RationalMap) -> InvolutionResult:
    """g∘f = c·id."""
    if len(f.vars) != len(g.vars) or len(f.components) != len(g.vars):
        raise StructuralError("maps live on different projective spaces")
    return _scaling_against_identity(compose(g, f))


# ------------ base locus ------------
def base_ideal(f: RationalMap, saturate: bool = False) -> Ideal:
    if f._base is None:
        f._base = Ideal(f.components, f.vars)
    if not saturate:
        return f._base
    if f._base_sat is None:
        f._base_sat = saturate_irrelevant(f._base)
    return f._base_sat


# ------------ scheme type ------------
P4_REFERENCE = {
    "I": "t^2 + 2*t + 2",
    "II": "1/2*t^2 + 7/2*t + 1",
    "III": "5*t",
}

P5_GENERIC = {
    "I": ["y^2+z^2+t^2+u^2+v^2", "x*y", "-x*z", "-x*t", "-x*u", "-x*v"],
    "II": ["z*y", "x*z", "x*y", "-t*z", "-u*z", "-v*y"],
    "III": ["x*y", "x^2", "-y*z+v^2", "-y*t", "-y*u", "-x*v"],
    "IV": ["y*z-v^2", "x*z-u^2", "x*y-t^2", "u*v-z*t", "t*v-u*y", "t*u-x*v"],
}


@lru_cache(maxsize=None)
def reference_polynomials(n: int) -> Dict[str, Polynomial]:
    """Type label -> Hilbert polynomial of the base scheme, on P^4 and P^5."""
    if n == 4:
        return {k: parse_hilbert_polynomial(v) for k, v in P4_REFERENCE.items()}
    if n == 5:
        out = {}
        for label, texts in P5_GENERIC.items():
            out[label] = hilbert(base_ideal(RationalMap.parse(texts), saturate=True)).hilbert_polynomial
            log.info(f"[cremona] reference P5 type {label}: {out[label]}")
        return out
    return {}


@dataclass(frozen=True)
class SchemeType:
    label: str
    hilbert_polynomial: Polynomial
    hilbert: HilbertData

    def to_json(self) -> dict:
        return {"label": self.label, **self.hilbert.to_json()}


def scheme_type(f: RationalMap) -> SchemeType:
    data = hilbert(base_ideal(f, saturate=True))
    label = "other"
    if f.degree == 2 and len(f.components) == len(f.vars):
        for name, hp in reference_polynomials(f.n).items():
            if hp == data.hilbert_polynomial:
                label = name
                break
    return SchemeType(label, data.hilbert_polynomial, data)


# ------------ multidegree ------------
@dataclass(frozen=True)
class MultiDegree:
    entries: Tuple[int, ...]
    seed: int
    trials: int
    per_trial: Tuple[Tuple[int, ...], ...] = field(default=())

    def is_palindromic(self) -> bool:
        return self.entries == tuple(reversed(self.entries))

    def to_json(self) -> dict:
        return {"mdeg": list(self.entries), "seed": self.seed, "trials": self.trials}


def _random_combination(f: RationalMap, rng: SplitMix64, bound: int) -> Polynomial:
    while True:
        acc = Polynomial.zero(f.vars)
        for c in f.components:
            acc = acc + c.scale(rng.coefficient(bound))
        if not acc.is_zero():
            return acc


def _residual_degrees(f: RationalMap, B: Ideal, seed: int, bound: int) -> Tuple[int, ...]:
    rng = SplitMix64(seed)
    n = f.n
    out = []
    for k in range(1, n - 1):
        I = Ideal([_random_combination(f, rng, bound) for _ in range(k)], f.vars)
        data = hilbert(saturation(I, B))
        if data.dimension != n - k:
            raise GenericityError(
                f"residual of {k} general members has dimension {data.dimension}, expected {n - k}; "
                f"widen the coefficient range or change the seed"
            )
        out.append(data.degree)
    return tuple(out)


def _trial(args) -> Tuple[int, ...]:
    f, B, seed, bound = args
    return _residual_degrees(f, B, seed, bound)


def multidegree(
    f: RationalMap,
    seed: int,
    trials: int = 3,
    inverse_degree: Optional[int] = None,
    coefficient_range: int = 20,
    workers: int = 1,
) -> MultiDegree:
    """(d_1, ..., d_{n-1}); on P^2 the pair (d, d').

    d_1..d_{n-2} are degrees of residual schemes of k general members of the
    linear system, d_{n-1} is the degree of the inverse (f itself for an
    involution). Trials use independent seeded streams and must agree.
    """
    if len(f.components) != len(f.vars):
        raise StructuralError("multidegree needs a self-map of P^n")
    if trials < 1:
        raise InputError("trials must be >= 1", field="trials")
    last = f.degree if inverse_degree is None else inverse_degree
    if f.n <= 2:
        return MultiDegree((f.degree, last), seed, trials)
    B = base_ideal(f, saturate=True)
    jobs = [(f, B, derive_seed(seed, t), coefficient_range) for t in range(trials)]
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=min(workers, trials)) as pool:
            results = list(pool.map(_trial, jobs))
    else:
        results = [_trial(j) for j in jobs]
    if len(set(results)) != 1:
        raise GenericityError(
            f"multidegree trials disagree: {results}; widen the coefficient range or change the seed"
        )
    entries = results[0] + (last,)
    log.info(f"[cremona] mdeg={entries} seed={seed} trials={trials}")
    return MultiDegree(entries, seed, trials, tuple(results))
