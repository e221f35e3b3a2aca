"""Recipes producing new Cremona involutions from known ones.

Everything here returns a RationalMap whose involution identity has been
checked before it is handed back; a recipe that cannot certify its output
raises instead of returning an unverified map.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .cremona import RationalMap, check_involution, compose, linear_map
from .errors import DomainError, InputError, InternalError, StructuralError
from .exact_poly import Polynomial, as_fraction, default_vars, parse_polynomial
from .jordan import Algebra, norm_expansion, polarized_trace_form, quadratic_sharp, rank_profile, trace_form
from .rng import SplitMix64

log = logging.getLogger(__name__)


# ------------ monomial families ------------
def standard_involution(n: int) -> RationalMap:
    """[x_1 : ... : x_n] -> [prod_{j != i} x_j], the adjoint of C^n."""
    if n < 3:
        raise DomainError(f"the standard involution needs n >= 3 coordinates (n={n} gives a linear map)")
    gens = Polynomial.generators(default_vars(n))
    comps = []
    for i in range(n):
        acc = Polynomial.constant(gens[0].vars, 1)
        for j, g in enumerate(gens):
            if j != i:
                acc = acc * g
        comps.append(acc)
    return RationalMap(comps)


def falpha(a1: int, a2: int, a3: int) -> RationalMap:
    """(x2x3, x1x3, x1x2, x1*A1, x2*A2, x3*A3) with blocks A_i of sizes a_i."""
    sizes = (a1, a2, a3)
    if any(a < 0 for a in sizes):
        raise DomainError(f"block sizes must be non-negative, got {sizes}")
    vars = default_vars(3 + sum(sizes))
    gens = Polynomial.generators(vars)
    x1, x2, x3 = gens[:3]
    comps = [x2 * x3, x1 * x3, x1 * x2]
    k = 3
    for xi, a in zip((x1, x2, x3), sizes):
        for _ in range(a):
            comps.append(xi * gens[k])
            k += 1
    return RationalMap(comps)


def f_n(n: int) -> RationalMap:
    """(a^2, -a*b1, b1^2 - a*c1, ..., -a*bn, bn^2 - a*cn); scaling a^3."""
    if n < 1:
        raise DomainError("f_n needs n >= 1")
    vars = ("a",) + tuple(name for i in range(1, n + 1) for name in (f"b{i}", f"c{i}"))
    gens = Polynomial.generators(vars)
    a = gens[0]
    comps = [a * a]
    for i in range(n):
        b, c = gens[1 + 2 * i], gens[2 + 2 * i]
        comps += [-(a * b), b * b - a * c]
    return RationalMap(comps)


def f_lambda(lam) -> RationalMap:
    """(x^2, -xy, -xz, y^2 + lam*z^2 - xt, 2yz - xu) on P^4."""
    lam = as_fraction(lam)
    x, y, z, t, u = Polynomial.generators(default_vars(5))
    return RationalMap([x * x, -(x * y), -(x * z), y * y + (z * z).scale(lam) - x * t, (y * z).scale(2) - x * u])


# ------------ Spampinato lift ------------
def _lift_vars(vars: Sequence[str]) -> Tuple[str, ...]:
    k = len(vars)
    cand = default_vars(k + 1)
    if tuple(cand[:k]) == tuple(vars):
        return cand
    name, i = "r", 0
    while name in vars:
        i += 1
        name = f"r{i}"
    return tuple(vars) + (name,)


def spampinato_lift(f: RationalMap, N: Optional[Polynomial] = None) -> RationalMap:
    """[x : r] -> [r f(x) : N(x)].

    f must satisfy f(f(x)) = N(x)^(d-2) x with d = deg N = deg f + 1; the lift
    then satisfies g(g(x, r)) = (r N(x))^(d-1) (x, r). For quadratic f, N defaults
    to the scaling of f∘f.
    """
    res = check_involution(f)
    if not res.ok:
        raise DomainError(f"f is not an involution: {res.detail}")
    if N is None:
        if f.degree != 2:
            raise DomainError("pass the norm explicitly for maps of degree > 2")
        N = res.scaling
    if N.vars != f.vars:
        raise StructuralError("N must live on the variables of f")
    d = N.degree()
    if d != f.degree + 1:
        raise DomainError(f"deg N = {d} but f has degree {f.degree}; expected deg N = deg f + 1")
    if res.scaling != N ** (d - 2):
        raise DomainError(f"f∘f = ({res.scaling})·id, which is not N^{d - 2}")
    vars = _lift_vars(f.vars)
    r = Polynomial.variable(vars, len(vars) - 1)
    g = RationalMap([c.with_vars(vars) * r for c in f.components] + [N.with_vars(vars)])
    check = check_involution(g)
    want = (r * N.with_vars(vars)) ** (d - 1)
    if not check.ok or check.scaling != want:
        raise InternalError(f"lift fails g∘g = (rN)^{d - 1}·id: {check.detail}")
    log.debug(f"[constructions] spampinato lift to P^{g.n}, degree {g.degree}")
    return g


# ------------ gluing along a semi-simple part ------------
@dataclass(frozen=True)
class GluingBlock:
    """One radical block R_i of dimension ``dim``.

    kind "adjoint": ``components`` give F_i(x, m) directly, as polynomials in
    the variables of F_ss followed by m1..m_dim.
    kind "module": ``action[i][j]`` is x_i·m_j in R_i and ``square[j][k]`` the
    product m_j m_k in R_i; the block map is 2x·m + m^2 - T(x)m.
    """

    kind: str
    dim: int
    components: Tuple[Polynomial, ...] = ()
    action: Tuple = ()
    square: Tuple = ()

    def local_vars(self, base: Sequence[str]) -> Tuple[str, ...]:
        names = tuple(f"m{j + 1}" for j in range(self.dim))
        if set(names) & set(base):
            raise StructuralError(f"block variable names {names} clash with {tuple(base)}")
        return tuple(base) + names

    def block_map(self, base: Sequence[str], T: Optional[Polynomial]) -> List[Polynomial]:
        vars = self.local_vars(base)
        if self.kind == "adjoint":
            if len(self.components) != self.dim:
                raise StructuralError(f"adjoint block of dim {self.dim} has {len(self.components)} components")
            return [c.with_vars(vars) for c in self.components]
        if self.kind != "module":
            raise StructuralError(f"unknown block kind {self.kind!r}")
        if T is None:
            raise DomainError("module blocks need the unit of the semi-simple part")
        n, k = len(base), self.dim
        gens = Polynomial.generators(vars)
        xs, ms = gens[:n], gens[n:]
        Tx = T.with_vars(vars)
        out = [Polynomial.zero(vars) for _ in range(k)]
        for i in range(n):
            for j in range(k):
                for l, a in enumerate(self.action[i][j]):
                    if a:
                        out[l] = out[l] + (xs[i] * ms[j]).scale(2 * a)
        for j in range(len(self.square)):
            for jj in range(len(self.square[j])):
                for l, a in enumerate(self.square[j][jj]):
                    if a:
                        out[l] = out[l] + (ms[j] * ms[jj]).scale(a)
        return [o - Tx * m for o, m in zip(out, ms)]


@dataclass(frozen=True)
class GluingSpec:
    semisimple: RationalMap
    blocks: Tuple[GluingBlock, ...] = ()
    twists: Tuple[Optional[linalg.Matrix], ...] = ()
    unit: Optional[Tuple[Fraction, ...]] = None

    @classmethod
    def from_json(cls, data, field: str = "spec") -> "GluingSpec":
        if not isinstance(data, dict) or "Fss" not in data:
            raise InputError("expected an object with 'Fss'", field=field)
        Fss = RationalMap.from_json(data["Fss"], field=f"{field}.Fss")
        for key in ("blocks", "twists"):
            if not isinstance(data.get(key, []), list):
                raise InputError(f"'{key}' must be a list", field=f"{field}.{key}")
        blocks = []
        for b, raw in enumerate(data.get("blocks", [])):
            where = f"{field}.blocks[{b}]"
            try:
                kind, dim = raw["kind"], int(raw["dim"])
            except (KeyError, TypeError, ValueError):
                raise InputError("block needs 'kind' and 'dim'", field=where)
            if kind == "adjoint":
                vars = tuple(Fss.vars) + tuple(f"m{j + 1}" for j in range(dim))
                comps = raw.get("components", [])
                if len(comps) != dim:
                    raise InputError(f"expected {dim} components", field=f"{where}.components")
                polys = tuple(parse_polynomial(c, vars) if isinstance(c, str)
                              else Polynomial.from_json(c, field=f"{where}.components") for c in comps)
                blocks.append(GluingBlock(kind, dim, components=polys))
            elif kind == "module":
                try:
                    action = _fraction_array(raw["action"])
                    square = _fraction_array(raw.get("square", []))
                except (KeyError, TypeError, ValueError):
                    raise InputError("module block needs a numeric 'action' array", field=f"{where}.action")
                blocks.append(GluingBlock(kind, dim, action=action, square=square))
            else:
                raise InputError(f"unknown block kind {kind!r}", field=f"{where}.kind")
        twists = []
        for k, m in enumerate(data.get("twists", [])):
            try:
                twists.append(None if m is None else linalg.to_matrix([[as_fraction(a) for a in row] for row in m]))
            except (TypeError, ValueError):
                raise InputError("twist must be a numeric matrix", field=f"{field}.twists[{k}]")
        unit = data.get("unit")
        if unit is not None:
            try:
                unit = tuple(as_fraction(a) for a in unit)
            except (TypeError, ValueError):
                raise InputError("unit must be a numeric vector", field=f"{field}.unit")
        return cls(Fss, tuple(blocks), tuple(twists), unit)


def _fraction_array(raw):
    if isinstance(raw, list):
        return tuple(_fraction_array(r) for r in raw)
    return as_fraction(raw)


def _check_twist(phi: linalg.Matrix, Fss: RationalMap, N: Polynomial, k: int):
    n = len(Fss.vars)
    if len(phi) != n or any(len(row) != n for row in phi):
        raise StructuralError(f"twist {k} must be {n}x{n}")
    if not linalg.det(phi):
        raise DomainError(f"twist {k} is singular")
    L = linear_map(phi, Fss.vars)
    if compose(L, Fss) != compose(Fss, L):
        raise DomainError(f"twist {k} does not commute with the semi-simple map")
    if N.substitute(L.components) != N:
        raise DomainError(f"twist {k} does not preserve the norm {N}")


def glue(spec: GluingSpec) -> RationalMap:
    """(F_ss(x), F_1(x, m_1), F_2(phi_2 x, m_2), ...) on P(V + R_1 + ... + R_m)."""
    Fss = spec.semisimple
    res = check_involution(Fss)
    if not res.ok or Fss.degree != 2:
        raise DomainError(f"the semi-simple map must be a quadratic involution: {res.detail}")
    N = res.scaling
    n = len(Fss.vars)
    twists = list(spec.twists) or [None] * len(spec.blocks)
    if len(twists) != len(spec.blocks):
        raise StructuralError(f"{len(twists)} twists for {len(spec.blocks)} blocks")
    for k, phi in enumerate(twists):
        if phi is not None:
            _check_twist(phi, Fss, N, k)
    T = None
    if spec.unit is not None:
        T, _ = norm_expansion(N, list(spec.unit))

    total = n + sum(b.dim for b in spec.blocks)
    vars = default_vars(total)
    gens = Polynomial.generators(vars)
    xs = gens[:n]
    comps = [c.substitute(xs) for c in Fss.components]
    offset = n
    for block, phi in zip(spec.blocks, twists):
        px = xs if phi is None else [p.substitute(xs) for p in linear_map(phi, vars[:n]).components]
        images = list(px) + gens[offset:offset + block.dim]
        comps += [c.substitute(images) for c in block.block_map(Fss.vars, T)]
        offset += block.dim
    G = RationalMap(comps)
    check = check_involution(G)
    if not check.ok or check.scaling != N.substitute(xs):
        raise DomainError(f"glued map is not an involution with scaling N; check the module data ({check.detail})")
    log.debug(f"[constructions] glued {len(spec.blocks)} blocks onto P^{n - 1}")
    return G


# ------------ Zorn matrices ------------
class ZornAlgebra:
    """2x2 matrices [[a, x], [y, b]] with a, b scalars and x, y in a rank-3 J.

    Elements are tuples (a, x, y, b) with polynomial entries.
    """

    def __init__(self, J: Algebra):
        prof = rank_profile(J)
        if prof.rank != 3:
            raise DomainError(f"Zorn matrices need a rank-3 algebra, {J.name or 'J'} has rank {prof.rank}")
        self.J = J
        self.profile = prof
        self.dim = 2 + 2 * J.dim

    def pairing(self, x, y) -> Polynomial:
        """T(x, y) = T(x)T(y) - (S(x+y) - S(x) - S(y))."""
        T, S = self.profile.trace, self.profile.quad
        s = [a + b for a, b in zip(x, y)]
        return T.substitute(x) * T.substitute(y) - (S.substitute(s) - S.substitute(x) - S.substitute(y))

    def cross(self, x, y) -> list:
        return quadratic_sharp(self.J, x, y)

    def mul(self, M, P):
        a, x, y, b = M
        a2, x2, y2, b2 = P
        return (
            a * a2 + self.pairing(x, y2),
            [a * u + b2 * v + w for u, v, w in zip(x2, x, self.cross(y, y2))],
            [a2 * u + b * v + w for u, v, w in zip(y, y2, self.cross(x, x2))],
            b * b2 + self.pairing(x2, y),
        )

    @staticmethod
    def bar(M):
        a, x, y, b = M
        return (b, x, y, a)

    @staticmethod
    def add(*Ms):
        a = sum((M[0] for M in Ms[1:]), Ms[0][0])
        b = sum((M[3] for M in Ms[1:]), Ms[0][3])
        x = [sum(parts[1:], parts[0]) for parts in zip(*(M[1] for M in Ms))]
        y = [sum(parts[1:], parts[0]) for parts in zip(*(M[2] for M in Ms))]
        return (a, x, y, b)

    @staticmethod
    def neg(M):
        a, x, y, b = M
        return (-a, [-u for u in x], [-u for u in y], -b)

    def sigma(self, vars):
        one = Polynomial.constant(vars, 1)
        zero = [Polynomial.zero(vars)] * self.J.dim
        return (one, zero, zero, -one)

    def triple(self, M, N, P):
        """[M, N, P] = (M N̄) P + (P N̄) M - (P M̄) N."""
        Nb = self.bar(N)
        return self.add(
            self.mul(self.mul(M, Nb), P),
            self.mul(self.mul(P, Nb), M),
            self.neg(self.mul(self.mul(P, self.bar(M)), N)),
        )

    def generic(self, vars):
        n = self.J.dim
        g = Polynomial.generators(vars)
        return (g[0], g[1:1 + n], g[1 + n:1 + 2 * n], g[1 + 2 * n])


def zorn_cubic_map(J: Algebra) -> RationalMap:
    """M -> sigma [M, sigma M, M] on P(Z_2(J)), coordinates (a, x, y, b)."""
    Z = ZornAlgebra(J)
    vars = default_vars(Z.dim)
    M = Z.generic(vars)
    s = Z.sigma(vars)
    a, x, y, b = Z.mul(s, Z.triple(M, Z.mul(s, M), M))
    # every component carries a factor 3
    comps = [p.scale(Fraction(1, 3)) for p in [a, *x, *y, b]]
    return RationalMap(comps)


@dataclass(frozen=True)
class ZornCheck:
    map: RationalMap
    mode: str
    ok: bool
    scaling_degree: Optional[int] = None
    points: int = 0
    pairings_agree: bool = True
    detail: str = ""

    def to_json(self) -> dict:
        out = {
            "mode": self.mode,
            "ok": self.ok,
            "pairings_agree": self.pairings_agree,
            "map": self.map.to_json(),
        }
        if self.scaling_degree is not None:
            out["scaling_degree"] = self.scaling_degree
        if self.mode == "sampled":
            out["points"] = self.points
        if self.detail:
            out["detail"] = self.detail
        return out


def _proportional(w: Sequence[Fraction], p: Sequence[Fraction]) -> Optional[Fraction]:
    i = next(k for k, a in enumerate(p) if a)
    c = w[i] / p[i]
    return c if all(wk == c * pk for wk, pk in zip(w, p)) else None


def verify_zorn(
    J: Algebra,
    mode: str = "auto",
    seed: int = 0,
    points: int = 20,
    symbolic_max_dim: int = 3,
    bound: int = 20,
) -> ZornCheck:
    """Build the Zorn cubic map of J and check that it is an involution.

    "symbolic" composes the map with itself; "sampled" checks g(g(p)) = c·p,
    c != 0, at seeded random rational points. "auto" picks symbolic when
    dim J <= symbolic_max_dim.
    """
    if mode == "auto":
        mode = "symbolic" if J.dim <= symbolic_max_dim else "sampled"
    if mode not in ("symbolic", "sampled"):
        raise InputError(f"unknown mode {mode!r}", field="mode")
    g = zorn_cubic_map(J)
    agree = trace_form(J) == polarized_trace_form(J)
    if mode == "symbolic":
        res = check_involution(g)
        ok = res.ok and res.scaling.degree() == 8
        deg = res.scaling.degree() if res.scaling is not None else None
        log.info(f"[constructions] zorn {J.name} symbolic ok={ok}")
        return ZornCheck(g, mode, ok, deg, 0, agree, res.detail)
    rng = SplitMix64(seed)
    checked = 0
    attempts = 0
    while checked < points:
        attempts += 1
        if attempts > 4 * points:
            return ZornCheck(g, mode, False, None, checked, agree, "too many degenerate sample points")
        p = [rng.coefficient(bound) for _ in range(g.n + 1)]
        if not any(p):
            continue
        w = g(g(p))
        if not any(w):
            continue
        c = _proportional(w, p)
        if c is None:
            return ZornCheck(g, mode, False, None, checked, agree, f"g(g(p)) is not proportional to p at {p}")
        checked += 1
    log.info(f"[constructions] zorn {J.name} sampled ok at {checked} points")
    return ZornCheck(g, mode, True, None, checked, agree)
