"""Exact rationals and sparse multivariate polynomials.

A Polynomial is a map from exponent tuples to nonzero Fractions over an
explicit, positional variable list. Values are treated as immutable: every
operation returns a new object and shared instances are never mutated.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import DomainError, InputError, StructuralError

Exp = Tuple[int, ...]
Scalar = Union[int, Fraction]

PROJECTIVE_NAMES = ("x", "y", "z", "t", "u", "v")


def default_vars(k: int) -> Tuple[str, ...]:
    """x, y, z, t, u, v up to six coordinates, x0..x{k-1} beyond."""
    if k <= len(PROJECTIVE_NAMES):
        return PROJECTIVE_NAMES[:k]
    return tuple(f"x{i}" for i in range(k))


# ------------ monomial orders ------------
def _degrevlex_key(e: Exp) -> tuple:
    return (sum(e), tuple(-a for a in reversed(e)))


@dataclass(frozen=True)
class MonomialOrder:
    """kind is 'degrevlex', 'lex' or 'elim'; block is the size of the eliminated block."""

    kind: str = "degrevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "elim"):
            raise StructuralError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise StructuralError("elimination order needs block >= 1")

    def key(self, e: Exp) -> tuple:
        """Sort key: a larger key is a larger monomial."""
        if self.kind == "degrevlex":
            return _degrevlex_key(e)
        if self.kind == "lex":
            return e
        k = self.block
        return (_degrevlex_key(e[:k]), _degrevlex_key(e[k:]))

    def __str__(self):
        return f"elim({self.block})" if self.kind == "elim" else self.kind


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def elimination(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


# ------------ scalars ------------
def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, bool):
        raise StructuralError("booleans are not scalars")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        try:
            return Fraction(c)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational number: {c!r}")
    raise StructuralError(f"not an exact scalar: {type(c).__name__}")


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


class Polynomial:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Optional[Dict[Exp, Scalar]] = None):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean: Dict[Exp, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise StructuralError(f"exponent {e} does not match {n} variables")
            c = as_fraction(c)
            if c:
                clean[e] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars: Tuple[str, ...], terms: Dict[Exp, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    # ------------ constructors ------------
    @classmethod
    def zero(cls, vars) -> "Polynomial":
        return cls._raw(tuple(vars), {})

    @classmethod
    def constant(cls, vars, c: Scalar) -> "Polynomial":
        vars = tuple(vars)
        c = as_fraction(c)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def variable(cls, vars, which: Union[int, str]) -> "Polynomial":
        vars = tuple(vars)
        i = vars.index(which) if isinstance(which, str) else which
        if not 0 <= i < len(vars):
            raise StructuralError(f"variable index {which} out of range")
        e = [0] * len(vars)
        e[i] = 1
        return cls._raw(vars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, vars, exp: Exp, c: Scalar = 1) -> "Polynomial":
        return cls(vars, {tuple(exp): c})

    @classmethod
    def generators(cls, vars) -> List["Polynomial"]:
        return [cls.variable(vars, i) for i in range(len(vars))]

    # ------------ basic queries ------------
    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exp: Exp) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def support(self) -> List[Exp]:
        return list(self.terms)

    # ------------ arithmetic ------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise StructuralError(f"variable lists differ: {self.vars} vs {other.vars}")
            return other
        return Polynomial.constant(self.vars, as_fraction(other))

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def scale(self, c: Scalar) -> "Polynomial":
        c = as_fraction(c)
        if not c:
            return Polynomial.zero(self.vars)
        return Polynomial._raw(self.vars, {e: a * c for e, a in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        out: Dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.vars, out)

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def __truediv__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return self.exact_divide(other)
        c = as_fraction(other)
        if not c:
            raise DomainError("division by zero")
        return self.scale(1 / c)

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise DomainError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_term(self, exp: Exp, c: Fraction) -> "Polynomial":
        """self * c * x^exp without building the monomial."""
        return Polynomial._raw(
            self.vars,
            {tuple(a + b for a, b in zip(e, exp)): a_c * c for e, a_c in self.terms.items()},
        )

    # ------------ comparisons ------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.terms == Polynomial.constant(self.vars, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # ------------ evaluation and substitution ------------
    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise StructuralError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [as_fraction(a) for a in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            m = c
            for a, k in zip(pt, e):
                if k:
                    m *= a ** k
            total += m
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace variable i by images[i]; the result lives over the images' variables."""
        if len(images) != self.nvars:
            raise StructuralError(f"{len(images)} images for {self.nvars} variables")
        if not images:
            return self
        target = images[0].vars
        for q in images:
            if q.vars != target:
                raise StructuralError("substitution images must share one variable list")
        powers: List[Dict[int, Polynomial]] = [{0: Polynomial.constant(target, 1), 1: q} for q in images]

        def power(i: int, k: int) -> Polynomial:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        out = Polynomial.zero(target)
        for e, c in self.terms.items():
            m = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    m = m * power(i, k)
            out = out + m
        return out

    def diff(self, i: int) -> "Polynomial":
        out: Dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Polynomial._raw(self.vars, out)

    def with_vars(self, new_vars: Sequence[str]) -> "Polynomial":
        """Re-embed into a variable list containing every current variable (by name)."""
        new_vars = tuple(new_vars)
        try:
            pos = [new_vars.index(v) for v in self.vars]
        except ValueError:
            raise StructuralError(f"{self.vars} is not contained in {new_vars}")
        out = {}
        for e, c in self.terms.items():
            f = [0] * len(new_vars)
            for p, k in zip(pos, e):
                f[p] = k
            out[tuple(f)] = c
        return Polynomial._raw(new_vars, out)

    def rename(self, new_vars: Sequence[str]) -> "Polynomial":
        new_vars = tuple(new_vars)
        if len(new_vars) != self.nvars:
            raise StructuralError("rename needs the same number of variables")
        return Polynomial._raw(new_vars, dict(self.terms))

    # ------------ content ------------
    def content(self) -> Fraction:
        """Positive c with self/c having coprime integer coefficients."""
        if not self.terms:
            raise DomainError("content of the zero polynomial")
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Polynomial":
        return self.scale(1 / self.content())

    # ------------ ordered views ------------
    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> Exp:
        if not self.terms:
            raise DomainError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = DEGREVLEX) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "Polynomial":
        return self.scale(1 / self.leading_coefficient(order))

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX) -> List[Tuple[Exp, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: order.key(kv[0]), reverse=True)

    def exact_divide(self, q: "Polynomial") -> "Polynomial":
        """self / q, which must be exact."""
        q = self._coerce(q)
        if q.is_zero():
            raise DomainError("division by the zero polynomial")
        order = DEGREVLEX
        lm_q = q.leading_monomial(order)
        lc_q = q.terms[lm_q]
        rest = dict(self.terms)
        quot: Dict[Exp, Fraction] = {}
        while rest:
            m = max(rest, key=order.key)
            if not _divides(lm_q, m):
                raise DomainError(f"{q} does not divide {self}")
            e = tuple(a - b for a, b in zip(m, lm_q))
            c = rest[m] / lc_q
            quot[e] = c
            for eq, cq in q.terms.items():
                f = tuple(a + b for a, b in zip(eq, e))
                s = rest.get(f, 0) - c * cq
                if s:
                    rest[f] = s
                else:
                    rest.pop(f, None)
        return Polynomial._raw(self.vars, quot)

    # ------------ text ------------
    def render(self, order: MonomialOrder = DEGREVLEX) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            a = abs(c)
            sign = "-" if c < 0 else "+"
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    __str__ = render

    def __repr__(self) -> str:
        return f"Polynomial({self.render()!r}, vars={list(self.vars)})"

    # ------------ JSON ------------
    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [
                {"num": str(c.numerator), "den": str(c.denominator), "exp": list(e)}
                for e, c in self.sorted_terms(DEGREVLEX)
            ],
        }

    @classmethod
    def from_json(cls, data, field: str = "polynomial") -> "Polynomial":
        if isinstance(data, str):
            raise InputError("expected a polynomial object, got a string", field=field)
        try:
            vars = data["vars"]
            terms = data["terms"]
        except (KeyError, TypeError):
            raise InputError("missing 'vars' or 'terms'", field=field)
        if not isinstance(vars, list) or not all(isinstance(v, str) for v in vars):
            raise InputError("'vars' must be a list of names", field=f"{field}.vars")
        if not isinstance(terms, list):
            raise InputError("'terms' must be a list of term objects", field=f"{field}.terms")
        out: Dict[Exp, Fraction] = {}
        for k, t in enumerate(terms):
            where = f"{field}.terms[{k}]"
            if not isinstance(t, dict):
                raise InputError("term must be an object", field=where)
            try:
                num = int(t["num"])
                den = int(t.get("den", "1"))
                exp = tuple(int(a) for a in t["exp"])
            except (KeyError, TypeError, ValueError):
                raise InputError("term needs integer 'num', 'den' and 'exp'", field=where)
            if den <= 0:
                raise InputError("denominator must be positive", field=f"{where}.den")
            if len(exp) != len(vars) or any(a < 0 for a in exp):
                raise InputError("exponent length or sign is wrong", field=f"{where}.exp")
            out[exp] = out.get(exp, Fraction(0)) + Fraction(num, den)
        return cls(vars, out)


# ------------ parsing ------------
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> List[str]:
    text = text.replace("−", "-").replace("·", "*")
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
        out.append(m.group(1) or m.group(2) or ("^" if m.group(3) == "**" else m.group(3)))
        pos = m.end()
    return out


def parse_polynomial(text: str, vars: Sequence[str]) -> Polynomial:
    """Read 'y^2+z^2-x*t', '1/2*x*y', '(x+y)^3' over the given variables."""
    vars = tuple(vars)
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise InputError(f"expected {expected or 'a token'} at position {pos} in {text!r}")
        pos += 1
        return tok

    def expr() -> Polynomial:
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        acc = term().scale(sign)
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term() -> Polynomial:
        acc = factor()
        while peek() in ("*", "/"):
            op = take()
            rhs = factor()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise InputError(f"can only divide by a nonzero number in {text!r}")
                acc = acc.scale(1 / rhs.constant_term())
        return acc

    def factor() -> Polynomial:
        base = atom()
        if peek() == "^":
            take()
            k = take()
            if not k.isdigit():
                raise InputError(f"exponent must be a non-negative integer in {text!r}")
            return base ** int(k)
        return base

    def atom() -> Polynomial:
        tok = take()
        if tok.isdigit():
            return Polynomial.constant(vars, int(tok))
        if tok == "(":
            inner = expr()
            take(")")
            return inner
        if tok == "-":
            return -atom()
        if tok in vars:
            return Polynomial.variable(vars, tok)
        raise InputError(f"unknown symbol {tok!r} (variables are {list(vars)})")

    if not toks:
        raise InputError("empty polynomial text")
    result = expr()
    if pos != len(toks):
        raise InputError(f"trailing input {' '.join(toks[pos:])!r} in {text!r}")
    return result


def parse_vector(texts: Iterable[str], vars: Sequence[str]) -> List[Polynomial]:
    return [parse_polynomial(t, vars) for t in texts]
