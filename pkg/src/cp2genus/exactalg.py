"""Exact rational numbers and sparse multivariate polynomials.

Rationals are :class:`fractions.Fraction`.  A :class:`Poly` lives over a fixed
:class:`VarSet`; its terms map exponent tuples to nonzero Fractions.  Mixing
polynomials over different generator lists is an error, use
:meth:`Poly.over` to move a polynomial into another VarSet explicitly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import (
    DivisibilityError,
    ParseError,
    UnboundGeneratorError,
    VarSetMismatchError,
)

Rational = Fraction
Scalar = Union[int, Fraction]
Monomial = tuple


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``p/q`` string to a Fraction.

    Decimal strings and floats are rejected so that nothing inexact leaks in.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
            raise ParseError(f"not an integer or p/q rational: {value!r}")
        num, _, den = text.partition("/")
        if den and int(den) == 0:
            raise ParseError(f"zero denominator: {value!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class VarSet:
    """Ordered list of distinct generator names."""

    names: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", n):
                raise ValueError(f"invalid generator name {n!r}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnboundGeneratorError(f"{name!r} is not a generator of {self.names}") from None

    def gen(self, name: str) -> "Poly":
        return Poly.gen(self, name)

    def gens(self) -> tuple:
        return tuple(Poly.gen(self, n) for n in self.names)

    def zero(self) -> "Poly":
        return Poly(self)

    def one(self) -> "Poly":
        return Poly.const(self, 1)


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


class Poly:
    """Sparse polynomial with Fraction coefficients over a VarSet.

    Instances are treated as immutable.  Arithmetic accepts ints and
    Fractions on either side.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: VarSet, terms: Mapping[Monomial, Scalar] | None = None):
        self.vars = vars
        clean = {}
        if terms:
            n = len(vars)
            for mono, c in terms.items():
                if len(mono) != n:
                    raise ValueError(f"exponent vector {mono} does not match {vars.names}")
                if c:
                    clean[tuple(mono)] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars: VarSet, terms: dict) -> "Poly":
        # terms already cleaned: tuple keys, nonzero Fraction values
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, vars: VarSet, c: Scalar) -> "Poly":
        c = as_rational(c)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def gen(cls, vars: VarSet, name: str) -> "Poly":
        mono = [0] * len(vars)
        mono[vars.index(name)] = 1
        return cls._raw(vars, {tuple(mono): Fraction(1)})

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        """The constant term; raises ValueError for non-constant polynomials."""
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def coefficient_in(self, name: str, k: int) -> "Poly":
        """Coefficient of ``name**k`` viewed as a polynomial in that generator."""
        i = self.vars.index(name)
        out = {}
        for m, c in self.terms.items():
            if m[i] == k:
                out[m[:i] + (0,) + m[i + 1:]] = c
        return Poly._raw(self.vars, out)

    def monomials(self) -> list:
        """Monomials in descending graded-lex order."""
        return sorted(self.terms, key=_grlex_key, reverse=True)

    def leading_term(self):
        m = max(self.terms, key=_grlex_key)
        return m, self.terms[m]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise VarSetMismatchError(f"{self.vars.names} vs {other.vars.names}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.vars, {m: -c for m, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return Poly._raw(self.vars, {})
            return Poly._raw(self.vars, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple([a + b for a, b in zip(m1, m2)])
                out[m] = get(m, 0) + c1 * c2
        return Poly._raw(self.vars, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero rational scalar only; see :func:`divide_exact`."""
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("polynomial divided by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, Poly) and other.is_constant() and other:
            return self * (1 / other.constant_value())
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars.names, frozenset(self.terms.items())))
        return self._hash

    # -- conversions ----------------------------------------------------

    def over(self, target: VarSet) -> "Poly":
        """Re-express this polynomial over ``target`` (matching generators by name)."""
        if target == self.vars:
            return self
        used = [i for i in range(len(self.vars)) if any(m[i] for m in self.terms)]
        pos = [target.index(self.vars.names[i]) for i in used]
        n = len(target)
        out = {}
        for m, c in self.terms.items():
            new = [0] * n
            for i, j in zip(used, pos):
                new[j] = m[i]
            out[tuple(new)] = c
        return Poly._raw(target, out)

    def map_coefficients(self, fn) -> "Poly":
        return Poly(self.vars, {m: fn(c) for m, c in self.terms.items()})

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, vars={self.vars.names})"


# -- module-level operations -----------------------------------------------


def substitute(p: Poly, bindings: Mapping[str, Poly | Scalar], target: VarSet | None = None) -> Poly:
    """Compose ``p`` with ``bindings``.

    Unbound generators of ``p`` are carried through to ``target`` by name.  The
    target VarSet defaults to the common VarSet of the Poly bindings.
    """
    if target is None:
        vs = {b.vars for b in bindings.values() if isinstance(b, Poly)}
        if len(vs) > 1:
            raise VarSetMismatchError("bindings live over different VarSets")
        target = vs.pop() if vs else p.vars
    images = []
    for name in p.vars.names:
        if name in bindings:
            b = bindings[name]
            if isinstance(b, Poly):
                if b.vars != target:
                    raise VarSetMismatchError(f"binding for {name} is over {b.vars.names}")
                images.append(b)
            else:
                images.append(Poly.const(target, as_rational(b)))
        elif any(m[p.vars.index(name)] for m in p.terms):
            images.append(Poly.gen(target, name))
        else:
            images.append(None)
    # cache powers per generator
    powers: list = [{0: Poly.const(target, 1)} for _ in images]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            cache[e] = power(i, e - 1) * images[i]
        return cache[e]

    result = Poly(target)
    for m, c in p.terms.items():
        term = Poly.const(target, c)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        result = result + term
    return result


def evaluate(p: Poly, point: Mapping[str, Scalar]) -> Fraction:
    """Exact value of ``p`` at a rational point; every used generator must be bound."""
    vals = []
    for i, name in enumerate(p.vars.names):
        if name in point:
            vals.append(as_rational(point[name]))
        elif any(m[i] for m in p.terms):
            raise UnboundGeneratorError(f"no value given for generator {name!r}")
        else:
            vals.append(Fraction(0))
    total = Fraction(0)
    for m, c in p.terms.items():
        t = c
        for v, e in zip(vals, m):
            if e:
                t *= v**e
        total += t
    return total


def specialize(p: Poly, point: Mapping[str, Scalar], target: VarSet) -> Poly:
    """Bind some generators to rationals and carry the rest into ``target``."""
    return substitute(p, {k: as_rational(v) for k, v in point.items() if k in p.vars}, target)


def divide_exact(p: Poly, d: Poly) -> Poly:
    """Return ``q`` with ``q * d == p``; raise DivisibilityError otherwise."""
    p._coerce(d)
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lm_d, lc_d = d.leading_term()
    quotient: dict = {}
    rem = p
    while rem:
        lm_r, lc_r = rem.leading_term()
        shift = tuple(a - b for a, b in zip(lm_r, lm_d))
        if any(e < 0 for e in shift):
            raise DivisibilityError(f"{d} does not divide {p}")
        c = lc_r / lc_d
        quotient[shift] = c
        rem = rem - Poly._raw(p.vars, {shift: c}) * d
    return Poly._raw(p.vars, quotient)


def clear_denominators(p: Poly) -> tuple:
    """Return ``(n, n*p)`` with ``n`` the least positive integer making ``n*p`` integral."""
    n = 1
    for c in p.terms.values():
        n = n * c.denominator // math.gcd(n, c.denominator)
    return n, p * n


# -- text form ----------------------------------------------------------------


def _format_monomial(vars: VarSet, mono: Monomial) -> str:
    parts = []
    for name, e in zip(vars.names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text: descending graded-lex order, explicit ``*``."""
    if not p.terms:
        return "0"
    out = []
    for k, m in enumerate(p.monomials()):
        c = p.terms[m]
        mono = _format_monomial(p.vars, m)
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if k == 0:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        elif op in "+-*^()":
            tokens.append(("op", op))
        else:
            raise ParseError(f"unexpected character {op!r} at {m.start(3)} in {text!r}")
        pos = m.end()
    tokens.append(("end", None))
    return tokens


class _Parser:
    # expr   := ['-'|'+'] term (('+'|'-') term)*
    # term   := factor ('*' factor)*
    # factor := atom ['^' INT]
    # atom   := NUM | NAME | '(' expr ')' | '-' factor

    def __init__(self, text: str, vars: VarSet):
        self.tokens = _tokenize(text)
        self.i = 0
        self.vars = vars
        self.text = text

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r}, got {tok[1]!r} in {self.text!r}")

    def parse(self) -> Poly:
        p = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            base = base ** int(val)
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return Poly.const(self.vars, as_rational(val))
        if kind == "name":
            if val not in self.vars:
                raise ParseError(f"unknown generator {val!r}; expected one of {self.vars.names}")
            return Poly.gen(self.vars, val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        if (kind, val) == ("op", "-"):
            return -self.factor()
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_poly(text: str, vars: VarSet | Iterable[str]) -> Poly:
    """Parse the polynomial grammar used by the CLI and golden files."""
    if not isinstance(vars, VarSet):
        vars = VarSet(vars)
    return _Parser(text, vars).parse()
