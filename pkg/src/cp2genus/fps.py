"""Truncated Laurent series in one and two variables over :class:`Poly`.

A :class:`LaurentSeries` knows its coefficients exactly for exponents up to
``trunc``; everything above is unknown.  Exact (finite) series carry
``trunc = math.inf``.

A :class:`BiSeries` in ``x, y`` records where it is exact as a list of
*unknown* regions.  Every region, like the support, is a set of the shape
``{i >= a, j >= b, i + j >= c}``; such sets are closed under Minkowski sums,
which is what a product does to them, so the bookkeeping stays exact rather
than conservative.  Asking for a coefficient inside an unknown region raises
:class:`TruncationError`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import NotAUnitError, TruncationError, VarSetMismatchError
from .exactalg import Poly, VarSet, format_poly, parse_poly

INF = math.inf


def _check_vars(a: VarSet, b: VarSet) -> None:
    if a != b:
        raise VarSetMismatchError(f"{a.names} vs {b.names}")


class LaurentSeries:
    """``sum c_k x^k`` for ``k <= trunc`` with :class:`Poly` coefficients."""

    __slots__ = ("vars", "coeffs", "trunc")

    def __init__(self, vars: VarSet, coeffs: Mapping[int, Poly] | None = None, trunc=INF):
        if trunc != INF and not isinstance(trunc, int):
            raise TypeError("trunc must be an int or math.inf")
        self.vars = vars
        self.trunc = trunc
        clean = {}
        for k, c in (coeffs or {}).items():
            if k > trunc:
                continue
            if not isinstance(c, Poly):
                c = Poly.const(vars, c)
            else:
                _check_vars(c.vars, vars)
            if c:
                clean[k] = c
        self.coeffs = clean

    @classmethod
    def monomial(cls, vars: VarSet, k: int, c=1, trunc=INF) -> "LaurentSeries":
        return cls(vars, {k: c}, trunc)

    @classmethod
    def from_list(cls, vars: VarSet, coeffs: Iterable, start: int = 0, trunc=None) -> "LaurentSeries":
        coeffs = list(coeffs)
        if trunc is None:
            trunc = start + len(coeffs) - 1
        return cls(vars, {start + i: c for i, c in enumerate(coeffs)}, trunc)

    # -- inspection --------------------------------------------------------

    @property
    def valuation(self):
        """Lowest exponent with a nonzero known coefficient (``trunc + 1`` if none)."""
        if self.coeffs:
            return min(self.coeffs)
        return self.trunc + 1

    def coeff(self, k: int) -> Poly:
        if k > self.trunc:
            raise TruncationError(f"coefficient of x^{k} unknown (series known up to x^{self.trunc})")
        return self.coeffs.get(k, Poly(self.vars))

    __getitem__ = coeff

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def truncate(self, n) -> "LaurentSeries":
        if n > self.trunc:
            raise TruncationError(f"cannot raise truncation from {self.trunc} to {n}")
        return LaurentSeries(self.vars, self.coeffs, n)

    def map_coefficients(self, fn, vars: VarSet | None = None) -> "LaurentSeries":
        vars = self.vars if vars is None else vars
        return LaurentSeries(vars, {k: fn(c) for k, c in self.coeffs.items()}, self.trunc)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.vars == other.vars and self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc, frozenset(self.coeffs.items())))

    # -- arithmetic ------------------------------------------------------

    def _lift(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            _check_vars(self.vars, other.vars)
            return other
        if isinstance(other, Poly):
            _check_vars(self.vars, other.vars)
            return LaurentSeries(self.vars, {0: other})
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentSeries(self.vars, {0: Poly.const(self.vars, other)})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = min(self.trunc, other.trunc)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return LaurentSeries(self.vars, out, n)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.vars, {k: -c for k, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentSeries(self.vars, {k: c * other for k, c in self.coeffs.items()}, self.trunc)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = min(self.trunc + other.valuation, other.trunc + self.valuation)
        if n == -INF:
            raise TruncationError("product has no exact coefficients")
        out: dict = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = i + j
                if k > n:
                    continue
                out[k] = out[k] + a * b if k in out else a * b
        return LaurentSeries(self.vars, out, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * (1 / Fraction(other))
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = LaurentSeries(self.vars, {0: Poly.const(self.vars, 1)})
        for _ in range(n):
            result = result * self
        return result

    def shift(self, m: int) -> "LaurentSeries":
        """Multiply by ``x^m``."""
        return LaurentSeries(self.vars, {k + m: c for k, c in self.coeffs.items()}, self.trunc + m)

    def reciprocal(self) -> "LaurentSeries":
        """``1/s`` for a series whose leading coefficient is a nonzero rational."""
        if self.is_zero():
            raise NotAUnitError("series is zero up to its truncation order")
        v = self.valuation
        lead = self.coeffs[v]
        if not lead.is_constant():
            raise NotAUnitError(f"leading coefficient {lead} is not a rational unit")
        if self.trunc == INF and len(self.coeffs) == 1:
            inv = 1 / lead.constant_value()
            return LaurentSeries(self.vars, {-v: Poly.const(self.vars, inv)})
        if self.trunc == INF:
            raise TruncationError("reciprocal of an exact non-monomial needs a truncation order")
        inv = 1 / lead.constant_value()
        m = self.trunc - v
        c = [self.coeff(v + k) for k in range(m + 1)]
        b = [Poly.const(self.vars, inv)]
        for n in range(1, m + 1):
            acc = Poly(self.vars)
            for k in range(1, n + 1):
                if c[k]:
                    acc = acc + c[k] * b[n - k]
            b.append(acc * (-inv))
        return LaurentSeries(self.vars, {k - v: bk for k, bk in enumerate(b)}, m - v)

    def derivative(self, n: int = 1) -> "LaurentSeries":
        if n < 0:
            raise ValueError("derivative order must be non-negative")
        out = self
        for _ in range(n):
            out = LaurentSeries(
                out.vars, {k - 1: c * k for k, c in out.coeffs.items() if k}, out.trunc - 1
            )
        return out

    def negate_arg(self) -> "LaurentSeries":
        """``s(-x)``."""
        return LaurentSeries(
            self.vars, {k: (-c if k % 2 else c) for k, c in self.coeffs.items()}, self.trunc
        )

    # -- text / json ---------------------------------------------------------

    def __str__(self) -> str:
        return format_series(self)

    def __repr__(self) -> str:
        return f"LaurentSeries({format_series(self)!r})"

    def to_json(self) -> dict:
        return {
            "valuation": self.valuation if self.coeffs or self.trunc != INF else None,
            "trunc": self.trunc if self.trunc != INF else None,
            "coeffs": {str(k): format_poly(self.coeffs[k]) for k in sorted(self.coeffs)},
        }

    @classmethod
    def from_json(cls, data: Mapping, vars: VarSet) -> "LaurentSeries":
        trunc = data["trunc"]
        coeffs = {int(k): parse_poly(v, vars) for k, v in data["coeffs"].items()}
        s = cls(vars, coeffs, INF if trunc is None else trunc)
        if data.get("valuation") is not None and s.coeffs and s.valuation != data["valuation"]:
            raise ValueError("valuation field disagrees with coefficients")
        return s


def format_series(s: LaurentSeries, var: str = "x") -> str:
    parts = []
    for k in sorted(s.coeffs):
        parts.append(f"({format_poly(s.coeffs[k])})*{var}^{k}")
    if s.trunc != INF:
        parts.append(f"O({var}^{s.trunc + 1})")
    return " + ".join(parts) if parts else "0"


def exp_linear(c: Poly, n: int) -> LaurentSeries:
    """``exp(c x)`` through ``x^n`` for a polynomial ``c`` of degree at most one."""
    if n < 0:
        raise ValueError("order must be non-negative")
    if c.total_degree() > 1:
        raise ValueError(f"exp_linear needs a linear form, got {c}")
    coeffs = {}
    term = Poly.const(c.vars, 1)
    for k in range(n + 1):
        coeffs[k] = term
        term = term * c / (k + 1)
    return LaurentSeries(c.vars, coeffs, n)


# -- bivariate ---------------------------------------------------------------


def _tight(region):
    a, b, c = region
    return (a, b, max(c, a + b))


def _msum(r1, r2):
    return tuple(x + y for x, y in zip(r1, r2))


def _meet(r1, r2):
    return _tight(tuple(max(x, y) for x, y in zip(r1, r2)))


def _contains(big, small) -> bool:
    return all(s >= b for s, b in zip(small, big))


def _in_region(region, i, j) -> bool:
    a, b, c = region
    return i >= a and j >= b and i + j >= c


def _prune(regions) -> tuple:
    kept: list = []
    for r in sorted(set(regions)):
        if any(_contains(k, r) for k in kept):
            continue
        kept = [k for k in kept if not _contains(r, k)]
        kept.append(r)
    return tuple(sorted(kept))


class BiSeries:
    """Truncated Laurent series in ``x`` and ``y``.

    ``support`` is a tight lower bound ``(a, b, c)``: every nonzero term of the
    full series has ``i >= a, j >= b, i + j >= c``.  ``unknown`` lists regions
    of the same shape where coefficients are not known; elsewhere stored
    coefficients are exact and missing ones are exactly zero.
    """

    __slots__ = ("vars", "coeffs", "support", "unknown")

    def __init__(self, vars: VarSet, coeffs: Mapping, support=(0, 0, 0), unknown: Iterable = ()):
        self.vars = vars
        self.support = _tight(tuple(support))
        self.unknown = _prune(_meet(r, self.support) for r in unknown)
        clean = {}
        for (i, j), c in coeffs.items():
            if not isinstance(c, Poly):
                c = Poly.const(vars, c)
            if not c:
                continue
            if not _in_region(self.support, i, j):
                raise ValueError(f"coefficient at ({i},{j}) lies outside the declared support")
            if self.is_exact(i, j):
                clean[(i, j)] = c
        self.coeffs = clean

    def is_exact(self, i: int, j: int) -> bool:
        return not any(_in_region(r, i, j) for r in self.unknown)

    def coeff(self, i: int, j: int) -> Poly:
        if not self.is_exact(i, j):
            raise TruncationError(f"coefficient of x^{i} y^{j} lies outside the exactness region")
        return self.coeffs.get((i, j), Poly(self.vars))

    __getitem__ = lambda self, ij: self.coeff(*ij)  # noqa: E731

    def layer(self, j: int) -> LaurentSeries:
        """Coefficient of ``y^j`` as a Laurent series in ``x``."""
        cut = INF
        for a, b, c in self.unknown:
            if j >= b:
                cut = min(cut, max(a, c - j) - 1)
        if cut == -INF:
            raise TruncationError(f"no exact coefficients in the y^{j} layer")
        return LaurentSeries(
            self.vars, {i: c for (i, jj), c in self.coeffs.items() if jj == j}, cut
        )

    def points(self, total: int, jmax: int):
        """Support points with ``i + j <= total`` and ``j <= jmax`` (needs finite lower bounds)."""
        a, b, c = self.support
        if b == -INF or c == -INF:
            raise TruncationError("support is unbounded below; cannot enumerate")
        for j in range(int(b), jmax + 1):
            lo = c - j if a == -INF else max(a, c - j)
            for i in range(int(lo), total - j + 1):
                yield i, j

    # -- arithmetic ------------------------------------------------------

    def _lift(self, other) -> "BiSeries":
        if isinstance(other, BiSeries):
            _check_vars(self.vars, other.vars)
            return other
        if isinstance(other, Poly):
            _check_vars(self.vars, other.vars)
            return BiSeries(self.vars, {(0, 0): other})
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return BiSeries(self.vars, {(0, 0): Poly.const(self.vars, other)})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        support = tuple(min(x, y) for x, y in zip(self.support, other.support))
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return BiSeries(self.vars, out, support, self.unknown + other.unknown)

    __radd__ = __add__

    def __neg__(self):
        return BiSeries(self.vars, {k: -c for k, c in self.coeffs.items()}, self.support, self.unknown)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return BiSeries(
                self.vars, {k: c * other for k, c in self.coeffs.items()}, self.support, self.unknown
            )
        other = self._lift(other)
        if other is NotImplemented:
            return other
        support = _msum(self.support, other.support)
        unknown = [_tight(_msum(r, other.support)) for r in self.unknown]
        unknown += [_tight(_msum(self.support, r)) for r in other.unknown]
        unknown = _prune(unknown)
        out: dict = {}
        for (i1, j1), a in self.coeffs.items():
            for (i2, j2), b in other.coeffs.items():
                i, j = i1 + i2, j1 + j2
                if any(_in_region(r, i, j) for r in unknown):
                    continue
                key = (i, j)
                out[key] = out[key] + a * b if key in out else a * b
        return BiSeries(self.vars, out, support, unknown)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"BiSeries({len(self.coeffs)} terms, support={self.support}, unknown={self.unknown})"


def bi_embed(s: LaurentSeries, as_: str = "x") -> BiSeries:
    """Embed ``s`` as ``s(x)``, ``s(y)`` or ``s(-y)``."""
    v = s.valuation
    if s.is_zero() and s.trunc == INF:
        return BiSeries(s.vars, {})
    unknown = []
    if as_ == "x":
        coeffs = {(k, 0): c for k, c in s.coeffs.items()}
        support = (v, 0, v)
        if s.trunc != INF:
            unknown.append((s.trunc + 1, 0, s.trunc + 1))
    elif as_ in ("y", "neg_y"):
        src = s.negate_arg() if as_ == "neg_y" else s
        coeffs = {(0, k): c for k, c in src.coeffs.items()}
        support = (0, v, v)
        if s.trunc != INF:
            unknown.append((0, s.trunc + 1, s.trunc + 1))
    else:
        raise ValueError(f"embedding must be 'x', 'y' or 'neg_y', got {as_!r}")
    return BiSeries(s.vars, coeffs, support, unknown)


def shift_expand(s: LaurentSeries, jmax: int) -> BiSeries:
    """``s(x + y) = sum_j s^(j)(x) y^j / j!`` for ``j <= jmax``.

    The ``(i, j)`` coefficient is exact for ``j <= jmax`` and ``i + j <= trunc``.
    """
    if jmax < 0:
        raise ValueError("jmax must be non-negative")
    coeffs = {}
    for n, c in s.coeffs.items():
        # coefficient of x^(n-j) y^j in (x+y)^n is the generalized binomial C(n, j)
        binom = Fraction(1)
        for j in range(jmax + 1):
            if binom:
                coeffs[(n - j, j)] = c * binom
            binom = binom * (n - j) / (j + 1)
    v = s.valuation
    support = (0 if v >= 0 else -INF, 0, v)
    unknown = [(-INF, jmax + 1, -INF)]
    if s.trunc != INF:
        unknown.append((-INF, 0, s.trunc + 1))
    return BiSeries(s.vars, coeffs, support, unknown)


def bi_coeff(u: BiSeries, i: int, j: int) -> Poly:
    return u.coeff(i, j)
