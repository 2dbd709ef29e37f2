"""Hirzebruch genera solving the three-term functional equation.

Conventions: a genus is given by ``f(x) = x + sum_k f_k x^(k+1)/(k+1)!`` and
``q = 1/f``.  With ``x = t1 - t2`` and ``y = t2 - t3`` the multiplicativity
condition reads

    q(x) q(x+y) + q(-x) q(y) + q(-x-y) q(-y) = C,

and this module builds the two known solution families, checks them against
the equation as truncated series, and re-derives the coefficient relations
that rule out anything else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import SolverError, TruncationError
from .exactalg import (
    Poly,
    VarSet,
    as_rational,
    clear_denominators,
    divide_exact,
    evaluate,
    specialize,
    substitute,
)
from .fps import BiSeries, LaurentSeries, bi_embed, shift_expand

TODD_VARS = VarSet(["alpha", "beta"])
TODD_SYM_VARS = VarSet(["s", "p"])  # s = alpha + beta, p = alpha * beta
ELLIPTIC_VARS = VarSet(["a", "b"])
CONST_VARS = VarSet([])


def generic_vars(n: int) -> VarSet:
    return VarSet([f"f{k}" for k in range(1, n + 1)])


F123 = generic_vars(3)


@dataclass(frozen=True)
class GenusSeries:
    """``f(x) = x + sum f_k x^(k+1)/(k+1)!`` known through ``x^trunc``."""

    f: LaurentSeries

    def __post_init__(self):
        f = self.f
        if f.trunc < 1 or f.valuation != 1 or f.coeff(1) != 1:
            raise ValueError("genus series must start with x")

    @property
    def vars(self) -> VarSet:
        return self.f.vars

    @property
    def order(self):
        return self.f.trunc

    def fk(self, k: int) -> Poly:
        if k == 0:
            return Poly.const(self.vars, 1)
        return self.f.coeff(k + 1) * math.factorial(k + 1)

    def q(self) -> LaurentSeries:
        return self.f.reciprocal()

    def specialize(self, point: Mapping[str, object]) -> "GenusSeries":
        """Bind generators to rationals after symbolic construction."""
        rest = VarSet([n for n in self.vars.names if n not in point])
        return GenusSeries(self.f.map_coefficients(lambda c: specialize(c, point, rest), rest))

    def substitute(self, bindings: Mapping[str, Poly], target: VarSet) -> "GenusSeries":
        return GenusSeries(self.f.map_coefficients(lambda c: substitute(c, bindings, target), target))


def genus_from_coefficients(vars: VarSet, fks, order: int | None = None) -> GenusSeries:
    """Build ``f`` from ``[f_1, f_2, ...]``; order defaults to the last known term."""
    fks = list(fks)
    if order is None:
        order = len(fks) + 1
    coeffs = {1: Poly.const(vars, 1)}
    for k, c in enumerate(fks, start=1):
        if k + 1 > order:
            break
        if not isinstance(c, Poly):
            c = Poly.const(vars, as_rational(c))
        coeffs[k + 1] = c / math.factorial(k + 1)
    if order > len(fks) + 1:
        raise TruncationError(f"only f_1..f_{len(fks)} given, cannot reach order {order}")
    return GenusSeries(LaurentSeries(vars, coeffs, order))


def generic_series(n: int) -> GenusSeries:
    """Genus with free coefficients ``f_1 .. f_n``, known through ``x^(n+1)``."""
    vs = generic_vars(n)
    return genus_from_coefficients(vs, vs.gens())


def trivial_series(vars: VarSet = CONST_VARS, order: int = 16) -> GenusSeries:
    """``f(x) = x``."""
    return GenusSeries(LaurentSeries(vars, {1: 1}, order))


# -- Todd family -------------------------------------------------------------


def complete_homogeneous(k: int, vars: VarSet = TODD_VARS) -> Poly:
    """``h_k`` in the first two generators of ``vars``."""
    n = len(vars)
    return Poly(vars, {(i, k - i) + (0,) * (n - 2): 1 for i in range(k + 1)})


def _h_sequence(n: int, symmetric: bool) -> list:
    if not symmetric:
        return [complete_homogeneous(k) for k in range(n + 1)]
    s, p = TODD_SYM_VARS.gens()
    h = [Poly.const(TODD_SYM_VARS, 1), s]
    while len(h) <= n:
        h.append(s * h[-1] - p * h[-2])
    return h[: n + 1]


@lru_cache(maxsize=None)
def todd_f(n: int, symmetric: bool = False) -> GenusSeries:
    """``(e^{ax} - e^{bx}) / (a e^{ax} - b e^{bx})`` through ``x^n``.

    The common factor ``alpha - beta`` is cancelled first: numerator and
    denominator become ``sum h_{k-1} x^k/k!`` and ``sum h_k x^k/k!``.  With
    ``symmetric=True`` the result is over ``s = alpha + beta, p = alpha*beta``.
    """
    if n < 3:
        raise ValueError("todd_f needs order >= 3")
    h = _h_sequence(n, symmetric)
    vars = h[0].vars
    num = LaurentSeries(vars, {k: h[k - 1] / math.factorial(k) for k in range(1, n + 1)}, n)
    den = LaurentSeries(vars, {k: h[k] / math.factorial(k) for k in range(n)}, n - 1)
    return GenusSeries((num * den.reciprocal()).truncate(n))


def todd_constant(vars: VarSet = TODD_VARS) -> Poly:
    """``alpha^2 + alpha*beta + beta^2`` (or ``s^2 - p`` over the symmetric pair)."""
    if vars == TODD_SYM_VARS:
        s, p = vars.gens()
        return s * s - p
    return complete_homogeneous(2, vars)


# -- elliptic family ---------------------------------------------------------


@dataclass(frozen=True)
class CurveParams:
    a: Poly
    b: Poly
    g2: Poly
    g3: Poly
    delta: Poly


def curve_params(a: Poly | None = None, b: Poly | None = None) -> CurveParams:
    if a is None and b is None:
        a, b = ELLIPTIC_VARS.gens()
    g2 = -(8 * b - 3 * a**3) * a / 4
    g3 = (8 * b**2 - 12 * a**3 * b + 3 * a**6) / 24
    delta = -(b**3) * (3 * b - a**3)
    return CurveParams(a, b, g2, g3, delta)


def weierstrass_p(n: int, g2: Poly | None = None, g3: Poly | None = None) -> LaurentSeries:
    """Laurent expansion of the Weierstrass function through ``x^n``.

    Defaults to the invariants of :func:`curve_params` over ``a, b``.
    """
    if n < 4:
        raise ValueError("weierstrass_p needs order >= 4")
    if g2 is None or g3 is None:
        cp = curve_params()
        g2, g3 = cp.g2, cp.g3
    vars = g2.vars
    kmax = (n + 2) // 2
    c = {2: g2 / 20, 3: g3 / 28}
    for k in range(4, kmax + 1):
        acc = Poly(vars)
        for m in range(2, k - 1):
            acc = acc + c[m] * c[k - m]
        c[k] = acc * Fraction(3, (2 * k + 1) * (k - 3))
    coeffs = {-2: Poly.const(vars, 1)}
    coeffs.update({2 * k - 2: c[k] for k in range(2, kmax + 1)})
    return LaurentSeries(vars, coeffs, n)


@lru_cache(maxsize=None)
def elliptic_f(n: int) -> GenusSeries:
    """``-(2P + a^2/2) / (P' - aP + b - a^3/4)`` through ``x^n``."""
    if n < 3:
        raise ValueError("elliptic_f needs order >= 3")
    a, b = ELLIPTIC_VARS.gens()
    wp = weierstrass_p(max(n - 3, 4))
    dwp = wp.derivative()
    num = wp * 2 + a * a / 2
    den = dwp - wp * a + (b - a**3 / 4)
    return GenusSeries((-(num * den.reciprocal())).truncate(n))


# -- functional equation residuals ---------------------------------------------


def fe_residual(g: GenusSeries, C: Poly | int, m: int) -> BiSeries:
    """Left side minus right side of the two-variable equation.

    The input must be known through ``x^(m+4)``; shifts are expanded to
    ``y^(m+2)``.  The result is exact on all support points with ``i + j <= m``
    and ``j <= m``.
    """
    if g.order < m + 4:
        raise TruncationError(f"fe_residual at total order {m} needs f through x^{m + 4}, got {g.order}")
    f = g.f.truncate(m + 4)
    q = f.reciprocal()
    qm = q.negate_arg()
    jmax = m + 2
    lhs = (
        bi_embed(q, "x") * shift_expand(q, jmax)
        + bi_embed(qm, "x") * bi_embed(q, "y")
        + shift_expand(qm, jmax) * bi_embed(q, "neg_y")
    )
    if not isinstance(C, Poly):
        C = Poly.const(g.vars, as_rational(C))
    return lhs - C


def residual_points(res: BiSeries, m: int):
    """``[((i, j), coefficient), ...]`` over the checked region, raising outside exactness."""
    return [((i, j), res.coeff(i, j)) for i, j in res.points(m, m)]


def u1_residual(g: GenusSeries, C: Poly | int, n: int) -> LaurentSeries:
    """``q(x)^2 - f_1 q(-x) + q'(-x) - C`` through ``x^n``."""
    q = g.q()
    qm = q.negate_arg()
    dqm = q.derivative().negate_arg()
    r = q * q - qm * g.fk(1) + dqm - C
    if r.trunc < n:
        raise TruncationError(f"u1 residual known only through x^{r.trunc}, asked for x^{n}")
    return r.truncate(n)


def todd_k(f1: Poly, f2: Poly, f3: Poly) -> Poly:
    """``K = 3 f1^3 - 4 f1 f2 + f3``; vanishes exactly on the Todd family."""
    return 3 * f1**3 - 4 * f1 * f2 + f3


def cp2_value(f1: Poly, f2: Poly) -> Poly:
    return (3 * f1**2 - f2) / 2


def u2_residual(g: GenusSeries, n: int) -> LaurentSeries:
    """``6 q q'' - K q(-x) + (3f1^2 - 2f2) q'(-x) - 3 f1 q''(-x) + 2 q'''(-x)``."""
    f1, f2, f3 = g.fk(1), g.fk(2), g.fk(3)
    K = todd_k(f1, f2, f3)
    q = g.q()
    d1, d2, d3 = q.derivative(1), q.derivative(2), q.derivative(3)
    r = (
        q * d2 * 6
        - q.negate_arg() * K
        + d1.negate_arg() * (3 * f1**2 - 2 * f2)
        - d2.negate_arg() * (3 * f1)
        + d3.negate_arg() * 2
    )
    if r.trunc < n:
        raise TruncationError(f"u2 residual known only through x^{r.trunc}, asked for x^{n}")
    return r.truncate(n)


# -- generic coefficient solver ----------------------------------------------


def _solve_linear(expr: Poly, unknown: str) -> Poly:
    if expr.degree_in(unknown) > 1:
        raise SolverError(f"{unknown} enters nonlinearly")
    lin = expr.coefficient_in(unknown, 1)
    if not lin.is_constant() or not lin:
        raise SolverError(f"coefficient of {unknown} is {lin}, not a nonzero rational")
    return -expr.coefficient_in(unknown, 0) / lin.constant_value()


_U1_SEED = range(-2, 2)  # these x^k coefficients of u1 must vanish given C alone


@lru_cache(maxsize=None)
def _generic_table(n: int) -> tuple:
    """``(f_1, ..., f_n)`` over ``Q[f1, f2, f3]`` with ``f_k`` for ``k >= 4`` solved from u1."""
    work = VarSet(["f1", "f2", "f3", "u"])
    f1, f2, f3, u = work.gens()
    C = cp2_value(f1, f2)
    known = [f1, f2, f3]
    g0 = genus_from_coefficients(work, known, 4)
    r0 = u1_residual(g0, C, 1)
    for k in _U1_SEED:
        if r0.coeff(k):
            raise SolverError(f"x^{k} coefficient of u1 does not vanish: {r0.coeff(k)}")
    for target in range(4, n + 1):
        g = genus_from_coefficients(work, known + [u], target + 1)
        expr = u1_residual(g, C, target - 2).coeff(target - 2)
        known.append(_solve_linear(expr, "u"))
    return tuple(p.over(F123) for p in known)


def generic_solve(n: int) -> dict:
    """``{k: f_k}`` for ``4 <= k <= n`` as polynomials in ``f1, f2, f3``."""
    if n < 4:
        raise ValueError("generic_solve needs n >= 4")
    table = _generic_table(n)
    return {k: table[k - 1] for k in range(4, n + 1)}


def generic_completion(n: int) -> GenusSeries:
    """The unique u1 solution over ``Q[f1, f2, f3]`` known through ``x^(n+1)``."""
    return genus_from_coefficients(F123, _generic_table(n))


def nested_relation(target: int, source: str = "u1") -> tuple:
    """Relation for ``f_target`` in terms of all lower ``f_k`` left free.

    Uses the ``x^(target-2)`` coefficient of u1 or the ``x^(target-4)``
    coefficient of u2.  Returns ``(d, P)`` meaning ``d * f_target = P``
    with ``P`` integral over ``f1 .. f_(target-1)``.
    """
    vs = generic_vars(target)
    gens = vs.gens()
    g = genus_from_coefficients(vs, gens)
    if source == "u1":
        expr = u1_residual(g, cp2_value(gens[0], gens[1]), target - 2).coeff(target - 2)
    elif source == "u2":
        expr = u2_residual(g, target - 4).coeff(target - 4)
    else:
        raise ValueError(f"source must be 'u1' or 'u2', got {source!r}")
    sol = _solve_linear(expr, f"f{target}")
    return clear_denominators(sol.over(generic_vars(target - 1)))


def back_substitute(p: Poly) -> Poly:
    """Replace ``f_k`` for ``k >= 4`` in ``p`` by their solved forms over ``f1, f2, f3``."""
    n = max((int(name[1:]) for name in p.vars.names), default=3)
    sol = generic_solve(n) if n >= 4 else {}
    return substitute(p, {f"f{k}": v for k, v in sol.items()}, F123)


def f8_from_u1() -> Poly:
    return generic_solve(8)[8]


@lru_cache(maxsize=None)
def f8_from_u2() -> tuple:
    """``(d, P)`` with ``d * f8 = P`` imposed by the x^4 coefficient of u2.

    ``f_4 .. f_7`` are the u1 solutions; ``P`` is over ``f1, f2, f3``.
    """
    work = VarSet(["f1", "f2", "f3", "u"])
    lower = [p.over(work) for p in _generic_table(7)]
    g = genus_from_coefficients(work, lower + [work.gen("u")], 9)
    expr = u2_residual(g, 4).coeff(4)
    d, _ = nested_relation(8, "u2")
    sol = _solve_linear(expr, "u").over(F123)
    return d, sol * d


@dataclass(frozen=True)
class Obstruction:
    constant: Fraction
    difference: Poly
    C: Poly
    K: Poly


@lru_cache(maxsize=None)
def obstruction() -> Obstruction:
    """Factor the gap between the two f8 determinations as ``c * C * K^2``."""
    f1, f2, f3 = F123.gens()
    d, p = f8_from_u2()
    D = f8_from_u1() - p / d
    C = cp2_value(f1, f2)
    K = todd_k(f1, f2, f3)
    quotient = divide_exact(D, C * K**2)
    if not quotient.is_constant() or not quotient:
        raise SolverError(f"unexpected quotient {quotient}")
    return Obstruction(quotient.constant_value(), D, C, K)


# -- genus values and classification ------------------------------------------


def cp_genus(g: GenusSeries, n: int) -> Poly:
    """``L_f[CP(n)]``: coefficient of ``x^n`` in ``(x/f(x))^(n+1)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if g.order < n + 1:
        raise TruncationError(f"CP({n}) needs f through x^{n + 1}, got {g.order}")
    xq = g.f.truncate(n + 1).reciprocal().shift(1)
    return (xq ** (n + 1)).coeff(n)


TODD = "ToddFamily"
ELLIPTIC = "EllipticFamily"
DEGENERATE = "Degenerate"
NOT_MULTIPLICATIVE = "NotMultiplicative"


@dataclass(frozen=True)
class Classification:
    tag: str
    C: Fraction
    K: Fraction
    todd: tuple | None = None  # (alpha + beta, alpha * beta)
    elliptic: tuple | None = None  # (a, b)
    extra: dict = field(default_factory=dict, compare=False)

    def describe(self) -> str:
        from .exactalg import format_rational as fr

        if self.tag == DEGENERATE:
            head = "Degenerate (f = x)" if self.todd == (0, 0) and self.elliptic == (0, 0) else "Degenerate"
        else:
            head = self.tag
        lines = [head, f"C = {fr(self.C)}", f"K = {fr(self.K)}"]
        if self.todd is not None:
            lines.append(f"alpha+beta = {fr(self.todd[0])}, alpha*beta = {fr(self.todd[1])}")
        if self.elliptic is not None:
            lines.append(f"a = {fr(self.elliptic[0])}, b = {fr(self.elliptic[1])}")
        return "\n".join(lines)


def classify(f1, f2, f3) -> Classification:
    f1, f2, f3 = (as_rational(v) for v in (f1, f2, f3))
    C = (3 * f1**2 - f2) / 2
    K = 3 * f1**3 - 4 * f1 * f2 + f3
    todd = (-f1, (f2 - f1**2) / 2) if K == 0 else None
    ell = (-f1, (f3 - 9 * f1**3) / 12) if C == 0 else None
    if todd and ell:
        tag = DEGENERATE
    elif todd:
        tag = TODD
    elif ell:
        tag = ELLIPTIC
    else:
        tag = NOT_MULTIPLICATIVE
    return Classification(tag, C, K, todd, ell)


def first_coefficients(g: GenusSeries) -> tuple:
    return g.fk(1), g.fk(2), g.fk(3)


def evaluate_all(polys, point) -> list:
    return [evaluate(p, point) for p in polys]
