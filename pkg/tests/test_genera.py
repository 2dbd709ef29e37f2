import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from cp2genus.errors import DivisibilityError, TruncationError
from cp2genus.exactalg import Poly, VarSet, divide_exact, evaluate, parse_poly, substitute
from cp2genus.fps import LaurentSeries
from cp2genus.genera import (
    DEGENERATE,
    ELLIPTIC,
    ELLIPTIC_VARS,
    F123,
    NOT_MULTIPLICATIVE,
    TODD,
    TODD_VARS,
    back_substitute,
    classify,
    cp2_value,
    cp_genus,
    curve_params,
    elliptic_f,
    f8_from_u1,
    f8_from_u2,
    fe_residual,
    first_coefficients,
    generic_completion,
    generic_series,
    generic_solve,
    generic_vars,
    nested_relation,
    obstruction,
    residual_points,
    todd_constant,
    todd_f,
    todd_k,
    trivial_series,
    u1_residual,
    u2_residual,
    weierstrass_p,
)
from reference_relations import F8_FROM_U2, FROM_U1

alpha, beta = TODD_VARS.gens()
a, b = ELLIPTIC_VARS.gens()
f1, f2, f3 = F123.gens()


def to_sympy(p: Poly):
    names = {n: sp.Symbol(n) for n in p.vars.names}
    return sp.sympify(str(p).replace("^", "**"), locals=names) if p else sp.Integer(0)


# -- families -----------------------------------------------------------------


def test_todd_dictionary():
    g1, g2, g3 = first_coefficients(todd_f(6))
    assert g1 == -(alpha + beta)
    assert g2 == 2 * alpha * beta + g1**2
    assert g3 - (4 * g1 * g2 - 3 * g1**3) == 0
    assert todd_k(g1, g2, g3).is_zero()


def test_todd_at_zero_is_x():
    g = todd_f(8).specialize({"alpha": 0, "beta": 0})
    assert g.f == LaurentSeries(g.vars, {1: 1}, 8)


def test_todd_matches_closed_form_series():
    # oracle: sympy expansion of the exponential closed form
    A, B, x = sp.symbols("alpha beta x")
    expr = (sp.exp(A * x) - sp.exp(B * x)) / (A * sp.exp(A * x) - B * sp.exp(B * x))
    ser = sp.series(expr, x, 0, 7).removeO()
    g = todd_f(6)
    for k in range(1, 7):
        ref = sp.factor(sp.cancel(ser.coeff(x, k)))
        assert sp.expand(ref - to_sympy(g.f.coeff(k))) == 0


def test_todd_symmetric_form_agrees():
    sym = todd_f(10, symmetric=True)
    back = sym.substitute({"s": alpha + beta, "p": alpha * beta}, TODD_VARS)
    assert back.f == todd_f(10).f


def test_todd_is_symmetric_in_parameters():
    g = todd_f(10)
    swapped = g.substitute({"alpha": beta, "beta": alpha}, TODD_VARS)
    assert swapped.f == g.f


def test_weierstrass_trivial_curve():
    zero = Poly(ELLIPTIC_VARS)
    wp = weierstrass_p(12, zero, zero)
    assert wp == LaurentSeries(ELLIPTIC_VARS, {-2: 1}, 12)


def test_weierstrass_against_undetermined_coefficients():
    # oracle: solve the differential equation for unknown coefficients with sympy
    G2, G3, x = sp.symbols("g2 g3 x")
    cs = sp.symbols("c1:6")
    P = x**-2 + sum(c * x ** (2 * k) for k, c in enumerate(cs, 1))
    eq = sp.expand(sp.diff(P, x) ** 2 - 4 * P**3 + G2 * P + G3)
    eqs = [eq.coeff(x, k) for k in range(-2, 8, 2)]
    sol = sp.solve(eqs, cs, dict=True)[0]
    assert sp.simplify(sol[cs[0]] - G2 / 20) == 0
    assert sp.simplify(sol[cs[1]] - G3 / 28) == 0
    assert sp.simplify(sol[cs[2]] - G2**2 / 1200) == 0
    V = VarSet(["g2", "g3"])
    wp = weierstrass_p(10, V.gen("g2"), V.gen("g3"))
    for k, c in enumerate(cs, 1):
        assert sp.simplify(to_sympy(wp.coeff(2 * k)) - sol[c]) == 0


def test_weierstrass_ode_symbolic():
    cp = curve_params()
    wp = weierstrass_p(18)
    d = wp.derivative()
    res = d * d - (wp * wp * wp * 4 - wp * cp.g2 - cp.g3)
    assert res.trunc >= 14 and res.is_zero()


def test_weierstrass_parity():
    wp = weierstrass_p(12)
    assert wp.negate_arg() == wp
    assert wp.derivative().negate_arg() == -wp.derivative()


def test_elliptic_dictionary():
    g1, g2, g3 = first_coefficients(elliptic_f(6))
    assert (g1, g2, g3) == (-a, 3 * a**2, 12 * b - 9 * a**3)
    assert cp2_value(g1, g2).is_zero()


def test_elliptic_at_zero_is_x():
    g = elliptic_f(9).specialize({"a": 0, "b": 0})
    assert g.f == LaurentSeries(g.vars, {1: 1}, 9)


def test_elliptic_matches_closed_form():
    # oracle: sympy series division of the quotient, with P built independently
    A, B, x = sp.symbols("a b x")
    g2 = -(8 * B - 3 * A**3) * A / 4
    g3 = (8 * B**2 - 12 * A**3 * B + 3 * A**6) / 24
    P = x**-2 + g2 / 20 * x**2 + g3 / 28 * x**4 + g2**2 / 1200 * x**6
    dP = sp.diff(P, x)
    expr = -(2 * P + A**2 / 2) / (dP - A * P + B - A**3 / 4)
    ser = sp.series(expr, x, 0, 7).removeO()
    g = elliptic_f(6)
    for k in range(1, 7):
        assert sp.expand(ser.coeff(x, k) - to_sympy(g.f.coeff(k))) == 0


# -- residuals ------------------------------------------------------------------


@pytest.mark.parametrize("m", [4, 7, 10])
def test_todd_solves_functional_equation(m):
    res = fe_residual(todd_f(m + 4), todd_constant(), m)
    assert all(not c for _, c in residual_points(res, m))


@pytest.mark.parametrize("m", [4, 7, 10])
def test_elliptic_solves_functional_equation(m):
    res = fe_residual(elliptic_f(m + 4), 0, m)
    assert all(not c for _, c in residual_points(res, m))


def test_trivial_solves_functional_equation():
    res = fe_residual(trivial_series(), 0, 8)
    assert all(not c for _, c in residual_points(res, 8))


def test_wrong_constant_is_detected():
    res = fe_residual(todd_f(10), todd_constant() + 1, 6)
    bad = [ij for ij, c in residual_points(res, 6) if c]
    assert bad == [(0, 0)]


def test_perturbed_series_is_detected():
    g = todd_f(10)
    from cp2genus.genera import GenusSeries

    h = GenusSeries(g.f + LaurentSeries(g.vars, {6: alpha**5}))
    res = fe_residual(h, todd_constant(), 6)
    assert any(c for _, c in residual_points(res, 6))


def test_fe_residual_needs_order():
    with pytest.raises(TruncationError):
        fe_residual(todd_f(8), todd_constant(), 6)


def test_u1_x0_coefficient_is_cp2_relation():
    g = generic_series(6)
    V = g.vars
    C = VarSet(V.names + ("C",)).gen("C")
    gg = g.substitute({}, C.vars)
    r = u1_residual(gg, C, 0)
    h1, h2 = gg.fk(1), gg.fk(2)
    assert r.coeff(0) * 2 == 3 * h1**2 - h2 - 2 * C


def test_u1_vanishes_on_todd():
    assert u1_residual(todd_f(12), todd_constant(), 9).is_zero()


def test_u1_on_x():
    assert u1_residual(trivial_series(), 0, 10).is_zero()


def test_u2_vanishes_on_elliptic():
    assert u2_residual(elliptic_f(14), 9).is_zero()


def test_u2_vanishes_on_todd():
    assert u2_residual(todd_f(14), 9).is_zero()


def test_u2_on_x():
    assert u2_residual(trivial_series(), 10).is_zero()


def test_layers_of_residual():
    g = generic_series(10)
    C = cp2_value(g.fk(1), g.fk(2))
    res = fe_residual(g, C, 6)
    u1 = u1_residual(g, C, 6)
    assert res.layer(0).truncate(6) == u1
    # the y^1 layer is half the x-derivative of the y^0 layer
    assert res.layer(1).truncate(5) * 2 == u1.derivative().truncate(5)


def test_second_layer_matches_u2_on_solved_series():
    g = generic_completion(12)
    C = cp2_value(f1, f2)
    layer = fe_residual(g, C, 7).layer(2)
    u2 = u2_residual(g, layer.trunc)
    assert layer * 12 == u2
    assert not u2.coeff(4).is_zero()


# -- generic solver -----------------------------------------------------------------


def test_generic_f4():
    assert generic_solve(4)[4] == parse_poly(FROM_U1[4][1], F123)


def test_generic_f5_after_substitution():
    sol = generic_solve(5)
    nested = parse_poly(FROM_U1[5][1], generic_vars(4))
    assert substitute(nested, {"f4": sol[4]}, F123) == sol[5]


def test_generic_trivial_specialization():
    for k, p in generic_solve(10).items():
        assert evaluate(p, {"f1": 0, "f2": 0, "f3": 0}) == 0


@pytest.mark.parametrize("k", [4, 5, 6, 7, 8])
def test_nested_relations_verbatim(k):
    d, rhs = FROM_U1[k]
    got_d, got = nested_relation(k, "u1")
    assert got_d == d
    assert got == parse_poly(rhs, generic_vars(k - 1))


def test_nested_relations_agree_with_expanded():
    sol = generic_solve(8)
    for k in range(5, 9):
        d, rhs = FROM_U1[k]
        assert back_substitute(parse_poly(rhs, generic_vars(k - 1))) == sol[k] * d


def test_f8_from_u2_verbatim():
    d, rhs = F8_FROM_U2
    got_d, got = nested_relation(8, "u2")
    assert (got_d, got) == (d, parse_poly(rhs, generic_vars(7)))
    e, expanded = f8_from_u2()
    assert e == 19
    assert expanded == back_substitute(parse_poly(rhs, generic_vars(7)))


def test_f8_from_u2_trivial_and_distinct():
    _, p = f8_from_u2()
    assert evaluate(p, {"f1": 0, "f2": 0, "f3": 0}) == 0
    assert p / 19 != f8_from_u1()


def test_u1_solution_satisfies_u1():
    g = generic_completion(10)
    assert u1_residual(g, cp2_value(f1, f2), 8).is_zero()


# -- obstruction ----------------------------------------------------------------------


def test_obstruction_factors():
    ob = obstruction()
    assert ob.constant != 0
    assert ob.difference == ob.constant * ob.C * ob.K**2
    assert divide_exact(ob.difference, ob.C * ob.K**2) == ob.constant


def test_obstruction_constant_golden():
    assert obstruction().constant == Fraction(280, 19)


def test_obstruction_vanishes_on_branches():
    D = obstruction().difference
    assert substitute(D, {"f3": 4 * f1 * f2 - 3 * f1**3}, F123).is_zero()
    assert substitute(D, {"f2": 3 * f1**2}, F123).is_zero()


def test_obstruction_is_not_divisible_by_K_cubed():
    ob = obstruction()
    with pytest.raises(DivisibilityError):
        divide_exact(ob.difference, ob.K**3)


# -- CP(n) ------------------------------------------------------------------------


def test_cp2_generic():
    # oracle: (x/f)^3 expanded by hand to x^2 is 3(f1^2/4 - f2/6) + 3 f1^2/4
    g = generic_series(3)
    h1, h2 = g.fk(1), g.fk(2)
    assert cp_genus(g, 2) == (h1**2 / 4 - h2 / 6) * 3 + h1**2 * Fraction(3, 4)
    assert cp_genus(g, 2) == (3 * h1**2 - h2) / 2


def test_cp2_todd():
    assert cp_genus(todd_f(5), 2) == todd_constant()


def test_cp2_elliptic_is_zero():
    assert cp_genus(elliptic_f(5), 2).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3, 6])
def test_cp_of_x_vanishes(n):
    assert cp_genus(trivial_series(), n) == 0


def test_cp_todd_is_complete_homogeneous():
    # classical check: the two-parameter Todd genus of CP(n) is h_n(alpha, beta)
    from cp2genus.genera import complete_homogeneous

    for n in range(1, 6):
        assert cp_genus(todd_f(n + 2), n) == complete_homogeneous(n)


def test_cp_needs_order():
    with pytest.raises(TruncationError):
        cp_genus(generic_series(2), 3)


# -- curve parameters -----------------------------------------------------------------


def test_curve_numeric():
    V = VarSet([])
    cp = curve_params(Poly.const(V, 0), Poly.const(V, 1))
    assert (cp.g2, cp.g3, cp.delta) == (0, Fraction(1, 3), -3)
    assert cp.g2**3 - 27 * cp.g3**2 == -3


def test_curve_discriminant_symbolic():
    cp = curve_params()
    # oracle: sympy expansion
    A, B = sp.symbols("a b")
    g2 = -(8 * B - 3 * A**3) * A / 4
    g3 = (8 * B**2 - 12 * A**3 * B + 3 * A**6) / 24
    assert sp.expand(g2**3 - 27 * g3**2 + B**3 * (3 * B - A**3)) == 0
    assert cp.g2**3 - 27 * cp.g3**2 == cp.delta
    assert substitute(cp.delta, {"a": 0}, ELLIPTIC_VARS) == -3 * b**4


def test_curve_zero():
    V = VarSet([])
    cp = curve_params(Poly(V), Poly(V))
    assert all(x.is_zero() for x in (cp.g2, cp.g3, cp.delta))


# -- classification -------------------------------------------------------------------


def test_classify_classical_todd():
    cl = classify(1, 1, 1)
    assert cl.tag == TODD and cl.todd == (-1, 0) and cl.C == 1 and cl.K == 0


def test_classify_elliptic():
    cl = classify(-1, 3, 3)
    assert cl.tag == ELLIPTIC and cl.elliptic == (1, 1) and cl.C == 0


def test_classify_degenerate():
    cl = classify(0, 0, 0)
    assert cl.tag == DEGENERATE and cl.todd == (0, 0) and cl.elliptic == (0, 0)
    assert cl.describe().startswith("Degenerate (f = x)")


def test_classify_not_multiplicative():
    cl = classify(1, 2, 3)
    assert cl.tag == NOT_MULTIPLICATIVE and cl.C != 0 and cl.K != 0


small = st.fractions(min_value=-6, max_value=6, max_denominator=7)


@settings(max_examples=50, deadline=None)
@given(small, small)
def test_classify_todd_round_trip(al, be):
    g = todd_f(4).specialize({"alpha": al, "beta": be})
    cl = classify(*(x.constant_value() for x in first_coefficients(g)))
    assert cl.tag in (TODD, DEGENERATE)
    assert cl.todd == (al + be, al * be)


@settings(max_examples=50, deadline=None)
@given(small, small)
def test_classify_elliptic_round_trip(av, bv):
    g = elliptic_f(4).specialize({"a": av, "b": bv})
    cl = classify(*(x.constant_value() for x in first_coefficients(g)))
    assert cl.tag in (ELLIPTIC, DEGENERATE)
    assert cl.elliptic == (av, bv)


def test_generic_uniqueness_small_sample():
    rng = random.Random(7)
    sym = todd_f(9, symmetric=True)
    for _ in range(5):
        x1, x2 = (Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(2))
        x3 = 4 * x1 * x2 - 3 * x1**3
        fk = generic_solve(8)
        ref = sym.specialize({"s": -x1, "p": (x2 - x1**2) / 2})
        for k in range(4, 9):
            assert evaluate(fk[k], {"f1": x1, "f2": x2, "f3": x3}) == ref.fk(k).constant_value()
