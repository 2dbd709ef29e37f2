"""Verification reports shared by the CLI and the golden-file tests."""

from __future__ import annotations

import time

from .exactalg import format_poly, format_rational
from .genera import (
    elliptic_f,
    f8_from_u2,
    fe_residual,
    first_coefficients,
    generic_solve,
    nested_relation,
    obstruction,
    residual_points,
    todd_constant,
    todd_f,
)

FAMILIES = ("todd", "elliptic")


def family_series(family: str, order: int):
    if family == "todd":
        return todd_f(order)
    if family == "elliptic":
        return elliptic_f(order)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def family_constant(family: str, vars):
    return todd_constant(vars) if family == "todd" else vars.zero()


def verify_family(family: str, m: int, timing: bool = False) -> dict:
    """Check the two-variable equation for ``family`` on ``i + j <= m, j <= m``."""
    start = time.perf_counter()
    g = family_series(family, m + 4)
    C = family_constant(family, g.vars)
    res = fe_residual(g, C, m)
    pts = residual_points(res, m)
    nonzero = [(ij, c) for ij, c in pts if c]
    report = {
        "family": family,
        "generators": list(g.vars.names),
        "total_order": m,
        "input_order": m + 4,
        "shift_order": m + 2,
        "constant": format_poly(C),
        "coefficients": {f"f{k}": format_poly(c) for k, c in enumerate(first_coefficients(g), 1)},
        "region": f"i + j <= {m}, j <= {m}",
        "residual": {
            "status": "zero" if not nonzero else "nonzero",
            "checked": len(pts),
            "nonzero": len(nonzero),
            "points": [[i, j, format_poly(c)] for (i, j), c in pts],
        },
    }
    if timing:
        report["elapsed_seconds"] = round(time.perf_counter() - start, 6)
    return report


def verify_text(report: dict) -> str:
    res = report["residual"]
    lines = [
        f"family: {report['family']}",
        f"f(x) through x^{report['input_order']}, shifts through y^{report['shift_order']}",
        f"C = {report['constant']}",
    ]
    lines += [f"{k} = {v}" for k, v in report["coefficients"].items()]
    lines.append(f"checked {res['checked']} coefficients on {report['region']}")
    if res["status"] == "zero":
        lines.append("residual = 0")
    else:
        lines.append(f"residual != 0 at {res['nonzero']} coefficients")
        for i, j, c in res["points"]:
            if c != "0":
                lines.append(f"  x^{i} y^{j}: {c}")
    if "elapsed_seconds" in report:
        lines.append(f"elapsed: {report['elapsed_seconds']} s")
    return "\n".join(lines) + "\n"


def generic_report(n: int, nested: bool = False) -> dict:
    if nested:
        rels = {}
        for k in range(4, n + 1):
            d, p = nested_relation(k)
            rels[f"f{k}"] = {"multiplier": d, "poly": format_poly(p)}
        return {"form": "nested", "relations": rels}
    return {"form": "expanded", "relations": {f"f{k}": {"multiplier": 1, "poly": format_poly(p)} for k, p in generic_solve(n).items()}}


def generic_text(report: dict) -> str:
    lines = []
    for name, rel in report["relations"].items():
        lhs = name if rel["multiplier"] == 1 else f"{rel['multiplier']}*{name}"
        lines.append(f"{lhs} = {rel['poly']}")
    return "\n".join(lines) + "\n"


def obstruction_report() -> dict:
    ob = obstruction()
    d1, p1 = nested_relation(8, "u1")
    d2, p2 = nested_relation(8, "u2")
    e2, q2 = f8_from_u2()
    return {
        "f8_u1_nested": {"multiplier": d1, "poly": format_poly(p1)},
        "f8_u2_nested": {"multiplier": d2, "poly": format_poly(p2)},
        "f8_u1": format_poly(generic_solve(8)[8]),
        "f8_u2": {"multiplier": e2, "poly": format_poly(q2)},
        "C": format_poly(ob.C),
        "K": format_poly(ob.K),
        "difference": format_poly(ob.difference),
        "constant": format_rational(ob.constant),
        "identity": f"f8(u1) - f8(u2) = {format_rational(ob.constant)} * C * K^2",
    }


def obstruction_text(report: dict) -> str:
    a, b = report["f8_u1_nested"], report["f8_u2_nested"]
    lines = [
        f"from u1 at x^6: {a['multiplier']}*f8 = {a['poly']}",
        f"from u2 at x^4: {b['multiplier']}*f8 = {b['poly']}",
        f"C = {report['C']}",
        f"K = {report['K']}",
        report["identity"],
        f"c = {report['constant']}",
    ]
    return "\n".join(lines) + "\n"
