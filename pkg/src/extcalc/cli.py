"""Command-line front end.

Verbs: eval, d, wedge, pullback, integrate, stokes, primitive, cohomology,
mv-solve, winding, linking, degree, gauss-bonnet, explain.

Exit codes: 0 success, 1 domain error (singularity, inconsistency, bad
geometry), 2 usage or parse error.  ``--json`` switches output to a single
machine-readable object.  Numbers print with 12 significant digits and
residuals in scientific notation, so output is byte-stable across runs.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cohomology as co
from . import geometry as geo
from .cells import Cell, Chain
from .errors import ExtcalcError, ParseError
from .integrate import integrate, stokes_check
from .homotopy import primitive
from .parsing import parse_form, parse_map, parse_map_components


def fmt(x: float) -> str:
    return f"{float(x):.12g}"


def fmt_residual(x: float) -> str:
    return f"{float(x):.6e}"


def load_chain(path: str) -> Chain:
    with open(path) as fh:
        data = json.load(fh)
    ambient = data["ambient"]
    terms = []
    for entry in data["cells"]:
        box = tuple(tuple(pair) for pair in entry["box"])
        mapping = parse_map_components(entry["map"], len(box))
        if mapping.m != ambient:
            raise ParseError(
                f"cell map has {mapping.m} components but ambient is {ambient}"
            )
        cell = Cell(box, mapping, entry.get("orientation", 1))
        terms.append((entry.get("weight", 1), cell))
    return Chain(terms)


def load_loop(path: str) -> geo.Loop:
    chain = load_chain(path)
    if len(chain) != 1 or chain.k != 1:
        raise ParseError("a loop file holds exactly one 1-cell")
    weight, cell = chain.terms[0]
    if weight != 1:
        raise ParseError("loop cells carry weight 1; flip orientation instead")
    return geo.Loop(cell)


def load_surface(path: str, chi: int) -> geo.Surface:
    chain = load_chain(path)
    if chain.k != 2 or chain.ambient != 3:
        raise ParseError("a surface file holds 2-cells in R^3")
    cells = []
    for w, cell in chain:
        if w not in (1, -1):
            raise ParseError("surface cells carry weight +-1")
        cells.append(cell if w == 1 else cell.flipped())
    return geo.Surface(cells, chi)


def emit(args, verb, inputs, result, residual=None, text=None):
    if args.json:
        payload = {
            "verb": verb,
            "inputs": inputs,
            "result": result,
            "provenance": "computed",
        }
        if residual is not None:
            payload["residual"] = residual
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# Verb implementations


def cmd_eval(args):
    from .scalar import axis_name

    form = parse_form(args.form, args.dim)
    point = [float(p) for p in args.point.split(",")]
    if form.k == 0:
        coeff = form.terms.get(())
        value = coeff.evaluate(point) if coeff is not None else 0.0
        emit(args, "eval", {"form": args.form, "point": point}, value, text=fmt(value))
        return 0
    values = {
        "/\\".join(f"d{axis_name(i, form.n)}" for i in idx): c.evaluate(point)
        for idx, c in sorted(form.terms.items())
    }
    text = ", ".join(f"{k}: {fmt(v)}" for k, v in values.items()) or "0"
    emit(args, "eval", {"form": args.form, "point": point}, values, text=text)
    return 0


def cmd_d(args):
    form = parse_form(args.form, args.dim)
    result = form.d()
    emit(args, "d", {"form": args.form, "dim": args.dim}, str(result), text=str(result))
    return 0


def cmd_wedge(args):
    if len(args.form) != 2:
        raise ParseError("wedge needs --form given exactly twice")
    a = parse_form(args.form[0], args.dim)
    b = parse_form(args.form[1], args.dim)
    result = a.wedge(b)
    emit(args, "wedge", {"forms": args.form, "dim": args.dim}, str(result), text=str(result))
    return 0


def cmd_pullback(args):
    from .maps import pullback as pull

    g = parse_map(args.map)
    form = parse_form(args.form, g.m)
    result = pull(g, form)
    emit(
        args,
        "pullback",
        {"map": args.map, "form": args.form},
        str(result),
        text=str(result),
    )
    return 0


def cmd_integrate(args):
    chain = load_chain(args.chain)
    form = parse_form(args.form, chain.ambient)
    value = integrate(form, chain, args.quad)
    emit(
        args,
        "integrate",
        {"form": args.form, "chain": args.chain, "quad": args.quad},
        value,
        text=fmt(value),
    )
    return 0


def _tol_verdict(residual, tol):
    return "within tolerance" if residual <= tol else "EXCEEDS tolerance"


def cmd_stokes(args):
    chain = load_chain(args.chain)
    form = parse_form(args.form, chain.ambient)
    lhs, rhs, residual = stokes_check(form, chain, args.quad)
    emit(
        args,
        "stokes",
        {"form": args.form, "chain": args.chain, "quad": args.quad, "tol": args.tol},
        {"lhs": lhs, "rhs": rhs, "verdict": _tol_verdict(residual, args.tol)},
        residual=residual,
        text=(
            f"int d(form) = {fmt(lhs)}\n"
            f"int over boundary = {fmt(rhs)}\n"
            f"residual = {fmt_residual(residual)} ({_tol_verdict(residual, args.tol)})"
        ),
    )
    return 0


def cmd_primitive(args):
    form = parse_form(args.form, args.dim)
    b = primitive(form)
    check = b.d() - form
    emit(
        args,
        "primitive",
        {"form": args.form, "dim": args.dim},
        str(b),
        residual=str(check),
        text=f"primitive = {b}\nd(primitive) - form = {check}",
    )
    return 0


def cmd_cohomology(args):
    if args.sphere is not None:
        betti = co.sphere_betti(args.sphere)
        inputs = {"sphere": args.sphere}
    elif args.nerve:
        with open(args.nerve) as fh:
            nerve = co.Nerve.from_json(json.load(fh))
        betti = co.cech_betti(nerve)
        inputs = {"nerve": args.nerve}
    else:
        raise ParseError("cohomology needs --nerve FILE or --sphere N")
    emit(args, "cohomology", inputs, betti, text=f"b = {betti}")
    return 0


def cmd_mv_solve(args):
    with open(args.problem) as fh:
        problem = co.ExactSequenceProblem.from_json(json.load(fh))
    solution = co.mv_solve(problem)
    emit(
        args,
        "mv-solve",
        {"problem": args.problem},
        {"dims": solution.dims, "determined": solution.determined},
        text=str(solution),
    )
    return 0


def cmd_winding(args):
    loop = load_loop(args.loop)
    value, nearest = geo.winding_number(loop, args.quad)
    gap = abs(value - nearest)
    emit(
        args,
        "winding",
        {"loop": args.loop, "quad": args.quad, "tol": args.tol},
        {"value": value, "integer": nearest, "verdict": _tol_verdict(gap, args.tol)},
        residual=gap,
        text=f"winding = {fmt(value)} (integer {nearest}, gap {fmt_residual(gap)})",
    )
    return 0


def cmd_linking(args):
    l1 = load_loop(args.loop1)
    l2 = load_loop(args.loop2)
    value, nearest = geo.linking_number(l1, l2, args.quad)
    gap = abs(value - nearest)
    emit(
        args,
        "linking",
        {"loop1": args.loop1, "loop2": args.loop2, "quad": args.quad, "tol": args.tol},
        {"value": value, "integer": nearest, "verdict": _tol_verdict(gap, args.tol)},
        residual=gap,
        text=f"linking = {fmt(value)} (integer {nearest}, gap {fmt_residual(gap)})",
    )
    return 0


def cmd_degree(args):
    f = parse_map(args.map)
    domain = load_chain(args.domain)
    codomain = load_chain(args.codomain)
    testform = parse_form(args.form, codomain.ambient)
    value, nearest = geo.mapping_degree(f, domain, codomain, testform, args.quad)
    gap = abs(value - nearest)
    emit(
        args,
        "degree",
        {"map": args.map, "domain": args.domain, "codomain": args.codomain, "tol": args.tol},
        {"value": value, "integer": nearest, "verdict": _tol_verdict(gap, args.tol)},
        residual=gap,
        text=f"degree = {fmt(value)} (integer {nearest}, gap {fmt_residual(gap)})",
    )
    return 0


def cmd_gauss_bonnet(args):
    surface = load_surface(args.surface, args.chi)
    total, expected, residual = geo.gauss_bonnet_check(surface, args.quad)
    emit(
        args,
        "gauss-bonnet",
        {"surface": args.surface, "chi": args.chi, "quad": args.quad, "tol": args.tol},
        {
            "curvature_integral": total,
            "two_pi_chi": expected,
            "verdict": _tol_verdict(residual, args.tol),
        },
        residual=residual,
        text=(
            f"int K dA = {fmt(total)}\n"
            f"2 pi chi = {fmt(expected)}\n"
            f"residual = {fmt_residual(residual)} ({_tol_verdict(residual, args.tol)})"
        ),
    )
    return 0


def cmd_explain(args):
    tables = co.known_cohomology_tables()
    if args.json:
        print(json.dumps({"verb": "explain", "inputs": {}, "result": tables,
                          "provenance": "computed"}, sort_keys=True))
        return 0
    print("H^0(connected manifold) = 1")
    print("H^n(compact connected orientable n-manifold) = 1")
    print("H^n(compact connected non-orientable n-manifold) = 0")
    print("compactly supported cohomology of R^n: 1 in degree n, else 0")
    for n, betti in tables["spheres"].items():
        print(f"sphere S^{n}: b = {betti}")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extcalc",
        description="symbolic/numeric exterior calculus",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, fn, **flags):
        p = sub.add_parser(name)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true")
        p.add_argument("--quad", type=int, default=16)
        p.add_argument("--tol", type=float, default=1e-8)
        for flag, kwargs in flags.items():
            p.add_argument(f"--{flag.replace('_', '-')}", **kwargs)
        return p

    add("eval", cmd_eval, form={"required": True}, dim={"type": int, "default": 3},
        point={"required": True})
    add("d", cmd_d, form={"required": True}, dim={"type": int, "default": 3})
    add("wedge", cmd_wedge, form={"action": "append", "required": True},
        dim={"type": int, "default": 3})
    add("pullback", cmd_pullback, map={"required": True}, form={"required": True})
    add("integrate", cmd_integrate, form={"required": True}, chain={"required": True})
    add("stokes", cmd_stokes, form={"required": True}, chain={"required": True})
    add("primitive", cmd_primitive, form={"required": True},
        dim={"type": int, "default": 3})
    add("cohomology", cmd_cohomology, nerve={}, sphere={"type": int})
    add("mv-solve", cmd_mv_solve, problem={"required": True})
    add("winding", cmd_winding, loop={"required": True})
    add("linking", cmd_linking, loop1={"required": True}, loop2={"required": True})
    add("degree", cmd_degree, map={"required": True}, domain={"required": True},
        codomain={"required": True}, form={"required": True})
    add("gauss-bonnet", cmd_gauss_bonnet, surface={"required": True},
        chi={"type": int, "required": True})
    add("explain", cmd_explain)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)
    try:
        return args.fn(args)
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (ExtcalcError, ValueError, ZeroDivisionError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


def entry():  # console-script hook
    raise SystemExit(main())
