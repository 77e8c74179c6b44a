"""``berezin`` command-line entry point.

Every subcommand prints one JSON document on stdout.  Exit codes: 0 success,
1 parse error (bad expression or JSON), 2 domain error, 3 I/O error.
"""

import argparse
import json
import sys

from . import calculus, connection, grassmann, liesuper, osp, superfunction, supermatrix
from .errors import BerezinError, DimMismatch, DomainError, MissingTransition, ParseError
from .grassmann import GrassmannElement
from .parser import max_indices, parse_ast, parse_expr
from .polynomial import Polynomial
from .scalars import EXACT, FLOAT, format_scalar, to_exact
from .superfunction import SuperFunction, SuperPoint
from .supermatrix import Supermatrix

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3


class InputError(Exception):
    """Unreadable input or output location."""


class SchemaError(Exception):
    """Well-formed JSON that does not match the expected schema."""


def _read_json(path):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.pos, f"invalid JSON in {path}: {exc.msg}") from exc


def _inputs(args):
    return [_read_json(p) for p in (args.inputs or [])]


def _mode(args):
    return FLOAT if args.float else EXACT


# -- operand loaders ---------------------------------------------------

def _grassmann_operands(args, count):
    mode = _mode(args)
    out = []
    for text in args.exprs or []:
        out.append(parse_expr(text, "grassmann", rank=args.rank, mode=mode))
    for data in _inputs(args):
        out.append(GrassmannElement.from_dict(data).with_mode(mode))
    return _exactly(out, count, "Grassmann element")


def _exactly(items, count, what):
    if len(items) != count:
        raise SchemaError(f"expected {count} {what} operand(s), got {len(items)}")
    return items


def _matrix(data, mode):
    L = Supermatrix.from_dict(data)
    if mode == FLOAT and L.mode != FLOAT:
        L = Supermatrix(L.n, L.m, [[x.with_mode(FLOAT) for x in row] for row in L.entries],
                        L.parity, L.rank, FLOAT)
    return L


def _joint_dims(args, context):
    """Dimensions shared by all inline operands: explicit flags, else the largest index used."""
    even, odd = ("x", "y") if context == "superfunction" else calculus.SYMBOLS
    used = [max_indices(parse_ast(t, context)) for t in args.exprs or []]
    n = args.n if args.n is not None else max([u.get(even, 0) for u in used], default=0)
    m = args.m if args.m is not None else max([u.get(odd, 0) for u in used], default=0)
    return n, m


def _sf_operands(args, count, context="superfunction"):
    syms = ("x", "y") if context == "superfunction" else calculus.SYMBOLS
    n, m = _joint_dims(args, context)
    out = [parse_expr(t, context, n=n, m=m) for t in args.exprs or []]
    out += [SuperFunction.from_dict(d, syms) for d in _inputs(args)]
    return _exactly(out, count, "function")


def _geom_object(data):
    if isinstance(data, list) or "terms" in data:
        return calculus.GradedForm.from_dict(data)
    if "even" in data and "odd" in data and "coeffs" not in data:
        return calculus.GradedVectorField.from_dict(data)
    if "coeffs" in data:
        return SuperFunction.from_dict(data, calculus.SYMBOLS)
    raise SchemaError("unrecognised geometric object")


def _geom_operands(args):
    n, m = _joint_dims(args, "graded")
    objs = [calculus.GradedForm.function(parse_expr(t, "graded", n=n, m=m)) for t in args.exprs or []]
    objs = [_geom_object(d) for d in _inputs(args)] + objs
    return objs


def _as_form(obj):
    if isinstance(obj, calculus.GradedForm):
        return obj
    if isinstance(obj, SuperFunction):
        return calculus.GradedForm.function(obj)
    raise SchemaError("expected a graded form")


def _as_field(obj):
    if not isinstance(obj, calculus.GradedVectorField):
        raise SchemaError("expected a graded vector field")
    return obj


def _poly_entry(x, n):
    if isinstance(x, dict):
        return Polynomial.from_dict(x)
    return Polynomial.const(n, to_exact(x))


def _chart(args):
    if not args.chart:
        raise MissingTransition("--chart is required")
    return calculus.Chart.from_dict(_read_json(args.chart))


def _index(args):
    if args.index is None:
        raise SchemaError("--index is required")
    return args.index


# -- handlers ----------------------------------------------------------

def cmd_grassmann(args):
    op = args.op
    if op == "mul":
        a, b = _grassmann_operands(args, 2)
        return grassmann.g_mul(a, b).to_dict()
    (a,) = _grassmann_operands(args, 1)
    if op == "inv":
        return grassmann.g_inv(a).to_dict()
    if op == "exp":
        return grassmann.g_exp(a).to_dict()
    if op == "norm":
        return format_scalar(grassmann.g_norm(a), a.mode)
    raise SchemaError(op)


def cmd_smat(args):
    mode = _mode(args)
    mats = [_matrix(d, mode) for d in _inputs(args)]
    op = args.op
    if op == "mul":
        a, b = _exactly(mats, 2, "supermatrix")
        return supermatrix.sm_mul(a, b).to_dict()
    (L,) = _exactly(mats, 1, "supermatrix")
    if op == "str":
        return supermatrix.sm_str(L).to_dict()
    if op == "st":
        return supermatrix.sm_st(L).to_dict()
    if op == "inv":
        return supermatrix.sm_inv(L).to_dict()
    if op == "sdet":
        return supermatrix.sm_sdet(L).to_dict()
    if op == "exp":
        return supermatrix.sm_exp(L).to_dict()
    raise SchemaError(op)


def cmd_sfun(args):
    op = args.op
    if op == "mul":
        a, b = _sf_operands(args, 2)
        return superfunction.sf_mul(a, b).to_dict()
    (f,) = _sf_operands(args, 1)
    if op == "dx":
        return superfunction.sf_even_deriv(f, _index(args)).to_dict()
    if op == "dy":
        return superfunction.sf_odd_deriv(f, _index(args), rank=args.rank).to_dict()
    if op == "eval":
        if not args.point:
            raise SchemaError("--point is required")
        p = SuperPoint.from_dict(_read_json(args.point))
        if args.float:
            p = SuperPoint([x.with_mode(FLOAT) for x in p.even], [y.with_mode(FLOAT) for y in p.odd],
                           p.rank, FLOAT)
        return superfunction.sf_eval(f, p).to_dict()
    raise SchemaError(op)


def cmd_geom(args):
    objs = _geom_operands(args)
    op = args.op
    if op == "d":
        (phi,) = _exactly(objs, 1, "form")
        return calculus.gf_d(_as_form(phi)).to_dict()
    if op == "wedge":
        a, b = _exactly(objs, 2, "form")
        return calculus.gf_wedge(_as_form(a), _as_form(b)).to_dict()
    if op in ("interior", "lie"):
        u, phi = _exactly(objs, 2, "field/form")
        fn = calculus.gf_interior if op == "interior" else calculus.gf_lie
        return fn(_as_field(u), _as_form(phi)).to_dict()
    if op == "transform":
        (obj,) = _exactly(objs, 1, "object")
        return calculus.chart_transform(obj, _chart(args)).to_dict()
    raise SchemaError(op)


def _linear_gamma(data):
    n, m = int(data["n"]), int(data["m"])
    Gamma = [[[_poly_entry(x, n) for x in row] for row in mat] for mat in data["Gamma"]]
    return Gamma, n, m


def cmd_conn(args):
    ins = _inputs(args)
    op = args.op
    if op == "lift":
        (data,) = _exactly(ins, 1, "linear connection")
        Gamma, n, m = _linear_gamma(data)
        return connection.conn_from_linear(Gamma, n, m).to_dict()
    if op == "scurv":
        (data,) = _exactly(ins, 1, "superconnection")
        S = connection.LinearSuperconnection.from_dict(data)
        R = connection.sconn_curvature(S)
        return [{"i": i, "j": j, "R": [[f.to_dict() for f in row] for row in mat]}
                for (i, j), mat in sorted(R.items()) if i <= j]
    (data,) = _exactly(ins, 1, "connection")
    conn = connection.GradedConnection.from_dict(data)
    if op == "curv":
        return connection.conn_curvature(conn).to_dict()
    if op == "transform":
        return connection.conn_transform(conn, _chart(args)).to_dict()
    if op == "nabla":
        A = _index(args)
        (f,) = _exactly([parse_expr(t, "graded", n=conn.n, m=conn.m) for t in args.exprs or []], 1, "function")
        tau = [calculus.gf_const(conn.n, conn.m, int(B == A)) for B in range(1, conn.n + 1)]
        return connection.conn_nabla(conn, tau, f).to_dict()
    raise SchemaError(op)


def cmd_ce(args):
    ins = _inputs(args)
    if not ins:
        raise SchemaError("an algebra is required")
    g = liesuper.LieSuperalgebra.from_dict(ins[0])
    liesuper.lsa_validate(g)
    op = args.op
    if op == "validate":
        r, s = g.dim
        return {"ok": True, "dim": [r, s]}
    if op == "d":
        (_, cdata) = _exactly(ins, 2, "algebra/cochain")
        c = liesuper.Cochain.from_dict(cdata, g.parities)
        return liesuper.ce_d(g, c).to_dict()
    if op == "cohomology":
        kmax = 2 if args.kmax is None else args.kmax
        return liesuper.ce_cohomology_dims(g, kmax)
    raise SchemaError(op)


def _vector(data, mode):
    comps = [GrassmannElement.from_dict(x).with_mode(mode) for x in data["components"]]
    return comps, int(data["n"]), int(data["m"])


def cmd_osp(args):
    mode = _mode(args)
    ins = _inputs(args)
    op = args.op
    if op == "eval":
        a, b = _exactly(ins, 2, "vector")
        u, n, m = _vector(a, mode)
        v, n2, m2 = _vector(b, mode)
        if (n, m) != (n2, m2):
            raise DimMismatch("vectors live in different spaces")
        return osp.omega_eval(u, v, n, m).to_dict()
    (data,) = _exactly(ins, 1, "supermatrix")
    L = _matrix(data, mode)
    if op == "check":
        return osp.osp_report(L)
    if op == "generate":
        return osp.osp_generate(L).to_dict()
    raise SchemaError(op)


COMMANDS = {
    "grassmann": (cmd_grassmann, ["mul", "inv", "exp", "norm"]),
    "smat": (cmd_smat, ["mul", "str", "st", "inv", "sdet", "exp"]),
    "sfun": (cmd_sfun, ["eval", "dx", "dy", "mul"]),
    "geom": (cmd_geom, ["d", "wedge", "interior", "lie", "transform"]),
    "conn": (cmd_conn, ["nabla", "curv", "lift", "transform", "scurv"]),
    "ce": (cmd_ce, ["validate", "d", "cohomology"]),
    "osp": (cmd_osp, ["eval", "check", "generate"]),
}

# these emit their report object directly instead of wrapping it in "result"
_UNWRAPPED = {("osp", "check")}


def build_parser():
    parser = argparse.ArgumentParser(prog="berezin", description="Superalgebra and graded geometry toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, ops) in COMMANDS.items():
        p = sub.add_parser(name)
        p.add_argument("op", choices=ops)
        p.add_argument("--in", dest="inputs", action="append", metavar="PATH",
                       help="JSON input file ('-' for stdin); repeatable")
        p.add_argument("--expr", dest="exprs", action="append", help="inline expression; repeatable")
        p.add_argument("--rank", type=int, help="Grassmann rank")
        p.add_argument("--n", type=int, help="even dimension for expressions")
        p.add_argument("--m", type=int, help="odd dimension for expressions")
        p.add_argument("--index", type=int, help="1-based coordinate index")
        p.add_argument("--kmax", type=int, help="top cochain degree")
        p.add_argument("--point", help="SuperPoint JSON file")
        p.add_argument("--chart", help="Chart JSON file")
        p.add_argument("--float", action="store_true", help="float mode, 15 significant digits")
        p.add_argument("--out", help="write the JSON result here instead of stdout")
    return parser


def _emit(doc, out_path):
    text = json.dumps(doc) + "\n"
    if out_path:
        try:
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {out_path}: {exc.strerror or exc}") from exc
    else:
        sys.stdout.write(text)


def _error_doc(kind, message, position=None):
    err = {"type": kind, "message": message}
    if position is not None:
        err["position"] = position
    return {"error": err}


def dispatch(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    handler, _ = COMMANDS[args.command]
    try:
        result = handler(args)
        doc = result if (args.command, args.op) in _UNWRAPPED else {"result": result}
        _emit(doc, args.out)
        return EXIT_OK
    except ParseError as exc:
        sys.stdout.write(json.dumps(_error_doc("ParseError", exc.message, exc.position)) + "\n")
        return EXIT_PARSE
    except (SchemaError, KeyError, TypeError, ValueError) as exc:
        msg = str(exc) if not isinstance(exc, KeyError) else f"missing field {exc.args[0]!r}"
        sys.stdout.write(json.dumps(_error_doc("ParseError", msg)) + "\n")
        return EXIT_PARSE
    except DomainError as exc:
        sys.stdout.write(json.dumps(_error_doc(type(exc).__name__, str(exc))) + "\n")
        return EXIT_DOMAIN
    except InputError as exc:
        sys.stdout.write(json.dumps(_error_doc("IOError", str(exc))) + "\n")
        return EXIT_IO
    except BerezinError as exc:
        sys.stdout.write(json.dumps(_error_doc(type(exc).__name__, str(exc))) + "\n")
        return EXIT_DOMAIN


def main(argv=None):
    sys.exit(dispatch(argv))


if __name__ == "__main__":
    main()
