"""Command-line front end: one JSON request in, one JSON response out.

    {"command": "mul", "payload": {"f": ..., "g": ...}, "backend": "exact"}

A JSON array of requests is answered by an array of responses in the same
order. Exit status: 0 ok, 1 domain error, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import serialize as js
from .cousin import (AnnularPair, additive_split, chain_residuals, glue_chain,
                     multiplicative_split_general, multiplicative_split_sp)
from .errors import (DomainError, MalformedInput, NotPolynomial, SRKitError,
                     UnknownCommand)
from .jets import jet_interpolate, spherical_expand, taylor_jet
from .matrep import DEFAULT_TRUNC, exp_series, log_series, to_matrix
from .quat import Sphere
from .scalars import EXACT, FLOAT
from .semiregular import star_inverse
from .starpoly import (component_decompose, evaluate, regular_conjugate,
                       star_mul, stem_evaluate, symmetrization)
from .zeros import build_with_zeros, divisor_build, divisor_of, zero_set

EXIT_OK, EXIT_DOMAIN, EXIT_MALFORMED = 0, 1, 2
DEFAULT_TOL = 1e-8


class Context:
    def __init__(self, backend: str, tol: float, trunc: int):
        self.backend = backend
        self.tol = tol
        self.trunc = trunc
        self.diagnostics = []

    def poly(self, payload, key):
        return js.qpoly_from_json(_need(payload, key), self.backend)

    def quat(self, payload, key):
        return js.quat_from_json(_need(payload, key), self.backend)

    def note(self, msg: str):
        self.diagnostics.append(msg)


def _need(payload, key):
    if key not in payload:
        raise MalformedInput(f"payload is missing {key!r}")
    return payload[key]


def _int(payload, key, default):
    val = payload.get(key, default)
    if not isinstance(val, int) or isinstance(val, bool):
        raise MalformedInput(f"{key!r} must be an integer")
    return val


def _pair(payload) -> AnnularPair:
    obj = _need(payload, "pair")
    if not isinstance(obj, dict):
        raise MalformedInput("pair is {\"r_inner\": r0, \"r_outer\": r1}")
    return AnnularPair(js.scalar_from_json(_need(obj, "r_inner"), FLOAT),
                       js.scalar_from_json(_need(obj, "r_outer"), FLOAT))


# handlers -------------------------------------------------------------------------

def cmd_eval(p, ctx):
    f = ctx.poly(p, "f")
    if "q" in p:
        return js.quat_to_json(evaluate(f, ctx.quat(p, "q")))
    x = js.scalar_from_json(_need(p, "x"), ctx.backend)
    y = js.scalar_from_json(_need(p, "y"), ctx.backend)
    return js.quat_to_json(stem_evaluate(f, x, y, ctx.quat(p, "J")))


def cmd_mul(p, ctx):
    return js.qpoly_to_json(star_mul(ctx.poly(p, "f"), ctx.poly(p, "g")))


def cmd_conj(p, ctx):
    return js.qpoly_to_json(regular_conjugate(ctx.poly(p, "f")))


def cmd_symm(p, ctx):
    return js.qpoly_to_json(symmetrization(ctx.poly(p, "f")))


def cmd_inv(p, ctx):
    return js.semi_to_json(star_inverse(ctx.poly(p, "f")))


def cmd_components(p, ctx):
    return [js.qpoly_to_json(c) for c in component_decompose(ctx.poly(p, "f"))]


def cmd_matrep(p, ctx):
    m = to_matrix(ctx.poly(p, "f"))
    return [[js.qpoly_to_json(e) for e in row] for row in m.entries]


def cmd_det(p, ctx):
    return js.qpoly_to_json(to_matrix(ctx.poly(p, "f")).det())


def cmd_exp(p, ctx):
    trunc = _int(p, "trunc", ctx.trunc)
    f = ctx.poly(p, "f")
    if f.min_degree < 0:
        raise NotPolynomial("exp expects an ordinary polynomial")
    g, terms = exp_series(f, trunc)
    ctx.note(f"terms={terms}")
    return js.qpoly_to_json(g)


def cmd_log(p, ctx):
    radius = js.scalar_from_json(p.get("radius", 1.0), FLOAT)
    g, terms = log_series(ctx.poly(p, "f"), _int(p, "trunc", ctx.trunc), radii=(radius,))
    ctx.note(f"terms={terms}")
    return js.qpoly_to_json(g)


def cmd_zeros(p, ctx):
    return [js.zero_record_to_json(r) for r in zero_set(ctx.poly(p, "f"), tol=ctx.tol)]


def cmd_build_zeros(p, ctx):
    return js.qpoly_to_json(build_with_zeros(js.divisor_from_json(_need(p, "divisor"), ctx.backend)))


def cmd_divisor(p, ctx):
    if "divisor" in p:
        return js.semi_to_json(divisor_build(js.divisor_from_json(p["divisor"], ctx.backend)))
    return js.divisor_to_json(divisor_of(js.semi_from_json(_need(p, "f"), ctx.backend)))


def cmd_jet(p, ctx):
    jet = taylor_jet(ctx.poly(p, "f"), ctx.quat(p, "q"), _int(p, "order", 0))
    return js.jet_to_json(jet)


def cmd_sjet(p, ctx):
    sphere = js.node_from_json(_need(p, "sphere"), ctx.backend)
    if not isinstance(sphere, Sphere):
        raise MalformedInput("sjet needs a sphere node")
    anchor = p.get("anchor")
    anchor = None if anchor is None else js.quat_from_json(anchor, ctx.backend)
    jet = spherical_expand(ctx.poly(p, "f"), sphere, anchor, _int(p, "order", 0))
    return js.jet_to_json(jet)


def cmd_interpolate(p, ctx):
    spec = js.jetspec_from_json(_need(p, "spec"), ctx.backend)
    f = jet_interpolate(spec)
    ctx.note(f"degree={f.degree}")
    return js.qpoly_to_json(f)


def cmd_split_add(p, ctx):
    res = additive_split(ctx.poly(p, "gamma"), _pair(p))
    ctx.note(f"D={res.d_constant!r}")
    return {"alpha": js.qpoly_to_json(res.alpha), "beta": js.qpoly_to_json(res.beta),
            "d_constant": res.d_constant}


def cmd_split_mul(p, ctx):
    c = ctx.poly(p, "c")
    pair = _pair(p)
    eps = p.get("eps")
    eps = None if eps is None else js.scalar_from_json(eps, FLOAT)
    method = p.get("method", "general")
    if method == "sp":
        res = multiplicative_split_sp(c, pair, eps)
    elif method == "general":
        rho = js.scalar_from_json(p.get("rho", 0.125), FLOAT)
        res = multiplicative_split_general(c, pair, eps, rho=rho, order=p.get("order", "ab"))
        ctx.note(f"rounds={res.rounds}")
    else:
        raise MalformedInput("method is 'sp' or 'general'")
    ctx.note(f"residual={res.residual!r}")
    ctx.note(f"a_deviation={res.a_deviation!r}")
    return {"a": js.qpoly_to_json(res.a), "b": js.qpoly_to_json(res.b)}


def cmd_glue(p, ctx):
    mode = p.get("mode", "additive")
    items = _need(p, "transitions")
    if not isinstance(items, list):
        raise MalformedInput("transitions is a list of {\"link\": [k, l], \"f\": ...}")
    data = []
    for item in items:
        link = _need(item, "link")
        if not (isinstance(link, list) and len(link) == 2 and all(isinstance(t, int) for t in link)):
            raise MalformedInput("link is a pair of region indices")
        data.append((tuple(link), js.qpoly_from_json(_need(item, "f"), ctx.backend)))
    overlaps = p.get("overlaps")
    if overlaps is not None:
        overlaps = [_pair({"pair": o}) for o in overlaps]
    v = glue_chain(data, mode, overlaps)
    res = chain_residuals(v, data, mode, overlaps)
    ctx.note(f"max_residual={max(res, default=0.0)!r}")
    return [js.qpoly_to_json(f) for f in v]


COMMANDS = {
    "eval": cmd_eval, "mul": cmd_mul, "conj": cmd_conj, "symm": cmd_symm,
    "inv": cmd_inv, "components": cmd_components, "matrep": cmd_matrep,
    "det": cmd_det, "exp": cmd_exp, "log": cmd_log, "zeros": cmd_zeros,
    "build-zeros": cmd_build_zeros, "divisor": cmd_divisor, "jet": cmd_jet,
    "sjet": cmd_sjet, "interpolate": cmd_interpolate, "split-add": cmd_split_add,
    "split-mul": cmd_split_mul, "glue": cmd_glue,
}


# dispatch -------------------------------------------------------------------------

def _error(exc: SRKitError, diagnostics=()) -> dict:
    return {"status": "error", "result": {"code": exc.code, "message": str(exc)},
            "diagnostics": list(diagnostics)}


def run(request, backend: str = EXACT, tol: float = DEFAULT_TOL,
        trunc: int = DEFAULT_TRUNC) -> tuple:
    """Answer one request; returns (response dict, exit status)."""
    try:
        if not isinstance(request, dict):
            raise MalformedInput("a request is a JSON object")
        command = request.get("command")
        if command not in COMMANDS:
            raise UnknownCommand(f"unknown command {command!r}")
        backend = request.get("backend", backend)
        if backend not in (EXACT, FLOAT):
            raise MalformedInput(f"backend must be 'exact' or 'float', got {backend!r}")
        tolerances = request.get("tolerances") or {}
        if not isinstance(tolerances, dict):
            raise MalformedInput("tolerances is an object")
        ctx = Context(backend, float(tolerances.get("tol", tol)),
                      int(tolerances.get("trunc", trunc)))
        payload = request.get("payload", {})
        if not isinstance(payload, dict):
            raise MalformedInput("payload is a JSON object")
        result = COMMANDS[command](payload, ctx)
        return {"status": "ok", "result": result, "diagnostics": ctx.diagnostics}, EXIT_OK
    except DomainError as exc:
        return _error(exc), EXIT_DOMAIN
    except MalformedInput as exc:
        return _error(exc), EXIT_MALFORMED
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        return _error(MalformedInput(f"{type(exc).__name__}: {exc}")), EXIT_MALFORMED


def run_batch(requests: list, **kw) -> tuple:
    out, status = [], EXIT_OK
    for req in requests:
        resp, code = run(req, **kw)
        out.append(resp)
        status = max(status, code)
    return out, status


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, allow_nan=True)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="srkit", description=__doc__.splitlines()[0])
    ap.add_argument("--backend", choices=(EXACT, FLOAT),
                    default=os.environ.get("SRKIT_BACKEND", EXACT))
    ap.add_argument("--input", default="-", help="request file, '-' for stdin")
    ap.add_argument("--output", default="-", help="response file, '-' for stdout")
    ap.add_argument("--tolerance", type=float, default=DEFAULT_TOL)
    ap.add_argument("--trunc", type=int, default=DEFAULT_TRUNC)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.backend not in (EXACT, FLOAT):
        args.backend = EXACT
    kw = dict(backend=args.backend, tol=args.tolerance, trunc=args.trunc)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        request = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        response, status = _error(MalformedInput(str(exc))), EXIT_MALFORMED
    else:
        if isinstance(request, list):
            response, status = run_batch(request, **kw)
        else:
            response, status = run(request, **kw)
    text = dumps(response) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
