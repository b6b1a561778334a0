"""JSON codecs for quaternions, polynomials, divisors, jets and annuli.

Exact scalars travel as strings ("3/2", "-1"), floats as JSON numbers in
shortest round-trip form.

    QPoly      {"min_degree": m, "coeffs": [[w, x, y, z], ...]}
    node       {"type": "point", "q": [w, x, y, z]} | {"type": "sphere", "a": a, "r": r}
    divisor    [{"node": node, "order": n}, ...]
    jet spec   [{"node": node, "jet": {"coeffs": [...], "anchor": [w, x, y, z] | null}}, ...]
"""

from __future__ import annotations

from .errors import MalformedInput
from .jets import JetSpec, SphericalJet, TaylorJet
from .quat import Quaternion, Sphere
from .scalars import format_scalar, is_exact, parse_scalar
from .semiregular import SemiRegularFn
from .starpoly import QPoly
from .zeros import Divisor, ZeroRecord


def _fail(msg: str):
    raise MalformedInput(msg)


def scalar_from_json(token, backend: str):
    try:
        return parse_scalar(token, backend)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        _fail(f"bad scalar {token!r}: {exc}")


def quat_from_json(obj, backend: str) -> Quaternion:
    if isinstance(obj, (int, float, str)) and not isinstance(obj, bool):
        return Quaternion(scalar_from_json(obj, backend))
    if not isinstance(obj, list) or len(obj) != 4:
        _fail(f"a quaternion is a list [w, x, y, z], got {obj!r}")
    return Quaternion(*(scalar_from_json(t, backend) for t in obj))


def quat_to_json(q: Quaternion) -> list:
    return [format_scalar(t) for t in q.components()]


def qpoly_from_json(obj, backend: str) -> QPoly:
    if isinstance(obj, list):
        obj = {"coeffs": obj}
    if not isinstance(obj, dict) or "coeffs" not in obj:
        _fail("a polynomial is {\"min_degree\": m, \"coeffs\": [...]}")
    m = obj.get("min_degree", 0)
    if not isinstance(m, int) or isinstance(m, bool):
        _fail("min_degree must be an integer")
    if not isinstance(obj["coeffs"], list):
        _fail("coeffs must be a list")
    return QPoly([quat_from_json(c, backend) for c in obj["coeffs"]], m)


def qpoly_to_json(f: QPoly) -> dict:
    return {"min_degree": f.min_degree, "coeffs": [quat_to_json(c) for c in f.coeffs]}


def semi_to_json(f: SemiRegularFn) -> dict:
    return {"numerator": qpoly_to_json(f.numerator),
            "denominator": qpoly_to_json(f.denominator)}


def semi_from_json(obj, backend: str) -> SemiRegularFn:
    if isinstance(obj, dict) and "numerator" in obj:
        den = obj.get("denominator")
        return SemiRegularFn(qpoly_from_json(obj["numerator"], backend),
                             None if den is None else qpoly_from_json(den, backend))
    return SemiRegularFn(qpoly_from_json(obj, backend))


def node_from_json(obj, backend: str):
    if isinstance(obj, list):
        return quat_from_json(obj, backend)
    if not isinstance(obj, dict):
        _fail(f"bad node {obj!r}")
    kind = obj.get("type")
    if kind == "point":
        return quat_from_json(obj.get("q"), backend)
    if kind == "sphere":
        a = scalar_from_json(obj.get("a", 0), backend)
        try:
            if "r2" in obj:
                return Sphere(a, r2=scalar_from_json(obj["r2"], backend))
            return Sphere(a, scalar_from_json(obj.get("r"), backend))
        except ValueError as exc:
            _fail(str(exc))
    _fail(f"node type must be 'point' or 'sphere', got {kind!r}")


def node_to_json(node) -> dict:
    if isinstance(node, Sphere):
        out = {"type": "sphere", "a": format_scalar(node.a), "r": format_scalar(node.r)}
        if is_exact(node.r2) and not is_exact(node.r):
            out["r2"] = format_scalar(node.r2)
        return out
    return {"type": "point", "q": quat_to_json(node)}


def divisor_from_json(obj, backend: str) -> Divisor:
    if not isinstance(obj, list):
        _fail("a divisor is a list of {\"node\": ..., \"order\": n}")
    entries = []
    for item in obj:
        if not isinstance(item, dict) or "node" not in item or "order" not in item:
            _fail(f"bad divisor entry {item!r}")
        order = item["order"]
        if not isinstance(order, int) or isinstance(order, bool):
            _fail("orders are integers")
        entries.append((node_from_json(item["node"], backend), order))
    return Divisor(entries)


def divisor_to_json(d: Divisor) -> list:
    return [{"node": node_to_json(n), "order": o} for n, o in d]


def zero_record_to_json(rec: ZeroRecord) -> dict:
    return {"kind": rec.kind.value, "location": node_to_json(rec.location),
            "multiplicity": rec.multiplicity}


def jetspec_from_json(obj, backend: str) -> JetSpec:
    if not isinstance(obj, list):
        _fail("a jet spec is a list of {\"node\": ..., \"jet\": {...}}")
    entries = []
    for item in obj:
        if not isinstance(item, dict) or "node" not in item or "jet" not in item:
            _fail(f"bad jet entry {item!r}")
        node = node_from_json(item["node"], backend)
        jet = item["jet"]
        if not isinstance(jet, dict) or not isinstance(jet.get("coeffs"), list):
            _fail("a jet is {\"coeffs\": [...], \"anchor\": ...}")
        coeffs = [quat_from_json(c, backend) for c in jet["coeffs"]]
        if isinstance(node, Sphere) and not node.degenerate:
            anchor = jet.get("anchor")
            anchor = None if anchor is None else quat_from_json(anchor, backend)
            entries.append((node, SphericalJet(node, coeffs, anchor)))
        else:
            if isinstance(node, Sphere):
                node = Quaternion(node.a)
            entries.append((node, TaylorJet(node, coeffs)))
    return JetSpec(entries)


def jet_to_json(jet) -> dict:
    out = {"coeffs": [quat_to_json(c) for c in jet.coeffs]}
    if isinstance(jet, SphericalJet):
        out["sphere"] = node_to_json(jet.sphere)
        out["anchor"] = None if jet.anchor is None else quat_to_json(jet.anchor)
    else:
        out["center"] = quat_to_json(jet.center)
    return out
