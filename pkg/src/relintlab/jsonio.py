"""JSON wire formats. All rational data travels as "p/q" strings.

Structural counts (dimensions) are plain integers; every coordinate,
coefficient, or value must be a string so that no float can slip through a
parser unnoticed. Decoders raise InputError with a location when handed
malformed documents.
"""

from __future__ import annotations

import json
from typing import Optional

from .duality import DualityReport
from .errors import InputError
from .functions import MINUS_INF, PLUS_INF, PLFunctionDual, _sense_of
from .graphs_orders import OrderingCone, PolySetValuedMap
from .ratlp import Rat, fmt_rat, rat
from .separation import SeparationCertificate
from .seqlab import IriRefutationWitness, TailSequence
from .sets import HPolyhedron, PolyCone, VPolyhedron


def rat_to_str(x) -> str:
    return fmt_rat(x)


def str_to_rat(s) -> Rat:
    if not isinstance(s, str):
        raise InputError(
            f"rational values must be 'p/q' strings, got {type(s).__name__}: {s!r}"
        )
    return rat(s)


def enc_vec(v) -> list:
    return [rat_to_str(x) for x in v]


def dec_vec(v) -> tuple:
    if not isinstance(v, list):
        raise InputError(f"expected a list of 'p/q' strings, got {type(v).__name__}")
    return tuple(str_to_rat(x) for x in v)


def enc_mat(m) -> list:
    return [enc_vec(row) for row in m]


def dec_mat(m) -> tuple:
    if not isinstance(m, list):
        raise InputError(f"expected a list of rows, got {type(m).__name__}")
    return tuple(dec_vec(row) for row in m)


def _need(obj: dict, key: str, where: str):
    if key not in obj:
        raise InputError(f"{where}: missing required key {key!r}")
    return obj[key]


def _dim_of(obj: dict, key: str, where: str) -> int:
    v = _need(obj, key, where)
    if not isinstance(v, int) or isinstance(v, bool):
        raise InputError(f"{where}: {key!r} must be an integer")
    return v


def hpoly_to_json(p: HPolyhedron) -> dict:
    return {
        "dim": p.dim,
        "ineq": {"A": enc_mat(p.A), "b": enc_vec(p.b)},
        "eq": {"E": enc_mat(p.E), "d": enc_vec(p.d)},
    }


def hpoly_from_json(obj: dict) -> HPolyhedron:
    where = "H-polyhedron"
    dim = _dim_of(obj, "dim", where)
    ineq = obj.get("ineq") or {"A": [], "b": []}
    eq = obj.get("eq") or {"E": [], "d": []}
    return HPolyhedron(
        dim=dim,
        A=dec_mat(ineq.get("A", [])),
        b=dec_vec(ineq.get("b", [])),
        E=dec_mat(eq.get("E", [])),
        d=dec_vec(eq.get("d", [])),
    )


def vpoly_to_json(v: VPolyhedron) -> dict:
    return {"dim": v.dim, "points": enc_mat(v.points), "rays": enc_mat(v.rays)}


def vpoly_from_json(obj: dict) -> VPolyhedron:
    dim = _dim_of(obj, "dim", "V-polyhedron")
    return VPolyhedron(dim=dim, points=dec_mat(obj.get("points", [])),
                       rays=dec_mat(obj.get("rays", [])))


def cone_to_json(c) -> dict:
    if isinstance(c, OrderingCone):
        if c.kind == "lex2d":
            return {"kind": "lex2d"}
        return {"kind": "polyhedral", "generators": enc_mat(c.cone.generators)}
    return {"kind": "polyhedral", "generators": enc_mat(c.generators)}


def polycone_from_json(obj: dict) -> PolyCone:
    gens = dec_mat(_need(obj, "generators", "cone"))
    if not gens:
        raise InputError("cone: at least one generator row needed to fix the dimension")
    return PolyCone(dim=len(gens[0]), generators=gens)


def ordering_cone_from_json(obj: dict) -> OrderingCone:
    kind = _need(obj, "kind", "ordering cone")
    if kind == "lex2d":
        return OrderingCone(kind="lex2d")
    if kind == "polyhedral":
        return OrderingCone(kind="polyhedral", cone=polycone_from_json(obj))
    raise InputError(f"ordering cone: unknown kind {kind!r}")


def plfun_to_json(f) -> dict:
    """Serialize any of the three piecewise linear representations."""
    return {
        "dim": f.dim,
        "kind": _sense_of(f),
        "pieces": [{"a": enc_vec(a), "b": rat_to_str(b)} for a, b in f.pieces],
        "domain": hpoly_to_json(f.domain),
    }


def plfun_from_json(obj: dict) -> PLFunctionDual:
    where = "piecewise linear function"
    dim = _dim_of(obj, "dim", where)
    kind = obj.get("kind", "convex")
    if kind not in ("convex", "concave"):
        raise InputError(f"{where}: kind must be 'convex' or 'concave', got {kind!r}")
    pieces = []
    for piece in _need(obj, "pieces", where):
        pieces.append((dec_vec(_need(piece, "a", "piece")),
                       str_to_rat(_need(piece, "b", "piece"))))
    domain = hpoly_from_json(_need(obj, "domain", where))
    return PLFunctionDual(dim=dim, pieces=tuple(pieces), domain=domain, sense=kind)


def pair_from_json(obj: dict):
    f = plfun_from_json(_need(obj, "f", "duality pair"))
    g = plfun_from_json(_need(obj, "g", "duality pair"))
    if f.sense != "convex":
        raise InputError("duality pair: f must have kind 'convex'")
    if g.sense != "concave":
        raise InputError("duality pair: g must have kind 'concave'")
    return f.as_convex(), g.as_concave()


def pair_to_json(f, g) -> dict:
    return {
        "f": plfun_to_json(PLFunctionDual(dim=f.dim, pieces=f.pieces,
                                          domain=f.domain, sense="convex")),
        "g": plfun_to_json(PLFunctionDual(dim=g.dim, pieces=g.pieces,
                                          domain=g.domain, sense="concave")),
    }


def map_to_json(f: PolySetValuedMap) -> dict:
    return {"x_dim": f.x_dim, "y_dim": f.y_dim, "graph": hpoly_to_json(f.graph)}


def map_from_json(obj: dict) -> PolySetValuedMap:
    where = "set-valued map"
    return PolySetValuedMap(
        x_dim=_dim_of(obj, "x_dim", where),
        y_dim=_dim_of(obj, "y_dim", where),
        graph=hpoly_from_json(_need(obj, "graph", where)),
    )


def seq_to_json(x: TailSequence) -> dict:
    tail = None
    if x.tail is not None:
        tail = {"c": rat_to_str(x.tail[0]), "rho": rat_to_str(x.tail[1])}
    return {"prefix": enc_vec(x.prefix), "tail": tail}


def seq_from_json(obj: dict) -> TailSequence:
    where = "tail sequence"
    # "tail" is optional, so a misspelled key would silently drop the
    # tail and describe a different sequence; reject anything unknown.
    extra = sorted(set(obj) - {"prefix", "tail"})
    if extra:
        raise InputError(f"{where}: unknown key(s) " + ", ".join(map(repr, extra))
                         + "; expected 'prefix' and optional 'tail'")
    prefix = dec_vec(_need(obj, "prefix", where))
    tail_obj = obj.get("tail")
    tail = None
    if tail_obj is not None:
        tail = (str_to_rat(_need(tail_obj, "c", "tail")),
                str_to_rat(_need(tail_obj, "rho", "tail")))
    return TailSequence(prefix=prefix, tail=tail)


def cert_to_json(cert: SeparationCertificate) -> dict:
    return {
        "functional": enc_vec(cert.functional),
        "threshold": rat_to_str(cert.threshold),
        "side_a_bound": rat_to_str(cert.side_a_bound),
        "side_b_bound": rat_to_str(cert.side_b_bound),
        "strict_witness": enc_vec(cert.strict_witness),
        "witness_side": cert.witness_side,
    }


def cert_from_json(obj: dict) -> SeparationCertificate:
    where = "separation certificate"
    side = _need(obj, "witness_side", where)
    if side not in ("a", "b"):
        raise InputError(f"{where}: witness_side must be 'a' or 'b'")
    return SeparationCertificate(
        functional=dec_vec(_need(obj, "functional", where)),
        threshold=str_to_rat(_need(obj, "threshold", where)),
        side_a_bound=str_to_rat(_need(obj, "side_a_bound", where)),
        side_b_bound=str_to_rat(_need(obj, "side_b_bound", where)),
        strict_witness=dec_vec(_need(obj, "strict_witness", where)),
        witness_side=side,
    )


def ext_to_str(v) -> str:
    if v is PLUS_INF:
        return "+inf"
    if v is MINUS_INF:
        return "-inf"
    return rat_to_str(v)


def duality_report_to_json(report: DualityReport) -> dict:
    return {
        "primal": ext_to_str(report.primal_value),
        "dual": ext_to_str(report.dual_value),
        "gap": ext_to_str(report.gap) if report.gap is not None else None,
        "qualification": {
            "qri_intersection": report.qual_qri,
            "quasi_regular": list(report.qual_quasi_regular),
            "ri_intersection": report.qual_ri,
            "interior_conditions": list(report.qual_interior),
        },
        "dual_optimizer": (enc_vec(report.dual_optimizer)
                           if report.dual_optimizer is not None else None),
        "certifying_routes": list(report.certifying_routes),
    }


def refutation_to_json(w: IriRefutationWitness, alphas=()) -> dict:
    checks = []
    for alpha in alphas:
        alpha = rat(alpha)
        n = w.alpha_threshold(alpha)
        k, value = w.negative_coordinate(alpha)
        checks.append({
            "alpha": rat_to_str(alpha),
            "threshold_n": n,
            "index": k,
            "coordinate": rat_to_str(value),
        })
    return {
        "candidate": seq_to_json(w.xbar),
        "epsilon": rat_to_str(w.epsilon),
        "indices": list(w.preview_indices),
        "comparison_norm_sq_bound": rat_to_str(w.xtilde_norm_sq_bound),
        "checks": checks,
    }


def canonical_dumps(obj) -> str:
    """Stable serialization: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def load_json_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file")
    except json.JSONDecodeError as e:
        raise InputError(
            f"{path}: malformed JSON at line {e.lineno} column {e.colno}: {e.msg}"
        )


def parse_point(text: str) -> tuple:
    """Command-line point syntax: comma-separated 'p/q' entries."""
    parts = [t.strip() for t in text.split(",") if t.strip()]
    if not parts:
        raise InputError("empty point")
    return tuple(rat(t) for t in parts)
