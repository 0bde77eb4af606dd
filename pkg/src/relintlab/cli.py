"""Command-line front end.

Every answer is a JSON document on standard output. Exit codes: 0 for a
verified result, 1 for a violated property (diagnostic on standard error),
2 for bad input (malformed JSON, dimension or scale violations).
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Optional

from . import jsonio
from .duality import extract_dual_certificate, qualification_report, verify_fenchel_rockafellar
from .errors import InputError, InternalInconsistency, PropertyViolation
from .functions import concave_conjugate, conjugate
from .generator import gen_cone, gen_map, gen_pl_pair, gen_polyhedron, gen_sweep_candidate
from .graphs_orders import check_graph_equality, check_graph_iri_inclusion, check_graph_qri_inclusion
from .interiors import iri_member, normal_cone, polar, qri_member, ri_member
from .ratlp import rat
from .separation import properly_separate_sets, verify_separation_certificate
from .seqlab import ell1ball_iri, ell1ball_qri, ell1ball_normal_test, nonneg_ball_iri_refutation
from .sets import sample_points
from .suite import run_suite

_MEMBER_ORACLES = {"ri": ri_member, "iri": iri_member, "qri": qri_member}


def _emit(obj) -> None:
    sys.stdout.write(jsonio.canonical_dumps(obj))


def _cmd_member(args) -> int:
    p = jsonio.hpoly_from_json(jsonio.load_json_file(args.set))
    x = jsonio.parse_point(args.point)
    member = _MEMBER_ORACLES[args.kind](p, x)
    out = {"kind": args.kind, "member": member}
    if p.contains(x):
        out["active_rows"] = list(p.active_ineq_rows(x))
        out["implicit_rows"] = list(p.implicit_rows())
    _emit(out)
    return 0


def _cmd_normal_cone(args) -> int:
    p = jsonio.hpoly_from_json(jsonio.load_json_file(args.set))
    x = jsonio.parse_point(args.point)
    cone = normal_cone(p, x)
    _emit({"generators": jsonio.enc_mat(cone.generators)})
    return 0


def _cmd_polar(args) -> int:
    cone = jsonio.polycone_from_json(jsonio.load_json_file(args.cone))
    _emit({"generators": jsonio.enc_mat(polar(cone).generators)})
    return 0


def _cmd_separate(args) -> int:
    a = jsonio.hpoly_from_json(jsonio.load_json_file(args.a))
    b = jsonio.hpoly_from_json(jsonio.load_json_file(args.b))
    cert = properly_separate_sets(a, b)
    if cert is None:
        _emit({"separable": False})
        return 0
    if not verify_separation_certificate(a, b, cert):
        raise InternalInconsistency("freshly emitted certificate failed replay")
    _emit({"separable": True, "certificate": jsonio.cert_to_json(cert)})
    return 0


def _cmd_verify_certificate(args) -> int:
    raw = jsonio.load_json_file(args.certificate)
    if isinstance(raw, dict) and "certificate" in raw:
        raw = raw["certificate"]  # accept the envelope `separate` emits
    cert = jsonio.cert_from_json(raw)
    a = jsonio.hpoly_from_json(jsonio.load_json_file(args.a))
    b = jsonio.hpoly_from_json(jsonio.load_json_file(args.b))
    ok = verify_separation_certificate(a, b, cert)
    _emit({"verified": ok})
    if not ok:
        sys.stderr.write("certificate failed replay against the given sets\n")
        return 1
    return 0


def _cmd_conjugate(args) -> int:
    f = jsonio.plfun_from_json(jsonio.load_json_file(args.function))
    star = conjugate(f) if f.sense == "convex" else concave_conjugate(f)
    _emit(jsonio.plfun_to_json(star))
    return 0


def _cmd_duality(args) -> int:
    f, g = jsonio.pair_from_json(jsonio.load_json_file(args.pair))
    report = verify_fenchel_rockafellar(f, g)
    _emit(jsonio.duality_report_to_json(report))
    return 0


def _cmd_certify_duality(args) -> int:
    f, g = jsonio.pair_from_json(jsonio.load_json_file(args.pair))
    report = qualification_report(f, g)
    ystar = extract_dual_certificate(f, g)
    _emit({
        "ystar": jsonio.enc_vec(ystar),
        "qualification": {
            "qri_intersection": report["qual_qri"],
            "ri_intersection": report["qual_ri"],
        },
    })
    return 0


def _cmd_graph_check(args) -> int:
    f = jsonio.map_from_json(jsonio.load_json_file(args.map))
    pts = sample_points(f.graph, limit=8)
    pairs = [(x[:f.x_dim], x[f.x_dim:]) for x in pts]
    qri_ok = check_graph_qri_inclusion(f, pairs)
    iri_ok = check_graph_iri_inclusion(f, pairs)
    try:
        equality: Optional[bool] = check_graph_equality(f, pairs)
    except InputError:
        equality = None  # some sampled slice has empty interior
    _emit({"qri_inclusion": qri_ok, "iri_inclusion": iri_ok,
           "equality": equality})
    if not qri_ok or not iri_ok or equality is False:
        sys.stderr.write("graph interior estimate failed on a sampled pair\n")
        return 1
    return 0


_SEQLAB_ARITY = {"ell1-iri": 1, "ell1-qri": 1, "normal-test": 2, "refute": 1}


def _cmd_seqlab(args) -> int:
    case = args.case
    need = _SEQLAB_ARITY.get(case)
    if need is None:
        raise InputError(
            f"unknown seqlab case {case!r}; expected ell1-iri, ell1-qri, "
            "normal-test, or refute")
    if len(args.args) != need:
        raise InputError(
            f"seqlab {case} takes {need} sequence file(s), "
            f"got {len(args.args)}")
    if case in ("ell1-iri", "ell1-qri"):
        x = jsonio.seq_from_json(jsonio.load_json_file(args.args[0]))
        member = ell1ball_iri(x) if case == "ell1-iri" else ell1ball_qri(x)
        _emit({"member": member})
        return 0
    if case == "normal-test":
        x = jsonio.seq_from_json(jsonio.load_json_file(args.args[0]))
        z = jsonio.seq_from_json(jsonio.load_json_file(args.args[1]))
        _emit({"member": ell1ball_normal_test(x, z)})
        return 0
    if case == "refute":
        x = jsonio.seq_from_json(jsonio.load_json_file(args.args[0]))
        witness = nonneg_ball_iri_refutation(x, rat(args.epsilon))
        alphas = (rat(1) + rat(1, 1000), rat(2), rat(7, 2))
        _emit(jsonio.refutation_to_json(witness, alphas=alphas))
        return 0
    raise AssertionError(case)


def _cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    out = []
    for _ in range(args.count):
        if args.what == "polyhedra":
            out.append(jsonio.hpoly_to_json(gen_polyhedron(rng, args.dim)))
        elif args.what == "cones":
            out.append(jsonio.cone_to_json(gen_cone(rng, args.dim)))
        elif args.what == "pairs":
            f, g = gen_pl_pair(rng, args.dim, args.mode)
            out.append(jsonio.pair_to_json(f, g))
        elif args.what == "maps":
            y_dim = max(1, args.dim // 2)
            out.append(jsonio.map_to_json(
                gen_map(rng, args.dim - y_dim, y_dim)))
        else:
            out.append(jsonio.seq_to_json(gen_sweep_candidate(rng)))
    if args.output:
        import os
        os.makedirs(args.output, exist_ok=True)
        for i, obj in enumerate(out):
            path = os.path.join(args.output,
                                f"{args.what}_{args.seed}_{i:04d}.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(jsonio.canonical_dumps(obj))
        _emit({"written": len(out), "directory": args.output})
    else:
        _emit(out)
    return 0


def _cmd_suite(args) -> int:
    summary = run_suite(seed=args.seed, name_filter=args.filter,
                        output_dir=args.output, jobs=args.jobs)
    _emit(summary)
    return 0 if summary["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relintlab",
        description="exact interior, separation, and duality oracles on "
                    "rational polyhedral data")
    sub = parser.add_subparsers(dest="command", required=True)

    for kind in ("ri", "iri", "qri"):
        s = sub.add_parser(kind, help=f"{kind} membership of a point")
        s.add_argument("set", help="H-polyhedron JSON file")
        s.add_argument("point", help="comma-separated p/q coordinates")
        s.set_defaults(func=_cmd_member, kind=kind)

    s = sub.add_parser("normal-cone", help="generators of the normal cone")
    s.add_argument("set")
    s.add_argument("point")
    s.set_defaults(func=_cmd_normal_cone)

    s = sub.add_parser("polar", help="generators of the polar cone")
    s.add_argument("cone", help="cone JSON file with a generators array")
    s.set_defaults(func=_cmd_polar)

    s = sub.add_parser("separate", help="proper separation certificate")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=_cmd_separate)

    s = sub.add_parser("verify-certificate",
                       help="replay a separation certificate")
    s.add_argument("certificate")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=_cmd_verify_certificate)

    s = sub.add_parser("conjugate", help="piecewise linear conjugate")
    s.add_argument("function")
    s.set_defaults(func=_cmd_conjugate)

    s = sub.add_parser("duality", help="duality report for a pair file")
    s.add_argument("pair")
    s.set_defaults(func=_cmd_duality)

    s = sub.add_parser("certify-duality",
                       help="extract and verify a dual certificate")
    s.add_argument("pair")
    s.set_defaults(func=_cmd_certify_duality)

    s = sub.add_parser("graph-check",
                       help="interior estimates for a set-valued map")
    s.add_argument("map")
    s.set_defaults(func=_cmd_graph_check)

    s = sub.add_parser("seqlab", help="sequence-space oracles")
    s.add_argument("case",
                   help="ell1-iri | ell1-qri | normal-test | refute")
    s.add_argument("args", nargs="*", help="case arguments (JSON files)")
    s.add_argument("--epsilon", default="1/4")
    s.set_defaults(func=_cmd_seqlab)

    s = sub.add_parser("gen", help="generate seeded random instances")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--what", default="polyhedra",
                   choices=("polyhedra", "cones", "pairs", "maps", "sequences"))
    s.add_argument("--mode", default="qualified",
                   choices=("qualified", "disjoint", "touching", "wild"))
    s.add_argument("--output")
    s.set_defaults(func=_cmd_gen)

    s = sub.add_parser("suite", help="run the property suite")
    s.add_argument("--filter", default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--output")
    s.add_argument("--jobs", type=int, default=None)
    s.set_defaults(func=_cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except InputError as e:
        sys.stderr.write(f"input error: {e}\n")
        return 2
    except (PropertyViolation, InternalInconsistency) as e:
        sys.stderr.write(f"property violated: {type(e).__name__}: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
