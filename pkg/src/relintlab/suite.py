"""The eight-batch property suite behind `relintlab suite` and acceptance.

Every batch regenerates its instances from integer sub-seeds, checks an
exact identity instance by instance, and returns a JSON-safe report.
Failures carry the instance index and a short description; a batch passes
iff its failure list is empty. Reports are serialized canonically (sorted
keys, fixed separators), which is what makes the determinism batch a plain
byte comparison.

Parallelism: RELINTLAB_JOBS sets the process count (default: the machine's
processor count). Work is distributed per instance and reassembled in index
order, so the report bytes do not depend on the job count.
"""

from __future__ import annotations

import hashlib
import os
import random
from multiprocessing import Pool
from typing import Callable, Optional

from . import jsonio
from .calculus import check_image_iri, check_image_qri
from .duality import extract_dual_certificate, solve_dual, solve_primal, verify_fenchel_rockafellar
from .errors import InputError, NotMemberError, PreconditionFailed
from .functions import (
    MINUS_INF,
    PLUS_INF,
    PLConcaveFunction,
    PLConvexFunction,
    conjugate,
    concave_conjugate,
    evaluate,
    ext_le,
    ext_sub,
    is_finite,
)
from .generator import (
    gen_cone,
    gen_map,
    gen_matrix,
    gen_pl_pair,
    gen_polyhedron,
    gen_separation_pair,
    gen_sweep_candidate,
)
from .graphs_orders import (
    OrderingCone,
    PLVectorFunction,
    check_graph_equality,
    check_graph_iri_inclusion,
    check_graph_qri_inclusion,
    check_iri_c_epi,
    c_epigraph,
    lex_epi_analysis,
)
from .interiors import (
    iri_member,
    normal_cone,
    polar,
    qri_member,
    relatively_absorbing,
    ri_member,
)
from .ratlp import ONE, Rat, ZERO, cone_member, rat, vec
from .sets import HPolyhedron, PolyCone, difference_cone, sample_points
from .separation import (
    SeparationCertificate,
    properly_separate_sets,
    ri_intersection_nonempty,
    verify_separation_certificate,
)
from .seqlab import TailSequence, ell1ball_iri, ell1ball_qri, ell1ball_normal_test, nonneg_ball_iri_refutation, sign_vector


def _jobs(jobs: Optional[int] = None) -> int:
    if jobs is not None:
        return max(1, jobs)
    env = os.environ.get("RELINTLAB_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _sub_seed(seed: int, criterion: int, index: int) -> int:
    # integer-only mixing; string hashing is process-dependent
    return (seed * 2654435761 + criterion * 40503 + index * 9973 + 12345) % (2 ** 63)


def _run_indexed(worker: Callable, n: int, jobs: int) -> list:
    if jobs <= 1 or n < 8:
        return [worker(i) for i in range(n)]
    with Pool(processes=jobs) as pool:
        return pool.map(worker, range(n), chunksize=max(1, n // (4 * jobs)))


class _C1Worker:
    def __init__(self, seed: int):
        self.seed = seed

    def __call__(self, i: int) -> dict:
        rng = random.Random(_sub_seed(self.seed, 1, i))
        dim = rng.choice((2, 2, 3, 3, 4))
        p = gen_polyhedron(rng, dim)
        pts = list(sample_points(p, limit=6))
        anchor = pts[0]
        pts.append(tuple(x + 5 for x in anchor))
        pts.append(tuple(x - 7 for x in anchor))
        failures = []
        for x in pts:
            a = ri_member(p, x)
            b = iri_member(p, x)
            c = qri_member(p, x)
            routes = {"ri": a, "iri": b, "qri": c}
            if p.contains(x):
                routes["absorbing"] = relatively_absorbing(p, x)
            if len(set(routes.values())) != 1:
                failures.append({
                    "instance": i,
                    "point": jsonio.enc_vec(vec(x)),
                    "routes": {k: bool(v) for k, v in routes.items()},
                })
        return {"points": len(pts), "failures": failures}


def criterion_1(seed: int, jobs: int = 1) -> dict:
    """Membership oracle agreement across all interior notions and routes."""
    n = 300
    rows = _run_indexed(_C1Worker(seed), n, jobs)
    failures = [f for row in rows for f in row["failures"]]
    return {
        "criterion": 1,
        "name": "interior oracle agreement",
        "instances": n,
        "points_checked": sum(row["points"] for row in rows),
        "failures": failures,
        "pass": not failures,
    }


def _cones_set_equal(c1: PolyCone, c2: PolyCone) -> bool:
    return (all(cone_member(c2.generators, g) for g in c1.generators)
            and all(cone_member(c1.generators, g) for g in c2.generators))


class _C2Worker:
    def __init__(self, seed: int):
        self.seed = seed

    def __call__(self, i: int) -> dict:
        rng = random.Random(_sub_seed(self.seed, 2, i))
        failures = []
        if i < 100:
            cone = gen_cone(rng, rng.choice((2, 3, 4)))
            if not _cones_set_equal(cone, polar(polar(cone))):
                failures.append({"instance": i, "kind": "bipolar"})
            return {"checked": 1, "failures": failures}
        p = gen_polyhedron(rng, rng.choice((2, 3)))
        pts = sample_points(p, limit=3)
        checked = 0
        for x in pts:
            nc = normal_cone(p, x)
            pd = polar(difference_cone(p, x))
            checked += 1
            if not _cones_set_equal(nc, pd):
                failures.append({"instance": i, "kind": "normal-vs-polar",
                                 "point": jsonio.enc_vec(vec(x))})
        return {"checked": checked, "failures": failures}


def criterion_2(seed: int, jobs: int = 1) -> dict:
    """Bipolar identity on cones; normal cone equals polar of the
    difference cone on polyhedra."""
    n = 150  # 100 cones + 50 polyhedra
    rows = _run_indexed(_C2Worker(seed), n, jobs)
    failures = [f for row in rows for f in row["failures"]]
    return {
        "criterion": 2,
        "name": "bipolar and normal-cone identities",
        "cones": 100,
        "polyhedra": 50,
        "identities_checked": sum(row["checked"] for row in rows),
        "failures": failures,
        "pass": not failures,
    }


def _scaled_cert(cert: SeparationCertificate, factor) -> SeparationCertificate:
    return SeparationCertificate(
        functional=tuple(factor * a for a in cert.functional),
        threshold=factor * cert.threshold,
        side_a_bound=factor * cert.side_a_bound,
        side_b_bound=factor * cert.side_b_bound,
        strict_witness=cert.strict_witness,
        witness_side=cert.witness_side,
    )


_C3_MODES = ("touching",) * 20 + ("disjoint",) * 40 + ("overlap",) * 45 + ("random",) * 45


class _C3Worker:
    def __init__(self, seed: int):
        self.seed = seed

    def __call__(self, i: int) -> dict:
        rng = random.Random(_sub_seed(self.seed, 3, i))
        mode = _C3_MODES[i]
        p, q = gen_separation_pair(rng, rng.choice((2, 2, 3)), mode)
        failures = []
        cert = properly_separate_sets(p, q)
        separable = not ri_intersection_nonempty(p, q)
        if (cert is not None) != separable:
            failures.append({"instance": i, "mode": mode,
                             "kind": "biconditional",
                             "cert": cert is not None,
                             "oracle_separable": separable})
        replays = 0
        if cert is not None:
            for factor in (ONE, rat(2), rat(1, 3)):
                if verify_separation_certificate(p, q, _scaled_cert(cert, factor)):
                    replays += 1
                else:
                    failures.append({"instance": i, "mode": mode,
                                     "kind": "replay",
                                     "factor": jsonio.rat_to_str(factor)})
        return {"mode": mode, "certificate": cert is not None,
                "replays": replays, "failures": failures}


def criterion_3(seed: int, jobs: int = 1) -> dict:
    """Separation biconditional with certificate replay and scale tests."""
    n = len(_C3_MODES)
    rows = _run_indexed(_C3Worker(seed), n, jobs)
    failures = [f for row in rows for f in row["failures"]]
    return {
        "criterion": 3,
        "name": "proper separation biconditional",
        "pairs": n,
        "touching_pairs": sum(1 for r in rows if r["mode"] == "touching"),
        "certificates": sum(1 for r in rows if r["certificate"]),
        "replays": sum(r["replays"] for r in rows),
        "failures": failures,
        "pass": not failures,
    }


_C4_MODES = ("qualified", "disjoint", "touching", "wild")


class _C4WeakWorker:
    def __init__(self, seed: int):
        self.seed = seed

    def __call__(self, i: int) -> dict:
        rng = random.Random(_sub_seed(self.seed, 4, i))
        mode = _C4_MODES[i % 4]
        f, g = gen_pl_pair(rng, rng.choice((1, 2, 3)), mode)
        primal = solve_primal(f, g)
        dual, _ = solve_dual(f, g)
        ok = ext_le(dual, primal)
        out = {"failures": []}
        if not ok:
            out["failures"].append({
                "instance": i, "mode": mode, "kind": "weak-duality",
                "primal": jsonio.ext_to_str(primal),
                "dual": jsonio.ext_to_str(dual),
            })
        return out


class _C4QualifiedWorker:
    def __init__(self, seed: int):
        self.seed = seed

    def __call__(self, i: int) -> dict:
        rng = random.Random(_sub_seed(self.seed, 44, i))
        f, g = gen_pl_pair(rng, rng.choice((1, 2, 3)), "qualified")
        failures = []
        report = verify_fenchel_rockafellar(f, g)
        if not report.qual_qri:
            failures.append({"instance": i, "kind": "qualification-missed"})
        gap_zero = (report.gap == ZERO or
                    (report.primal_value is MINUS_INF and report.dual_value is MINUS_INF))
        if not gap_zero:
            failures.append({
                "instance": i, "kind": "gap",
                "primal": jsonio.ext_to_str(report.primal_value),
                "dual": jsonio.ext_to_str(report.dual_value),
            })
        return {"failures": failures}


def _closed_form_instance() -> dict:
    # f = |x|, g = -|x - 1| on the whole line
    line = HPolyhedron(dim=1, A=(), b=())
    f = PLConvexFunction(dim=1, pieces=(((ONE,), ZERO), ((-ONE,), ZERO)),
                         domain=line)
    g = PLConcaveFunction(dim=1, pieces=(((ONE,), -ONE), ((-ONE,), ONE)),
                          domain=line)
    failures = []
    primal = solve_primal(f, g)
    dual, point = solve_dual(f, g)
    if primal != ONE or dual != ONE:
        failures.append({"kind": "closed-form-values",
                         "primal": jsonio.ext_to_str(primal),
                         "dual": jsonio.ext_to_str(dual)})
    ystar = extract_dual_certificate(f, g)
    if ystar != (ONE,):
        failures.append({"kind": "closed-form-certificate",
                         "ystar": jsonio.enc_vec(ystar)})
    fstar = conjugate(f)
    gstar = concave_conjugate(g)
    margin = ext_sub(evaluate(gstar, ystar), evaluate(fstar, ystar))
    if not (is_finite(margin) and margin >= ONE):
        failures.append({"kind": "closed-form-margin",
                         "margin": jsonio.ext_to_str(margin)})
    return {
        "primal": jsonio.ext_to_str(primal),
        "dual": jsonio.ext_to_str(dual),
        "dual_certificate": jsonio.enc_vec(ystar),
        "failures": failures,
    }


def criterion_4(seed: int, jobs: int = 1) -> dict:
    """Weak duality on a large sweep, zero gap under qualification, and the
    absolute-value closed-form instance."""
    weak_rows = _run_indexed(_C4WeakWorker(seed), 1000, jobs)
    qual_rows = _run_indexed(_C4QualifiedWorker(seed), 200, jobs)
    closed = _closed_form_instance()
    failures = ([f for row in weak_rows for f in row["failures"]]
                + [f for row in qual_rows for f in row["failures"]]
                + closed["failures"])
    return {
        "criterion": 4,
        "name": "Fenchel duality sweep",
        "weak_duality_pairs": 1000,
        "qualified_pairs": 200,
        "closed_form": {k: v for k, v in closed.items() if k != "failures"},
        "failures": failures,
        "pass": not failures,
    }


def criterion_5(seed: int) -> dict:
    """Sequence-space reproduction: ball memberships, the sign-vector
    contradiction, and the 50-candidate refutation sweep."""
    failures = []
    e1 = TailSequence(prefix=(ONE,), tail=None)
    geo = TailSequence(prefix=(), tail=(rat(1, 2), rat(1, 2)))
    if ell1ball_iri(e1) or ell1ball_qri(e1):
        failures.append({"kind": "e1-exclusion"})
    if ell1ball_iri(geo) or not ell1ball_qri(geo):
        failures.append({"kind": "geometric-inclusion"})
    for prefix in ((ONE,), (rat(1, 2), rat(-1, 2)), (rat(1, 3), rat(1, 3), rat(-1, 3))):
        x = TailSequence(prefix=prefix, tail=None)
        if x.ell1() != ONE:
            failures.append({"kind": "sign-setup", "prefix": jsonio.enc_vec(prefix)})
            continue
        z = sign_vector(x)
        zneg = TailSequence(prefix=tuple(-s for s in z.prefix), tail=None)
        if not ell1ball_normal_test(x, z) or ell1ball_normal_test(x, zneg):
            failures.append({"kind": "sign-contradiction",
                             "prefix": jsonio.enc_vec(prefix)})
    rng = random.Random(_sub_seed(seed, 5, 0))
    counts = {"admitted": 0, "rejected_unit_norm": 0,
              "rejected_zero_coordinate": 0, "not_in_set": 0}
    alphas = (ONE + rat(1, 1000), rat(2), rat(7, 2))
    for i in range(50):
        candidate = gen_sweep_candidate(rng)
        try:
            witness = nonneg_ball_iri_refutation(candidate)
        except PreconditionFailed as e:
            if "unit two-norm" in e.clause:
                counts["rejected_unit_norm"] += 1
            elif "zero coordinate" in e.clause:
                counts["rejected_zero_coordinate"] += 1
            else:
                failures.append({"instance": i, "kind": "unknown-rejection",
                                 "clause": e.clause})
            continue
        except NotMemberError:
            counts["not_in_set"] += 1
            continue
        counts["admitted"] += 1
        if not witness.xtilde_norm_sq_bound <= ONE:
            failures.append({"instance": i, "kind": "comparison-outside-ball"})
        for alpha in alphas:
            k, value = witness.negative_coordinate(alpha)
            if not value < ZERO:
                failures.append({"instance": i, "kind": "refutation",
                                 "alpha": jsonio.rat_to_str(alpha), "index": k})
    if counts["admitted"] == 0:
        failures.append({"kind": "sweep-had-no-admitted-candidates"})
    return {
        "criterion": 5,
        "name": "sequence-space reproduction",
        "sweep": counts,
        "failures": failures,
        "pass": not failures,
    }


class _C6Worker:
    def __init__(self, seed: int):
        self.seed = seed

    def __call__(self, i: int) -> dict:
        rng = random.Random(_sub_seed(self.seed, 6, i))
        solid = (i % 5) != 4
        xd = rng.choice((1, 1, 2))
        yd = rng.choice((1, 2))
        f = gen_map(rng, xd, yd, solid_slices=solid)
        pts = sample_points(f.graph, limit=6)
        pairs = [(x[:xd], x[xd:]) for x in pts]
        failures = []
        if not check_graph_qri_inclusion(f, pairs):
            failures.append({"instance": i, "kind": "qri-inclusion"})
        if not check_graph_iri_inclusion(f, pairs):
            failures.append({"instance": i, "kind": "iri-inclusion"})
        if solid and not check_graph_equality(f, pairs):
            failures.append({"instance": i, "kind": "equality"})
        return {"failures": failures}


def _example_grids() -> list:
    failures = []
    grid3 = [(rat(x), rat(u), rat(v))
             for x in (-1, 0, 1) for u in (-1, 0, 1) for v in (-1, 0, 1)]
    quadrant = OrderingCone(kind="polyhedral", cone=PolyCone(
        dim=2, generators=((ONE, ZERO), (ZERO, ONE))))
    zero_map = PLVectorFunction(x_dim=1, y_dim=2,
                                components=(((ZERO,), ZERO), ((ZERO,), ZERO)))
    samples = [((x,), (u, v)) for x, u, v in grid3]
    if not check_iri_c_epi(zero_map, quadrant, samples):
        failures.append({"kind": "quadrant-outer-estimate"})
    epi = c_epigraph(zero_map, quadrant).region
    strict = [s for s in grid3
              if quadrant.contains_nonzero((s[1], s[2]))
              and not iri_member(epi, s)]
    if not strict:
        failures.append({"kind": "quadrant-strictness-missing"})
    report = lex_epi_analysis(grid3)
    if not report.strict_witnesses:
        failures.append({"kind": "lex-strictness-missing"})
    for row in report.rows:
        if row.in_iri != (row.sample[1] > 0):
            failures.append({"kind": "lex-closed-form",
                             "sample": jsonio.enc_vec(row.sample)})
    return failures


def criterion_6(seed: int, jobs: int = 1) -> dict:
    """Set-valued graph estimates on random maps plus the canonical-grid
    strictness witnesses for both ordering cones."""
    n = 50
    rows = _run_indexed(_C6Worker(seed), n, jobs)
    failures = [f for row in rows for f in row["failures"]]
    failures += _example_grids()
    return {
        "criterion": 6,
        "name": "set-valued graph estimates",
        "maps": n,
        "failures": failures,
        "pass": not failures,
    }


class _C7Worker:
    def __init__(self, seed: int):
        self.seed = seed

    def __call__(self, i: int) -> dict:
        rng = random.Random(_sub_seed(self.seed, 7, i))
        n = rng.choice((2, 2, 3))
        m = rng.choice((1, 2, 3))
        p = gen_polyhedron(rng, n)
        m_rows = gen_matrix(rng, m, n)
        failures = []
        preimages = 0
        for name, check, oracle in (("iri", check_image_iri, iri_member),
                                    ("qri", check_image_qri, qri_member)):
            result = check(m_rows, p, sample_points(p, limit=5))
            if not result.ok:
                failures.append({"instance": i, "kind": f"{name}-image"})
                continue
            for y, x in result.preimages:
                image = tuple(sum((a * t for a, t in zip(row, x)), ZERO)
                              for row in m_rows)
                if image != tuple(y) or not oracle(p, x):
                    failures.append({"instance": i, "kind": f"{name}-preimage",
                                     "target": jsonio.enc_vec(y)})
                else:
                    preimages += 1
        return {"failures": failures, "preimages": preimages}


def criterion_7(seed: int, jobs: int = 1) -> dict:
    """Linear-image interior equalities with re-verified preimages."""
    n = 100
    rows = _run_indexed(_C7Worker(seed), n, jobs)
    failures = [f for row in rows for f in row["failures"]]
    return {
        "criterion": 7,
        "name": "linear image calculus",
        "pairs": n,
        "preimages_reverified": sum(row["preimages"] for row in rows),
        "failures": failures,
        "pass": not failures,
    }


_BATCHES: dict = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: lambda seed, jobs=1: criterion_5(seed),
    6: criterion_6,
    7: criterion_7,
}

_NAME_FILTERS = {
    "interiors": (1,),
    "identities": (2,),
    "separation": (3,),
    "duality": (4,),
    "sequences": (5,),
    "graphs": (6,),
    "calculus": (7,),
    "determinism": (8,),
}


def _batch_reports(seed: int, which, jobs: int) -> dict:
    return {i: _BATCHES[i](seed, jobs=jobs) for i in sorted(which)}


def criterion_8(seed: int, jobs: int = 1,
                first_pass: Optional[dict] = None) -> dict:
    """Byte-level determinism: two same-seed runs of batches 1 through 7
    must serialize identically."""
    first = first_pass or _batch_reports(seed, range(1, 8), jobs)
    second = _batch_reports(seed, range(1, 8), jobs)
    mismatches = []
    hashes = {}
    for i in sorted(first):
        blob_a = jsonio.canonical_dumps(first[i]).encode()
        blob_b = jsonio.canonical_dumps(second[i]).encode()
        hashes[str(i)] = hashlib.sha256(blob_a).hexdigest()
        if blob_a != blob_b:
            mismatches.append({"criterion": i,
                               "sha256_first": hashlib.sha256(blob_a).hexdigest(),
                               "sha256_second": hashlib.sha256(blob_b).hexdigest()})
    return {
        "criterion": 8,
        "name": "byte-level determinism",
        "batches_compared": len(first),
        "report_sha256": hashes,
        "failures": mismatches,
        "pass": not mismatches,
    }


def run_suite(seed: int = 0, name_filter: Optional[str] = None,
              output_dir: Optional[str] = None,
              jobs: Optional[int] = None) -> dict:
    """Run the selected batches and return (and optionally persist) the
    reports. Without a filter, all eight run and the determinism batch
    reuses the first pass as its baseline."""
    jobs = _jobs(jobs)
    if name_filter is None:
        selected = tuple(range(1, 9))
    elif name_filter in _NAME_FILTERS:
        selected = _NAME_FILTERS[name_filter]
    else:
        raise InputError(
            f"unknown filter {name_filter!r}; expected one of "
            + ", ".join(sorted(_NAME_FILTERS)))
    reports = {}
    base = _batch_reports(seed, [i for i in selected if i != 8], jobs)
    reports.update(base)
    if 8 in selected:
        first = base if len(base) == 7 else None
        reports[8] = criterion_8(seed, jobs=jobs, first_pass=first)
    summary = {
        "seed": seed,
        "criteria": [reports[i] for i in sorted(reports)],
        "pass": all(reports[i]["pass"] for i in reports),
    }
    if output_dir:
        os.makedirs(output_dir, exist_ok=True)
        for i in sorted(reports):
            path = os.path.join(output_dir, f"criterion_{i}.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(jsonio.canonical_dumps(reports[i]))
        with open(os.path.join(output_dir, "summary.json"), "w",
                  encoding="utf-8") as fh:
            fh.write(jsonio.canonical_dumps(summary))
    return summary
