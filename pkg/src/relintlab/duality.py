"""Exact Fenchel duality for piecewise-linear pairs.

The primal value inf(f - g) and the dual value sup(g conjugate minus f
conjugate) are both computed as single LPs over epigraph/hypograph
polyhedra; all qualification conditions are decided by the interior and
separation oracles rather than assumed; a dual certificate is extracted by
properly separating the epigraph from the lifted hypograph, mirroring how
the equality of the two values is actually proved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import (
    DimensionMismatch,
    InternalInconsistency,
    PreconditionFailed,
    QualificationError,
)
from .functions import (
    ExtValue,
    MINUS_INF,
    PLUS_INF,
    PLConcaveFunction,
    PLConvexFunction,
    PLFunctionDual,
    concave_conjugate,
    conjugate,
    continuity_diagnostics,
    epigraph,
    evaluate,
    ext_le,
    ext_sub,
    hypograph,
    is_finite,
    negate_concave,
)
from .interiors import is_quasi_regular
from .ratlp import (
    LPProblem,
    ONE,
    Rat,
    ZERO,
    Vec,
    rat,
    solve_lp,
    vec,
    vneg,
    vscale,
    zero_vec,
)
from .sets import HPolyhedron, cartesian_product, minkowski_difference, translate
from .separation import properly_separate_sets, ri_intersection_nonempty

ConvexLike = Union[PLConvexFunction, PLFunctionDual]
ConcaveLike = Union[PLConcaveFunction, PLFunctionDual]


def _pair_dims(f: ConvexLike, g: ConcaveLike) -> int:
    if f.dim != g.dim:
        raise DimensionMismatch("function pair dimension mismatch")
    return f.dim


def _difference_lp(epi: HPolyhedron, hypo: HPolyhedron, n: int):
    """max (mu - lam) over {(x, lam, mu) : (x, lam) in epi, (x, mu) in hypo}."""
    rows = []
    rhs = []
    eq_rows = []
    eq_rhs = []
    for row, c in zip(epi.A, epi.b):
        rows.append(tuple(row[:n]) + (row[n], ZERO))
        rhs.append(c)
    for row, c in zip(epi.E, epi.d):
        eq_rows.append(tuple(row[:n]) + (row[n], ZERO))
        eq_rhs.append(c)
    for row, c in zip(hypo.A, hypo.b):
        rows.append(tuple(row[:n]) + (ZERO, row[n]))
        rhs.append(c)
    for row, c in zip(hypo.E, hypo.d):
        eq_rows.append(tuple(row[:n]) + (ZERO, row[n]))
        eq_rhs.append(c)
    obj = zero_vec(n) + (-ONE, ONE)
    return solve_lp(
        LPProblem(c=obj, A=tuple(rows), b=tuple(rhs),
                  E=tuple(eq_rows), d=tuple(eq_rhs)),
        check_caps=False,
    )


def solve_primal(f: ConvexLike, g: ConcaveLike) -> ExtValue:
    """inf{f(x) - g(x)}: +inf when the domains miss, -inf when unbounded."""
    n = _pair_dims(f, g)
    out = _difference_lp(epigraph(f), hypograph(g), n)
    if out.status == "infeasible":
        return PLUS_INF
    if out.status == "unbounded":
        return MINUS_INF
    return -out.value


def solve_dual(f: ConvexLike, g: ConcaveLike) -> tuple[ExtValue, Optional[Vec]]:
    """sup{g_conj(y) - f_conj(y)} over the conjugate pair, plus a maximizer.

    -inf when the conjugate domains miss (dual infeasible), +inf when
    unbounded; the maximizer is reported only for a finite optimum.
    """
    n = _pair_dims(f, g)
    fstar = conjugate(f)
    gstar = concave_conjugate(g)
    out = _difference_lp(epigraph(fstar), hypograph(gstar), n)
    if out.status == "infeasible":
        return MINUS_INF, None
    if out.status == "unbounded":
        return PLUS_INF, None
    return out.value, out.point[:n]


@dataclass(frozen=True)
class DualityReport:
    primal_value: ExtValue
    dual_value: ExtValue
    gap: Optional[Rat]
    qual_qri: bool
    qual_quasi_regular: tuple  # (dom f - dom g, epi f, epi f - hypo g)
    qual_ri: bool
    qual_interior: tuple  # four equivalent interiority routes
    dual_optimizer: Optional[tuple]
    certifying_routes: tuple


def qualification_report(f: ConvexLike, g: ConcaveLike) -> dict:
    """Each qualification flag, computed by its own oracle.

    qri intersection is decided through the separation machinery (separable
    exactly when the quasi relative interiors miss), which itself
    cross-checks a relative-interior LP, so the two routes can never settle
    on different answers silently.
    """
    _pair_dims(f, g)
    qual_qri = properly_separate_sets(f.domain, g.domain) is None
    qual_ri = ri_intersection_nonempty(f.domain, g.domain)
    if qual_qri != qual_ri:
        raise InternalInconsistency("qri and ri intersection routes disagree")
    epi_f = epigraph(f)
    hypo_g = hypograph(g)
    qq = (
        is_quasi_regular(minkowski_difference(f.domain, g.domain))[0],
        is_quasi_regular(epi_f)[0],
        is_quasi_regular(minkowski_difference(epi_f, hypo_g))[0],
    )
    diag_f = continuity_diagnostics(f)
    diag_neg_g = continuity_diagnostics(negate_concave(g))
    qual_interior = (
        diag_f.int_dom_nonempty and diag_neg_g.int_dom_nonempty,
        diag_f.bounded_above_on_open_set and diag_neg_g.bounded_above_on_open_set,
        diag_f.int_epi_nonempty and diag_neg_g.int_epi_nonempty,
        diag_f.int_dom_nonempty and diag_neg_g.int_dom_nonempty,
    )
    return {
        "qual_qri": qual_qri,
        "qual_quasi_regular": qq,
        "qual_ri": qual_ri,
        "qual_interior": qual_interior,
    }


def verify_fenchel_rockafellar(f: ConvexLike, g: ConcaveLike) -> DualityReport:
    """Assemble values, gap, and qualification flags, and enforce both
    guarantees on the spot: weak duality must hold unconditionally, and a
    qualified pair must show a zero gap. Either failure is an internal
    inconsistency, not a report entry.
    """
    primal = solve_primal(f, g)
    dual, xstar = solve_dual(f, g)
    if not ext_le(dual, primal):
        raise InternalInconsistency(
            f"weak duality violated: primal {primal}, dual {dual}"
        )
    quals = qualification_report(f, g)
    routes = []
    if quals["qual_qri"] and all(quals["qual_quasi_regular"]):
        routes.append("qri-intersection with quasi-regular difference sets")
    if quals["qual_ri"]:
        routes.append("relative interiors of the domains intersect")
    if quals["qual_qri"] and any(quals["qual_interior"]):
        routes.append("qri intersection plus interiority of the pair")
    gap: Optional[Rat] = None
    if is_finite(primal) and is_finite(dual):
        gap = primal - dual
    if routes:
        zero_gap = (gap == 0) if gap is not None else (
            primal is MINUS_INF and dual is MINUS_INF
        )
        if not zero_gap:
            raise InternalInconsistency(
                f"qualified pair shows a duality gap: primal {primal}, dual {dual}"
            )
    return DualityReport(
        primal_value=primal,
        dual_value=dual,
        gap=gap,
        qual_qri=quals["qual_qri"],
        qual_quasi_regular=quals["qual_quasi_regular"],
        qual_ri=quals["qual_ri"],
        qual_interior=quals["qual_interior"],
        dual_optimizer=xstar,
        certifying_routes=tuple(routes),
    )


def extract_dual_certificate(f: ConvexLike, g: ConcaveLike,
                             alpha: Optional[Rat] = None) -> Vec:
    """A dual point y with g_conj(y) - f_conj(y) >= alpha, found by separation.

    alpha defaults to the primal value and must be a finite lower bound of it.
    The lifted hypograph {(x, t) : t <= g(x) + alpha} and the epigraph of f
    are properly separated; the epigraph's upward ray forces the separating
    functional (u, beta) to have beta >= 0, and beta = 0 means the functional
    ignores the value axis entirely, which is exactly a failed qualification.
    """
    n = _pair_dims(f, g)
    if alpha is None:
        alpha = solve_primal(f, g)
        if not is_finite(alpha):
            raise PreconditionFailed(
                "certificate extraction needs a finite primal value",
                primal=repr(alpha),
            )
    alpha = rat(alpha)
    epi_f = epigraph(f)
    lifted = translate(hypograph(g), zero_vec(n) + (alpha,))
    cert = properly_separate_sets(lifted, epi_f)
    if cert is None:
        raise PreconditionFailed(
            "alpha must be a lower bound of the primal value", alpha=alpha
        )
    u, beta = cert.functional[:n], cert.functional[n]
    if beta < 0:
        raise InternalInconsistency("separating functional points down the value axis")
    if beta == 0:
        raise QualificationError(
            "separating functional is vertical: the domains admit no"
            " value-axis separation, so no dual certificate exists at this alpha"
        )
    ybar = vscale(-ONE / beta, u)
    fstar = conjugate(f)
    gstar = concave_conjugate(g)
    achieved = ext_sub(evaluate(gstar, ybar), evaluate(fstar, ybar))
    if not ext_le(alpha, achieved):
        raise InternalInconsistency(
            f"extracted certificate achieves {achieved}, below alpha {alpha}"
        )
    return ybar
