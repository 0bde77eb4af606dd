"""Proper and strict separation with replayable certificates.

A certificate pins down a nonzero functional, a threshold, the exact bounds
it achieves on each side, and one witness point sitting strictly off the
threshold. Verification is two LPs plus scans, all rational, so a replay
either reproduces the claim exactly or refutes it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    DimensionMismatch,
    EmptySetError,
    InternalInconsistency,
    PreconditionFailed,
)
from .interiors import normal_cone
from .ratlp import (
    LPProblem,
    ONE,
    Rat,
    ZERO,
    Vec,
    cone_member,
    dot,
    mat,
    solve_linear,
    solve_lp,
    vadd,
    vec,
    vneg,
    vscale,
    vsub,
    zero_vec,
)
from .sets import AffineFlat, HPolyhedron, minkowski_difference

_IDENTITY_CACHE: dict = {}


def point_set(x: Sequence) -> HPolyhedron:
    """The singleton {x} as an H-polyhedron (identity equality system)."""
    x = vec(x)
    n = len(x)
    if n not in _IDENTITY_CACHE:
        _IDENTITY_CACHE[n] = tuple(
            tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
        )
    return HPolyhedron(dim=n, E=_IDENTITY_CACHE[n], d=x)


@dataclass(frozen=True)
class SeparationCertificate:
    """sup over side a <= threshold <= inf over side b, strict somewhere."""

    functional: tuple
    threshold: Rat
    side_a_bound: Rat
    side_b_bound: Rat
    strict_witness: tuple
    witness_side: str  # "a" or "b"


def _normalized(xstar: Vec) -> tuple[Vec, Rat]:
    """Scale so the first nonzero entry has absolute value one."""
    for entry in xstar:
        if entry != 0:
            s = entry if entry > 0 else -entry
            return tuple(x / s for x in xstar), s
    raise InternalInconsistency("zero functional in a separation certificate")


def _certificate(xstar: Vec, threshold: Rat, side_a: Rat, side_b: Rat,
                 witness: Vec, side: str) -> SeparationCertificate:
    xstar, s = _normalized(xstar)
    return SeparationCertificate(
        functional=xstar,
        threshold=threshold / s,
        side_a_bound=side_a / s,
        side_b_bound=side_b / s,
        strict_witness=tuple(witness),
        witness_side=side,
    )


def _box_separation_lp(diffs: Sequence[Vec], rays: Sequence[Vec], dim: int):
    """max t subject to <d, w> + t <= 0, <r, w> <= 0, w in [-1,1]^dim.

    Variables are (w, t); a positive optimum gives a uniform strict margin.
    """
    rows = []
    rhs = []
    for d in diffs:
        rows.append(tuple(d) + (ONE,))
        rhs.append(ZERO)
    for r in rays:
        rows.append(tuple(r) + (ZERO,))
        rhs.append(ZERO)
    for i in range(dim):
        e = [ZERO] * (dim + 1)
        e[i] = ONE
        rows.append(tuple(e))
        rhs.append(ONE)
        e = [ZERO] * (dim + 1)
        e[i] = -ONE
        rows.append(tuple(e))
        rhs.append(ONE)
    obj = zero_vec(dim) + (ONE,)
    out = solve_lp(LPProblem(c=obj, A=tuple(rows), b=tuple(rhs)), check_caps=False)
    if not out.is_optimal:
        raise InternalInconsistency("bounded separation LP did not come back optimal")
    return out.value, out.point[:dim]


def properly_separate_point(p: HPolyhedron, xbar: Sequence
                            ) -> Optional[SeparationCertificate]:
    """Certificate separating p from the point xbar, or None.

    None happens exactly when xbar sits so deep in p that every supporting
    functional at xbar contains all of p (the quasi-relative-interior case).
    Members are handled through the normal cone: the first generator whose
    negation is not also a normal direction separates properly. Non-members
    get a strict certificate from a boxed maximum-margin LP.
    """
    if p.is_empty():
        raise EmptySetError("cannot separate against the empty set")
    xbar = vec(xbar)
    if len(xbar) != p.dim:
        raise DimensionMismatch("point dimension mismatch")
    vr = p.vrep()
    if p.contains(xbar):
        gens = normal_cone(p, xbar).generators
        xstar = None
        for g in gens:
            if not cone_member(gens, vneg(g)):
                xstar = g
                break
        if xstar is None:
            return None
        gamma = dot(xstar, xbar)
        witness = None
        for v in vr.points:
            if dot(xstar, v) < gamma:
                witness = v
                break
        if witness is None:
            for r in vr.rays:
                if dot(xstar, r) < 0:
                    witness = vadd(vr.points[0], r)
                    break
        if witness is None:
            raise InternalInconsistency("proper separation without a strict point")
        return _certificate(xstar, gamma, gamma, gamma, witness, "a")
    diffs = [vsub(v, xbar) for v in vr.points]
    margin, w = _box_separation_lp(diffs, vr.rays, p.dim)
    if margin <= 0:
        raise InternalInconsistency("outside point produced no strict margin")
    side_a = max(dot(w, v) for v in vr.points)
    side_b = dot(w, xbar)
    threshold = (side_a + side_b) / 2
    return _certificate(w, threshold, side_a, side_b, xbar, "b")


def ri_intersection_nonempty(p: HPolyhedron, q: HPolyhedron) -> bool:
    """Shared-slack LP: is there a point strict on every non-implicit row of
    both sets at once, i.e. in ri(p) and ri(q)?"""
    if p.is_empty() or q.is_empty():
        raise EmptySetError("relative-interior intersection with an empty set")
    if p.dim != q.dim:
        raise DimensionMismatch("intersection across dimensions")
    n = p.dim
    rows = []
    rhs = []
    for poly in (p, q):
        implicit = set(poly.implicit_rows())
        for i, (a, c) in enumerate(zip(poly.A, poly.b)):
            rows.append(tuple(a) + ((ZERO,) if i in implicit else (ONE,)))
            rhs.append(c)
    rows.append(zero_vec(n) + (ONE,))
    rhs.append(ONE)
    eq_rows = tuple(tuple(e) + (ZERO,) for e in p.E + q.E)
    eq_rhs = p.d + q.d
    out = solve_lp(
        LPProblem(c=zero_vec(n) + (ONE,), A=tuple(rows), b=tuple(rhs),
                  E=eq_rows, d=eq_rhs),
        check_caps=False,
    )
    return out.is_optimal and out.value > 0


def properly_separate_sets(p: HPolyhedron, q: HPolyhedron
                           ) -> Optional[SeparationCertificate]:
    """Certificate with sup over p <= threshold <= inf over q, or None.

    Decided on the difference set p - q against the origin, then cross-checked
    against an independent relative-interior intersection LP; the two must
    agree or the run aborts. Witness search order: vertices of p, vertices of
    q, then ray-shifted points.
    """
    if p.dim != q.dim:
        raise DimensionMismatch("separation across dimensions")
    if p.is_empty() or q.is_empty():
        raise EmptySetError("cannot separate an empty set")
    diff = minkowski_difference(p, q)
    base = properly_separate_point(diff, zero_vec(p.dim))
    meets = ri_intersection_nonempty(p, q)
    if (base is None) != meets:
        raise InternalInconsistency(
            "difference-set route and intersection LP disagree on separability"
        )
    if base is None:
        return None
    xstar = base.functional
    vp, vq = p.vrep(), q.vrep()
    for r in vp.rays:
        if dot(xstar, r) > 0:
            raise InternalInconsistency("separating functional unbounded on side a")
    for r in vq.rays:
        if dot(xstar, r) < 0:
            raise InternalInconsistency("separating functional unbounded on side b")
    side_a = max(dot(xstar, v) for v in vp.points)
    side_b = min(dot(xstar, v) for v in vq.points)
    if side_a > side_b:
        raise InternalInconsistency("separation bounds crossed")
    threshold = side_a if side_a == side_b else (side_a + side_b) / 2
    witness = None
    side = ""
    for v in vp.points:
        if dot(xstar, v) < threshold:
            witness, side = v, "a"
            break
    if witness is None:
        for v in vq.points:
            if dot(xstar, v) > threshold:
                witness, side = v, "b"
                break
    if witness is None:
        for r in vp.rays:
            if dot(xstar, r) < 0:
                witness, side = vadd(vp.points[0], r), "a"
                break
    if witness is None:
        for r in vq.rays:
            if dot(xstar, r) > 0:
                witness, side = vadd(vq.points[0], r), "b"
                break
    if witness is None:
        raise InternalInconsistency("proper separation without a strict point")
    return SeparationCertificate(
        functional=xstar,
        threshold=threshold,
        side_a_bound=side_a,
        side_b_bound=side_b,
        strict_witness=tuple(witness),
        witness_side=side,
    )


def _span_coords(basis: Sequence[Vec], x: Vec) -> Optional[Vec]:
    cols = tuple(tuple(v[i] for v in basis) for i in range(len(x)))
    return solve_linear(cols, x)


def strict_separate_in_subspace(flat: AffineFlat, p: HPolyhedron, xbar: Sequence
                                ) -> tuple[Vec, Rat]:
    """Functional u in span(flat.basis) with sup over p strictly below <u, xbar>.

    Works inside the flat's coordinates; the lift solves the Gram system of
    the basis so rational inner products transfer exactly. Returns (u, margin)
    with margin = <u, xbar> - sup over p, always positive.
    """
    xbar = vec(xbar)
    if p.is_empty():
        raise EmptySetError("cannot separate against the empty set")
    if not flat.contains(zero_vec(flat.dim)):
        raise PreconditionFailed("flat must pass through the origin")
    if not flat.contains(xbar):
        raise PreconditionFailed("point must lie in the flat", point=xbar)
    if p.contains(xbar):
        raise PreconditionFailed("point must lie outside the set", point=xbar)
    basis = flat.basis
    vr = p.vrep()
    coord_pts = []
    for v in vr.points:
        c = _span_coords(basis, v) if basis else None
        if c is None:
            raise PreconditionFailed("set must be contained in the flat", point=v)
        coord_pts.append(c)
    coord_rays = []
    for r in vr.rays:
        c = _span_coords(basis, r) if basis else None
        if c is None:
            raise PreconditionFailed("set must be contained in the flat", ray=r)
        coord_rays.append(c)
    cx = _span_coords(basis, xbar)
    if cx is None:
        raise PreconditionFailed("point must lie in the flat", point=xbar)
    k = len(basis)
    diffs = [vsub(c, cx) for c in coord_pts]
    margin, w = _box_separation_lp(diffs, coord_rays, k)
    if margin <= 0:
        raise InternalInconsistency("outside point produced no strict margin")
    gram = tuple(tuple(dot(bi, bj) for bj in basis) for bi in basis)
    wprime = solve_linear(gram, w)
    if wprime is None:
        raise InternalInconsistency("singular Gram matrix on an independent basis")
    u = zero_vec(flat.dim)
    for coef, bv in zip(wprime, basis):
        u = vadd(u, vscale(coef, bv))
    sup = max(dot(u, v) for v in vr.points)
    exact_margin = dot(u, xbar) - sup
    if exact_margin <= 0:
        raise InternalInconsistency("lifted functional lost its margin")
    return u, exact_margin


def verify_separation_certificate(p: HPolyhedron, q: HPolyhedron,
                                  cert: SeparationCertificate) -> bool:
    """Replay a certificate: one maximizing LP per side plus witness scans."""
    xstar = vec(cert.functional)
    if not any(x != 0 for x in xstar):
        return False
    if len(xstar) != p.dim or p.dim != q.dim:
        return False
    gamma = cert.threshold
    left = solve_lp(LPProblem(c=xstar, A=p.A, b=p.b, E=p.E, d=p.d), check_caps=False)
    if not left.is_optimal or left.value > gamma:
        return False
    right = solve_lp(LPProblem(c=vneg(xstar), A=q.A, b=q.b, E=q.E, d=q.d),
                     check_caps=False)
    if not right.is_optimal or -right.value < gamma:
        return False
    w = vec(cert.strict_witness)
    in_p = p.contains(w)
    in_q = q.contains(w)
    value = dot(xstar, w)
    if in_p and value < gamma:
        return True
    if in_q and value > gamma:
        return True
    return False
