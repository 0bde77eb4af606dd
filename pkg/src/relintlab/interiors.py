"""Membership oracles for three interior notions, normal cones, and polars.

For a polyhedron the relative interior (strict on every non-implicit row),
the intrinsic relative interior (difference cone is a subspace), and the
quasi relative interior (normal cone is a subspace) coincide; the three
oracles here compute them by those three distinct routes so agreement is a
checkable fact rather than an alias.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from .errors import (
    EmptySetError,
    InputError,
    InternalInconsistency,
    NotMemberError,
    PreconditionFailed,
)
from .ratlp import (
    LPProblem,
    ONE,
    Rat,
    ZERO,
    Vec,
    cone_is_subspace,
    cone_member,
    dot,
    rat,
    solve_lp,
    vadd,
    vec,
    vneg,
    vscale,
    vsub,
    zero_vec,
)
from .sets import (
    HPolyhedron,
    PolyCone,
    VPolyhedron,
    centroid,
    difference_cone,
    extreme_rays,
    minimal_face_dim,
)


def ri_member(p: HPolyhedron, xbar: Sequence) -> bool:
    """Relative-interior test: member, and strict on every non-implicit row."""
    if p.is_empty():
        raise EmptySetError("relative interior of the empty set")
    xbar = vec(xbar)
    if not p.contains(xbar):
        return False
    implicit = set(p.implicit_rows())
    for i, (row, c) in enumerate(zip(p.A, p.b)):
        if i in implicit:
            continue
        if dot(row, xbar) == c:
            return False
    return True


def relatively_absorbing(p: HPolyhedron, xbar: Sequence) -> bool:
    """Segment test: every vertex sees past xbar, every recession direction
    is matched by its negation in cone(p - xbar)."""
    xbar = vec(xbar)
    if not p.contains(xbar):
        raise NotMemberError("absorption test anchored outside the set")
    vr = p.vrep()
    for v in vr.points:
        u = vsub(xbar, v)
        if not any(u):
            continue
        rows = tuple((dot(a, u),) for a in p.A)
        rhs = tuple(c - dot(a, xbar) for a, c in zip(p.A, p.b))
        eq_rows = tuple((dot(e, u),) for e in p.E)
        out = solve_lp(
            LPProblem(c=(ONE,), A=rows, b=rhs, E=eq_rows, d=zero_vec(len(eq_rows))),
            check_caps=False,
        )
        if out.status == "infeasible":
            raise InternalInconsistency("segment LP lost its base point")
        if out.is_optimal and out.value <= 0:
            return False
    gens = difference_cone(p, xbar).generators
    for r in vr.rays:
        if not cone_member(gens, vneg(r)):
            return False
    return True


def iri_member(p: HPolyhedron, xbar: Sequence) -> bool:
    """Intrinsic-relative-interior test: cone(p - xbar) is a subspace."""
    if p.is_empty():
        raise EmptySetError("intrinsic relative interior of the empty set")
    xbar = vec(xbar)
    if not p.contains(xbar):
        return False
    return cone_is_subspace(difference_cone(p, xbar).generators)


def normal_cone(p: HPolyhedron, xbar: Sequence) -> PolyCone:
    """Generators of {y : <y, x - xbar> <= 0 on p}: active inequality normals
    plus both signs of every equality row."""
    xbar = vec(xbar)
    if not p.contains(xbar):
        raise NotMemberError("normal cone anchored outside the set")
    gens = [p.A[i] for i in p.active_ineq_rows(xbar)]
    for e in p.E:
        gens.append(e)
        gens.append(vneg(e))
    return PolyCone(dim=p.dim, generators=tuple(gens))


def polar(c: PolyCone) -> PolyCone:
    """Polar cone {y : <g, y> <= 0 for every generator g}, in generator form."""
    lineality, rays = extreme_rays(c.generators, (), c.dim)
    gens = list(rays)
    for l in lineality:
        gens.append(l)
        gens.append(vneg(l))
    return PolyCone(dim=c.dim, generators=tuple(gens))


def polar_set(p: HPolyhedron) -> HPolyhedron:
    """One-polar {y : <x, y> <= 1 for all x in p} read off the V-form."""
    vr = p.vrep()
    rows = [tuple(pt) for pt in vr.points if any(pt)]
    rhs = [ONE] * len(rows)
    for r in vr.rays:
        rows.append(tuple(r))
        rhs.append(ZERO)
    return HPolyhedron(dim=p.dim, A=tuple(rows), b=tuple(rhs), check_caps=False)


def qri_member(p: HPolyhedron, xbar: Sequence) -> bool:
    """Quasi-relative-interior test: the normal cone is a subspace."""
    if p.is_empty():
        raise EmptySetError("quasi relative interior of the empty set")
    xbar = vec(xbar)
    if not p.contains(xbar):
        return False
    return cone_is_subspace(normal_cone(p, xbar).generators)


def nonsupport_point(p: HPolyhedron, xbar: Sequence) -> bool:
    """True when no hyperplane supports p at xbar without containing p.

    Decided generator by generator: each normal direction must be reversible
    inside the normal cone. Agrees with qri_member by construction of the
    normal cone, but runs through an independent membership-LP path.
    """
    xbar = vec(xbar)
    if not p.contains(xbar):
        raise NotMemberError("support test anchored outside the set")
    gens = normal_cone(p, xbar).generators
    return all(cone_member(gens, vneg(g)) for g in gens)


_SWEEP_VERTEX_CAP = 10


def quasi_regular_sweep_points(p: HPolyhedron) -> list[Vec]:
    """Vertices, edge midpoints, vertex centroid, and one offset per ray.

    Midpoints are scanned over a capped vertex window so the sweep stays
    linear in the size of the V-representation.
    """
    vr = p.vrep()
    pts: list[Vec] = list(vr.points[:_SWEEP_VERTEX_CAP])
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, min(i + 3, n)):
            mid = vscale(rat(1, 2), vadd(vr.points[i], vr.points[j]))
            if minimal_face_dim(p, mid) == 1:
                pts.append(mid)
    c = centroid(vr.points)
    pts.append(c)
    for r in vr.rays[:_SWEEP_VERTEX_CAP]:
        pts.append(vadd(c, r))
    return list(dict.fromkeys(pts))


def is_quasi_regular(p: HPolyhedron) -> tuple[bool, str]:
    """Whether the intrinsic and quasi relative interiors coincide (they do,
    for every nonempty polyhedron), plus a certificate naming the route and
    the sweep that re-verified oracle agreement pointwise."""
    if p.is_empty():
        raise EmptySetError("quasi-regularity of the empty set")
    swept = quasi_regular_sweep_points(p)
    for x in swept:
        a, b, c = iri_member(p, x), qri_member(p, x), ri_member(p, x)
        if not (a == b == c):
            raise InternalInconsistency(
                f"interior oracles disagree at {x}: iri={a} qri={b} ri={c}"
            )
    return (
        True,
        "nonempty polyhedron: relative interior is nonempty, so the intrinsic "
        f"and quasi relative interiors both equal it; swept {len(swept)} points "
        "with all three oracles agreeing",
    )


_ORACLES: dict = {}


def _oracle(kind: str) -> Callable:
    if not _ORACLES:
        _ORACLES.update(ri=ri_member, iri=iri_member, qri=qri_member)
    if kind not in _ORACLES:
        raise InputError(f"unknown interior kind {kind!r}; expected ri, iri, or qri")
    return _ORACLES[kind]


def segment_check(p: HPolyhedron, xbar: Sequence, xtilde: Sequence,
                  kind: str = "ri",
                  samples: Sequence = (rat(1, 4), rat(1, 2), rat(3, 4), ONE)) -> bool:
    """Half-open segment principle: with xbar interior (of the given kind) and
    xtilde in the set, every sampled point t*xbar + (1-t)*xtilde, t in (0,1],
    must be interior of the same kind."""
    oracle = _oracle(kind)
    xbar, xtilde = vec(xbar), vec(xtilde)
    if not oracle(p, xbar):
        raise PreconditionFailed("anchor point fails the interior oracle",
                                 kind=kind, point=xbar)
    if not p.contains(xtilde):
        raise PreconditionFailed("far endpoint is not a member of the set",
                                 point=xtilde)
    for t in samples:
        t = rat(t)
        if not (0 < t <= 1):
            raise InputError(f"segment parameter {t} outside (0, 1]")
        z = vadd(vscale(t, xbar), vscale(ONE - t, xtilde))
        if not oracle(p, z):
            return False
    return True
