"""Polyhedral set types and exact representation conversions.

An HPolyhedron is {x : A x <= b, E x = d}; a VPolyhedron is
conv(points) + cone(rays). Conversions in both directions run a double
description pass over a homogenizing cone, entirely in rational arithmetic,
so round trips are exact set equalities rather than approximations.

Conversion results and implicit-equality classifications are cached on the
instance the first time they are computed. Instances are treated as
immutable; caches are write-once and idempotent, so a racing reader can only
ever observe the final value or recompute it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import (
    DeskScaleError,
    DimensionMismatch,
    EmptySetError,
    InputError,
    InternalInconsistency,
    NotMemberError,
)
from .ratlp import (
    DESK_MAX_DIM,
    DESK_MAX_ROWS,
    LPProblem,
    ONE,
    Rat,
    ZERO,
    Vec,
    dot,
    is_zero_vec,
    mat,
    nullspace,
    primitive_direction,
    rank,
    rat,
    solve_linear,
    solve_lp,
    vadd,
    vec,
    vneg,
    vscale,
    vsub,
    zero_vec,
)


def _check_scale(dim: int, n_rows: int) -> None:
    if dim > DESK_MAX_DIM:
        raise DeskScaleError(f"ambient dimension {dim} exceeds desk-scale limit {DESK_MAX_DIM}")
    if n_rows > DESK_MAX_ROWS:
        raise DeskScaleError(f"{n_rows} rows exceed desk-scale limit {DESK_MAX_ROWS}")


@dataclass(eq=False)
class HPolyhedron:
    """Intersection of finitely many closed halfspaces and hyperplanes.

    check_caps=False marks a set derived internally from already-validated
    inputs; desk-scale limits bind only direct construction.
    """

    dim: int
    A: tuple = ()
    b: tuple = ()
    E: tuple = ()
    d: tuple = ()
    check_caps: bool = field(default=True, repr=False)
    _feasible: Optional[tuple] = field(default=None, repr=False)
    _feasible_known: bool = field(default=False, repr=False)
    _implicit: Optional[tuple] = field(default=None, repr=False)
    _vrep: Optional["VPolyhedron"] = field(default=None, repr=False)

    def __post_init__(self):
        self.A = mat(self.A)
        self.b = vec(self.b)
        self.E = mat(self.E)
        self.d = vec(self.d)
        if len(self.A) != len(self.b) or len(self.E) != len(self.d):
            raise DimensionMismatch("row/offset count mismatch")
        for row in self.A + self.E:
            if len(row) != self.dim:
                raise DimensionMismatch(f"row length {len(row)} != dim {self.dim}")
        if self.check_caps:
            _check_scale(self.dim, len(self.A) + len(self.E))

    # -- membership scans (no LP needed) ------------------------------------

    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        if len(x) != self.dim:
            raise DimensionMismatch(f"point dim {len(x)} != set dim {self.dim}")
        return all(dot(r, x) <= c for r, c in zip(self.A, self.b)) and all(
            dot(r, x) == c for r, c in zip(self.E, self.d)
        )

    def recession_contains(self, r: Sequence) -> bool:
        r = vec(r)
        return all(dot(row, r) <= 0 for row in self.A) and all(
            dot(row, r) == 0 for row in self.E
        )

    def active_ineq_rows(self, x: Sequence) -> tuple[int, ...]:
        x = vec(x)
        return tuple(i for i, (row, c) in enumerate(zip(self.A, self.b)) if dot(row, x) == c)

    # -- cached analysis -----------------------------------------------------

    def feasible_point(self) -> Optional[Vec]:
        if not self._feasible_known:
            out = solve_lp(
                LPProblem(c=zero_vec(self.dim), A=self.A, b=self.b, E=self.E, d=self.d),
                check_caps=False,
            )
            self._feasible = out.point if out.is_optimal else None
            self._feasible_known = True
        return self._feasible

    def is_empty(self) -> bool:
        return self.feasible_point() is None

    def implicit_rows(self) -> tuple[int, ...]:
        """Indices of inequality rows satisfied with equality by every point.

        One max-slack LP screens the generic case; only rows tight at its
        optimum need an individual max-slack LP of their own.
        """
        if self._implicit is None:
            if self.is_empty():
                raise EmptySetError("implicit rows of an empty polyhedron")
            if not self.A:
                self._implicit = ()
                return self._implicit
            n = self.dim
            slack_obj = zero_vec(n) + (ONE,)
            rows = [tuple(r) + (ONE,) for r in self.A]
            rows.append(zero_vec(n) + (ONE,))  # s <= 1 keeps the LP bounded
            rhs = self.b + (ONE,)
            eq_rows = tuple(tuple(r) + (ZERO,) for r in self.E)
            out = solve_lp(
                LPProblem(c=slack_obj, A=mat(rows), b=vec(rhs), E=eq_rows, d=self.d),
                check_caps=False,
            )
            if not out.is_optimal:
                raise InternalInconsistency("slack LP infeasible on nonempty set")
            if out.value > 0:
                self._implicit = ()
                return self._implicit
            x0 = out.point[:n]
            found = []
            for i, (row, c) in enumerate(zip(self.A, self.b)):
                if dot(row, x0) != c:
                    continue
                single = solve_lp(
                    LPProblem(
                        c=vneg(row),
                        A=self.A + (tuple(vneg(row)),),
                        b=self.b + (ONE - c,),
                        E=self.E,
                        d=self.d,
                    ),
                    check_caps=False,
                )
                if not single.is_optimal:
                    raise InternalInconsistency("bounded slack LP came back unbounded")
                if single.value == -c:
                    found.append(i)
            self._implicit = tuple(found)
        return self._implicit

    def vrep(self) -> "VPolyhedron":
        if self._vrep is None:
            self._vrep = h_to_v(self)
        return self._vrep


@dataclass(eq=False)
class VPolyhedron:
    """conv(points) + cone(rays); no points means the empty set."""

    dim: int
    points: tuple = ()
    rays: tuple = ()
    check_caps: bool = field(default=True, repr=False)

    def __post_init__(self):
        self.points = tuple(vec(p) for p in self.points)
        self.rays = tuple(vec(r) for r in self.rays)
        for v in self.points + self.rays:
            if len(v) != self.dim:
                raise DimensionMismatch("generator dimension mismatch")
        if self.check_caps:
            _check_scale(self.dim, 0)
        if not self.points:
            self.rays = ()
        else:
            self.rays = tuple(r for r in self.rays if not is_zero_vec(r))

    def is_empty(self) -> bool:
        return not self.points


@dataclass(eq=False)
class PolyCone:
    """Finitely generated cone, generators stored primitive and deduplicated."""

    dim: int
    generators: tuple = ()
    check_caps: bool = field(default=True, repr=False)

    def __post_init__(self):
        seen = set()
        gens = []
        for g in self.generators:
            g = primitive_direction(vec(g))
            if len(g) != self.dim:
                raise DimensionMismatch("generator dimension mismatch")
            if is_zero_vec(g) or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.generators = tuple(gens)
        if self.check_caps:
            _check_scale(self.dim, len(self.generators))


@dataclass(eq=False)
class AffineFlat:
    """base + span(basis) with an independent basis."""

    base: tuple
    basis: tuple = ()

    def __post_init__(self):
        self.base = vec(self.base)
        self.basis = tuple(vec(v) for v in self.basis)
        for v in self.basis:
            if len(v) != len(self.base):
                raise DimensionMismatch("basis vector dimension mismatch")
        if self.basis and rank(self.basis) != len(self.basis):
            raise InputError("affine flat basis must be linearly independent")

    @property
    def dim(self) -> int:
        return len(self.base)

    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        if not self.basis:
            return x == self.base
        cols = tuple(tuple(v[i] for v in self.basis) for i in range(self.dim))
        return solve_linear(cols, vsub(x, self.base)) is not None

    def coordinates(self, x: Sequence) -> Optional[Vec]:
        cols = tuple(tuple(v[i] for v in self.basis) for i in range(self.dim))
        return solve_linear(cols, vsub(vec(x), self.base))


# ---------------------------------------------------------------------------
# double description
# ---------------------------------------------------------------------------


def extreme_rays(ineq: Sequence[Sequence], eq: Sequence[Sequence], dim: int
                 ) -> tuple[tuple[Vec, ...], tuple[Vec, ...]]:
    """Extreme structure of the cone {y : ineq y <= 0, eq y = 0}.

    Returns (lineality_basis, rays): the cone is span(lineality) +
    cone(rays), every listed ray is extreme modulo lineality, and all vectors
    are primitive. Output order is a pure function of input order, which the
    byte-determinism contract relies on.
    """
    ineq = [vec(r) for r in ineq]
    eq = [vec(r) for r in eq]
    all_rows = ineq + eq
    lineality = nullspace(all_rows, dim=dim) if all_rows else nullspace([], dim=dim)
    lineality = tuple(primitive_direction(v) for v in lineality)
    fixed = eq + list(lineality)
    basis = nullspace(fixed, dim=dim) if fixed else nullspace([], dim=dim)
    k = len(basis)
    if k == 0:
        return lineality, ()

    proj = []
    for idx, a in enumerate(ineq):
        row = tuple(dot(a, bv) for bv in basis)
        if not is_zero_vec(row):
            proj.append(row)
    if not proj:
        raise InternalInconsistency("pointed part claims to be unconstrained")

    # initial simplicial cone from k independent rows
    init_idx: list[int] = []
    chosen: list[Vec] = []
    for i, row in enumerate(proj):
        if rank(chosen + [row]) > len(chosen):
            init_idx.append(i)
            chosen.append(row)
        if len(chosen) == k:
            break
    if len(chosen) < k:
        raise InternalInconsistency("projected rows lost rank")

    rays: list[Vec] = []
    for j in range(k):
        rhs = tuple(-ONE if t == j else ZERO for t in range(k))
        sol = solve_linear(chosen, rhs)
        if sol is None:
            raise InternalInconsistency("singular initial basis in double description")
        rays.append(tuple(sol))

    processed = list(init_idx)

    def tight_set(r: Vec) -> frozenset:
        return frozenset(i for i in processed if dot(proj[i], r) == 0)

    tights = [tight_set(r) for r in rays]

    for idx in range(len(proj)):
        if idx in init_idx:
            continue
        a = proj[idx]
        vals = [dot(a, r) for r in rays]
        if all(v <= 0 for v in vals):
            processed.append(idx)
            tights = [
                t | {idx} if v == 0 else t for t, v in zip(tights, vals)
            ]
            continue
        keep_rays: list[Vec] = []
        keep_tights: list[frozenset] = []
        new_rays: list[Vec] = []
        for p_i, vp in enumerate(vals):
            if vp <= 0:
                continue
            for n_i, vn in enumerate(vals):
                if vn >= 0:
                    continue
                common = tights[p_i] & tights[n_i]
                if len(common) < k - 2:
                    continue
                if rank([proj[i] for i in common]) != k - 2:
                    continue
                cand = primitive_direction(
                    vadd(vscale(vp, rays[n_i]), vscale(-vn, rays[p_i]))
                )
                if is_zero_vec(cand):
                    raise InternalInconsistency("degenerate ray combination")
                new_rays.append(cand)
        processed.append(idx)
        for r, v, t in zip(rays, vals, tights):
            if v < 0:
                keep_rays.append(r)
                keep_tights.append(t)
            elif v == 0:
                keep_rays.append(r)
                keep_tights.append(t | {idx})
        seen = set(keep_rays)
        for cand in new_rays:
            if cand in seen:
                continue
            seen.add(cand)
            keep_rays.append(cand)
            keep_tights.append(frozenset(i for i in processed if dot(proj[i], cand) == 0))
        rays = keep_rays
        tights = keep_tights

    lifted = []
    for r in rays:
        y = [ZERO] * dim
        for coef, bv in zip(r, basis):
            if coef != 0:
                y = [a + coef * c for a, c in zip(y, bv)]
        lifted.append(primitive_direction(tuple(y)))
    return lineality, tuple(lifted)


def h_to_v(p: HPolyhedron) -> VPolyhedron:
    """Vertex/ray form via the homogenization cone {(x,t): Ax<=bt, Ex=dt, t>=0}.

    Points are the vertices of the pointed part (rescaled t=1 rays), rays are
    the t=0 extreme rays plus both signs of the lineality directions.
    """
    n = p.dim
    ineq = [tuple(row) + (-c,) for row, c in zip(p.A, p.b)]
    ineq.append(zero_vec(n) + (-ONE,))
    eqs = [tuple(row) + (-c,) for row, c in zip(p.E, p.d)]
    lineality, rays = extreme_rays(ineq, eqs, n + 1)
    points: list[Vec] = []
    rec: list[Vec] = []
    for r in rays:
        t = r[-1]
        if t > 0:
            points.append(tuple(x / t for x in r[:-1]))
        elif t == 0:
            rec.append(primitive_direction(r[:-1]))
        else:
            raise InternalInconsistency("homogenization ray with negative level")
    for l in lineality:
        if l[-1] != 0:
            raise InternalInconsistency("homogenization lineality with nonzero level")
        d = primitive_direction(l[:-1])
        rec.append(d)
        rec.append(vneg(d))
    if not points:
        return VPolyhedron(dim=n, check_caps=False)
    uniq_pts = list(dict.fromkeys(points))
    uniq_rays = list(dict.fromkeys(rec))
    return VPolyhedron(dim=n, points=tuple(uniq_pts), rays=tuple(uniq_rays),
                       check_caps=False)


def empty_h(dim: int, check_caps: bool = True) -> HPolyhedron:
    """Canonical H-form of the empty set: 0 . x <= -1."""
    return HPolyhedron(dim=dim, A=(zero_vec(dim),), b=(-ONE,), check_caps=check_caps)


def v_to_h(v: VPolyhedron) -> HPolyhedron:
    """Facet/hyperplane form via the cone of valid inequalities.

    A pair (a, c) is valid for conv(points)+cone(rays) iff a.p <= c on every
    point and a.r <= 0 on every ray; the extreme rays of that cone are the
    facets, its lineality directions the affine-hull equalities.
    """
    n = v.dim
    if v.is_empty():
        return empty_h(n, check_caps=False)
    rows = [tuple(p) + (-ONE,) for p in v.points]
    rows += [tuple(r) + (ZERO,) for r in v.rays]
    lineality, facets = extreme_rays(rows, [], n + 1)
    A: list[Vec] = []
    b: list[Rat] = []
    E: list[Vec] = []
    d: list[Rat] = []
    for f in facets:
        a, c = f[:-1], f[-1]
        if is_zero_vec(a):
            if c <= 0:
                raise InternalInconsistency("trivially false inequality from nonempty data")
            continue  # 0.x <= c with c > 0 says nothing
        A.append(a)
        b.append(c)
    for l in lineality:
        a, c = l[:-1], l[-1]
        if is_zero_vec(a):
            raise InternalInconsistency("degenerate affine-hull direction")
        E.append(a)
        d.append(c)
    return HPolyhedron(dim=n, A=tuple(A), b=tuple(b), E=tuple(E), d=tuple(d),
                       check_caps=False)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def affine_hull(p: HPolyhedron) -> AffineFlat:
    """Smallest affine flat containing p (nonempty required)."""
    if p.is_empty():
        raise EmptySetError("affine hull of the empty set")
    rows = list(p.E) + [p.A[i] for i in p.implicit_rows()]
    basis = nullspace(rows, dim=p.dim) if rows else nullspace([], dim=p.dim)
    return AffineFlat(base=p.feasible_point(), basis=basis)


def difference_cone(p: HPolyhedron, xbar: Sequence) -> PolyCone:
    """cone(p - xbar), generated by vertex differences and recession rays."""
    xbar = vec(xbar)
    if not p.contains(xbar):
        raise NotMemberError("difference cone anchored outside the set")
    vr = p.vrep()
    gens = [vsub(pt, xbar) for pt in vr.points] + list(vr.rays)
    return PolyCone(dim=p.dim, generators=tuple(gens), check_caps=False)


def minkowski_difference(p: HPolyhedron, q: HPolyhedron) -> HPolyhedron:
    """p - q = {x - y : x in p, y in q} in H-form."""
    if p.dim != q.dim:
        raise DimensionMismatch("minkowski difference of mismatched dimensions")
    if p.is_empty() or q.is_empty():
        raise EmptySetError("minkowski difference with an empty operand")
    dv = difference_vrep(p, q)
    out = v_to_h(dv)
    out._vrep = dv  # valid generator form; reused by separation scans
    return out


def difference_vrep(p: HPolyhedron, q: HPolyhedron) -> VPolyhedron:
    """V-form of p - q: pairwise vertex differences, rays of p and -rays of q."""
    vp, vq = p.vrep(), q.vrep()
    pts = list(dict.fromkeys(vsub(a, c) for a in vp.points for c in vq.points))
    rays = list(dict.fromkeys(
        [primitive_direction(r) for r in vp.rays]
        + [primitive_direction(vneg(r)) for r in vq.rays]
    ))
    return VPolyhedron(dim=p.dim, points=tuple(pts), rays=tuple(rays),
                       check_caps=False)


def linear_image(m_rows: Sequence[Sequence], p: HPolyhedron) -> HPolyhedron:
    """Image {M x : x in p} in H-form."""
    m_rows = mat(m_rows)
    if not m_rows:
        raise InputError("linear image needs at least one output coordinate")
    if any(len(r) != p.dim for r in m_rows):
        raise DimensionMismatch("matrix columns must match set dimension")
    out_dim = len(m_rows)
    vr = p.vrep()
    if vr.is_empty():
        return empty_h(out_dim, check_caps=False)
    pts = list(dict.fromkeys(tuple(dot(r, pt) for r in m_rows) for pt in vr.points))
    rays = []
    for ray in vr.rays:
        img = tuple(dot(r, ray) for r in m_rows)
        if not is_zero_vec(img):
            rays.append(primitive_direction(img))
    rays = list(dict.fromkeys(rays))
    return v_to_h(VPolyhedron(dim=out_dim, points=tuple(pts), rays=tuple(rays),
                              check_caps=False))


def image_vrep(m_rows: Sequence[Sequence], p: HPolyhedron) -> VPolyhedron:
    m_rows = mat(m_rows)
    vr = p.vrep()
    pts = list(dict.fromkeys(tuple(dot(r, pt) for r in m_rows) for pt in vr.points))
    rays = []
    for ray in vr.rays:
        img = tuple(dot(r, ray) for r in m_rows)
        if not is_zero_vec(img):
            rays.append(primitive_direction(img))
    return VPolyhedron(dim=len(m_rows), points=tuple(pts),
                       rays=tuple(dict.fromkeys(rays)), check_caps=False)


def translate(p: HPolyhedron, q: Sequence) -> HPolyhedron:
    q = vec(q)
    if len(q) != p.dim:
        raise DimensionMismatch("translation vector dimension mismatch")
    return HPolyhedron(
        dim=p.dim,
        A=p.A,
        b=tuple(c + dot(row, q) for row, c in zip(p.A, p.b)),
        E=p.E,
        d=tuple(c + dot(row, q) for row, c in zip(p.E, p.d)),
        check_caps=False,
    )


def cartesian_product(p: HPolyhedron, q: HPolyhedron) -> HPolyhedron:
    n, m = p.dim, q.dim
    A = [tuple(row) + zero_vec(m) for row in p.A] + [zero_vec(n) + tuple(row) for row in q.A]
    E = [tuple(row) + zero_vec(m) for row in p.E] + [zero_vec(n) + tuple(row) for row in q.E]
    return HPolyhedron(dim=n + m, A=tuple(A), b=p.b + q.b, E=tuple(E), d=p.d + q.d,
                       check_caps=False)


# ---------------------------------------------------------------------------
# comparisons and sampling
# ---------------------------------------------------------------------------


def vrep_subset_of(v: VPolyhedron, h: HPolyhedron) -> bool:
    """conv(points)+cone(rays) inside {Ax<=b, Ex=d}: generator scans suffice."""
    if v.is_empty():
        return True
    return all(h.contains(pt) for pt in v.points) and all(
        h.recession_contains(r) for r in v.rays
    )


def set_equal(p: HPolyhedron, q: HPolyhedron) -> bool:
    if p.dim != q.dim:
        raise DimensionMismatch("set equality across dimensions")
    if p.is_empty() or q.is_empty():
        return p.is_empty() and q.is_empty()
    return vrep_subset_of(p.vrep(), q) and vrep_subset_of(q.vrep(), p)


def minimal_face_dim(p: HPolyhedron, x: Sequence) -> int:
    """Dimension of the smallest face of p containing x (x must be in p)."""
    x = vec(x)
    if not p.contains(x):
        raise NotMemberError("face dimension of a non-member")
    rows = list(p.E) + [p.A[i] for i in p.active_ineq_rows(x)]
    if not rows:
        return p.dim
    return len(nullspace(rows, dim=p.dim))


def centroid(points: Sequence[Vec]) -> Vec:
    n = len(points)
    total = points[0]
    for pt in points[1:]:
        total = vadd(total, pt)
    return vscale(Rat(1) / n, total)


def sample_points(p: HPolyhedron, seed: int = 0, n_random: int = 5,
                  limit: Optional[int] = None) -> list[Vec]:
    """Deterministic member samples: vertices, edge midpoints, centroid, ray
    offsets at distance one from the centroid, then seeded rational convex
    combinations. Empty set gives an empty list."""
    vr = p.vrep()
    if vr.is_empty():
        return []
    out: list[Vec] = list(vr.points)
    pts = vr.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            mid = vscale(rat(1, 2), vadd(pts[i], pts[j]))
            if minimal_face_dim(p, mid) == 1:
                out.append(mid)
    c = centroid(pts)
    out.append(c)
    if vr.rays:
        for r in vr.rays:
            out.append(vadd(c, r))
            out.append(vadd(pts[0], r))
        total = vr.rays[0]
        for r in vr.rays[1:]:
            total = vadd(total, r)
        out.append(vadd(c, total))
    rng = random.Random(seed)
    for _ in range(n_random):
        weights = [rat(rng.randint(1, 4)) for _ in pts]
        s = sum(weights, ZERO)
        pt = zero_vec(p.dim)
        for w, v in zip(weights, pts):
            pt = vadd(pt, vscale(w / s, v))
        for r in vr.rays:
            t = rat(rng.randint(0, 2), 2)
            if t != 0:
                pt = vadd(pt, vscale(t, r))
        out.append(pt)
    uniq = list(dict.fromkeys(out))
    for x in uniq:
        if not p.contains(x):
            raise InternalInconsistency("sampler produced a non-member")
    return uniq[:limit] if limit is not None else uniq
