"""Interior calculus under linear images, products, and differences.

Each check is a sampled two-sided verification of an exact identity on
polyhedral data. Inclusions that the underlying results prove
constructively are verified constructively here as well: image checks
return the preimages built by the segment-through-an-anchor argument, and
difference checks return slack-maximizing decompositions. Both replays
double as independent evidence, since every returned point is pushed back
through the membership oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice, product
from typing import Callable, Optional, Sequence

from .errors import EmptySetError, InternalInconsistency
from .interiors import iri_member, is_quasi_regular, qri_member
from .ratlp import (
    ONE,
    LPProblem,
    Rat,
    ZERO,
    Vec,
    dot,
    mat,
    solve_lp,
    vadd,
    vec,
    vscale,
    vsub,
    zero_vec,
)
from .sets import (
    HPolyhedron,
    cartesian_product,
    centroid,
    linear_image,
    minkowski_difference,
    sample_points,
    translate,
)

_PAIR_CAP = 64


def _anchor(p: HPolyhedron) -> Vec:
    """A relative-interior point: vertex centroid pushed along every ray."""
    v = p.vrep()
    if not v.points:
        raise EmptySetError("no anchor in an empty set")
    x = centroid(v.points)
    for r in v.rays:
        x = vadd(x, r)
    return x


@dataclass(frozen=True)
class ImageInteriorCheck:
    ok: bool
    preimages: tuple  # ((y, x), ...) with M x = y, x interior to the source

    def __bool__(self) -> bool:
        return self.ok


def _image_check(m_rows, p: HPolyhedron, samples, oracle) -> ImageInteriorCheck:
    m_rows = mat(m_rows)
    img = linear_image(m_rows, p)
    if samples is None:
        samples = sample_points(p)
    xbar = _anchor(p)
    ybar = tuple(dot(row, xbar) for row in m_rows)
    y_samples = []
    for x in samples:
        y = tuple(dot(row, vec(x)) for row in m_rows)
        if y not in y_samples:
            y_samples.append(y)
    for y in sample_points(img):
        if y not in y_samples:
            y_samples.append(y)

    for x in samples:
        x = vec(x)
        if not oracle(p, x):
            continue
        y = tuple(dot(row, x) for row in m_rows)
        if not oracle(img, y):
            return ImageInteriorCheck(ok=False, preimages=())

    n = p.dim
    preimages = []
    for y in y_samples:
        if not oracle(img, y):
            continue
        if y == ybar:
            preimages.append((y, xbar))
            continue
        xt = _segment_preimage(m_rows, p, xbar, ybar, y)
        if xt is None or not oracle(p, xt):
            return ImageInteriorCheck(ok=False, preimages=tuple(preimages))
        if tuple(dot(row, xt) for row in m_rows) != tuple(y):
            raise InternalInconsistency("constructed preimage misses its target")
        preimages.append((y, xt))
    return ImageInteriorCheck(ok=True, preimages=tuple(preimages))


def _segment_preimage(m_rows, p: HPolyhedron, xbar: Vec, ybar: Vec,
                      y: Vec) -> Optional[Vec]:
    """Push y past itself along the ray from the anchor image, lift the far
    point, then step back toward the anchor. The interpolation weight on the
    anchor keeps the result in the source's relative interior."""
    n = p.dim
    direction = vsub(y, ybar)
    A = tuple(tuple(row) + (ZERO,) for row in p.A)
    E = [tuple(row) + (ZERO,) for row in p.E]
    d = list(p.d)
    for row, yb, dr in zip(m_rows, ybar, direction):
        E.append(tuple(row) + (-dr,))
        d.append(yb)
    obj = zero_vec(n) + (ONE,)
    out = solve_lp(LPProblem(c=obj, A=A, b=p.b, E=tuple(E), d=tuple(d)),
                   check_caps=False)
    if out.status == "optimal":
        s = out.value
        if not s > ONE:
            raise InternalInconsistency("interior image point failed to absorb")
        xu = out.point[:n]
    elif out.status == "unbounded":
        s = Rat(2)
        target = vadd(ybar, vscale(s, direction))
        far = HPolyhedron(dim=n, A=p.A, b=p.b,
                          E=p.E + tuple(m_rows), d=p.d + tuple(target),
                          check_caps=False)
        xu = far.feasible_point()
        if xu is None:
            raise InternalInconsistency("unbounded absorption lost feasibility")
    else:
        return None
    t = ONE / s
    return vadd(vscale(t, xu), vscale(ONE - t, xbar))


def check_image_iri(m_rows, p: HPolyhedron, samples=None) -> ImageInteriorCheck:
    """Two-sided sampled check that the linear image of the intrinsic
    relative interior is the intrinsic relative interior of the image."""
    return _image_check(m_rows, p, samples, iri_member)


def check_image_qri(m_rows, p: HPolyhedron, samples=None) -> ImageInteriorCheck:
    """Same two-sided check for the quasi relative interior, with the image's
    quasi-regularity certified first."""
    img = linear_image(mat(m_rows), p)
    if not img.is_empty():
        ok, _ = is_quasi_regular(img)
        if not ok:
            raise InternalInconsistency("polyhedral image failed quasi-regularity")
    return _image_check(m_rows, p, samples, qri_member)


def qri_of_product(p: HPolyhedron, q: HPolyhedron, samples=None) -> bool:
    """Sampled biconditional: a pair sits in the quasi relative interior of
    the product exactly when both halves do."""
    prod = cartesian_product(p, q)
    if samples is None:
        samples = islice(product(sample_points(p), sample_points(q)), _PAIR_CAP)
    for x, y in samples:
        x, y = vec(x), vec(y)
        lhs = qri_member(prod, x + y)
        rhs = qri_member(p, x) and qri_member(q, y)
        if lhs != rhs:
            return False
    return True


@dataclass(frozen=True)
class DifferenceInteriorCheck:
    ok: bool
    decompositions: tuple  # ((x, p_part, q_part), ...) with p - q = x

    def __bool__(self) -> bool:
        return self.ok


def _max_min_slack_decomposition(p: HPolyhedron, q: HPolyhedron,
                                 x: Vec) -> Optional[tuple]:
    """Decompose x = u - w with u, w pushed off every non-implicit facet of
    their sets by a common maximized slack."""
    n = p.dim
    imp_p = set(p.implicit_rows())
    imp_q = set(q.implicit_rows())
    A, b = [], []
    for i, (row, c) in enumerate(zip(p.A, p.b)):
        sl = ZERO if i in imp_p else ONE
        A.append(tuple(row) + zero_vec(n) + (sl,))
        b.append(c)
    for i, (row, c) in enumerate(zip(q.A, q.b)):
        sl = ZERO if i in imp_q else ONE
        A.append(zero_vec(n) + tuple(row) + (sl,))
        b.append(c)
    A.append(zero_vec(2 * n) + (ONE,))
    b.append(ONE)
    E, d = [], []
    for row, c in zip(p.E, p.d):
        E.append(tuple(row) + zero_vec(n) + (ZERO,))
        d.append(c)
    for row, c in zip(q.E, q.d):
        E.append(zero_vec(n) + tuple(row) + (ZERO,))
        d.append(c)
    for i in range(n):
        coupling = [ZERO] * (2 * n + 1)
        coupling[i] = ONE
        coupling[n + i] = -ONE
        E.append(tuple(coupling))
        d.append(x[i])
    obj = zero_vec(2 * n) + (ONE,)
    out = solve_lp(LPProblem(c=obj, A=tuple(A), b=tuple(b), E=tuple(E),
                             d=tuple(d)), check_caps=False)
    if not out.is_optimal or not out.value > ZERO:
        return None
    return out.point[:n], out.point[n:2 * n]


def qri_of_difference(p: HPolyhedron, q: HPolyhedron,
                      samples=None) -> DifferenceInteriorCheck:
    """Sampled two-sided check that the quasi relative interior of a
    Minkowski difference is the difference of the quasi relative interiors.

    Forward direction per sample pair; backward direction by producing an
    explicit decomposition of each interior difference point."""
    diff = minkowski_difference(p, q)
    for u, w in islice(product(sample_points(p), sample_points(q)), _PAIR_CAP):
        if qri_member(p, u) and qri_member(q, w):
            if not qri_member(diff, vsub(u, w)):
                return DifferenceInteriorCheck(ok=False, decompositions=())
    if samples is None:
        samples = sample_points(diff)
    decompositions = []
    for x in samples:
        x = vec(x)
        if not qri_member(diff, x):
            continue
        split = _max_min_slack_decomposition(p, q, x)
        if split is None:
            return DifferenceInteriorCheck(ok=False,
                                           decompositions=tuple(decompositions))
        u, w = split
        if vsub(u, w) != x:
            raise InternalInconsistency("decomposition misses its target")
        if not (qri_member(p, u) and qri_member(q, w)):
            return DifferenceInteriorCheck(ok=False,
                                           decompositions=tuple(decompositions))
        decompositions.append((x, u, w))
    return DifferenceInteriorCheck(ok=True, decompositions=tuple(decompositions))


def check_translation_equivariance(p: HPolyhedron, shift,
                                   samples=None, kind: str = "qri") -> bool:
    """Interior membership commutes with translation, sample by sample."""
    shift = vec(shift)
    moved = translate(p, shift)
    oracle = {"iri": iri_member, "qri": qri_member}[kind]
    if samples is None:
        samples = sample_points(p)
    for x in samples:
        x = vec(x)
        if oracle(p, x) != oracle(moved, vadd(x, shift)):
            return False
    return True
