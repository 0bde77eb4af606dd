"""Set-valued maps with polyhedral graphs and cone-ordered epigraphs.

A map is stored as its graph in (x, y)-space; domains and slices come out
as exact polyhedra. Ordering cones come in two builds: polyhedral closed
cones (Archimedean when solid, but not totally ordering for 2 and up), and
the two-dimensional lexicographic cone, which totally orders the plane but
is not closed and not Archimedean; the latter is handled symbolically since
no H-form can express a non-closed set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from .errors import (
    DimensionMismatch,
    InputError,
    InternalInconsistency,
    PreconditionFailed,
)
from .interiors import iri_member, is_quasi_regular, polar, qri_member
from .ratlp import (
    ONE,
    ZERO,
    Vec,
    cone_member,
    dot,
    is_zero_vec,
    rank,
    rat,
    vec,
    vsub,
)
from .sets import HPolyhedron, PolyCone, linear_image


@dataclass(eq=False)
class PolySetValuedMap:
    """x maps to the polyhedral slice {y : (x, y) in graph}."""

    x_dim: int
    y_dim: int
    graph: HPolyhedron

    def __post_init__(self):
        if self.graph.dim != self.x_dim + self.y_dim:
            raise DimensionMismatch("graph must live in the product space")


@dataclass(eq=False)
class OrderingCone:
    """Either a closed polyhedral cone or the plane's lexicographic cone.

    The lexicographic kind contains (u, v) iff u > 0, or u = 0 and v >= 0;
    it totally orders the plane but no rescaling argument tames it (shrinking
    a positive first coordinate never reaches the cone's edge), while solid
    polyhedral cones behave the other way around.
    """

    kind: str  # "polyhedral" | "lex2d"
    cone: Optional[PolyCone] = None

    def __post_init__(self):
        if self.kind == "polyhedral":
            if self.cone is None:
                raise InputError("polyhedral ordering cone needs generators")
        elif self.kind == "lex2d":
            if self.cone is not None:
                raise InputError("lexicographic cone carries no generator data")
        else:
            raise InputError(f"unknown ordering cone kind {self.kind!r}")

    @property
    def dim(self) -> int:
        return self.cone.dim if self.kind == "polyhedral" else 2

    def contains(self, y: Sequence) -> bool:
        y = vec(y)
        if len(y) != self.dim:
            raise DimensionMismatch("cone membership dimension mismatch")
        if self.kind == "polyhedral":
            return cone_member(self.cone.generators, y)
        u, v = y
        return u > 0 or (u == 0 and v >= 0)

    def contains_nonzero(self, y: Sequence) -> bool:
        y = vec(y)
        return self.contains(y) and not is_zero_vec(y)


@dataclass(eq=False)
class PLVectorFunction:
    """Total affine map x -> M x + c, one (row, offset) per output coordinate."""

    x_dim: int
    y_dim: int
    components: tuple  # ((a, b), ...) with len == y_dim

    def __post_init__(self):
        comps = []
        for a, b in self.components:
            a = vec(a)
            if len(a) != self.x_dim:
                raise DimensionMismatch("component row dimension mismatch")
            comps.append((a, rat(b)))
        self.components = tuple(comps)
        if len(self.components) != self.y_dim:
            raise DimensionMismatch("one affine component per output coordinate")

    def __call__(self, x: Sequence) -> Vec:
        x = vec(x)
        if len(x) != self.x_dim:
            raise DimensionMismatch("argument dimension mismatch")
        return tuple(dot(a, x) + b for a, b in self.components)


def map_domain(f: PolySetValuedMap) -> HPolyhedron:
    """Exact projection of the graph onto x-space."""
    proj = tuple(
        tuple(ONE if j == i else ZERO for j in range(f.x_dim + f.y_dim))
        for i in range(f.x_dim)
    )
    return linear_image(proj, f.graph)


def map_slice(f: PolySetValuedMap, xbar: Sequence) -> HPolyhedron:
    """The value set {y : (xbar, y) in graph} in y-space."""
    xbar = vec(xbar)
    if len(xbar) != f.x_dim:
        raise DimensionMismatch("slice point dimension mismatch")
    n = f.x_dim
    g = f.graph
    A, b, E, d = [], [], [], []
    for row, c in zip(g.A, g.b):
        yrow = tuple(row[n:])
        c = c - dot(row[:n], xbar)
        if is_zero_vec(yrow) and c >= 0:
            continue  # vacuous after pinning x
        A.append(yrow)
        b.append(c)
    for row, c in zip(g.E, g.d):
        yrow = tuple(row[n:])
        c = c - dot(row[:n], xbar)
        if is_zero_vec(yrow) and c == 0:
            continue
        E.append(yrow)
        d.append(c)
    return HPolyhedron(dim=f.y_dim, A=tuple(A), b=tuple(b), E=tuple(E),
                       d=tuple(d), check_caps=False)


def point_in_interior(p: HPolyhedron, y: Sequence) -> bool:
    """Full-dimensional interior test: strict on every inequality row, and no
    effective equality row at all."""
    y = vec(y)
    if not p.contains(y):
        return False
    for row, c in zip(p.A, p.b):
        if is_zero_vec(row):
            continue  # vacuous row, satisfied strictly off its own support
        if dot(row, y) == c:
            return False
    for row in p.E:
        if not is_zero_vec(row):
            return False
    return True


def _split(sample, f: PolySetValuedMap) -> tuple[Vec, Vec]:
    x, y = sample
    x, y = vec(x), vec(y)
    if len(x) != f.x_dim or len(y) != f.y_dim:
        raise DimensionMismatch("sample pair dimension mismatch")
    return x, y


def check_graph_qri_inclusion(f: PolySetValuedMap, samples: Sequence) -> bool:
    """Inner estimate: x in qri(domain) and y interior to the slice force
    (x, y) into qri(graph). Samples failing the hypotheses are skipped."""
    dom = map_domain(f)
    if dom.is_empty():
        return True
    for sample in samples:
        x, y = _split(sample, f)
        if not qri_member(dom, x):
            continue
        if not point_in_interior(map_slice(f, x), y):
            continue
        if not qri_member(f.graph, x + y):
            return False
    return True


def check_graph_iri_inclusion(f: PolySetValuedMap, samples: Sequence) -> bool:
    """Outer estimate: (x, y) in iri(graph) forces x into iri(domain) and y
    into iri of the slice."""
    dom = map_domain(f)
    if dom.is_empty():
        return True
    for sample in samples:
        x, y = _split(sample, f)
        if not iri_member(f.graph, x + y):
            continue
        if not iri_member(dom, x):
            return False
        if not iri_member(map_slice(f, x), y):
            return False
    return True


def check_graph_equality(f: PolySetValuedMap, samples: Sequence) -> bool:
    """Two-sided form: (x, y) in qri(graph) iff x in qri(domain) and y
    interior to the slice. Needs every sampled slice to have interior."""
    dom = map_domain(f)
    if dom.is_empty():
        raise PreconditionFailed("equality check needs a nonempty domain")
    ok, _ = is_quasi_regular(dom)
    if not ok:
        raise InternalInconsistency("polyhedral domain failed quasi-regularity")
    slices = {}
    for sample in samples:
        x, y = _split(sample, f)
        if not dom.contains(x):
            continue
        if x not in slices:
            sl = map_slice(f, x)
            from .functions import _interior_slack
            if _interior_slack(sl) is None:
                raise PreconditionFailed(
                    "sampled slice has empty interior", at=x
                )
            slices[x] = sl
        lhs = qri_member(f.graph, x + y)
        rhs = qri_member(dom, x) and point_in_interior(slices[x], y)
        if lhs != rhs:
            return False
    return True


_LAMBDAS = (rat(1, 4), rat(1, 2), rat(3, 4))


def c_convexity_check(f: Union[PLVectorFunction, Callable], c: OrderingCone,
                      trials: Sequence = ()) -> bool:
    """Midpoint-style convexity relative to the cone's order.

    Affine maps pass structurally. A general callable candidate is probed on
    the given (x1, x2) trial pairs at three interior ratios: the combination
    gap lam*f(x1) + (1-lam)*f(x2) - f(lam*x1 + (1-lam)*x2) must land in the
    cone every time.
    """
    if isinstance(f, PLVectorFunction):
        return True
    for x1, x2 in trials:
        x1, x2 = vec(x1), vec(x2)
        f1, f2 = vec(f(x1)), vec(f(x2))
        for lam in _LAMBDAS:
            xm = tuple(lam * a + (ONE - lam) * b for a, b in zip(x1, x2))
            fm = vec(f(xm))
            gap = tuple(lam * a + (ONE - lam) * b - m for a, b, m in zip(f1, f2, fm))
            if not c.contains(gap):
                return False
    return True


@dataclass(frozen=True)
class CEpigraphResult:
    """H-form of {(x, y) : y - f(x) in C} plus the domain classification."""

    region: HPolyhedron
    domain_full: bool  # total affine f over a solid closed cone: all of x-space


def c_epigraph(f: PLVectorFunction, c: OrderingCone) -> CEpigraphResult:
    """Epigraph of f relative to a solid closed polyhedral ordering cone."""
    if c.kind != "polyhedral":
        raise InputError(
            "the lexicographic cone is not closed; its epigraph has no H-form "
            "and is analyzed symbolically instead"
        )
    if c.dim != f.y_dim:
        raise DimensionMismatch("ordering cone must live in the output space")
    if rank(c.cone.generators) != c.dim:
        raise PreconditionFailed(
            "ordering cone must have nonempty interior", rank=rank(c.cone.generators)
        )
    halfspaces = polar(c.cone).generators  # y in C iff <h, y> <= 0 for all h
    rows = []
    rhs = []
    for h in halfspaces:
        xpart = []
        offset = ZERO
        for hj, (a, b) in zip(h, f.components):
            offset += hj * b
        for i in range(f.x_dim):
            xpart.append(-sum(hj * a[i] for hj, (a, _) in zip(h, f.components)))
        rows.append(tuple(xpart) + tuple(h))
        rhs.append(offset)
    region = HPolyhedron(dim=f.x_dim + f.y_dim, A=tuple(rows), b=tuple(rhs),
                         check_caps=False)
    return CEpigraphResult(region=region, domain_full=True)


def check_iri_c_epi(f: PLVectorFunction, c: OrderingCone,
                    samples: Sequence) -> bool:
    """Outer estimate for cone epigraphs: a sample (x, y) inside
    iri(epigraph) must have y - f(x) in the cone and nonzero. The converse
    fails for partial orders and is deliberately not asserted."""
    epi = c_epigraph(f, c).region
    for sample in samples:
        x, y = vec(sample[0]), vec(sample[1])
        if not iri_member(epi, x + y):
            continue
        if not c.contains_nonzero(vsub(y, f(x))):
            return False
    return True


@dataclass(frozen=True)
class LexEpiRow:
    sample: tuple  # (x, u, v)
    in_epi: bool
    in_rhs: bool
    in_iri: bool


@dataclass(frozen=True)
class LexEpiReport:
    rows: tuple
    strict_witnesses: tuple  # samples with in_rhs and not in_iri


def lex_epi_analysis(samples: Sequence) -> LexEpiReport:
    """The zero map into the lexicographically ordered plane, symbolically.

    Its cone epigraph is the x-line crossed with the lexicographic cone; the
    intrinsic relative interior is the x-line crossed with the open halfplane
    u > 0. Each sample (x, u, v) is classified, and every sample lying in the
    cone minus the origin but outside the interior set is collected as a
    witness that the outer estimate is strict.
    """
    lex = OrderingCone(kind="lex2d")
    rows = []
    witnesses = []
    for sample in samples:
        x, u, v = (rat(t) for t in sample)
        in_epi = lex.contains((u, v))
        in_rhs = in_epi and not (u == 0 and v == 0)
        in_iri = u > 0
        if in_iri and not in_rhs:
            raise InternalInconsistency("interior sample escaped the outer estimate")
        row = LexEpiRow(sample=(x, u, v), in_epi=in_epi, in_rhs=in_rhs,
                        in_iri=in_iri)
        rows.append(row)
        if in_rhs and not in_iri:
            witnesses.append((x, u, v))
    return LexEpiReport(rows=tuple(rows), strict_witnesses=tuple(witnesses))
