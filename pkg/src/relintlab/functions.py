"""Piecewise-linear convex and concave functions with exact conjugates.

A convex function here is a max of finitely many affine pieces restricted to
a polyhedral effective domain (+inf outside); a concave one is a min of
pieces (-inf outside). This is the largest class closed under Fenchel
conjugation in exact rational arithmetic: the conjugate of a PL function is
PL again, read directly off the generator form of the epigraph.

Infinite values are the tagged singletons PLUS_INF and MINUS_INF, never
floats or sentinels; indeterminate arithmetic raises instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .errors import (
    DimensionMismatch,
    EmptySetError,
    IndeterminateForm,
    InputError,
    InternalInconsistency,
)
from .ratlp import (
    LPProblem,
    ONE,
    Rat,
    ZERO,
    Vec,
    dot,
    mat,
    rat,
    solve_lp,
    vec,
    vneg,
    zero_vec,
)
from .sets import HPolyhedron


class _PlusInf:
    __slots__ = ()

    def __repr__(self):
        return "+inf"


class _MinusInf:
    __slots__ = ()

    def __repr__(self):
        return "-inf"


PLUS_INF = _PlusInf()
MINUS_INF = _MinusInf()

ExtValue = Union[Rat, _PlusInf, _MinusInf]


def is_finite(v: ExtValue) -> bool:
    return v is not PLUS_INF and v is not MINUS_INF


def ext_le(a: ExtValue, b: ExtValue) -> bool:
    if a is MINUS_INF or b is PLUS_INF:
        return True
    if a is PLUS_INF:
        return b is PLUS_INF
    if b is MINUS_INF:
        return a is MINUS_INF
    return a <= b


def ext_sub(a: ExtValue, b: ExtValue) -> ExtValue:
    """a - b with the usual conventions; inf - inf of the same sign raises."""
    if is_finite(a) and is_finite(b):
        return a - b
    if a is PLUS_INF:
        if b is PLUS_INF:
            raise IndeterminateForm("(+inf) - (+inf)")
        return PLUS_INF
    if a is MINUS_INF:
        if b is MINUS_INF:
            raise IndeterminateForm("(-inf) - (-inf)")
        return MINUS_INF
    return MINUS_INF if b is PLUS_INF else PLUS_INF


def _coerce_pieces(dim: int, pieces) -> tuple:
    out = []
    for a, b in pieces:
        a = vec(a)
        if len(a) != dim:
            raise DimensionMismatch("piece slope dimension mismatch")
        out.append((a, rat(b)))
    if not out:
        raise InputError("a piecewise-linear function needs at least one piece")
    return tuple(out)


@dataclass(eq=False)
class PLConvexFunction:
    """max over pieces <a, x> + b on the domain polyhedron, +inf outside."""

    dim: int
    pieces: tuple
    domain: HPolyhedron
    _epi: Optional[HPolyhedron] = field(default=None, repr=False)

    def __post_init__(self):
        self.pieces = _coerce_pieces(self.dim, self.pieces)
        if self.domain.dim != self.dim:
            raise DimensionMismatch("domain dimension mismatch")
        if self.domain.is_empty():
            raise EmptySetError("a proper function needs a nonempty domain")


@dataclass(eq=False)
class PLConcaveFunction:
    """min over pieces <a, x> + b on the domain polyhedron, -inf outside."""

    dim: int
    pieces: tuple
    domain: HPolyhedron
    _hypo: Optional[HPolyhedron] = field(default=None, repr=False)

    def __post_init__(self):
        self.pieces = _coerce_pieces(self.dim, self.pieces)
        if self.domain.dim != self.dim:
            raise DimensionMismatch("domain dimension mismatch")
        if self.domain.is_empty():
            raise EmptySetError("a proper function needs a nonempty domain")


@dataclass(eq=False)
class PLFunctionDual:
    """A conjugate over the dual variable, PL-exact.

    sense "convex" evaluates max of pieces on the domain with +inf outside
    (a convex conjugate); sense "concave" evaluates min of pieces with -inf
    outside (a concave conjugate).
    """

    dim: int
    pieces: tuple
    domain: HPolyhedron
    sense: str = "convex"

    def __post_init__(self):
        self.pieces = _coerce_pieces(self.dim, self.pieces)
        if self.sense not in ("convex", "concave"):
            raise InputError(f"unknown sense {self.sense!r}")
        if self.domain.dim != self.dim:
            raise DimensionMismatch("domain dimension mismatch")

    def as_convex(self) -> PLConvexFunction:
        if self.sense != "convex":
            raise InputError("not a convex conjugate")
        return PLConvexFunction(dim=self.dim, pieces=self.pieces, domain=self.domain)

    def as_concave(self) -> PLConcaveFunction:
        if self.sense != "concave":
            raise InputError("not a concave conjugate")
        return PLConcaveFunction(dim=self.dim, pieces=self.pieces, domain=self.domain)


PLFunction = Union[PLConvexFunction, PLConcaveFunction, PLFunctionDual]


def _sense_of(f: PLFunction) -> str:
    if isinstance(f, PLConvexFunction):
        return "convex"
    if isinstance(f, PLConcaveFunction):
        return "concave"
    return f.sense


def evaluate(f: PLFunction, x: Sequence) -> ExtValue:
    """Function value at x: the piece extremum inside the domain, the
    appropriate infinity outside."""
    x = vec(x)
    if len(x) != f.dim:
        raise DimensionMismatch("evaluation point dimension mismatch")
    sense = _sense_of(f)
    if f.domain.is_empty() or not f.domain.contains(x):
        return PLUS_INF if sense == "convex" else MINUS_INF
    values = [dot(a, x) + b for a, b in f.pieces]
    return max(values) if sense == "convex" else min(values)


def epigraph(f: Union[PLConvexFunction, PLFunctionDual]) -> HPolyhedron:
    """{(x, t) : x in dom, t >= every piece at x} as an H-polyhedron."""
    if _sense_of(f) != "convex":
        raise InputError("epigraph of a non-convex representation")
    if isinstance(f, PLConvexFunction) and f._epi is not None:
        return f._epi
    dom = f.domain
    rows = [tuple(r) + (ZERO,) for r in dom.A]
    rhs = list(dom.b)
    for a, b in f.pieces:
        rows.append(tuple(a) + (-ONE,))
        rhs.append(-b)
    eq_rows = tuple(tuple(r) + (ZERO,) for r in dom.E)
    out = HPolyhedron(dim=f.dim + 1, A=tuple(rows), b=tuple(rhs),
                      E=eq_rows, d=dom.d, check_caps=False)
    if isinstance(f, PLConvexFunction):
        f._epi = out
    return out


def hypograph(g: Union[PLConcaveFunction, PLFunctionDual]) -> HPolyhedron:
    """{(x, t) : x in dom, t <= every piece at x} as an H-polyhedron."""
    if _sense_of(g) != "concave":
        raise InputError("hypograph of a non-concave representation")
    if isinstance(g, PLConcaveFunction) and g._hypo is not None:
        return g._hypo
    dom = g.domain
    rows = [tuple(r) + (ZERO,) for r in dom.A]
    rhs = list(dom.b)
    for a, b in g.pieces:
        rows.append(tuple(vneg(a)) + (ONE,))
        rhs.append(b)
    eq_rows = tuple(tuple(r) + (ZERO,) for r in dom.E)
    out = HPolyhedron(dim=g.dim + 1, A=tuple(rows), b=tuple(rhs),
                      E=eq_rows, d=dom.d, check_caps=False)
    if isinstance(g, PLConcaveFunction):
        g._hypo = out
    return out


def conjugate(f: Union[PLConvexFunction, PLFunctionDual]) -> PLFunctionDual:
    """Exact convex conjugate sup{<y, x> - f(x)}.

    Every generator point (v, t) of the epigraph contributes the affine piece
    y -> <y, v> - t, and every recession ray (d, s) with d nonzero contributes
    the domain constraint <y, d> <= s; the vertical ray only re-states t's
    freedom upward and drops out.
    """
    epi = epigraph(f)
    vr = epi.vrep()
    n = f.dim
    pieces = []
    for p in vr.points:
        pieces.append((p[:-1], -p[-1]))
    rows = []
    rhs = []
    for r in vr.rays:
        d, s = r[:-1], r[-1]
        if any(d):
            rows.append(d)
            rhs.append(s)
    seen = {}
    for row, c in zip(rows, rhs):
        if row not in seen or c < seen[row]:
            seen[row] = c
    dom = HPolyhedron(dim=n, A=tuple(seen.keys()), b=tuple(seen.values()),
                      check_caps=False)
    return PLFunctionDual(dim=n, pieces=tuple(pieces), domain=dom, sense="convex")


def negate_concave(g: Union[PLConcaveFunction, PLFunctionDual]) -> PLConvexFunction:
    """-g as a convex PL function (same domain, negated pieces)."""
    if _sense_of(g) != "concave":
        raise InputError("expected a concave representation")
    return PLConvexFunction(
        dim=g.dim,
        pieces=tuple((vneg(a), -b) for a, b in g.pieces),
        domain=g.domain,
    )


def _reflect_domain(dom: HPolyhedron) -> HPolyhedron:
    return HPolyhedron(
        dim=dom.dim,
        A=tuple(vneg(r) for r in dom.A),
        b=dom.b,
        E=tuple(vneg(r) for r in dom.E),
        d=dom.d,
        check_caps=False,
    )


def concave_conjugate(g: Union[PLConcaveFunction, PLFunctionDual]) -> PLFunctionDual:
    """Exact concave conjugate inf{<y, x> - g(x)}, built structurally as
    -(conjugate of -g) evaluated at -y: pieces flip their offsets, the dual
    domain reflects through the origin."""
    h = conjugate(negate_concave(g))
    return PLFunctionDual(
        dim=g.dim,
        pieces=tuple((a, -b) for a, b in h.pieces),
        domain=_reflect_domain(h.domain),
        sense="concave",
    )


@dataclass(frozen=True)
class ContinuityReport:
    """Four equivalent interiority facts, each computed by its own route."""

    int_dom_nonempty: bool
    int_epi_nonempty: bool
    bounded_above_on_open_set: bool
    interior_point: Optional[tuple]
    bound_on_box: Optional[Rat]


def _interior_slack(p: HPolyhedron) -> Optional[tuple]:
    """A point with uniform positive slack on every row of p (equalities
    treated as inequality pairs), or None when int(p) is empty."""
    n = p.dim
    rows = [tuple(r) + (ONE,) for r in p.A]
    rhs = list(p.b)
    for r, c in zip(p.E, p.d):
        rows.append(tuple(r) + (ONE,))
        rhs.append(c)
        rows.append(tuple(vneg(r)) + (ONE,))
        rhs.append(-c)
    rows.append(zero_vec(n) + (ONE,))
    rhs.append(ONE)
    out = solve_lp(
        LPProblem(c=zero_vec(n) + (ONE,), A=tuple(rows), b=tuple(rhs)),
        check_caps=False,
    )
    if not out.is_optimal or out.value <= 0:
        return None
    return out.point


def continuity_diagnostics(f: Union[PLConvexFunction, PLFunctionDual]
                           ) -> ContinuityReport:
    """Interiority flags for dom(f) and epi(f) plus an explicit bound.

    For a finite max of affine pieces the three flags provably agree; the
    routes are still computed separately and cross-checked, so a report is
    also a consistency test of the underlying LPs.
    """
    dom_pt = _interior_slack(f.domain)
    int_dom = dom_pt is not None
    int_epi = _interior_slack(epigraph(f)) is not None
    bounded = False
    witness = None
    bound = None
    if dom_pt is not None:
        x0, s = dom_pt[:-1], dom_pt[-1]
        witness = x0
        # crude but exact: on the box of radius s / (1 + max |row| sum) around
        # x0 the domain constraints keep holding, and each piece is bounded by
        # its value at x0 plus its slope's l1 norm times the radius
        norms = [sum(abs(c) for c in a) for a, _ in f.pieces]
        row_norms = [sum(abs(c) for c in row) for row in f.domain.A] or [ZERO]
        radius = s / (ONE + max(row_norms + norms))
        vals = [dot(a, x0) + b + n0 * radius for (a, b), n0 in zip(f.pieces, norms)]
        bound = max(vals)
        bounded = True
    if not (int_dom == int_epi == bounded):
        raise InternalInconsistency(
            f"interiority routes disagree: dom={int_dom} epi={int_epi} box={bounded}"
        )
    return ContinuityReport(
        int_dom_nonempty=int_dom,
        int_epi_nonempty=int_epi,
        bounded_above_on_open_set=bounded,
        interior_point=witness,
        bound_on_box=bound,
    )
