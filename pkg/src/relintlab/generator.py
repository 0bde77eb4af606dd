"""Seeded random instances for the property suite and the CLI generator.

Everything is driven by random.Random so identical seeds give identical
instances on every run and platform. Polyhedra are built around an integer
witness point, which keeps them nonempty by construction; function pairs
are built around a shared anchor with controllable domain overlap.
"""

from __future__ import annotations

import random
from typing import Optional

from .functions import PLConcaveFunction, PLConvexFunction
from .graphs_orders import PolySetValuedMap
from .ratlp import ONE, Rat, ZERO, rat, zero_vec
from .sets import HPolyhedron, PolyCone
from .seqlab import TailSequence


def _nonzero_normal(rng: random.Random, dim: int) -> tuple:
    while True:
        a = tuple(rat(rng.randint(-3, 3)) for _ in range(dim))
        if any(x != 0 for x in a):
            return a


def gen_polyhedron(rng: random.Random, dim: int,
                   allow_eq: bool = True) -> HPolyhedron:
    """Random halfspaces around an integer witness; never empty."""
    w = tuple(rat(rng.randint(-3, 3)) for _ in range(dim))
    k = rng.randint(dim, dim + 3)
    A, b = [], []
    for _ in range(k):
        a = _nonzero_normal(rng, dim)
        slack = rat(rng.randint(0, 3))
        A.append(a)
        b.append(sum((ai * wi for ai, wi in zip(a, w)), ZERO) + slack)
    E, d = [], []
    if allow_eq and rng.random() < 0.3:
        e = _nonzero_normal(rng, dim)
        E.append(e)
        d.append(sum((ei * wi for ei, wi in zip(e, w)), ZERO))
    return HPolyhedron(dim=dim, A=tuple(A), b=tuple(b), E=tuple(E), d=tuple(d))


def gen_box(rng: random.Random, dim: int, around: Optional[tuple] = None,
            open_sides: bool = False) -> HPolyhedron:
    """A full-dimensional box with the anchor strictly inside; sides are
    occasionally dropped when open_sides is set, giving recession rays."""
    w = around or tuple(rat(rng.randint(-2, 2)) for _ in range(dim))
    A, b = [], []
    for i in range(dim):
        lo = w[i] - rng.randint(1, 3)
        hi = w[i] + rng.randint(1, 3)
        if not (open_sides and rng.random() < 0.3):
            row = [ZERO] * dim
            row[i] = -ONE
            A.append(tuple(row))
            b.append(-lo)
        if not (open_sides and rng.random() < 0.3):
            row = [ZERO] * dim
            row[i] = ONE
            A.append(tuple(row))
            b.append(hi)
    return HPolyhedron(dim=dim, A=tuple(A), b=tuple(b))


def gen_cone(rng: random.Random, dim: int) -> PolyCone:
    k = rng.randint(1, dim + 2)
    gens = tuple(_nonzero_normal(rng, dim) for _ in range(k))
    return PolyCone(dim=dim, generators=gens)


def gen_matrix(rng: random.Random, m: int, n: int) -> tuple:
    return tuple(tuple(rat(rng.randint(-2, 2)) for _ in range(n))
                 for _ in range(m))


def _pieces(rng: random.Random, dim: int) -> tuple:
    m = rng.randint(1, 3)
    out = []
    for _ in range(m):
        a = tuple(rat(rng.randint(-2, 2)) for _ in range(dim))
        b = rat(rng.randint(-4, 4), rng.choice((1, 1, 2)))
        out.append((a, b))
    return tuple(out)


def _shift_box(p: HPolyhedron, shift: tuple) -> HPolyhedron:
    b = tuple(c + sum((ai * si for ai, si in zip(row, shift)), ZERO)
              for row, c in zip(p.A, p.b))
    return HPolyhedron(dim=p.dim, A=p.A, b=b, E=p.E, d=p.d)


def _pin_side(p: HPolyhedron, upper=None, lower=None) -> HPolyhedron:
    """Replace a box's bound on the first coordinate so it ends exactly at
    the given value."""
    A, b = [], []
    for row, c in zip(p.A, p.b):
        if upper is not None and row[0] == ONE and all(x == 0 for x in row[1:]):
            continue
        if lower is not None and row[0] == -ONE and all(x == 0 for x in row[1:]):
            continue
        A.append(row)
        b.append(c)
    if upper is not None:
        A.append((ONE,) + zero_vec(p.dim - 1))
        b.append(upper)
    if lower is not None:
        A.append((-ONE,) + zero_vec(p.dim - 1))
        b.append(-lower)
    return HPolyhedron(dim=p.dim, A=tuple(A), b=tuple(b))


def gen_pl_pair(rng: random.Random, dim: int, mode: str = "qualified"):
    """A convex/concave pair with controlled domain overlap.

    qualified: domains share an interior point. touching: domains meet in a
    shared face only. disjoint: domains separated by a gap. wild: overlap
    unconstrained, possibly unbounded domains.
    """
    w = tuple(rat(rng.randint(-2, 2)) for _ in range(dim))
    dom_f = gen_box(rng, dim, around=w, open_sides=(mode == "wild"))
    if mode == "qualified":
        dom_g = gen_box(rng, dim, around=w)
    elif mode == "disjoint":
        shift = (rat(10 + rng.randint(0, 3)),) + zero_vec(dim - 1)
        dom_g = _shift_box(gen_box(rng, dim, around=w), shift)
    elif mode == "touching":
        v = w[0] + rng.randint(1, 3)
        dom_f = _pin_side(dom_f, upper=v)
        w2 = (v + rng.randint(1, 3),) + w[1:]
        dom_g = _pin_side(gen_box(rng, dim, around=w2), lower=v)
    elif mode == "wild":
        anchor = tuple(rat(rng.randint(-4, 4)) for _ in range(dim))
        dom_g = gen_box(rng, dim, around=anchor, open_sides=True)
    else:
        raise ValueError(f"unknown overlap mode {mode!r}")
    f = PLConvexFunction(dim=dim, pieces=_pieces(rng, dim), domain=dom_f)
    g = PLConcaveFunction(dim=dim, pieces=_pieces(rng, dim), domain=dom_g)
    return f, g


def gen_separation_pair(rng: random.Random, dim: int, mode: str = "random"):
    """Set pairs for the separation suite. touching pairs share exactly one
    corner (the second set is the reflection of the first through it)."""
    if mode == "touching":
        w = tuple(rat(rng.randint(-2, 2)) for _ in range(dim))
        p = gen_box(rng, dim, around=w)
        v = []
        for i in range(dim):
            hi = min(c for row, c in zip(p.A, p.b) if row[i] == ONE)
            v.append(hi)
        v = tuple(v)
        # reflection through the top corner: x -> 2v - x
        A = tuple(tuple(-a for a in row) for row in p.A)
        b = tuple(c - 2 * sum((ai * vi for ai, vi in zip(row, v)), ZERO)
                  for row, c in zip(p.A, p.b))
        return p, HPolyhedron(dim=dim, A=A, b=b)
    if mode == "disjoint":
        p = gen_box(rng, dim)
        shift = (rat(12 + rng.randint(0, 3)),) + zero_vec(dim - 1)
        return p, _shift_box(gen_box(rng, dim), shift)
    if mode == "overlap":
        w = tuple(rat(rng.randint(-2, 2)) for _ in range(dim))
        return gen_box(rng, dim, around=w), gen_box(rng, dim, around=w)
    return gen_polyhedron(rng, dim), gen_polyhedron(rng, dim)


def gen_map(rng: random.Random, x_dim: int, y_dim: int,
            solid_slices: bool = True) -> PolySetValuedMap:
    """Graph of a box-valued map: componentwise affine bounds on y over a
    box in x. Slice heights are positive when solid_slices is set, zero
    height in one coordinate otherwise."""
    dim = x_dim + y_dim
    box = gen_box(rng, x_dim)
    A = [tuple(row) + zero_vec(y_dim) for row in box.A]
    b = list(box.b)
    E, d = [], []
    flat_at = None if solid_slices else rng.randrange(y_dim)
    for j in range(y_dim):
        a = tuple(rat(rng.randint(-2, 2)) for _ in range(x_dim))
        c = rat(rng.randint(-2, 2))
        h = rat(rng.randint(1, 3))
        lower = tuple(ai for ai in a) + tuple(
            -ONE if t == j else ZERO for t in range(y_dim))
        if j == flat_at:
            E.append(lower)
            d.append(-c)
            continue
        A.append(lower)
        b.append(-c)
        upper = tuple(-ai for ai in a) + tuple(
            ONE if t == j else ZERO for t in range(y_dim))
        A.append(upper)
        b.append(c + h)
    graph = HPolyhedron(dim=dim, A=tuple(A), b=tuple(b), E=tuple(E), d=tuple(d))
    return PolySetValuedMap(x_dim=x_dim, y_dim=y_dim, graph=graph)


_SWEEP_PREFIX_POOL = (rat(1, 8), rat(1, 4), rat(1, 2), rat(3, 4), rat(1),
                      rat(1, 3), rat(2, 5))


def gen_sweep_candidate(rng: random.Random) -> TailSequence:
    """Candidates for the nonnegative-ball refutation sweep: a mix of
    admitted, boundary, zero-coordinate, and out-of-set sequences."""
    kind = rng.randrange(6)
    if kind == 0:
        return TailSequence(prefix=(rat(3, 5), rat(4, 5)), tail=None)  # unit norm
    if kind == 1:
        return TailSequence(prefix=(), tail=(rat(3, 5), rat(4, 5)))  # unit norm
    if kind == 2:
        k = rng.randint(1, 3)
        prefix = [rng.choice(_SWEEP_PREFIX_POOL) for _ in range(k)]
        prefix[rng.randrange(k)] = ZERO  # zero coordinate
        return TailSequence(prefix=tuple(prefix),
                            tail=(rat(1, 4), rat(1, 2)))
    if kind == 3:
        return TailSequence(prefix=(rat(rng.randint(2, 4)),), tail=None)  # outside
    if kind == 4:
        k = rng.randint(0, 2)
        prefix = tuple(rng.choice(_SWEEP_PREFIX_POOL) / 4 for _ in range(k))
        return TailSequence(prefix=prefix, tail=None)  # finite support
    k = rng.randint(0, 2)
    prefix = tuple(rng.choice(_SWEEP_PREFIX_POOL) / 3 for _ in range(k))
    c = rat(1, rng.choice((2, 3, 4)))
    rho = rat(rng.choice((1, 1, 2)), rng.choice((2, 3)))
    if rho >= 1:
        rho = rat(1, 2)
    return TailSequence(prefix=prefix, tail=(c, rho))
