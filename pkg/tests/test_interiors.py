"""Interior oracle tests.

On polyhedral sets the relative, intrinsic relative, and quasi relative
interiors coincide, so the three oracles plus the absorbing-point route must
always agree; the frozen cases pin each oracle's answer on hand-checked
geometry first.
"""

import random

import pytest
from hypothesis import given, settings, strategies as st

from relintlab import (
    HPolyhedron,
    PreconditionFailed,
    cone_member,
    iri_member,
    is_quasi_regular,
    normal_cone,
    polar,
    qri_member,
    rat,
    relatively_absorbing,
    ri_member,
    sample_points,
    segment_check,
    vec,
)
from relintlab.sets import PolyCone, difference_cone
from relintlab.generator import gen_polyhedron


def unit_square():
    return HPolyhedron(
        dim=2,
        A=(vec(["-1", "0"]), vec(["1", "0"]),
           vec(["0", "-1"]), vec(["0", "1"])),
        b=vec(["0", "1", "0", "1"]),
    )


def flat_segment():
    # the segment [0,1] x {0} inside the plane
    return HPolyhedron(dim=2,
                       A=(vec(["-1", "0"]), vec(["1", "0"])),
                       b=vec(["0", "1"]),
                       E=(vec(["0", "1"]),), d=vec(["0"]))


def test_ri_square():
    sq = unit_square()
    assert ri_member(sq, vec(["1/2", "1/2"]))
    assert ri_member(sq, vec(["1/7", "6/7"]))
    assert not ri_member(sq, vec(["0", "1/2"]))
    assert not ri_member(sq, vec(["0", "0"]))
    assert not ri_member(sq, vec(["2", "2"]))


def test_ri_flat_segment():
    seg = flat_segment()
    # interior is relative to the segment's line, not the ambient plane
    assert ri_member(seg, vec(["1/2", "0"]))
    assert not ri_member(seg, vec(["0", "0"]))
    assert not ri_member(seg, vec(["1", "0"]))


def test_ri_singleton():
    pt = HPolyhedron(dim=2, E=(vec(["1", "0"]), vec(["0", "1"])),
                     d=vec(["1/3", "-2"]))
    # a singleton is its own relative interior
    assert ri_member(pt, vec(["1/3", "-2"]))
    assert not ri_member(pt, vec(["0", "0"]))


def test_ri_implicit_equality_rows():
    # x <= 0, -x <= 0 encode the y-axis; strictness only applies to y bounds
    p = HPolyhedron(dim=2,
                    A=(vec(["1", "0"]), vec(["-1", "0"]),
                       vec(["0", "1"]), vec(["0", "-1"])),
                    b=vec(["0", "0", "1", "1"]))
    assert ri_member(p, vec(["0", "0"]))
    assert ri_member(p, vec(["0", "1/2"]))
    assert not ri_member(p, vec(["0", "1"]))


def test_iri_matches_ri_on_polyhedra():
    for p in (unit_square(), flat_segment()):
        for x in (vec(["1/2", "0"]), vec(["1/2", "1/2"]),
                  vec(["0", "0"]), vec(["1", "1"])):
            if p.contains(x):
                assert iri_member(p, x) == ri_member(p, x)


def test_qri_matches_ri_on_polyhedra():
    sq = unit_square()
    assert qri_member(sq, vec(["1/2", "1/4"]))
    assert not qri_member(sq, vec(["1", "1"]))
    seg = flat_segment()
    assert qri_member(seg, vec(["1/3", "0"]))
    assert not qri_member(seg, vec(["0", "0"]))


def test_relatively_absorbing_route():
    sq = unit_square()
    assert relatively_absorbing(sq, vec(["1/2", "1/2"]))
    assert not relatively_absorbing(sq, vec(["0", "1/2"]))
    seg = flat_segment()
    assert relatively_absorbing(seg, vec(["1/2", "0"]))
    assert not relatively_absorbing(seg, vec(["1", "0"]))


def test_normal_cone_square():
    sq = unit_square()
    nc = normal_cone(sq, vec(["0", "0"]))
    assert cone_member(nc.generators, vec(["-1", "0"]))
    assert cone_member(nc.generators, vec(["-2", "-3"]))
    assert not cone_member(nc.generators, vec(["1", "0"]))
    # interior point: only the zero functional is normal
    nc_int = normal_cone(sq, vec(["1/2", "1/2"]))
    assert not cone_member(nc_int.generators, vec(["1", "0"])) \
        and not cone_member(nc_int.generators, vec(["-1", "0"]))


def test_normal_cone_edge():
    nc = normal_cone(unit_square(), vec(["0", "1/2"]))
    assert cone_member(nc.generators, vec(["-1", "0"]))
    assert not cone_member(nc.generators, vec(["0", "1"]))


def test_polar_involution_on_quadrant():
    quad = PolyCone(dim=2, generators=(vec(["1", "0"]), vec(["0", "1"])))
    pol = polar(quad)
    assert cone_member(pol.generators, vec(["-1", "-1"]))
    assert not cone_member(pol.generators, vec(["1", "0"]))
    # bipolar returns the original closed cone
    bipol = polar(pol)
    for g in quad.generators:
        assert cone_member(bipol.generators, g)
    for g in bipol.generators:
        assert cone_member(quad.generators, g)


def test_qri_via_normal_cone_criterion():
    """x in qri iff the normal cone at x is a linear subspace; here the
    oracle is compared against cone membership both ways."""
    sq = unit_square()
    interior = vec(["1/3", "2/3"])
    corner = vec(["1", "1"])
    nc_i = normal_cone(sq, interior)
    nc_c = normal_cone(sq, corner)
    assert qri_member(sq, interior)
    assert not qri_member(sq, corner)
    assert all(cone_member(nc_i.generators, tuple(-g for g in v))
               for v in nc_i.generators)
    assert any(not cone_member(nc_c.generators, tuple(-g for g in v))
               for v in nc_c.generators)


def test_is_quasi_regular_polyhedra():
    ok, route = is_quasi_regular(unit_square())
    assert ok and isinstance(route, str)
    ok2, _ = is_quasi_regular(flat_segment())
    assert ok2


def test_segment_check():
    sq = unit_square()
    # relative interior point pulls any member strictly inside
    assert segment_check(sq, vec(["1/2", "1/2"]), vec(["0", "0"]))
    with pytest.raises(PreconditionFailed):
        segment_check(sq, vec(["0", "0"]), vec(["1/2", "1/2"]))


def test_difference_cone_subspace_iff_iri():
    seg = flat_segment()
    mid = vec(["1/2", "0"])
    end = vec(["0", "0"])
    from relintlab import cone_is_subspace
    assert cone_is_subspace(difference_cone(seg, mid).generators)
    assert not cone_is_subspace(difference_cone(seg, end).generators)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_oracles_agree_on_random_polyhedra(seed):
    """All four interior routes give one answer on polyhedral data."""
    rng = random.Random(seed)
    p = gen_polyhedron(rng, rng.choice((2, 2, 3)))
    pts = sample_points(p, seed=seed, limit=4)
    for x in pts:
        answers = (ri_member(p, x), iri_member(p, x), qri_member(p, x),
                   relatively_absorbing(p, x))
        assert len(set(answers)) == 1, (p, x, answers)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_normal_cone_polar_of_difference_cone(seed):
    """The normal cone is exactly the polar of the difference cone."""
    rng = random.Random(seed)
    p = gen_polyhedron(rng, 2)
    for x in sample_points(p, seed=seed, limit=3):
        nc = normal_cone(p, x)
        pol = polar(difference_cone(p, x))
        for g in nc.generators:
            assert cone_member(pol.generators, g)
        for g in pol.generators:
            assert cone_member(nc.generators, g)
