from hypothesis import given, settings, strategies as st

from relintlab import (
    HPolyhedron,
    PolyCone,
    VPolyhedron,
    affine_hull,
    cartesian_product,
    difference_cone,
    extreme_rays,
    h_to_v,
    linear_image,
    minimal_face_dim,
    rat,
    sample_points,
    set_equal,
    translate,
    v_to_h,
    vec,
)

R = rat


def unit_square():
    return HPolyhedron(
        dim=2,
        A=(vec(["-1", "0"]), vec(["1", "0"]),
           vec(["0", "-1"]), vec(["0", "1"])),
        b=vec(["0", "1", "0", "1"]),
    )


def test_contains_and_empty():
    sq = unit_square()
    assert sq.contains(vec(["1/2", "1/2"]))
    assert sq.contains(vec(["0", "1"]))
    assert not sq.contains(vec(["2", "0"]))
    assert not sq.is_empty()
    empty = HPolyhedron(dim=1, A=(vec(["1"]), vec(["-1"])),
                        b=vec(["0", "-1"]))
    assert empty.is_empty()


def test_implicit_rows_detected():
    # x <= 0 and -x <= 0 force x = 0: both rows are implicit equalities
    p = HPolyhedron(dim=2,
                    A=(vec(["1", "0"]), vec(["-1", "0"]), vec(["0", "1"])),
                    b=vec(["0", "0", "1"]))
    assert p.implicit_rows() == (0, 1)
    assert unit_square().implicit_rows() == ()


def test_h_to_v_square():
    vr = h_to_v(unit_square())
    assert sorted(vr.points) == [
        (R(0), R(0)), (R(0), R(1)), (R(1), R(0)), (R(1), R(1))]
    assert vr.rays == ()


def test_h_to_v_unbounded():
    # x >= 0 halfplane band: 0 <= y <= 1, x >= 0
    p = HPolyhedron(dim=2,
                    A=(vec(["-1", "0"]), vec(["0", "-1"]), vec(["0", "1"])),
                    b=vec(["0", "0", "1"]))
    vr = h_to_v(p)
    assert sorted(vr.points) == [(R(0), R(0)), (R(0), R(1))]
    assert vr.rays == ((R(1), R(0)),)


def test_v_to_h_roundtrip_triangle():
    tri = VPolyhedron(dim=2, points=(
        vec(["0", "0"]), vec(["1", "0"]), vec(["0", "1"])))
    back = h_to_v(v_to_h(tri))
    assert sorted(back.points) == sorted(tri.points)
    assert back.rays == ()


def test_extreme_rays_quadrant():
    lineality, rays = extreme_rays(
        ineq=(vec(["-1", "0"]), vec(["0", "-1"])), eq=(), dim=2)
    assert lineality == ()
    assert sorted(rays) == [(R(0), R(1)), (R(1), R(0))]


def test_extreme_rays_halfplane_lineality():
    lineality, rays = extreme_rays(ineq=(vec(["0", "-1"]),), eq=(), dim=2)
    assert len(lineality) == 1 and lineality[0][1] == 0
    assert len(rays) == 1 and rays[0][1] > 0


def test_affine_hull_of_segment():
    seg = HPolyhedron(dim=2,
                      A=(vec(["-1", "0"]), vec(["1", "0"])),
                      b=vec(["0", "1"]),
                      E=(vec(["0", "1"]),), d=vec(["0"]))
    flat = affine_hull(seg)
    assert len(flat.basis) == 1
    d = flat.basis[0]
    assert d[1] == 0 and d[0] != 0


def test_difference_cone_at_vertex():
    dc = difference_cone(unit_square(), vec(["0", "0"]))
    assert cone_contains(dc, vec(["1", "0"]))
    assert cone_contains(dc, vec(["1", "1"]))
    assert not cone_contains(dc, vec(["-1", "0"]))


def cone_contains(c: PolyCone, x):
    from relintlab import cone_member
    return cone_member(c.generators, x)


def test_linear_image_projection():
    img = linear_image((vec(["1", "0"]),), unit_square())
    expect = HPolyhedron(dim=1, A=(vec(["-1"]), vec(["1"])),
                         b=vec(["0", "1"]))
    assert set_equal(img, expect)


def test_linear_image_sum_coordinates():
    img = linear_image((vec(["1", "1"]),), unit_square())
    expect = HPolyhedron(dim=1, A=(vec(["-1"]), vec(["1"])),
                         b=vec(["0", "2"]))
    assert set_equal(img, expect)


def test_translate_and_product():
    moved = translate(unit_square(), vec(["3", "-1"]))
    assert moved.contains(vec(["7/2", "-1/2"]))
    assert not moved.contains(vec(["1/2", "1/2"]))
    prod = cartesian_product(unit_square(), unit_square())
    assert prod.dim == 4
    assert prod.contains(vec(["0", "1", "1/2", "1/4"]))


def test_minimal_face_dim_square():
    sq = unit_square()
    assert minimal_face_dim(sq, vec(["1/2", "1/2"])) == 2
    assert minimal_face_dim(sq, vec(["0", "1/2"])) == 1
    assert minimal_face_dim(sq, vec(["0", "0"])) == 0


def test_sample_points_are_members():
    sq = unit_square()
    pts = sample_points(sq, seed=3)
    assert pts
    assert all(sq.contains(x) for x in pts)


def test_sample_points_empty_set():
    empty = HPolyhedron(dim=1, A=(vec(["1"]), vec(["-1"])),
                        b=vec(["0", "-1"]))
    assert sample_points(empty) == []


def test_v_to_h_without_points_is_empty():
    h = v_to_h(VPolyhedron(dim=2, points=(), rays=(vec(["1", "0"]),)))
    assert h.is_empty()


coord = st.integers(-3, 3).map(rat)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(coord, coord), min_size=1, max_size=5))
def test_hv_roundtrip_preserves_set(pts):
    """conv(points) -> H -> V -> H describes the same set."""
    vp = VPolyhedron(dim=2, points=tuple(pts))
    h1 = v_to_h(vp)
    h2 = v_to_h(h_to_v(h1))
    assert set_equal(h1, h2)
    for p in pts:
        assert h1.contains(p)


@settings(max_examples=30, deadline=None)
@given(st.tuples(coord, coord))
def test_translate_membership_equivariance(shift):
    sq = unit_square()
    moved = translate(sq, shift)
    probe = vec(["1/2", "1/3"])
    shifted_probe = (probe[0] + shift[0], probe[1] + shift[1])
    assert sq.contains(probe) == moved.contains(shifted_probe)
