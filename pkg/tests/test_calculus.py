import random

from hypothesis import given, settings, strategies as st

from relintlab import (
    HPolyhedron,
    check_image_iri,
    check_image_qri,
    check_translation_equivariance,
    dot,
    qri_member,
    qri_of_difference,
    qri_of_product,
    rat,
    vec,
)
from relintlab.generator import gen_box, gen_matrix, gen_polyhedron
from relintlab.sets import minkowski_difference

R = rat


def unit_square():
    return HPolyhedron(
        dim=2,
        A=(vec(["-1", "0"]), vec(["1", "0"]),
           vec(["0", "-1"]), vec(["0", "1"])),
        b=vec(["0", "1", "0", "1"]),
    )


def interval(lo, hi):
    return HPolyhedron(dim=1, A=(vec(["-1"]), vec(["1"])),
                       b=(-rat(lo), rat(hi)))


def test_projection_image_iri():
    proj = (vec(["1", "0"]),)
    res = check_image_iri(proj, unit_square())
    assert res
    assert res.preimages
    # frozen: the centroid route lifts y = 1/2 to the center of the square
    lift = dict((tuple(y), x) for y, x in res.preimages)
    assert lift[(R(1, 2),)] == (R(1, 2), R(1, 2))
    for y, x in res.preimages:
        assert tuple(dot(row, x) for row in proj) == tuple(y)


def test_zero_map_image():
    zero = (vec(["0", "0"]),)
    res = check_image_iri(zero, unit_square())
    assert res
    # everything lands on the origin of the line; the preimage is interior
    assert res.preimages
    y, x = res.preimages[0]
    assert tuple(y) == (R(0),)
    assert x == (R(1, 2), R(1, 2))


def test_image_qri_matches_iri_route():
    proj = (vec(["1", "1"]),)
    res = check_image_qri(proj, unit_square())
    assert res
    for y, x in res.preimages:
        assert dot(proj[0], x) == y[0]


def test_qri_of_product_square_interval():
    assert qri_of_product(unit_square(), interval(0, 1))


def test_qri_of_product_with_flat_factor():
    point = HPolyhedron(dim=1, E=(vec(["1"]),), d=(R(1, 2),))
    assert qri_of_product(unit_square(), point)


def test_difference_same_interval_frozen():
    a = interval(0, 1)
    res = qri_of_difference(a, a)
    assert res
    # frozen decomposition of the center: 0 = 1/2 - 1/2
    decomp = dict((tuple(x), (u, w)) for x, u, w in res.decompositions)
    u, w = decomp[(R(0),)]
    assert u == (R(1, 2),) and w == (R(1, 2),)
    for x, u, w in res.decompositions:
        assert u[0] - w[0] == x[0]
        assert qri_member(a, u) and qri_member(a, w)


def test_difference_touching_intervals_frozen():
    a = interval(0, 1)
    b = interval(1, 2)
    res = qri_of_difference(a, b)
    assert res
    decomp = dict((tuple(x), (u, w)) for x, u, w in res.decompositions)
    u, w = decomp[(R(-1),)]
    assert u == (R(1, 2),) and w == (R(3, 2),)
    diff = minkowski_difference(a, b)
    assert diff.contains(vec(["-1"])) and diff.contains(vec(["0"]))
    assert not diff.contains(vec(["1/2"]))


def test_translation_equivariance_frozen():
    sq = unit_square()
    pts = (vec(["1/2", "1/2"]), vec(["0", "0"]), vec(["1", "1/3"]))
    assert check_translation_equivariance(sq, vec(["3", "-2"]),
                                          samples=pts, kind="qri")
    assert check_translation_equivariance(sq, vec(["-1/7", "5"]),
                                          samples=pts, kind="iri")


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_image_checks_on_random_instances(seed):
    rng = random.Random(seed)
    p = gen_polyhedron(rng, 2)
    m = gen_matrix(rng, rng.choice((1, 2)), 2)
    res = check_image_iri(m, p)
    assert res.ok
    for y, x in res.preimages:
        assert p.contains(x)
        assert tuple(dot(row, x) for row in m) == tuple(y)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(("iri", "qri")))
def test_translation_equivariance_random(seed, kind):
    rng = random.Random(seed)
    p = gen_box(rng, 2, around=(R(0), R(0)), open_sides=False)
    shift = (R(rng.randint(-5, 5)), R(rng.randint(-5, 5), 2))
    assert check_translation_equivariance(p, shift, kind=kind)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_difference_decompositions_random(seed):
    rng = random.Random(seed)
    a = gen_box(rng, 2, around=(R(0), R(0)), open_sides=False)
    b = gen_box(rng, 2, around=(R(1), R(-1)), open_sides=False)
    res = qri_of_difference(a, b)
    assert res.ok
    for x, u, w in res.decompositions:
        assert qri_member(a, u) and qri_member(b, w)
        assert tuple(ui - wi for ui, wi in zip(u, w)) == tuple(x)
