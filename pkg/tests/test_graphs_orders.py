import pytest

from relintlab import (
    HPolyhedron,
    InputError,
    OrderingCone,
    PLVectorFunction,
    PolySetValuedMap,
    PreconditionFailed,
    c_convexity_check,
    c_epigraph,
    check_graph_equality,
    check_graph_iri_inclusion,
    check_graph_qri_inclusion,
    check_iri_c_epi,
    iri_member,
    lex_epi_analysis,
    map_domain,
    map_slice,
    rat,
    set_equal,
    vec,
)
from relintlab.sets import PolyCone

R = rat


def triangle_map():
    # graph {(x, y) : 0 <= x <= 1, 0 <= y <= x}
    g = HPolyhedron(dim=2,
                    A=(vec(["-1", "0"]), vec(["1", "0"]),
                       vec(["0", "-1"]), vec(["-1", "1"])),
                    b=vec(["0", "1", "0", "0"]))
    return PolySetValuedMap(x_dim=1, y_dim=1, graph=g)


def halfline_map():
    # F(x) = [x, inf) over x in [0, 1]
    g = HPolyhedron(dim=2,
                    A=(vec(["-1", "0"]), vec(["1", "0"]), vec(["1", "-1"])),
                    b=vec(["0", "1", "0"]))
    return PolySetValuedMap(x_dim=1, y_dim=1, graph=g)


def test_map_domain_triangle():
    dom = map_domain(triangle_map())
    expect = HPolyhedron(dim=1, A=(vec(["-1"]), vec(["1"])),
                         b=vec(["0", "1"]))
    assert set_equal(dom, expect)


def test_map_slice_triangle():
    sl = map_slice(triangle_map(), vec(["1/2"]))
    expect = HPolyhedron(dim=1, A=(vec(["-1"]), vec(["1"])),
                         b=vec(["0", "1/2"]))
    assert set_equal(sl, expect)
    assert sl.contains(vec(["1/4"]))
    assert not sl.contains(vec(["3/4"]))


def test_graph_inclusions_hold_on_triangle():
    f = triangle_map()
    pairs = [(vec(["1/2"]), vec(["1/4"])), (vec(["1/2"]), vec(["0"])),
             (vec(["0"]), vec(["0"])), (vec(["1"]), vec(["1/2"]))]
    assert check_graph_qri_inclusion(f, pairs)
    assert check_graph_iri_inclusion(f, pairs)


def test_graph_equality_halfline():
    f = halfline_map()
    pairs = [(vec(["1/2"]), vec(["3/4"])), (vec(["1/2"]), vec(["2"]))]
    assert check_graph_equality(f, pairs)


def test_graph_equality_needs_solid_slices():
    # the diagonal: every slice is a single point with empty interior
    g = HPolyhedron(dim=2,
                    A=(vec(["-1", "0"]), vec(["1", "0"])),
                    b=vec(["0", "1"]),
                    E=(vec(["1", "-1"]),), d=vec(["0"]))
    diag = PolySetValuedMap(x_dim=1, y_dim=1, graph=g)
    with pytest.raises(PreconditionFailed):
        check_graph_equality(diag, [(vec(["1/2"]), vec(["1/2"]))])


def quadrant():
    return OrderingCone(kind="polyhedral", cone=PolyCone(
        dim=2, generators=(vec(["1", "0"]), vec(["0", "1"]))))


def test_c_convexity_affine_structural():
    f = PLVectorFunction(x_dim=1, y_dim=2, components=(
        (vec(["2"]), rat(1)), (vec(["-1"]), rat(0))))
    assert c_convexity_check(f, quadrant())


def test_c_convexity_counterexample():
    # componentwise: (-|x|, 0) is concave in the first slot, so the midpoint
    # combination falls outside the quadrant
    def f(x):
        v = x[0] if x[0] >= 0 else -x[0]
        return (-v, R(0))
    trials = [((R(-1),), (R(1),))]
    assert not c_convexity_check(f, quadrant(), trials)


def test_c_epigraph_of_zero_map():
    zero = PLVectorFunction(x_dim=1, y_dim=2, components=(
        (vec(["0"]), rat(0)), (vec(["0"]), rat(0))))
    res = c_epigraph(zero, quadrant())
    # region is the x-line crossed with the quadrant
    assert res.region.contains(vec(["5", "1", "2"]))
    assert res.region.contains(vec(["-5", "0", "0"]))
    assert not res.region.contains(vec(["0", "-1", "0"]))
    assert iri_member(res.region, vec(["0", "1", "1"]))
    assert not iri_member(res.region, vec(["0", "1", "0"]))
    # the domain of a total map is everything
    assert res.domain_full


def test_check_iri_c_epi_zero_map():
    zero = PLVectorFunction(x_dim=1, y_dim=2, components=(
        (vec(["0"]), rat(0)), (vec(["0"]), rat(0))))
    samples = [((R(0),), (R(1), R(1))), ((R(0),), (R(1), R(0))),
               ((R(2),), (R(3), R(5)))]
    assert check_iri_c_epi(zero, quadrant(), samples)


def test_c_epigraph_rejects_flat_cone():
    zero = PLVectorFunction(x_dim=1, y_dim=2, components=(
        (vec(["0"]), rat(0)), (vec(["0"]), rat(0))))
    ray = OrderingCone(kind="polyhedral", cone=PolyCone(
        dim=2, generators=(vec(["1", "0"]),)))
    with pytest.raises(PreconditionFailed):
        c_epigraph(zero, ray)


def test_c_epigraph_rejects_lex():
    zero = PLVectorFunction(x_dim=1, y_dim=2, components=(
        (vec(["0"]), rat(0)), (vec(["0"]), rat(0))))
    with pytest.raises(InputError):
        c_epigraph(zero, OrderingCone(kind="lex2d"))


def test_lex_cone_membership():
    lex = OrderingCone(kind="lex2d")
    assert lex.contains((R(1), R(-100)))
    assert lex.contains((R(0), R(3)))
    assert lex.contains((R(0), R(0)))
    assert not lex.contains((R(0), R(-1)))
    assert not lex.contains((R(-1), R(50)))


def test_lex_epi_analysis_classification():
    samples = [(R(0), R(1), R(-1)), (R(0), R(0), R(1)), (R(0), R(0), R(0))]
    rep = lex_epi_analysis(samples)
    flags = [(r.in_epi, r.in_rhs, r.in_iri) for r in rep.rows]
    assert flags == [(True, True, True),
                     (True, True, False),
                     (True, False, False)]
    # (0, 0, 1) lies in the cone, is nonzero, but misses the interior set:
    # the inclusion is strict and the report says where
    assert rep.strict_witnesses == ((R(0), R(0), R(1)),)


def test_ordering_cone_validation():
    with pytest.raises(InputError):
        OrderingCone(kind="polyhedral")
    with pytest.raises(InputError):
        OrderingCone(kind="lex2d", cone=PolyCone(
            dim=2, generators=(vec(["1", "0"]),)))
    with pytest.raises(InputError):
        OrderingCone(kind="mystery")
