import dataclasses
import random

from hypothesis import given, settings, strategies as st

from relintlab import (
    HPolyhedron,
    dot,
    properly_separate_point,
    properly_separate_sets,
    rat,
    ri_intersection_nonempty,
    sample_points,
    vec,
    verify_separation_certificate,
)
from relintlab.generator import gen_separation_pair


def box(x0, x1, y0, y1):
    return HPolyhedron(
        dim=2,
        A=(vec(["-1", "0"]), vec(["1", "0"]),
           vec(["0", "-1"]), vec(["0", "1"])),
        b=(-rat(x0), rat(x1), -rat(y0), rat(y1)),
    )


def test_disjoint_boxes_separate():
    a = box(0, 1, 0, 1)
    b = box(2, 3, 0, 1)
    cert = properly_separate_sets(a, b)
    assert cert is not None
    assert verify_separation_certificate(a, b, cert)
    assert cert.side_a_bound <= cert.threshold <= cert.side_b_bound
    # everything of a sits at or below the threshold, b at or above
    for x in sample_points(a, limit=4):
        assert dot(cert.functional, x) <= cert.threshold
    for x in sample_points(b, limit=4):
        assert dot(cert.functional, x) >= cert.threshold


def test_touching_boxes_separate_properly():
    # shared edge x = 1; relative interiors are disjoint
    a = box(0, 1, 0, 1)
    b = box(1, 2, 0, 1)
    cert = properly_separate_sets(a, b)
    assert cert is not None
    assert verify_separation_certificate(a, b, cert)
    # strictness: the witness actually moves off the hyperplane
    w_val = dot(cert.functional, cert.strict_witness)
    assert w_val != cert.threshold


def test_overlapping_boxes_do_not_separate():
    a = box(0, 2, 0, 2)
    b = box(1, 3, 1, 3)
    assert properly_separate_sets(a, b) is None
    assert ri_intersection_nonempty(a, b)


def test_identical_sets_do_not_separate():
    a = box(0, 1, 0, 1)
    assert properly_separate_sets(a, box(0, 1, 0, 1)) is None


def test_point_on_flat_set_separates_sideways():
    # the segment [0,1] x {0} against a point above it
    seg = HPolyhedron(dim=2, A=(vec(["-1", "0"]), vec(["1", "0"])),
                      b=vec(["0", "1"]), E=(vec(["0", "1"]),), d=vec(["0"]))
    cert = properly_separate_point(seg, vec(["1/2", "1"]))
    assert cert is not None
    assert verify_separation_certificate(
        seg, HPolyhedron(dim=2, E=(vec(["1", "0"]), vec(["0", "1"])),
                         d=vec(["1/2", "1"])), cert)


def test_member_point_at_vertex_separates():
    sq = box(0, 1, 0, 1)
    cert = properly_separate_point(sq, vec(["0", "0"]))
    assert cert is not None
    assert dot(cert.functional, (rat(0), rat(0))) == cert.threshold \
        or cert.side_a_bound <= cert.threshold


def test_interior_point_does_not_separate():
    sq = box(0, 1, 0, 1)
    assert properly_separate_point(sq, vec(["1/2", "1/2"])) is None


def test_tampered_certificate_fails_replay():
    a = box(0, 1, 0, 1)
    b = box(3, 4, 0, 1)
    cert = properly_separate_sets(a, b)
    assert cert is not None
    bad = dataclasses.replace(cert, threshold=cert.threshold + 10)
    assert not verify_separation_certificate(a, b, bad)
    flipped = dataclasses.replace(
        cert, functional=tuple(-x for x in cert.functional))
    assert not verify_separation_certificate(a, b, flipped)


def test_scaled_certificate_still_verifies():
    a = box(0, 1, 0, 1)
    b = box(2, 3, 0, 1)
    cert = properly_separate_sets(a, b)
    s = rat(7, 3)
    scaled = dataclasses.replace(
        cert,
        functional=tuple(s * x for x in cert.functional),
        threshold=s * cert.threshold,
        side_a_bound=s * cert.side_a_bound,
        side_b_bound=s * cert.side_b_bound,
    )
    assert verify_separation_certificate(a, b, scaled)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(
    ("touching", "disjoint", "overlap", "random")))
def test_separation_iff_ri_disjoint(seed, mode):
    """Proper separability is equivalent to the relative interiors missing
    each other, and every emitted certificate replays."""
    rng = random.Random(seed)
    a, b = gen_separation_pair(rng, 2, mode)
    cert = properly_separate_sets(a, b)
    assert (cert is None) == ri_intersection_nonempty(a, b)
    if cert is not None:
        assert verify_separation_certificate(a, b, cert)
