import random

from relintlab import HPolyhedron, rat
from relintlab.generator import (
    gen_box,
    gen_cone,
    gen_map,
    gen_matrix,
    gen_pl_pair,
    gen_polyhedron,
    gen_separation_pair,
    gen_sweep_candidate,
)


def test_polyhedra_nonempty_and_deterministic():
    for seed in range(20):
        p1 = gen_polyhedron(random.Random(seed), 3)
        p2 = gen_polyhedron(random.Random(seed), 3)
        assert p1.A == p2.A and p1.b == p2.b and p1.E == p2.E
        assert not p1.is_empty()


def test_box_contains_anchor():
    for seed in range(10):
        rng = random.Random(seed)
        anchor = (rat(1), rat(-1))
        box = gen_box(rng, 2, around=anchor)
        assert box.contains(anchor)


def test_pl_pair_modes_shape():
    for seed in range(8):
        for mode in ("qualified", "disjoint", "touching", "wild"):
            f, g = gen_pl_pair(random.Random(seed), 2, mode)
            assert f.dim == g.dim == 2
            assert not f.domain.is_empty()
            assert not g.domain.is_empty()


def test_qualified_mode_domains_overlap():
    from relintlab import ri_intersection_nonempty
    for seed in range(10):
        f, g = gen_pl_pair(random.Random(seed), 2, "qualified")
        assert ri_intersection_nonempty(f.domain, g.domain)


def test_disjoint_mode_domains_disjoint():
    from relintlab import properly_separate_sets
    for seed in range(10):
        f, g = gen_pl_pair(random.Random(seed), 1, "disjoint")
        assert properly_separate_sets(f.domain, g.domain) is not None


def test_separation_pair_modes():
    for seed in range(8):
        for mode in ("touching", "disjoint", "overlap", "random"):
            a, b = gen_separation_pair(random.Random(seed), 2, mode)
            assert isinstance(a, HPolyhedron)
            assert not a.is_empty() and not b.is_empty()


def test_gen_map_slices():
    from relintlab import map_domain
    for seed in range(6):
        f = gen_map(random.Random(seed), 2, 1, solid_slices=True)
        assert f.graph.dim == 3
        assert not map_domain(f).is_empty()


def test_gen_matrix_and_cone():
    rng = random.Random(3)
    m = gen_matrix(rng, 2, 3)
    assert len(m) == 2 and len(m[0]) == 3
    c = gen_cone(rng, 2)
    assert c.dim == 2 and c.generators


def test_sweep_candidates_cover_kinds():
    seen_tail = seen_finite = False
    for seed in range(30):
        x = gen_sweep_candidate(random.Random(seed))
        if x.tail is not None and x.tail[0] != 0:
            seen_tail = True
        if x.finite_support():
            seen_finite = True
    assert seen_tail and seen_finite
