import random

import pytest
from gmpy2 import mpq

from crg.catalog import get_group, imprimitive_generators
from crg.cyclotomic import Cyclotomic
from crg.groups import ClosureCapExceeded, ReflectionGroup, generate_group
from crg.linalg import Mat


def test_generate_single_reflection():
    s = Mat.build(1, [[0, 1], [1, 0]])
    g = generate_group([s])
    assert g.order == 2


def test_closure_cap():
    gens = imprimitive_generators(4, 2)
    g = ReflectionGroup("capped", gens, closure_cap=100)
    with pytest.raises(ClosureCapExceeded):
        g.enumerate()


def test_fast_group_orders(fast_group_names):
    expected = {"G(1,1,5)": 120, "G(2,2,4)": 192, "G(3,3,4)": 648,
                "G(4,4,4)": 1536, "G(2,1,4)": 384, "G(4,2,4)": 3072,
                "G28": 1152}
    for name in fast_group_names:
        assert get_group(name).order == expected[name]


def test_closure_property_randomized():
    rng = random.Random(20)
    g = get_group("G(2,2,4)")
    for _ in range(100):
        a = rng.randrange(g.order)
        b = rng.randrange(g.order)
        prod = g.elements[a] * g.elements[b]
        assert prod in g.index


def test_reflections_and_hyperplanes_g214():
    g = get_group("G(2,1,4)")
    assert len(g.reflections()) == 16
    hyps = g.hyperplanes()
    assert len(hyps) == 16
    assert all(h.order == 2 for h in hyps)
    assert sum(h.order - 1 for h in hyps) == 16


def test_reflections_g28():
    g = get_group("G28")
    assert len(g.reflections()) == 24
    assert len(g.hyperplanes()) == 24


def test_hyperplane_orbits():
    assert [len(o) for o in get_group("G28").hyperplane_orbits()] == [12, 12]
    # coordinate vs difference hyperplanes
    g = get_group("G(2,1,4)")
    sizes = [len(o) for o in g.hyperplane_orbits()]
    assert sizes == [12, 4]
    # the 4-orbit consists of the coordinate hyperplanes x_i = 0
    hyps = g.hyperplanes()
    small = g.hyperplane_orbits()[1]
    for k in small:
        form = hyps[k].form
        assert sum(1 for x in form if any(x.c)) == 1


def test_derived_subgroups_fast():
    assert get_group("G28").subgroup_derived().order == 288
    assert get_group("G(2,2,4)").subgroup_derived().order == 96
    assert get_group("G(1,1,5)").subgroup_derived().order == 60
    # abelian input: trivial derived subgroup
    d1 = Mat.build(1, [[-1, 0], [0, 1]])
    d2 = Mat.build(1, [[1, 0], [0, -1]])
    ab = generate_group([d1, d2])
    assert ab.subgroup_derived().order == 1


def test_sl_and_center():
    g = get_group("G(2,1,4)")
    assert g.subgroup_sl().order == 192
    assert g.subgroup_center().order == 2
    assert get_group("G(3,3,4)").subgroup_center().order == 1
    assert get_group("G(4,2,4)").subgroup_center().order == 4


def test_generic_point_trivial_stabilizer():
    g = get_group("G(2,2,4)")
    stab = g.point_stabilizer((mpq(3), mpq(5), mpq(11), mpq(17)))
    assert stab.order == 1
    # the line stabilizer of a generic point is exactly the center
    line, theta = g.line_stabilizer((mpq(3), mpq(5), mpq(11), mpq(17)))
    assert line.members == g.subgroup_center().members


def test_projective_orbit_fixed_point():
    d1 = Mat.build(1, [[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0],
                       [0, 0, 0, 1]])
    g = generate_group([d1])
    orbit = g.projective_orbit((mpq(0), mpq(1), mpq(2), mpq(3)))
    assert len(orbit) == 1


def test_projective_orbit_singular_points():
    # the G(2,2,4)-orbit of [0:0:i:1]: oracle is full application + dedup
    g = get_group("G(2,2,4)")
    i = Cyclotomic.root_of_unity(4)
    v = (Cyclotomic.zero(4), Cyclotomic.zero(4), i, Cyclotomic.one(4))
    orbit = g.projective_orbit(v)
    from crg.linalg import canonical_form
    brute = {canonical_form(m.lift(4).vec(v)) for m in g.elements}
    assert set(orbit) == brute
    assert len(orbit) == 12
    stab, _ = g.line_stabilizer(v)
    assert len(orbit) * stab.order == g.order


def test_orbit_stabilizer_product_randomized():
    rng = random.Random(20)
    g = get_group("G(2,2,4)")
    done = 0
    while done < 100:
        v = tuple(mpq(rng.randint(-3, 3)) for _ in range(4))
        if not any(v):
            continue
        orbit = g.projective_orbit(v)
        stab, _ = g.line_stabilizer(v)
        assert len(orbit) * stab.order == g.order
        done += 1


def test_parabolic_matches_pointwise_stabilizer():
    # Steinberg verification on 2-dim intersections of hyperplanes from
    # the two G28 orbits
    g = get_group("G28")
    hyps = g.hyperplanes()
    orb = g.hyperplane_orbits()
    from crg.linalg import nullspace
    from crg.cyclotomic import Cyclotomic as C
    rng = random.Random(20)
    for _ in range(6):
        k1 = rng.choice(orb[0])
        k2 = rng.choice(orb[1])
        rows = [list(hyps[k1].form), list(hyps[k2].form)]
        basis = nullspace(rows, 4, C.zero(1), C.one(1))
        assert len(basis) == 2
        sub, verified = g.parabolic(basis)
        assert verified
        assert sub.order > 1


def test_verify_numerology_fast(fast_group_names):
    for name in fast_group_names:
        checks = get_group(name).verify_numerology(N=24)
        assert checks["all_pass"], (name, checks)


def test_verify_numerology_g28_values():
    checks = get_group("G28").verify_numerology(N=24)
    assert checks["order_equals_degree_product"]["expected"] == 1152
    assert checks["reflection_count"]["expected"] == 24
    assert checks["center_order"]["expected"] == 2
    assert checks["hyperplane_count"]["expected"] == 24


def test_verify_numerology_fault_injection():
    g = get_group("G(2,2,4)")
    bad = ReflectionGroup("bad", g.generators, degrees=[2, 4, 6, 6],
                          codegrees=g.codegrees)
    bad._elements, bad._index, bad._dets = g._elements, g._index, g._dets
    checks = bad.verify_numerology(N=12)
    assert not checks["all_pass"]
    assert not checks["order_equals_degree_product"]["pass"]


def test_element_ordering_deterministic():
    g1 = ReflectionGroup("a", imprimitive_generators(2, 2))
    g2 = ReflectionGroup("b", imprimitive_generators(2, 2))
    g1.enumerate()
    g2.enumerate()
    assert g1.elements == g2.elements
