import itertools
import random

import pytest

from conftest import random_smooth_cone

from toricarcs.arcs import (
    classify_hom,
    cylinder_level,
    dominance_witness,
    dominates,
    hom_from_label,
    monomial_arc,
    orbit_label,
    orbit_poset,
)
from toricarcs.cones import Cone, Fan, hilbert_basis_dual, quotient_by_face
from toricarcs.lattice import INF, is_finite, mvec, nvec, pairing, row_hermite
from toricarcs.series import TruncatedSeries


# -- classification of semigroup homomorphisms --------------------------------


def test_classify_hom_open_stratum(a1):
    label = classify_hom(a1, {(0, 1): 1, (1, 0): 1, (2, -1): 1})
    assert label.face.is_zero
    assert label.point == (1, 1)


def test_classify_hom_ray_stratum(a1):
    label = classify_hom(a1, {(0, 1): INF, (1, 0): INF, (2, -1): 0})
    assert label.face.key == ((1, 2),)
    assert label.point == (0,)


def test_classify_hom_rejects_relation_violation(a1):
    # (0,1) + (2,-1) = 2*(1,0) forces h(0,1) + h(2,-1) = 2 h(1,0)
    with pytest.raises(ValueError):
        classify_hom(a1, {(0, 1): 1, (1, 0): 0, (2, -1): 0})


def test_classify_hom_rejects_infinity_inside_finiteness_face(a1):
    # finiteness locus must be a face: (1,0) lies in the face spanned by the
    # finite generators (0,1), (2,-1), so INF there is inconsistent
    with pytest.raises(ValueError):
        classify_hom(a1, {(0, 1): 2, (1, 0): INF, (2, -1): 0})


def test_classify_hom_all_infinite(a1):
    label = classify_hom(a1, {(0, 1): INF, (1, 0): INF, (2, -1): INF})
    assert label.face.key == a1.key
    assert label.point == ()


def test_hom_from_label_examples(a1):
    label = orbit_label(a1, a1.zero_face(), (1, 1))
    assert hom_from_label(label).values == (1, 1, 1)
    top = orbit_label(a1, a1.full_face(), ())
    assert hom_from_label(top).values == (INF, INF, INF)


def test_round_trip_exhaustive_small_values(a1):
    # every consistent hom with finite values <= 5 comes from a label and
    # classifies back to it; every other assignment is rejected
    consistent = {}
    for face in a1.faces():
        fq = quotient_by_face(a1, face)
        dim = fq.lattice.quotient_dim
        for point in itertools.product(range(-10, 11), repeat=dim):
            if not fq.image_cone.contains(nvec(*point)):
                continue
            label = orbit_label(a1, face, point)
            hom = hom_from_label(label)
            if all(not is_finite(v) or v <= 5 for v in hom.values):
                consistent[hom.values] = label
    assert len(consistent) > 20
    values_range = list(range(6)) + [INF]
    for assignment in itertools.product(values_range, repeat=3):
        if assignment in consistent:
            label = classify_hom(a1, assignment)
            expected = consistent[assignment]
            assert label.face.key == expected.face.key
            assert label.point == expected.point
        else:
            with pytest.raises(ValueError):
                classify_hom(a1, assignment)


# -- monomial arcs -------------------------------------------------------------


def test_monomial_arc_orders(a1):
    label = orbit_label(a1, a1.zero_face(), (2, 1))
    arc = monomial_arc(label, 8)
    assert {g.coords: s.t_order_generic() for g, s in arc.items()} == {
        (0, 1): 1,
        (1, 0): 2,
        (2, -1): 3,
    }


def test_monomial_arc_satisfies_binomial_relation(a1):
    label = orbit_label(a1, a1.zero_face(), (1, 1))
    arc = monomial_arc(label, 6)
    x, y, z = arc[mvec(0, 1)], arc[mvec(1, 0)], arc[mvec(2, -1)]
    assert x * z == y * y


def test_monomial_arc_on_ray_stratum(a1):
    face = a1.smallest_face_containing([nvec(1, 2)])
    label = orbit_label(a1, face, (0,))
    arc = monomial_arc(label, 4)
    assert arc[mvec(0, 1)].is_zero()
    assert arc[mvec(1, 0)].is_zero()
    assert arc[mvec(2, -1)].t_order_generic() == 0


def test_monomial_arc_relations_fuzz():
    rng = random.Random(3)
    for _ in range(5):
        c = Cone([(1, 0), (1, rng.choice([2, 3, 4]))])
        gens = hilbert_basis_dual(c)
        v = nvec(rng.randint(0, 3) + 1, rng.randint(0, 2))
        if not c.contains(v):
            continue
        label = orbit_label(c, c.zero_face(), v.coords)
        prec = 3 * max(pairing(v, g) for g in gens) + 1
        arc = monomial_arc(label, prec)
        one = arc[gens[0]] ** 0
        # check every kernel relation of the generator matrix
        _, U, _, rank = row_hermite([list(g.coords) for g in gens])
        for row in U[rank:]:
            pos = {g: k for g, k in zip(gens, row) if k > 0}
            neg = {g: -k for g, k in zip(gens, row) if k < 0}
            lhs = one
            for g, k in pos.items():
                lhs = lhs * arc[g] ** k
            rhs = one
            for g, k in neg.items():
                rhs = rhs * arc[g] ** k
            assert lhs == rhs


def test_cylinder_level(a1):
    assert cylinder_level(orbit_label(a1, a1.zero_face(), (1, 1))) == 1
    assert cylinder_level(orbit_label(a1, a1.zero_face(), (2, 1))) == 3
    assert cylinder_level(orbit_label(a1, a1.zero_face(), (0, 0))) == 0


def test_cylinder_level_rejects_nonzero_stratum(a1):
    face = a1.smallest_face_containing([nvec(1, 0)])
    with pytest.raises(ValueError):
        cylinder_level(orbit_label(a1, face, (1,)))


# -- dominance -----------------------------------------------------------------


def test_dominates_same_stratum(a1):
    zero = a1.zero_face()
    v = orbit_label(a1, zero, (1, 1))
    w = orbit_label(a1, zero, (2, 1))
    assert dominates(v, w)
    assert not dominates(w, v)


def test_dominates_cross_stratum(a1):
    face = a1.smallest_face_containing([nvec(1, 0)])
    upstairs = orbit_label(a1, a1.zero_face(), (3, 1))
    downstairs = orbit_label(a1, face, (1,))
    assert dominates(upstairs, downstairs)
    assert not dominates(downstairs, upstairs)


def test_dominates_incomparable(a1):
    zero = a1.zero_face()
    v = orbit_label(a1, zero, (1, 1))
    w = orbit_label(a1, zero, (1, 2))
    assert not dominates(v, w)
    assert not dominates(w, v)


def test_dominates_rejects_mixed_ambients(a1, quadrant):
    v = orbit_label(a1, a1.zero_face(), (1, 1))
    w = orbit_label(quadrant, quadrant.zero_face(), (1, 1))
    with pytest.raises(ValueError):
        dominates(v, w)


def test_dominance_implies_face_relation(a1):
    poset = orbit_poset(a1, 2)
    for i, j in poset.relation:
        tau = poset.nodes[i].face
        gamma = poset.nodes[j].face
        assert set(tau.indices) <= set(gamma.indices)


def test_dominance_transitive_across_strata(a1):
    poset = orbit_poset(a1, 2)
    rel = poset.relation
    for i, j in rel:
        for k, l in rel:
            if j == k:
                assert (i, l) in rel


def test_strata_closure_lifting(a1):
    # every orbit over a stratum is dominated by an orbit over each smaller
    # stratum with the same projected point
    from toricarcs.arcs import _stratum_quotient

    poset = orbit_poset(a1, 3)
    strata = {f.key: f for f in a1.faces()}
    for node in poset.nodes:
        tau = node.face
        if tau.is_zero:
            continue
        for gamma in a1.faces():
            if gamma.key == tau.key or not set(gamma.indices) <= set(tau.indices):
                continue
            q_gamma = _stratum_quotient(2, gamma.key)
            q_tau = _stratum_quotient(2, tau.key)
            # lift node.point into N_gamma staying over the same point
            w = q_gamma.project(q_tau.lift(node.point))
            interior = tau.rays[0]
            for r in tau.rays[1:]:
                interior = interior + r
            shift = q_gamma.project(interior)
            image = quotient_by_face(a1, gamma).image_cone
            k = 0
            while not image.contains(w + k * shift):
                k += 1
                assert k < 100
            upstairs = orbit_label(a1, gamma, (w + k * shift).coords)
            assert dominates(upstairs, node)
            assert q_tau.project(q_gamma.lift(upstairs.point)).coords == node.point


# -- orbit posets ----------------------------------------------------------------


def test_orbit_poset_quadrant_bound1(quadrant):
    poset = orbit_poset(quadrant, 1)
    zero_nodes = {n.point: i for i, n in enumerate(poset.nodes) if n.face.is_zero}
    assert sorted(zero_nodes) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    origin = zero_nodes[(0, 0)]
    for pt, idx in zero_nodes.items():
        if idx != origin:
            assert (origin, idx) in poset.relation


def test_orbit_poset_bound0_one_node_per_stratum(quadrant, a1):
    assert len(orbit_poset(quadrant, 0).nodes) == 4
    assert len(orbit_poset(a1, 0).nodes) == 4


def test_orbit_poset_a1_bound2_covers_are_hilbert_steps(a1):
    poset = orbit_poset(a1, 2)
    stratum0 = [n for n in poset.nodes if n.face.is_zero]
    assert len(stratum0) == 7
    steps = {(1, 0), (1, 1), (1, 2)}
    for i, j in poset.covers:
        a, b = poset.nodes[i], poset.nodes[j]
        if a.face.is_zero and b.face.is_zero:
            diff = tuple(x - y for x, y in zip(b.point, a.point))
            assert diff in steps


def test_orbit_poset_deterministic(quadrant):
    p1 = orbit_poset(quadrant, 2)
    p2 = orbit_poset(quadrant, 2)
    assert [n.point for n in p1.nodes] == [n.point for n in p2.nodes]
    assert p1.covers == p2.covers


def test_orbit_poset_over_fan():
    fan = Fan([Cone([(1, 0), (0, 1)]), Cone([(0, 1), (-1, 0)])])
    poset = orbit_poset(fan, 1)
    zero_points = {n.point for n in poset.nodes if n.face.is_zero}
    assert (-1, 1) in zero_points and (1, 1) in zero_points
    # no maximal cone contains both (1,0)- and (-1,0)-interior orbits jointly
    by_point = {n.point: k for k, n in enumerate(poset.nodes) if n.face.is_zero}
    assert (by_point[(1, 0)], by_point[(-1, 0)]) not in poset.relation


# -- deformation witnesses ----------------------------------------------------------


def test_witness_matches_deformation_formula(quadrant):
    # family for v=(1,1) -> v'=(2,1) is (t^2 + L t, t + L t)
    zero = quadrant.zero_face()
    wit = dominance_witness(
        orbit_label(quadrant, zero, (1, 1)), orbit_label(quadrant, zero, (2, 1))
    )
    assert wit.verified
    fam = dict(wit.family)
    P = wit.precision
    assert fam[(1, 0)] == TruncatedSeries({(2, 0): 1, (1, 1): 1}, P)
    assert fam[(0, 1)] == TruncatedSeries({(1, 0): 1, (1, 1): 1}, P)
    assert P == 5


def test_witness_reflexive_pair(quadrant):
    zero = quadrant.zero_face()
    label = orbit_label(quadrant, zero, (2, 3))
    wit = dominance_witness(label, label)
    assert wit.verified
    for _, series in wit.family:
        assert series.t_order_generic() == series.t_order_at_zero()


def test_witness_cross_stratum_vanishing(quadrant):
    # target on the stratum of ray (1,0): second character vanishes at 0
    zero = quadrant.zero_face()
    face = quadrant.smallest_face_containing([nvec(1, 0)])
    wit = dominance_witness(
        orbit_label(quadrant, zero, (1, 1)), orbit_label(quadrant, face, (1,))
    )
    assert wit.verified
    fam = dict(wit.family)
    assert fam[(0, 1)] == TruncatedSeries({(1, 0): 1, (1, 1): 1}, wit.precision)
    assert fam[(1, 0)] == TruncatedSeries({(1, 1): 1}, wit.precision)
    assert fam[(1, 0)].vanishes_at_zero()


def test_witness_requires_domination(quadrant):
    zero = quadrant.zero_face()
    with pytest.raises(ValueError):
        dominance_witness(
            orbit_label(quadrant, zero, (1, 1)), orbit_label(quadrant, zero, (0, 1))
        )


def test_witness_rejects_nonsmooth_chart(a1):
    zero = a1.zero_face()
    with pytest.raises(ValueError):
        dominance_witness(
            orbit_label(a1, zero, (1, 1)), orbit_label(a1, zero, (2, 1))
        )


def test_witness_rejects_too_small_precision(quadrant):
    zero = quadrant.zero_face()
    with pytest.raises(ValueError):
        dominance_witness(
            orbit_label(quadrant, zero, (1, 1)),
            orbit_label(quadrant, zero, (2, 1)),
            t_precision=4,
        )


def test_witness_lower_dimensional_smooth_chart():
    # smooth 1-dim cone in Z^2: torus-factor characters map to units
    ray = Cone([(1, 0)], 2)
    zero = ray.zero_face()
    wit = dominance_witness(
        orbit_label(ray, zero, (1, 0)), orbit_label(ray, zero, (3, 0))
    )
    assert wit.verified
    chars = {char for char, _ in wit.family}
    assert len(chars) == 3  # cone character plus a unit pair
    fam = dict(wit.family)
    unit_char = next(c for c in chars if fam[c].t_order_generic() == 0 and c[0] >= 0)
    inv_char = tuple(-x for x in unit_char)
    product = fam[unit_char] * fam[inv_char]
    assert product.t_order_generic() == 0
    assert product.t_order_at_zero() == 0


def test_witness_agreement_fuzz():
    rng = random.Random(17)
    for _ in range(30):
        dim = rng.choice([2, 3])
        cone = random_smooth_cone(rng, dim)
        image = cone
        pts = []
        while len(pts) < 2:
            v = tuple(rng.randint(0, 4) for _ in range(dim))
            combo = nvec(*(0,) * dim)
            for r in cone.rays:
                combo = combo + rng.randint(0, 2) * r
            if cone.contains(combo):
                pts.append(combo)
        base = pts[0]
        step = pts[1]
        o1 = orbit_label(cone, cone.zero_face(), base.coords)
        o2 = orbit_label(cone, cone.zero_face(), (base + step).coords)
        assert dominates(o1, o2)
        wit = dominance_witness(o1, o2)
        assert wit.verified


def test_classify_hom_three_dim_two_dim_stratum():
    # cone over a square; the finiteness face is the facet spanned by two rays
    c = Cone([(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)])
    gens = hilbert_basis_dual(c)
    # characters vanishing on the facet spanned by (1,0,0),(1,0,1) stay finite
    facet = c.smallest_face_containing([nvec(1, 0, 0), nvec(1, 0, 1)])
    target = orbit_label(c, facet, (2,))
    hom = hom_from_label(target)
    label = classify_hom(c, hom)
    assert label.face.key == facet.key
    assert label.point == (2,)


def test_witness_over_fan_selects_smooth_chart():
    # the chart search must land on the smooth cone of the fan
    smooth = Cone([(0, 1), (1, 0)])
    singular = Cone([(1, 0), (1, -2)])
    fan = Fan([smooth, singular])
    zero = smooth.zero_face()
    o1 = orbit_label(fan, zero, (1, 1))
    o2 = orbit_label(fan, zero, (2, 1))
    wit = dominance_witness(o1, o2)
    assert wit.verified
    assert wit.chart.key == smooth.key


def test_witness_over_fan_unsupported_when_only_singular_chart_fits():
    smooth = Cone([(0, 1), (1, 0)])
    singular = Cone([(1, 0), (1, -2)])
    fan = Fan([smooth, singular])
    zero = smooth.zero_face()
    o1 = orbit_label(fan, zero, (1, -1))
    o2 = orbit_label(fan, zero, (2, -1))
    assert dominates(o1, o2)
    with pytest.raises(ValueError):
        dominance_witness(o1, o2)


def test_dominates_over_fan_uses_any_common_chart():
    smooth = Cone([(0, 1), (1, 0)])
    singular = Cone([(1, 0), (1, -2)])
    fan = Fan([smooth, singular])
    zero = smooth.zero_face()
    # comparable inside the singular chart only
    o1 = orbit_label(fan, zero, (1, -1))
    o2 = orbit_label(fan, zero, (2, -2))
    assert dominates(o1, o2)
    # not comparable in any chart: difference leaves both cones
    o3 = orbit_label(fan, zero, (0, 1))
    assert not dominates(o1, o3)


def test_orbit_poset_complete_fan():
    # complete fan with three maximal cones covering the plane
    c1 = Cone([(1, 0), (0, 1)])
    c2 = Cone([(0, 1), (-1, -1)])
    c3 = Cone([(-1, -1), (1, 0)])
    fan = Fan([c1, c2, c3])
    assert len(fan.strata()) == 7  # origin, three rays, three maximal cones
    poset = orbit_poset(fan, 1)
    stratum0 = [n for n in poset.nodes if n.face.is_zero]
    # the fan is complete: every box point labels an orbit over the open stratum
    assert len(stratum0) == 9
    ray_nodes = [n for n in poset.nodes if len(n.face.key) == 1]
    full_nodes = [n for n in poset.nodes if len(n.face.key) == 2]
    assert len(ray_nodes) == 9  # each ray quotient meets the box in 3 points
    assert len(full_nodes) == 3
    # antisymmetry of the global relation
    for i, j in poset.relation:
        assert (j, i) not in poset.relation
    # the origin dominates every open-stratum orbit sharing a chart
    by_point = {n.point: k for k, n in enumerate(poset.nodes) if n.face.is_zero}
    origin = by_point[(0, 0)]
    for pt, idx in by_point.items():
        if pt != (0, 0):
            assert (origin, idx) in poset.relation
    # orbits in opposite charts with no common cone are incomparable
    assert (by_point[(1, 1)], by_point[(-1, 0)]) not in poset.relation


def test_orbit_poset_equal_for_equal_fans():
    fan_a = Fan([Cone([(1, 0), (0, 1)]), Cone([(0, 1), (-1, 0)])])
    fan_b = Fan([Cone([(0, 1), (-1, 0)]), Cone([(1, 0), (0, 1)])])
    pa = orbit_poset(fan_a, 1)
    pb = orbit_poset(fan_b, 1)
    assert [(n.face.key, n.point) for n in pa.nodes] == [
        (n.face.key, n.point) for n in pb.nodes
    ]
    assert pa.covers == pb.covers
