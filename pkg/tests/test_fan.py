import pytest

from excol import (
    BundleSpec,
    CenterSpec,
    build_projective_bundle_fan,
    center_geometry,
    make_blowup,
    projective_space_fan,
    star_subdivide,
)
from excol.errors import InvalidSpec, NotACone, UnknownRay
from excol.fan import Fan, validate_fan


def test_bundle_spec_invariants():
    spec = BundleSpec(2, (0, 1, 1))
    assert spec.r == 2
    assert spec.dim == 4
    assert spec.degree_sum == 2
    with pytest.raises(InvalidSpec):
        BundleSpec(0, (0, 0))
    with pytest.raises(InvalidSpec):
        BundleSpec(1, (0,))
    with pytest.raises(InvalidSpec):
        BundleSpec(1, (0, 2, 1))  # decreasing
    with pytest.raises(InvalidSpec, match="a_0 = 0"):
        BundleSpec(1, (1, 2))


def test_center_spec_size():
    with pytest.raises(InvalidSpec):
        CenterSpec(frozenset({"b1"}))
    with pytest.raises(InvalidSpec):
        CenterSpec(frozenset({"b1", "b2", "f0", "f1"}))


def test_p1xp1_fan():
    fan = build_projective_bundle_fan(BundleSpec(1, (0, 0)))
    assert fan.n_rays == 4
    assert len(fan.max_cones) == 4
    assert fan.ray_names == ("b0", "b1", "f0", "f1")


def test_p1_bundle_over_p1_rank3_fan():
    fan = build_projective_bundle_fan(BundleSpec(1, (0, 0, 0)))
    assert fan.n_rays == 5
    assert len(fan.max_cones) == 6  # (s+1)(r+1)


def test_twisted_bundle_fan_rays():
    fan = build_projective_bundle_fan(BundleSpec(2, (0, 1)))
    assert fan.n_rays == 5
    assert len(fan.max_cones) == 6
    assert fan.rays[fan.name_index["b0"]] == (-1, -1, 1)
    assert fan.rays[fan.name_index["f0"]] == (0, 0, -1)


def test_divisor_classes_twisted():
    fan = build_projective_bundle_fan(BundleSpec(2, (0, 1)))
    for name in ("b0", "b1", "b2"):
        assert fan.divisor_class(name).coords == (1, 0)
    assert fan.divisor_class("f0").coords == (0, 1)
    assert fan.divisor_class("f1").coords == (-1, 1)
    assert fan.canonical_class().coords == (-2, -2)
    with pytest.raises(UnknownRay):
        fan.divisor_class("b9")


def test_projective_space_fan():
    fan = projective_space_fan(2)
    assert fan.n_rays == 3
    assert len(fan.max_cones) == 3
    assert fan.canonical_class().coords == (-3,)
    for name in fan.ray_names:
        assert fan.divisor_class(name).coords == (1,)


def test_star_subdivision_codim2_counts():
    fan = build_projective_bundle_fan(BundleSpec(1, (0, 0)))
    sub = star_subdivide(fan, CenterSpec(frozenset({"b1", "f1"})))
    assert sub.n_rays == 5
    assert len(sub.max_cones) == 5
    assert sub.ray_names[-1] == "e"
    assert sub.rays[-1] == (1, 1)
    validate_fan(sub)


def test_star_subdivision_codim3_counts():
    fan = build_projective_bundle_fan(BundleSpec(2, (0, 0)))
    sub = star_subdivide(fan, CenterSpec(frozenset({"b1", "b2", "f1"})))
    assert sub.n_rays == 6
    assert len(sub.max_cones) == 8
    validate_fan(sub)


def test_star_subdivision_not_a_cone():
    fan = build_projective_bundle_fan(BundleSpec(1, (0, 0)))
    with pytest.raises(NotACone):
        star_subdivide(fan, CenterSpec(frozenset({"b0", "b1"})))


def test_blowup_canonical_class(bl_p1p1, bl_p2p1):
    # codim-2: K picks up (c-1) = 1 copy of E
    assert bl_p1p1.fan_xt.canonical_class().coords == (-2, -2, 1)
    # codim-3 on P^2 x P^1: (-s-1+a, -r-1, c-1)
    assert bl_p2p1.fan_xt.canonical_class().coords == (-3, -2, 2)


def test_pullback_divisor_classes(bl_p1p1):
    xt = bl_p1p1.fan_xt
    # center rays acquire a -E correction, others pull back unchanged
    assert xt.divisor_class("b1").coords == (1, 0, -1)
    assert xt.divisor_class("b0").coords == (1, 0, 0)
    assert xt.divisor_class("f1").coords == (0, 1, -1)
    assert xt.divisor_class("e").coords == (0, 0, 1)


def test_tdivisor_lift_roundtrip(bl_p2p1):
    for fan in (bl_p2p1.fan_x, bl_p2p1.fan_xt):
        for coords in [(0,) * fan.pic_rank, (1, -2) + (3,) * (fan.pic_rank - 2)]:
            cls = fan.pic_class(coords)
            assert fan.class_of_divisor(fan.tdivisor_lift(cls)) == cls


def test_validate_fan_rejects_broken_input():
    good = projective_space_fan(2)
    bad_ray = Fan(
        dim=2,
        ray_names=good.ray_names,
        rays=((-2, -2),) + good.rays[1:],
        max_cones=good.max_cones,
        basis_tag=good.basis_tag,
        basis_divisors=good.basis_divisors,
    )
    with pytest.raises(InvalidSpec):
        validate_fan(bad_ray)
    incomplete = Fan(
        dim=2,
        ray_names=good.ray_names,
        rays=good.rays,
        max_cones=good.max_cones[:-1],
        basis_tag=good.basis_tag,
        basis_divisors=good.basis_divisors,
    )
    with pytest.raises(InvalidSpec):
        validate_fan(incomplete)


def test_center_geometry_fixed_point_codim3():
    geom = center_geometry(BundleSpec(2, (0, 0)), CenterSpec(frozenset({"b1", "b2", "f1"})))
    assert (geom.s_prime, geom.r_prime) == (0, 0)
    assert geom.fiber_survivors == (0,)
    assert geom.conormal_summands == ((-1, 0), (-1, 0), (0, -1))
    assert geom.y_degrees == (0,)


def test_center_geometry_mixed_codim2():
    geom = center_geometry(BundleSpec(2, (0, 1, 2)), CenterSpec(frozenset({"b2", "f1"})))
    assert (geom.s_prime, geom.r_prime) == (1, 1)
    assert geom.fiber_survivors == (0, 2)
    assert geom.y_degrees == (0, 2)
    assert geom.conormal_summands == ((-1, 0), (1, -1))


def test_center_geometry_rejects_invalid():
    spec = BundleSpec(1, (0, 0))
    with pytest.raises(UnknownRay):
        center_geometry(spec, CenterSpec(frozenset({"b1", "f9"})))
    with pytest.raises(NotACone):
        center_geometry(spec, CenterSpec(frozenset({"f0", "f1"})))


def test_make_blowup_consistency(bl_p1p1):
    assert bl_p1p1.codim == 2
    assert bl_p1p1.fan_xt.n_rays == bl_p1p1.fan_x.n_rays + 1
    assert bl_p1p1.fan_xt.pic_rank == 3


def test_canonical_json_is_stable(bl_p1p1):
    spec, center = bl_p1p1.spec, bl_p1p1.center
    again = make_blowup(spec, center)
    assert again.fan_xt.canonical_json == bl_p1p1.fan_xt.canonical_json
    assert again.fan_xt.content_hash == bl_p1p1.fan_xt.content_hash
