import pytest

from conleylab import (attractor, catalog, complexes as cxm,
                       constructions as cons, flow as flm)


def test_example_general_needs_a_mapping_torus():
    with pytest.raises(cons.ConstructionError) as ei:
        cons.example_general(cxm.sphere(3, 6))
    assert ei.value.code == "bad-host"


def test_homoclinic_sphere_size_guard():
    with pytest.raises(cons.ConstructionError) as ei:
        cons.homoclinic_sphere(2, 8)
    assert ei.value.code == "bad-host"


def test_circle_with_arc():
    # attractor on the circle with a whisker arc attached: the arc adds a
    # second basin component, so s exceeds the manifold bound rank H^0(K)
    flow, k = cons.circle_with_arc(12)
    rep = attractor.analyze(flow, k)
    assert rep.classification == "NoExternalExplosions"
    assert rep.r == 1 and rep.s == 2
    assert not rep.global_attractor


def test_example_over_interval_fiber():
    # the closed-annulus phase space: same engine construction, fiber an arc
    fiber = cxm.interval(3)
    mt = cxm.mapping_torus(fiber, cxm.identity_map(fiber), 12)
    flow, k = cons.example_general(mt)
    rep = attractor.analyze(flow, k)
    assert rep.classification == "NoExternalExplosions"
    assert rep.r == 1 and rep.s == 1
    assert rep.global_attractor


def test_capped_annulus_not_isolated():
    flow, k = cons.capped_annulus(5, 10)
    with pytest.raises(attractor.NotIsolatedError):
        attractor.analyze(flow, k)


def test_embedded_annulus_keeps_verdict_with_euler_mismatch():
    # the band flow extends over a sphere with frozen caps; the verdict
    # stays NoExternalExplosions even though chi(K) != chi(basin closure),
    # because the basin omits the caps and the surface Euler test assumes
    # a flow defined on all of M
    flow, k = cons.embedded_annulus()
    rep = attractor.analyze(flow, k)
    assert rep.classification == "NoExternalExplosions"
    cx = flow.cx
    assert cx.euler(cx.closure(k)) == 1
    assert cx.euler(cx.closure(rep.basin)) == 0


def test_freeze_outside_whole_space_is_identity():
    rf = flm.rest_flow(cxm.torus(4, 4))
    fz = cons.freeze_outside(rf, rf.tops)
    assert fz.succ == rf.succ


def test_freeze_outside_needs_invariant_region():
    entry = catalog.build("north-south")
    with pytest.raises(cons.ConstructionError) as ei:
        cons.freeze_outside(entry["flow"], set(sorted(entry["flow"].tops)[:3]))
    assert ei.value.code == "not-invariant"


def test_freeze_outside_preserves_classification():
    entry = catalog.build("north-south")
    f = entry["flow"]
    frozen = cons.freeze_outside(f, f.tops - {"cap:n"})
    assert attractor.analyze(frozen, entry["k"]).classification == "Stable"

    flow, k = cons.embedded_annulus()
    moving = flow.tops - set(flow.fixed)
    frozen2 = cons.freeze_outside(flow, flow.reach(moving))
    rep = attractor.analyze(frozen2, k)
    assert rep.classification == "NoExternalExplosions"


def test_add_uniform_component_raises_s_not_r():
    entry = catalog.build("hypersurface-genus2")
    flow, k = entry["flow"], entry["k"]
    base = attractor.analyze(flow, k)
    f1, k1 = cons.add_uniform_component(flow, k)
    f2, k2 = cons.add_uniform_component(f1, k1)
    grown = attractor.analyze(f2, k2)
    assert (base.r, base.s) == (1, 1)
    assert (grown.r, grown.s) == (1, 3)
    # the host surface offers two strip targets; the third attach fails
    with pytest.raises(cons.ConstructionError) as ei:
        cons.add_uniform_component(f2, k2)
    assert ei.value.code == "no-room"


def test_hypersurface_needs_nonseparating_cycle():
    sp = cxm.sphere(4, 8)
    z = ["eh:2,%d" % l for l in range(8)]
    with pytest.raises(cons.ConstructionError) as ei:
        cons.hypersurface_flow(sp, z)
    assert ei.value.code == "separating-cycle"


def test_hypersurface_torus_attractor_is_complement_of_band():
    entry = catalog.build("hypersurface-torus")
    rep = attractor.analyze(entry["flow"], entry["k"])
    assert rep.classification == "NoExternalExplosions"
    assert rep.r == 1 and rep.s == 1 and rep.global_attractor
