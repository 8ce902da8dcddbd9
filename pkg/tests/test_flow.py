import pytest

from conleylab import catalog, complexes as cxm, flow as flm


def test_validation_errors():
    c = cxm.circle(6)
    with pytest.raises(flm.FlowError) as ei:
        flm.CombinatorialFlow(c, {})
    assert ei.value.code == "not-total"
    with pytest.raises(flm.FlowError) as ei:
        flm.CombinatorialFlow(c, {t: (["nope"] if t == "e:0" else [t])
                                  for t in c.top_cells()})
    assert ei.value.code == "bad-successor"
    # e:3 does not share a face with e:0, so it cannot be a successor
    with pytest.raises(flm.FlowError) as ei:
        flm.CombinatorialFlow(c, {t: (["e:3"] if t == "e:0" else [t])
                                  for t in c.top_cells()})
    assert ei.value.code == "not-local"


def test_rest_flow_prolongation_is_one_ring():
    c = cxm.circle(6)
    f = flm.rest_flow(c)
    assert set(f.fixed) == set(c.top_cells())
    for x in c.top_cells():
        jp = f.j_plus(x)
        assert jp.cells == frozenset(f.one_ring(x))
        assert f.omega_limit(x).cells == frozenset({x})


def test_iterate_matches_scc_image():
    entry = catalog.build("example22-torus")
    fl = entry["flow"]
    x = sorted(fl.tops)[0]
    assert fl.eventual_image({x}) == fl.eventual_image_scc({x})
    w = fl.reach({x})
    assert (fl.eventual_image({x}, within=w)
            == fl.eventual_image_scc({x}, within=w))


def test_limit_enclosures_nest():
    entry = catalog.build("example22-torus")
    fl = entry["flow"]
    x = sorted(fl.tops)[0]
    w = fl.reach({x})
    assert fl.j_plus(x, within=w).cells <= fl.j_plus(x).cells
    assert fl.omega_limit(x).cells <= fl.j_plus(x).cells
    assert fl.j_plus(x).kind == "jplus"
    assert fl.j_plus(x).certified


def test_touch_duality_small_flow():
    f = catalog.build("example22-circle")["flow"]
    jp = {x: f.j_plus(x) for x in f.tops}
    jm = {x: f.j_minus(x) for x in f.tops}
    for x in f.tops:
        for y in f.tops:
            assert jp[x].touches(y) == jm[y].touches(x)


def test_outside_region_rejected():
    f = catalog.build("example22-circle")["flow"]
    tops = sorted(f.tops)
    with pytest.raises(flm.FlowError) as ei:
        f.j_plus(tops[0], within={tops[1]})
    assert ei.value.code == "outside-region"
    with pytest.raises(flm.FlowError) as ei:
        f.j_plus("not-a-cell")
    assert ei.value.code == "bad-cell"


def test_refine_recipe_flow():
    fl = catalog.build("example22-torus")["flow"]
    f2 = fl.refine(2)
    assert len(f2.tops) == 4 * len(fl.tops)
    assert f2.meta["recipe"]["resolution"] == 2 * fl.meta["recipe"]["resolution"]


def test_refine_needs_recipe():
    f = flm.rest_flow(cxm.circle(6))
    with pytest.raises(flm.FlowError) as ei:
        f.refine()
    assert ei.value.code == "refine-unsupported"


def test_json_round_trip():
    fl = catalog.build("example22-circle")["flow"]
    data = fl.to_json()
    back = flm.CombinatorialFlow.from_json(data)
    assert back.succ == fl.succ
    assert set(back.fixed) == set(fl.fixed)
    assert back.meta["recipe"] == fl.meta["recipe"]


def test_json_fixed_disagreement():
    fl = catalog.build("example22-circle")["flow"]
    data = fl.to_json()
    data["fixed"] = sorted(fl.tops)    # claims everything is fixed
    with pytest.raises(flm.FlowError) as ei:
        flm.CombinatorialFlow.from_json(data)
    assert ei.value.code == "unreadable-input"


def test_json_named_complex_needs_resolver():
    fl = catalog.build("example22-circle")["flow"]
    data = fl.to_json(inline_complex=False)
    assert isinstance(data["complex"], str)
    with pytest.raises(flm.FlowError) as ei:
        flm.CombinatorialFlow.from_json(data)
    assert ei.value.code == "unreadable-input"
    back = flm.CombinatorialFlow.from_json(data, complex_resolver=lambda n: fl.cx)
    assert back.succ == fl.succ
