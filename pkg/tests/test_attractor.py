import pytest

from conleylab import attractor, catalog, complexes as cxm, flow as flm


def test_verdict_vocabulary():
    assert attractor.VERDICTS == ("Stable", "NoExternalExplosions",
                                  "ExternalExplosions", "Unknown")


def test_north_south_is_stable():
    rep = catalog.analysis("north-south")
    assert rep.classification == "Stable"
    assert rep.stabilization == rep.k
    assert rep.r == 0 and rep.s == 1
    assert not rep.global_attractor
    assert [c["label"] for c in rep.components] == ["uniform"]


def test_torus_flow_full_pipeline():
    entry = catalog.build("example22-torus")
    rep = attractor.analyze(entry["flow"], entry["k"])
    assert rep.classification == "NoExternalExplosions"
    assert rep.r == 1 and rep.s == 1
    assert rep.global_attractor
    assert rep.basin == entry["flow"].tops
    # the engine cell reseeds its downstream cone, so the stabilization
    # sweeps the whole torus
    assert rep.stabilization == entry["flow"].tops
    assert rep.components[0]["label"] == "homoclinic"


def test_homoclinic_sphere_witness():
    entry = catalog.build("homoclinic-sphere")
    rep = catalog.analysis("homoclinic-sphere")
    assert rep.classification == "ExternalExplosions"
    assert rep.witness is not None
    assert rep.witness in rep.witness_cycle
    col = attractor.collar(entry["flow"], entry["k"])
    assert not set(rep.witness_cycle) & col


def test_unknown_when_cycle_hugs_the_collar():
    # recurrence just outside K whose only cycle clips the collar: the
    # enclosures leave the collar but no fully-outside cycle certifies
    c = cxm.circle(6)
    succ = {"e:0": ["e:0"], "e:1": ["e:2"], "e:2": ["e:3"],
            "e:3": ["e:4"], "e:4": ["e:5"], "e:5": ["e:4"]}
    f = flm.CombinatorialFlow(c, succ, name="hug")
    rep = attractor.analyze(f, {"e:0"})
    assert rep.classification == "Unknown"
    assert rep.witness is None
    assert rep.notes and "refine and retry" in rep.notes[0]
    assert rep.stabilization == frozenset({"e:0", "e:4", "e:5"})


def test_not_isolated_candidate_rejected():
    with pytest.raises(attractor.NotIsolatedError) as ei:
        catalog.analysis("capped-annulus")
    assert ei.value.code == "not-isolated"
    f = flm.rest_flow(cxm.circle(6))
    with pytest.raises(attractor.NotIsolatedError):
        attractor.analyze(f, {"v:0"})    # not a top cell


def test_report_json_round_trip():
    entry = catalog.build("example22-torus")
    rep = catalog.analysis("example22-torus")
    data = rep.to_json()
    assert data["classification"] == "NoExternalExplosions"
    assert data["global"] is True
    back = attractor.AttractorReport.from_json(data, entry["flow"])
    assert back.k == rep.k
    assert back.r == rep.r and back.s == rep.s
    assert back.components == rep.components
    assert back.stabilization == rep.stabilization
