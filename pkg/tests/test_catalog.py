import json
import os

import pytest

from conleylab import attractor, catalog


EXPECTED_NAMES = [
    "capped-annulus",
    "example22-circle",
    "example22-klein",
    "example22-s2xs1",
    "example22-s2xts1",
    "example22-torus",
    "homoclinic-sphere",
    "hypersurface-genus2",
    "hypersurface-genus2-strip",
    "hypersurface-genus2-strip2",
    "hypersurface-genus2-two",
    "hypersurface-torus",
    "north-south",
    "ns-annulus",
    "ns-annulus-strip",
    "planar-annulus",
    "planar-disc",
    "rest-torus",
]


def test_names_pinned():
    assert catalog.names() == EXPECTED_NAMES


def test_build_is_cached():
    a = catalog.build("example22-torus")
    assert catalog.build("example22-torus") is a
    b = catalog.build("example22-torus", 16)
    assert b is not a and b["resolution"] == 16


def test_build_errors():
    with pytest.raises(catalog.CatalogError) as ei:
        catalog.build("nope")
    assert ei.value.code == "unknown-flow"
    with pytest.raises(catalog.CatalogError) as ei:
        catalog.build("example22-torus", 3)
    assert ei.value.code == "bad-resolution"


def test_every_entry_matches_its_expectation():
    for name in catalog.names():
        entry = catalog.build(name)
        want = entry["expected"]
        if want.get("error"):
            with pytest.raises((catalog.CatalogError,
                                attractor.NotIsolatedError)) as ei:
                catalog.analysis(name)
            assert ei.value.code == want["error"], name
            continue
        rep = catalog.analysis(name)
        assert rep.classification == want["classification"], name
        assert rep.r == want["r"], name
        assert rep.s == want["s"], name
        assert rep.global_attractor == want["global"], name


def test_analysis_is_cached():
    assert catalog.analysis("north-south") is catalog.analysis("north-south")


def test_refine_flow_projection():
    entry = catalog.build("example22-torus")
    fine_entry, proj = catalog.refine_flow(entry["flow"], 2)
    fine = fine_entry["flow"]
    assert fine_entry["resolution"] == 2 * entry["resolution"]
    assert set(proj) == set(fine.tops)
    assert set(proj.values()) == set(entry["flow"].tops)


def test_rest_torus_has_no_candidate():
    entry = catalog.build("rest-torus")
    assert entry["expected"]["error"] == "no-candidate"
    with pytest.raises(catalog.CatalogError) as ei:
        catalog.analysis("rest-torus")
    assert ei.value.code == "no-candidate"


def test_external_catalog_dir(tmp_path, monkeypatch):
    src = catalog.build("example22-circle")["flow"]
    (tmp_path / "myflow.json").write_text(json.dumps(src.to_json()))
    (tmp_path / "broken.json").write_text("{nope")
    monkeypatch.setenv("CONLEYLAB_CATALOG", str(tmp_path))
    assert "myflow" in catalog.names()
    entry = catalog.build("myflow")
    assert entry["flow"].succ == src.succ
    assert entry["k"] is None
    with pytest.raises(catalog.CatalogError) as ei:
        catalog.build("broken")
    assert ei.value.code == "unreadable-input"
    monkeypatch.delenv("CONLEYLAB_CATALOG")
    assert "myflow" not in catalog.names()
