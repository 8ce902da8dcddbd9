import json

from conleylab import catalog, cli, complexes as cxm, flow as flm


def test_analyze_text(capsys):
    assert cli.main(["analyze", "catalog:example22-torus"]) == 0
    out = capsys.readouterr().out
    assert "classification: NoExternalExplosions" in out
    assert "r = 1 homoclinic, s = 1 total" in out


def test_analyze_json(tmp_path):
    path = tmp_path / "rep.json"
    rc = cli.main(["analyze", "north-south", "--format", "json",
                   "--out", str(path)])
    assert rc == 0
    data = json.loads(path.read_text())
    assert data["classification"] == "Stable"
    assert data["schema"] == "1"
    assert data["refinements"] == 0
    assert data["k"] == sorted(data["k"])


def test_analyze_error_exits(capsys):
    assert cli.main(["analyze", "capped-annulus"]) == 1
    assert "error[not-isolated]" in capsys.readouterr().err
    assert cli.main(["analyze", "rest-torus"]) == 1
    assert "error[no-candidate]" in capsys.readouterr().err
    assert cli.main(["analyze", "no-such-flow"]) == 1
    assert "error[unreadable-input]" in capsys.readouterr().err
    assert cli.main(["analyze", "catalog:no-such-flow"]) == 1
    assert "error[unknown-flow]" in capsys.readouterr().err


def test_verify_single_check(capsys):
    assert cli.main(["verify", "--only", "cor3.3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("[PASS] cor3.3")
    assert "result: 1/1 checks passed" in out


def test_verify_unknown_id(capsys):
    assert cli.main(["verify", "--only", "nope"]) == 1
    assert "error[unknown-check]" in capsys.readouterr().err


def test_verify_full_suite(capsys):
    assert cli.main(["verify"]) == 0
    assert "result: 16/16 checks passed" in capsys.readouterr().out


def test_plot_csv_row_per_top_cell(capsys):
    assert cli.main(["plot", "example22-torus", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "cell,role"
    tops = catalog.build("example22-torus")["flow"].tops
    assert len(lines) - 1 == len(tops)


def test_plot_text_legend(capsys):
    assert cli.main(["plot", "north-south", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "legend:" in out and "K=k" in out


def test_plot_svg_deterministic(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert cli.main(["plot", "example22-torus", "--out", str(a)]) == 0
    assert cli.main(["plot", "example22-torus", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("<svg")


def test_plot_json_roles(capsys):
    assert cli.main(["plot", "homoclinic-sphere", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert "witness" in set(data["roles"].values())


def test_construct_round_trip(tmp_path, capsys):
    path = tmp_path / "flow.json"
    assert cli.main(["construct", "example22-klein", "--out", str(path)]) == 0
    again = tmp_path / "again.json"
    assert cli.main(["construct", "example22-klein", "--out", str(again)]) == 0
    assert path.read_bytes() == again.read_bytes()
    body = json.loads(path.read_text())
    assert body["name"] == "example22-klein"
    assert body["ring"] == "z2"
    assert cli.main(["analyze", str(path)]) == 0
    out = capsys.readouterr().out
    assert "classification: NoExternalExplosions" in out


def test_construct_bad_resolution(capsys):
    assert cli.main(["construct", "example22-circle", "--resolution", "2"]) == 1
    assert "error[bad-resolution]" in capsys.readouterr().err


def test_homology_named_complexes(capsys):
    assert cli.main(["homology", "torus"]) == 0
    out = capsys.readouterr().out
    assert "H_1: rank 2" in out
    assert cli.main(["homology", "klein"]) == 0
    out = capsys.readouterr().out
    assert "H_1: rank 1  torsion 2" in out
    assert cli.main(["homology", "klein", "--ring", "z2"]) == 0
    assert "H_1: rank 2" in capsys.readouterr().out
    assert cli.main(["homology", "genus2", "--resolution", "6"]) == 0
    assert "H_1: rank 4" in capsys.readouterr().out


def test_homology_csv(capsys):
    assert cli.main(["homology", "rp2", "--format", "csv"]) == 0
    assert capsys.readouterr().out == "degree,rank,torsion\n0,1,\n1,0,2\n2,0,\n"


def test_homology_of_flow_includes_pair_polynomial(capsys):
    assert cli.main(["homology", "catalog:example22-torus",
                     "--ring", "z2"]) == 0
    assert "pair polynomial relative to k: t^2 + t" in capsys.readouterr().out


def test_external_catalog_env(tmp_path, monkeypatch, capsys):
    src = catalog.build("example22-circle")["flow"]
    body = src.to_json()
    body["k"] = sorted(catalog.build("example22-circle")["k"])
    (tmp_path / "ext.json").write_text(json.dumps(body))
    monkeypatch.setenv("CONLEYLAB_CATALOG", str(tmp_path))
    assert cli.main(["analyze", "ext"]) == 0
    assert "classification: NoExternalExplosions" in capsys.readouterr().out


def test_refine_unavailable_leaves_note(tmp_path, capsys):
    # a hand-built flow with no recipe cannot refine, so the Unknown
    # verdict stays open and says so
    c = cxm.circle(6)
    succ = {"e:0": ["e:0"], "e:1": ["e:2"], "e:2": ["e:3"],
            "e:3": ["e:4"], "e:4": ["e:5"], "e:5": ["e:4"]}
    f = flm.CombinatorialFlow(c, succ, name="hug")
    body = f.to_json()
    body["k"] = ["e:0"]
    path = tmp_path / "hug.json"
    path.write_text(json.dumps(body))
    out = tmp_path / "rep.json"
    assert cli.main(["analyze", str(path), "--refine", "2",
                     "--format", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["classification"] == "Unknown"
    assert any("refinement unavailable" in n for n in data["notes"])
