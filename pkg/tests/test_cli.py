import json
import subprocess
import sys

import pytest

from crmaps.cli import definition_from_dict, main, run_pipeline
from crmaps.cli.mapfile import MapFileError, bundled_files, load_mapfile
from crmaps.errors import ExpressionError, StructuralError

BUNDLED = bundled_files()


@pytest.mark.parametrize("path", BUNDLED, ids=lambda p: p.stem)
def test_bundled_expectations(path):
    rep = run_pipeline(load_mapfile(path))
    if path.stem == "degenerate":
        assert rep.exit_code == 1 and rep.data["expectations"] == {"degenerate": True, "maps_into": True}
    else:
        assert rep.passed, rep.failures
        assert all(rep.data.get("expectations", {}).values())


def test_exit_codes(tmp_path, capsys):
    assert main(["-q", str(BUNDLED[0])]) == 0
    assert main(["-q", str(next(p for p in BUNDLED if p.stem == "degenerate"))]) == 1
    assert main([]) == 2
    bad = tmp_path / "bad.toml"
    bad.write_text("name = 'x'\ncomponents = [")
    assert main([str(bad)]) == 2
    assert main(["--list"]) == 0
    assert "R_eps_half.toml" in capsys.readouterr().out


def test_wrong_expectation_fails(tmp_path):
    text = next(p for p in BUNDLED if p.stem == "R_eps_half").read_text().replace("rank = 1", "rank = 0")
    f = tmp_path / "wrong.toml"
    f.write_text(text)
    assert main(["-q", str(f)]) == 1


def test_report_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["-q", "--no-timing", "--bundled"]
    main(args + ["--report", str(a)])
    main(args + ["--report", str(b)])
    assert a.read_text() == b.read_text()
    data = json.loads(a.read_text())
    assert len(data) == len(BUNDLED)


def test_stage_selection_and_points(tmp_path):
    pts = tmp_path / "pts.toml"
    pts.write_text("[[points]]\ncoords = [\"1/2\"]\nt = \"1/3\"\n\n[[points]]\ncoords = [\"-1\"]\n")
    path = next(p for p in BUNDLED if p.stem == "R_eps1_n1")
    out = tmp_path / "r.json"
    assert main(["-q", "--check", "--rank", "--points", str(pts), "--report", str(out), str(path)]) == 0
    data = json.loads(out.read_text())
    assert "isometry" not in data
    assert data["transversal"]["at_points"] == {"(1/2, 1/3 + 1/4*i)": True, "(-1, i)": False}
    assert data["rank"]["at_points"] == {"(1/2, 1/3 + 1/4*i)": 0}


def test_definition_errors():
    base = {"source": {"kind": "hyperquadric", "n": 1}, "target": {"kind": "hyperquadric", "n": 1},
            "components": ["z1", "w"]}
    assert definition_from_dict(base).build().target.n == 1
    with pytest.raises(MapFileError):
        definition_from_dict({k: v for k, v in base.items() if k != "components"})
    with pytest.raises(MapFileError):
        definition_from_dict({**base, "parameters": {"a": 0.5}})
    with pytest.raises(ExpressionError):
        definition_from_dict({**base, "components": ["q", "w"]}).build()
    with pytest.raises(StructuralError):
        definition_from_dict({**base, "components": ["w"]}).build()
    with pytest.raises(MapFileError):
        definition_from_dict({**base, "mode": "series"}).build()


def test_round_trip_through_toml(tmp_path):
    src = next(p for p in BUNDLED if p.stem == "R_eps_mu")
    d1 = load_mapfile(src)
    copy = tmp_path / "copy.toml"
    copy.write_text(src.read_text())
    assert load_mapfile(copy) == d1.__class__(**{**d1.__dict__, "name": d1.name})


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "crmaps", "--list"], capture_output=True, text=True)
    assert r.returncode == 0 and "Phi_n1.toml" in r.stdout
