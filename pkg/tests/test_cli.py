import json
import math
import subprocess
import sys

import numpy as np
import pytest

from pcup import fixtures
from pcup.cli import main, repro
from pcup.complex import write_filtration
from pcup.cup import CupLengthDiagram
from pcup.flags import LCupBarcode
from pcup.invariants import StepInvariant
from pcup.svg import emit_svg, render


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, c in [("torus", fixtures.pinched_torus()), ("disk", fixtures.two_disk())]:
        p = tmp_path / f"{name}.filt"
        p.write_text(write_filtration(c))
        out[name] = p
    pts = tmp_path / "square.csv"
    pts.write_text("0,0\n1,0\n1,1\n0,1\n")
    out["points"] = pts
    dm = tmp_path / "m.dist"
    dm.write_text("3\n1\n1 1\n")
    out["dist"] = dm
    v = tmp_path / "v.filt"
    v.write_text("0 : 0\n")
    out["vertex"] = v
    return out


def run(argv, capsys):
    code = main([str(a) for a in argv])
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_vr_stats(files, capsys, tmp_path):
    code, out, _ = run(["vr", files["points"], "--max-dim", 2, "--out", tmp_path / "sq.filt"], capsys)
    stats = json.loads(out)
    assert code == 0 and stats["simplices"] == 4 + 6 + 4 and stats["vertices"] == 4
    code, out, _ = run(["vr", files["dist"], "--max-dim", 1], capsys)
    assert json.loads(out)["by_dimension"] == {"0": 3, "1": 3}
    code, out, _ = run(["vr", files["points"], "--max-scale", 1.0], capsys)
    assert json.loads(out)["by_dimension"] == {"0": 4, "1": 4}


def test_barcode_single_vertex(files, capsys):
    code, out, _ = run(["barcode", files["vertex"]], capsys)
    data = json.loads(out)
    assert code == 0 and len(data) == 1
    assert data[0]["degree"] == 0 and data[0]["birth"] == 0 and data[0]["death"] == "inf"


def test_cupdgm_and_cuplength(files, capsys, tmp_path):
    code, out, _ = run(["cupdgm", files["torus"], "--svg", tmp_path / "d.svg"], capsys)
    dgm = CupLengthDiagram.from_json(json.loads(out))
    assert code == 0
    assert dgm.entries == {(0.0, 3.0): 1, (1.0, math.inf): 1, (2.0, math.inf): 1, (2.0, 3.0): 2}
    assert (tmp_path / "d.svg").read_text().startswith("<svg")

    code, out, _ = run(["cuplength", files["torus"], "--out", tmp_path / "i.json"], capsys)
    inv = StepInvariant.from_json(json.loads((tmp_path / "i.json").read_text()))
    assert inv == StepInvariant.from_function(fixtures.pinched_torus().grid, fixtures.pinched_torus_cup)


def test_lcup_and_phirank(files, capsys):
    code, out, _ = run(["lcup", files["torus"], "--ell", 2, "--deg", 2], capsys)
    assert LCupBarcode.from_json(json.loads(out)).bars == [(2.0, 3.0)]
    code, out, _ = run(["phirank", files["torus"]], capsys)
    inv = StepInvariant.from_json(json.loads(out))
    assert inv(2, 2.5).tolist() == [[2, 0], [1, 1]]


def test_distances(files, capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(json.dumps(fixtures.vr_torus_cup().to_json()))
    b.write_text(json.dumps(fixtures.vr_wedge_cup().to_json()))
    code, out, _ = run(["erosion", a, b], capsys)
    assert code == 0 and out.strip() == "1.0471975512"
    code, out, _ = run(["erosion", a, b, "--candidates"], capsys)
    assert len(json.loads(out.splitlines()[1])) > 10

    run(["barcode", files["torus"], "--out", tmp_path / "t.json"], capsys)
    run(["barcode", files["disk"], "--out", tmp_path / "d.json"], capsys)
    code, out, _ = run(["bottleneck", tmp_path / "t.json", tmp_path / "d.json", "--deg", 2], capsys)
    assert out.strip() == "inf"
    code, out, _ = run(["bottleneck", tmp_path / "t.json", tmp_path / "t.json"], capsys)
    assert float(out) == 0
    run(["lcup", files["torus"], "--ell", 2, "--deg", 2, "--out", tmp_path / "l.json"], capsys)
    pairs = tmp_path / "p.json"
    pairs.write_text("[[2, 3.5]]")
    code, out, _ = run(["bottleneck", tmp_path / "l.json", pairs], capsys)
    assert float(out) == 0.5


@pytest.mark.parametrize("name", ["pinched-torus", "two-disk", "torus-vs-wedge", "t2s3-vs-s1s2s1"])
def test_repro(name, capsys):
    code, out, _ = run(["repro", name], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["fixture"] == name
    if name == "two-disk":
        assert data["mobius_at"]["value"] == -1
    if "vs" in name:
        assert abs(data["erosion"] - math.pi / 3) < 1e-9


def test_exit_codes(files, capsys, tmp_path, monkeypatch):
    bad = tmp_path / "bad.filt"
    bad.write_text("0 : 1\n1 : 0\n0 1 : 0\n")
    code, _, err = run(["barcode", bad], capsys)
    assert code == 1 and "face [0]" in err
    code, _, err = run(["barcode", tmp_path / "missing.filt"], capsys)
    assert code == 1
    code, _, err = run(["barcode", files["torus"], "--field", 4], capsys)
    assert code == 1 and "prime" in err
    broken = tmp_path / "x.json"
    broken.write_text("{not json")
    code, _, err = run(["erosion", broken, broken], capsys)
    assert code == 1 and "x.json:1" in err
    code, _, _ = run(["erosion", files["torus"], files["torus"]], capsys)
    assert code == 1
    with pytest.raises(SystemExit) as e:
        main(["lcup", str(files["torus"])])
    assert e.value.code == 1
    capsys.readouterr()

    import pcup.cli as cli

    monkeypatch.setattr(cli.fixtures, "two_disk", fixtures.triangle_circle)
    code, _, err = run(["repro", "two-disk"], capsys)
    assert code == 2 and "consistency" in err


def test_deterministic_bytes(files, tmp_path):
    outs = []
    for k in range(2):
        p = tmp_path / f"run{k}.json"
        subprocess.run(
            [sys.executable, "-m", "pcup", "phirank", str(files["torus"]), "--out", str(p)], check=True
        )
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_json_roundtrips():
    data = repro("pinched-torus")
    again = json.loads(json.dumps(data))
    assert CupLengthDiagram.from_json(again["cup_length_diagram"]).entries == CupLengthDiagram.from_json(
        data["cup_length_diagram"]
    ).entries
    inv = StepInvariant.from_json(again["cup_length_invariant"])
    assert StepInvariant.from_json(json.loads(json.dumps(inv.to_json()))) == inv


def test_svg_rendering(tmp_path):
    empty = render(StepInvariant.zero((0.0, 1.0)))
    assert "<rect x" not in empty and "<line" in empty
    c = fixtures.pinched_torus()
    inv = StepInvariant.from_function(c.grid, fixtures.pinched_torus_cup)
    text = render(inv)
    assert ">1</text>" in text and ">2</text>" in text
    dgm = CupLengthDiagram(c.grid, {(2.0, 3.0): 2})
    assert text.count("<circle") == 0 and render(dgm).count("<circle") == 1
    path = emit_svg(fixtures.vr_torus_wedge_sphere_rank(), tmp_path / "m.svg")
    assert "((2,0) (1,1) (1,0))" in path.read_text()
    assert render([(0.0, 1.0), (0.5, math.inf)]).count("<circle") == 2
