import json
import subprocess
import sys
import time

import pytest

from braidual import fileformat
from braidual.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list", "--format", "json")
    assert code == 0
    names = [r["name"] for r in json.loads(out)["instances"]]
    assert "superline" in names and "qplane:q=2:deg=3" in names


def test_check_superline(capsys):
    code, out, _ = run(capsys, "check", "superline")
    assert code == 0
    assert "0 failed" in out


def test_check_json_schema(capsys):
    code, out, _ = run(capsys, "check", "zn:2", "--axioms", "YBE,Dcm", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert [e["equation_id"] for e in data["entries"]] == ["YBE", "Dcm"]
    assert {"equation_id", "verdict", "witness"} <= set(data["entries"][0])
    assert all(e["verdict"] == "Pass" for e in data["entries"])


def test_unknown_axiom_is_usage_error(capsys):
    code, _, err = run(capsys, "check", "zn:2", "--axioms", "XYZ")
    assert code == 2 and "XYZ" in err


def test_graded_check_with_cutoff(capsys):
    code, out, _ = run(capsys, "check", "bline:q=2:deg=4", "--cutoff", "3", "--format", "json")
    assert code == 0
    verdicts = {e["verdict"] for e in json.loads(out)["entries"]}
    assert "Skipped" in verdicts and "Fail" not in verdicts
    code, _, _ = run(capsys, "check", "bline:q=2:deg=4", "--cutoff", "5")
    assert code == 2


def test_corrupted_file(tmp_path, capsys):
    p = tmp_path / "bad.sf"
    p.write_text("braidual 1\nkind hopf\nspace H 2\n  labels 1 x\nmap psi H H -> H H\n"
                 "  0 0 one\nend\n")
    code, _, err = run(capsys, "check", str(p))
    assert code == 2
    assert "line 6, column 7" in err


def test_failing_file(tmp_path, capsys):
    # the superline maps with the plain flip are not a braided bialgebra
    from conftest import hopf
    from braidual.linalg import flip
    from braidual.structures import unchecked
    h = hopf("superline").bialgebra
    with unchecked():
        bad = h.with_maps(psi=flip(h.space), psi_inv=flip(h.space))
    p = tmp_path / "flip.sf"
    fileformat.write(p, fileformat.to_file(bad))
    code, out, _ = run(capsys, "check", str(p))
    assert code == 1
    assert "Fail    Dcm" in out


def test_dualize_hopf_then_check(tmp_path, capsys):
    out_path = tmp_path / "d.sf"
    code, _, _ = run(capsys, "dualize", "superline", "--what", "hopf", "--out", str(out_path))
    assert code == 0
    code, _, _ = run(capsys, "check", str(out_path))
    assert code == 0


def test_dualize_variants(capsys):
    assert run(capsys, "dualize", "zn:3", "--what", "double-dual")[0] == 0
    code, out, _ = run(capsys, "dualize", "superline", "--what", "pair-verify",
                       "--format", "json")
    assert code == 0
    verdicts = {}
    for e in json.loads(out)["entries"]:
        verdicts.setdefault(e["equation_id"], set()).add(e["verdict"])
    for tag in ("mD", "Dm", "1a"):
        assert verdicts[tag] == {"Pass"}


def test_dualize_hopf_needs_antipode(capsys):
    code, _, err = run(capsys, "dualize", "maxmonoid", "--what", "hopf")
    assert code == 1 and "antipode" in err
    assert run(capsys, "dualize", "maxmonoid", "--what", "bialgebra")[0] == 0


def test_twist(tmp_path, capsys):
    assert run(capsys, "twist", "superline", "--k", "1", "--n", "-1")[0] == 0
    out_path = tmp_path / "t.sf"
    assert run(capsys, "twist", "zn:2", "--k", "3", "--n", "-3", "--out", str(out_path))[0] == 0
    from conftest import hopf
    h = hopf("zn:2")
    t = fileformat.read(out_path)
    assert t.maps["mult"] == h.mult and t.maps["comult"] == h.comult
    code, out, _ = run(capsys, "twist", "bline:q=2:deg=4", "--k", "1", "--n", "0")
    assert code == 1 and "Fail    Dcm" in out
    assert run(capsys, "twist", "bline:q=2:deg=4", "--k", "0", "--n", "-1",
               "--braiding", "psiinv")[0] == 0


def test_convert(tmp_path, capsys):
    out_path = tmp_path / "m.sf"
    code, _, _ = run(capsys, "convert", "zn:2/comodule", "--direction", "comodule-to-module",
                     "--out", str(out_path))
    assert code == 0
    action = fileformat.read(out_path).maps["action"]
    assert dict(action.coeffs) == {(0, 0): 1, (1, 3): 1}
    for direction, src in (("module-to-comodule", "superline/regular"),
                           ("dualize-coaction", "superline/comodule"),
                           ("dualize-action", "superline/regular")):
        assert run(capsys, "convert", src, "--direction", direction)[0] == 0
    code, _, err = run(capsys, "convert", "zn:2/regular", "--direction", "comodule-to-module")
    assert code == 2


def test_round_trip_flag(capsys):
    code, out, _ = run(capsys, "convert", "zn:2/comodule", "--round-trip", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["reproduced"] is True
    code, out, _ = run(capsys, "convert", "superline/comodule", "--round-trip")
    assert code == 0 and "reproduced: False" in out


def test_usage_errors(capsys):
    assert run(capsys, "check", "no-such-thing")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "twist", "zn:2", "--k", "9", "--n", "0")[0] == 2
    assert run(capsys, "check", "zn:2/whatever")[0] == 2


def test_max_dim(monkeypatch, capsys):
    monkeypatch.setenv("BRAIDUAL_MAX_DIM", "10")
    assert run(capsys, "check", "zn:4")[0] == 2
    assert run(capsys, "check", "zn:3")[0] == 0
    monkeypatch.setenv("BRAIDUAL_MAX_DIM", "lots")
    assert run(capsys, "check", "zn:2")[0] == 2


def test_module_entry_point_is_fast():
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "braidual", "check", "superline"],
                          capture_output=True, text=True)
    elapsed = time.perf_counter() - start
    assert proc.returncode == 0, proc.stderr
    assert elapsed < 1.0
