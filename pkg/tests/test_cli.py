import json
import shutil
import subprocess
import sys

import jsonschema
import pytest

from hopf_forge.cli import main
from hopf_forge.instances import catalog_dir, dumps_spec, load, read_spec
from hopf_forge.reports import REPORT_SCHEMA


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    return code, doc


def test_verify_positive(capsys):
    code, doc = run_json(capsys, "verify", "--in", "c2_f2")
    assert code == 0 and doc["passed"] and doc["classification"] == "hopf-monad"
    assert doc["timing"]["total"] >= 0


@pytest.mark.parametrize("suite", ["monad", "comonad", "bimonad", "tau"])
def test_verify_suites(capsys, suite):
    code, doc = run_json(capsys, "verify", "--in", "sweedler_f5", "--suite", suite)
    assert code == 0
    prefixes = {c["law"].split(".")[0] for c in doc["checks"]}
    if suite == "monad":
        assert prefixes == {"monad"}
    if suite == "comonad":
        assert prefixes == {"comonad"}


def test_verify_no_antipode(capsys):
    code, doc = run_json(capsys, "verify", "--in", "monoid_1z_f2")
    assert code == 1
    assert doc["classification"] == "bimonad-no-antipode"
    bad = [c for c in doc["checks"] if c["verdict"] == "fail"]
    assert [c["check"] for c in bad] == ["canonical.gamma_invertible"]
    assert bad[0]["witness"]["element"] == "z⊗1 + z⊗z"
    # the bimonad suite on its own passes and already classifies
    code, doc = run_json(capsys, "verify", "--in", "monoid_1z_f2", "--suite", "bimonad")
    assert code == 0 and doc["classification"] == "bimonad-no-antipode"


def test_verify_plain_swap_exterior_fails(tmp_path, capsys):
    doc = read_spec("exterior_f3")
    doc.pop("parity")
    path = tmp_path / "plain.json"
    path.write_text(json.dumps(doc))
    code, rep = run_json(capsys, "verify", "--in", str(path), "--suite", "tau")
    assert code == 1
    bad = [c for c in rep["checks"] if c["verdict"] == "fail"]
    assert bad[0]["witness"]["element"] == "x⊗x"


def test_not_a_bimonad_classification(tmp_path, capsys):
    doc = read_spec("c2_f2")
    doc["counit"] = [1, 0]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, rep = run_json(capsys, "verify", "--in", str(path), "--suite", "bimonad")
    assert code == 1 and rep["classification"] == "not-bimonad"
    assert main(["antipode", "--in", str(path)]) == 2


@pytest.mark.parametrize(
    "text",
    [
        "{not json",
        "[1, 2]",
        '{"backend": "vect", "field": ["Fp", 4], "dim": 1, "mul": [[[1]]], "unit": [1], "comul": [[[1]]], "counit": [1]}',
        '{"backend": "vect", "field": ["Fp", 2], "dim": 2, "mul": [[[1]]], "unit": [1, 0], "comul": [], "counit": [1, 1]}',
        '{"backend": "set", "size": 2, "table": [[0, 1]], "unit": 0}',
        '{"backend": "tensor"}',
    ],
)
def test_malformed_files_exit_2(tmp_path, capsys, text):
    path = tmp_path / "broken.json"
    path.write_text(text)
    assert main(["verify", "--in", str(path)]) == 2
    assert "error" in capsys.readouterr().err


def test_missing_file_exit_2(capsys):
    assert main(["verify", "--in", "/nonexistent/instance.json"]) == 2


def test_antipode_written_and_reingested(tmp_path, capsys):
    out = tmp_path / "sw.json"
    assert main(["antipode", "--in", "sweedler_f5", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["antipode"] == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 4, 0]]
    # the written antipode is verified on re-ingest, and a second round is a fixed point
    out2 = tmp_path / "sw2.json"
    assert main(["antipode", "--in", str(out), "--out", str(out2)]) == 0
    assert out2.read_text() == out.read_text()
    capsys.readouterr()
    code, rep = run_json(capsys, "verify", "--in", str(out))
    assert code == 0
    assert any(c["check"].startswith("given.") for c in rep["checks"])


def test_antipode_no_antipode_and_set_backend(capsys):
    code, rep = run_json(capsys, "antipode", "--in", "monoid_1z_f2")
    assert code == 1 and rep["classification"] == "bimonad-no-antipode"
    code, rep = run_json(capsys, "antipode", "--in", "z4_set")
    assert code == 0 and rep["info"]["antipode"] == ["0", "3", "2", "1"]


def test_fundamental(capsys):
    code, rep = run_json(capsys, "fundamental", "--in", "c2_f2", "--max-dim", "2")
    assert code == 0
    assert rep["info"]["dimensions"]["regular"] == {"module": 2, "coinvariants": 1}
    assert rep["info"]["dimensions"]["free[2]"] == {"module": 4, "coinvariants": 2}
    assert main(["fundamental", "--in", "monoid_1z_f2"]) == 2


def test_dualize_round_trip_is_bit_exact(tmp_path):
    for name in ("sweedler_f5", "s3_q", "exterior_f3"):
        first = tmp_path / f"{name}.dual.json"
        second = tmp_path / f"{name}.json"
        assert main(["dualize", "--in", name, "--out", str(first)]) == 0
        assert main(["dualize", "--in", str(first), "--out", str(second)]) == 0
        assert second.read_text() == dumps_spec(read_spec(name))


def test_dualize_set_instance_exit_2():
    assert main(["dualize", "--in", "z4_set"]) == 2


def test_derived_instances_re_verify(tmp_path, capsys):
    for cmd, name in (("double", "c2_f2"), ("opposite", "sweedler_f5"), ("mate", "sweedler_f5"), ("double", "z4_set")):
        out = tmp_path / f"{cmd}_{name}.json"
        assert main([cmd, "--in", name, "--out", str(out)]) == 0
        assert main(["verify", "--in", str(out)]) == 0
        capsys.readouterr()
    # re-emitting a loaded derived instance gives the same text
    out = tmp_path / "double_c2_f2.json"
    assert dumps_spec(load(str(out)).spec) == out.read_text()


def test_opposite_reports_difference(capsys):
    code, rep = run_json(capsys, "opposite", "--in", "sweedler_f5")
    assert code == 0
    assert rep["info"]["differs_from_original"].startswith("m: g⊗x")
    code, rep = run_json(capsys, "opposite", "--in", "c2_f2")
    assert code == 0 and rep["info"]["differs_from_original"] is False


def test_double_arity_cap(capsys):
    assert main(["double", "--in", "sweedler_f5", "--arity-cap", "6"]) == 2
    assert "cap" in capsys.readouterr().err


def test_mate_on_set_runs_probes(capsys):
    code, rep = run_json(capsys, "mate", "--in", "monoid_1z_set")
    assert code == 0
    assert rep["info"]["gamma_invertible"] == {"H": False, "R": False}
    assert any(c["check"].startswith("probe.") for c in rep["checks"])


def test_group(capsys):
    code, rep = run_json(capsys, "group", "--in", "z4_set")
    assert code == 0 and rep["info"]["verdict"] == "group"
    code, rep = run_json(capsys, "group", "--in", "monoid_1z_set")
    assert code == 1 and rep["info"]["collision"] == ["(z,1)", "(z,z)"]
    assert main(["group", "--in", "c2_f2"]) == 2


def test_text_output(capsys):
    assert main(["verify", "--in", "c3_f3", "--suite", "monad"]) == 0
    out = capsys.readouterr().out
    assert "PASS  monad.associativity" in out


def test_catalog_dir_override(tmp_path, monkeypatch, capsys):
    shutil.copy(catalog_dir() / "c2_f2.json", tmp_path / "mine.json")
    monkeypatch.setenv("HOPF_FORGE_CATALOG_DIR", str(tmp_path))
    assert main(["verify", "--in", "mine", "--suite", "monad"]) == 0
    assert main(["verify", "--in", "c3_f3"]) == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hopf_forge.cli", "verify", "--in", "c2_f2", "--suite", "comonad"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "comonad.coassociativity" in proc.stdout
