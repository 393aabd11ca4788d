from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from mcinv.checks import CHECKS
from mcinv.cli import main
from mcinv.lie import sl_n_chevalley

GOLDEN = Path(__file__).parent / "golden"


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def sl2_cfg(tmp_path):
    return write(tmp_path, "sl2.json", {"lie": {"type": "sl", "n": 2}, "staircase": {"ell": 1, "box": [1]}, "seed": 0})


def test_verify_default_suite_passes(sl2_cfg, tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["verify", "--config", sl2_cfg, "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["schema_version"] == 1
    assert [c["name"] for c in report["checks"]] == list(CHECKS)
    assert all(c["claim"] for c in report["checks"])
    assert report["summary"]["fail"] == 0


def test_verify_output_is_byte_stable(sl2_cfg, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["verify", "--config", sl2_cfg, "--out", str(a)])
    main(["verify", "--config", sl2_cfg, "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_seed_flag_overrides_config(sl2_cfg, tmp_path):
    out = tmp_path / "r.json"
    assert main(["index", "--config", sl2_cfg, "--seed", "9", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["seed"] == 9


def test_unknown_config_field_is_rejected(tmp_path, capsys):
    cfg = write(tmp_path, "bad.json", {"lie": {"type": "sl", "n": 2}, "staircase": {"ell": 1, "box": [1]}, "extra": 1})
    assert main(["verify", "--config", cfg]) == 2
    assert "extra" in capsys.readouterr().err


@pytest.mark.parametrize("cfg", [
    {"lie": {"type": "sl", "n": 1}, "staircase": {"ell": 1, "box": [1]}},
    {"lie": {"type": "sl", "n": 2}, "staircase": {"ell": 1, "omega1": [[0], [2]]}},
    {"lie": {"type": "sl", "n": 2}, "staircase": {"ell": 2, "box": [1]}},
])
def test_invalid_configs_exit_2(tmp_path, cfg):
    assert main(["verify", "--config", write(tmp_path, "c.json", cfg)]) == 2


def test_missing_config_and_bad_usage(tmp_path):
    assert main(["verify", "--config", str(tmp_path / "nope.json")]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["verify", "--config", str(tmp_path / "x"), "--checks", "bogus"]) == 2


def test_unknown_check_name_exit_2(sl2_cfg):
    assert main(["verify", "--config", sl2_cfg, "--checks", "invariance,bogus"]) == 2


def test_corrupted_structure_constants_exit_1(tmp_path, capsys):
    data = sl_n_chevalley(2).to_json()
    data["brackets"][0]["coeffs"]["0"] = "1"  # [x+, x-] = h + x+
    cfg = write(tmp_path, "c.json", {"lie": {"structure_constants": data}, "staircase": {"ell": 1, "box": [1]}})
    assert main(["verify", "--config", cfg]) == 1
    assert "Jacobi" in capsys.readouterr().err


def test_non_box_routes_slice_checks_to_skipped(tmp_path):
    cfg = write(tmp_path, "c.json", {
        "lie": {"type": "sl", "n": 2},
        "staircase": {"ell": 2, "omega1": [[0, 0], [1, 0], [0, 1]]},
        "checks": ["invariance", "oracle", "slice-restriction", "reduction"],
    })
    out = tmp_path / "r.json"
    assert main(["verify", "--config", cfg, "--out", str(out)]) == 0
    status = {c["name"]: (c["status"], c.get("reason", "")) for c in json.loads(out.read_text())["checks"]}
    assert status["invariance"][0] == status["oracle"][0] == "pass"
    assert status["reduction"] == ("skipped", "skipped: no greatest element")
    assert status["slice-restriction"][0] == "skipped"


def test_generators_golden(sl2_cfg, tmp_path):
    out = tmp_path / "g.json"
    assert main(["generators", "--config", sl2_cfg, "--out", str(out)]) == 0
    fams = json.loads(out.read_text())["families"]
    assert fams[0] == json.loads((GOLDEN / "sl2_box1_primal.json").read_text())
    assert fams[1] == json.loads((GOLDEN / "sl2_box1_dual.json").read_text())


def test_generators_counts(tmp_path):
    cfg = write(tmp_path, "c.json", {"lie": {"type": "sl", "n": 3}, "staircase": {"ell": 1, "box": [2]}})
    out = tmp_path / "g.json"
    assert main(["generators", "--config", cfg, "--out", str(out)]) == 0
    dual = [f for f in json.loads(out.read_text())["families"] if f["picture"] == "dual"]
    assert sorted(f["k"] for f in dual for _ in f["components"]) == [2, 2, 2, 3, 3, 3]
    cfg0 = write(tmp_path, "c0.json", {"lie": {"type": "sl", "n": 2}, "staircase": {"ell": 1, "box": [0]}})
    assert main(["generators", "--config", cfg0, "--out", str(out)]) == 0
    dual = [f for f in json.loads(out.read_text())["families"] if f["picture"] == "dual"]
    assert len(dual) == 1 and len(dual[0]["components"]) == 1


def test_reduce_regular_and_non_regular(sl2_cfg, tmp_path, capsys):
    reg = write(tmp_path, "x.json", {"coords": [
        {"basis": 0, "deg": [0], "value": "1"}, {"basis": 2, "deg": [0], "value": "1"},
        {"basis": 1, "deg": [1], "value": "3"},
    ]})
    out = tmp_path / "r.json"
    assert main(["reduce", "--config", sl2_cfg, "--element", reg, "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["uniqueness"] is True and report["transversality_rank"] == 6
    assert {e["type"] for e in report["log"]} <= {"base_conjugation", "exp_ad"}
    irr = write(tmp_path, "y.json", {"coords": [{"basis": 2, "deg": [1], "value": "1"}]})
    assert main(["reduce", "--config", sl2_cfg, "--element", irr]) == 1
    assert "centralizer of its degree-0 part has dimension 3" in capsys.readouterr().err


def test_reduce_needs_element(sl2_cfg):
    assert main(["reduce", "--config", sl2_cfg]) == 2


def test_index_forms_oracle(sl2_cfg, tmp_path):
    out = tmp_path / "o.json"
    assert main(["index", "--config", sl2_cfg, "--out", str(out)]) == 0
    assert json.loads(out.read_text())["index"] == 2
    assert main(["forms", "--config", sl2_cfg, "--out", str(out)]) == 0
    forms = {tuple(f["omega"]): f for f in json.loads(out.read_text())["forms"]}
    assert forms[(1,)]["nondegenerate"] and not forms[(0,)]["nondegenerate"]
    assert main(["oracle", "--config", sl2_cfg, "--out", str(out)]) == 0
    comps = json.loads(out.read_text())["components"]
    assert all(c["invariant"] for c in comps if c["guaranteed"])


def test_exact_rank_flag(tmp_path):
    cfg = write(tmp_path, "c.json", {"lie": {"type": "sl", "n": 2}, "staircase": {"ell": 2, "box": [1, 1]},
                                     "checks": ["independence"]})
    out = tmp_path / "r.json"
    assert main(["verify", "--config", cfg, "--exact-rank", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["checks"][0]["counts"]["method"] == "symbolic"


def test_console_entry_point(sl2_cfg):
    proc = subprocess.run([sys.executable, "-m", "mcinv.cli", "index", "--config", sl2_cfg],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["expected"] == 2
