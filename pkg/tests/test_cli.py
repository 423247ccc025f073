"""Tests for the command-line front end: exit codes, report schema,
determinism, and witness presence on refutation."""

import io
import json
import subprocess
import sys
from contextlib import redirect_stdout

import pytest

from moricone.certificates import (build_product_certificates,
                                   certificate_to_dict, tsukioka_factors)
from moricone.cli import EXIT_ERROR, EXIT_REFUTED, EXIT_VERIFIED, jsonable, run


def capture(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run(argv)
    return code, buf.getvalue()


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------

def test_cones_relative_verifies():
    code, out = capture(["cones", "relative"])
    assert code == EXIT_VERIFIED
    assert "verified" in out
    assert "[[-1, 0], [1, -1]]" in out


def test_classify_construction_flip():
    code, out = capture(["classify", "construction",
                         "--a", "4", "--b", "3", "--c", "1,2"])
    assert code == EXIT_VERIFIED
    assert "K . e = -1" in out
    assert "flip" in out


def test_classify_construction_divisorial_needs_flag():
    code, _ = capture(["classify", "construction",
                       "--a", "3", "--b", "2", "--c", "2"])
    assert code == EXIT_ERROR
    code, out = capture(["classify", "construction",
                         "--a", "3", "--b", "2", "--c", "2", "--a-in-b"])
    assert code == EXIT_VERIFIED
    assert "small: False" in out


def test_unknown_subcommand_is_usage_error():
    assert run(["frobnicate"]) == EXIT_ERROR


def test_missing_required_subcommand_is_usage_error():
    assert run([]) == EXIT_ERROR
    assert run(["dp"]) == EXIT_ERROR


def test_scenario_out_of_range_is_input_error():
    assert run(["dp", "scenario", "--r1", "4", "--r2", "0"]) == EXIT_ERROR
    assert run(["dp", "scenario", "--r1", "0", "--r2", "9"]) == EXIT_ERROR


def test_cert_verify_missing_file():
    assert run(["cert", "verify", "missing.json"]) == EXIT_ERROR


def test_cert_verify_malformed_json(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    assert run(["cert", "verify", str(p)]) == EXIT_ERROR


def test_cert_verify_bad_schema(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"kind": "grid", "a": 1}))
    assert run(["cert", "verify", str(p)]) == EXIT_ERROR


# ---------------------------------------------------------------------------
# scenario report schema
# ---------------------------------------------------------------------------

def test_scenario_json_schema():
    code, out = capture(["dp", "scenario", "--r1", "0", "--r2", "0",
                         "--verify-cones", "--classify", "--json"])
    assert code == EXIT_VERIFIED
    doc = json.loads(out)
    for key in ("version", "command", "r1", "r2", "rho", "ne_generators",
                "nef_generators", "verdicts", "witnesses", "timing_seconds"):
        assert key in doc, key
    assert doc["rho"] == 4
    assert len(doc["ne_generators"]) == 4
    assert doc["verdicts"]["equality"] == "equal"
    assert doc["verdicts"]["fano"] is True
    names = [g["name"] for g in doc["ne_generators"]]
    assert names == ["e", "f", "l1", "l2"]


def test_scenario_json_rationals_are_strings():
    _, out = capture(["dp", "scenario", "--r1", "1", "--r2", "1",
                      "--classify", "--json"])
    doc = json.loads(out)
    assert doc["witnesses"]["delta_certificate"]["e"] == "2/3"
    assert doc["witnesses"]["delta_certificate"]["e1_1"] == 1


def test_scenario_gated_tier_report():
    code, out = capture(["dp", "scenario", "--r1", "0", "--r2", "8",
                         "--verify-cones", "--json"])
    assert code == EXIT_VERIFIED
    doc = json.loads(out)
    assert doc["verdicts"]["containment"] == "verified"
    assert doc["verdicts"]["equality"] == "budget exceeded, containment only"


def test_determinism_modulo_timing():
    argv = ["dp", "scenario", "--r1", "2", "--r2", "2",
            "--verify-cones", "--classify", "--json"]
    _, out1 = capture(argv)
    _, out2 = capture(argv)
    d1, d2 = json.loads(out1), json.loads(out2)
    d1.pop("timing_seconds"), d2.pop("timing_seconds")
    assert d1 == d2


def test_classify_all_formats():
    code, out = capture(["dp", "classify-all", "--format", "md"])
    assert code == EXIT_VERIFIED
    assert out.count("Fano") >= 36
    assert "| r1 \\ r2 |" in out
    code, out = capture(["dp", "classify-all", "--format", "json"])
    doc = json.loads(out)
    assert len(doc["cells"]) == 36
    assert doc["verdicts"]["fano_cells"] == [[0, 0]]
    assert doc["verdicts"]["weak_fano_cells"] == doc["verdicts"]["fano_type_cells"]
    negative = [c for c in doc["cells"] if not c["fano_type"]]
    assert all("witness" in c for c in negative)


def test_minus_one_counts_via_cli():
    for r, n in ((1, 1), (3, 6), (5, 16)):
        code, out = capture(["dp", "minus-one", "--r", str(r)])
        assert code == EXIT_VERIFIED
        assert out.startswith(f"{n} classes")


# ---------------------------------------------------------------------------
# certificates through the CLI
# ---------------------------------------------------------------------------

def test_shipped_certificates_verify(shipped_cert_paths):
    for path in shipped_cert_paths:
        code, out = capture(["cert", "verify", str(path)])
        assert code == EXIT_VERIFIED, path
        assert "verified" in out


def test_example_tsukioka_runs():
    code, out = capture(["cert", "example-tsukioka",
                         "--n1", "2", "--n2", "3", "--d", "3"])
    assert code == EXIT_VERIFIED
    assert "case selectors: [1, 3, 5]" in out
    assert out.count("verified") == 2


def test_example_tsukioka_bad_degree():
    assert run(["cert", "example-tsukioka",
                "--n1", "2", "--n2", "2", "--d", "0"]) == EXIT_ERROR


def test_refuted_certificate_carries_witness(tmp_path):
    built = build_product_certificates(*tsukioka_factors(2, 2, 2))
    doc = certificate_to_dict(built.grid)
    doc["divisor"] = [0, -1]
    p = tmp_path / "tampered.json"
    p.write_text(json.dumps(doc))
    out_file = tmp_path / "report.json"
    code, out = capture(["cert", "verify", str(p), "--out", str(out_file)])
    assert code == EXIT_REFUTED
    assert "REFUTED" in out
    report = json.loads(out_file.read_text())
    assert report["witnesses"]["failing_check"]["witness_curve"]
    assert report["verdicts"]["certificate"] == "refuted"


def test_out_file_mirrors_report(tmp_path):
    out_file = tmp_path / "doc.json"
    code, _ = capture(["dp", "minus-one", "--r", "4", "--out", str(out_file)])
    assert code == EXIT_VERIFIED
    doc = json.loads(out_file.read_text())
    assert doc["count"] == 10
    assert doc["command"][:2] == ["dp", "minus-one"]


# ---------------------------------------------------------------------------
# serializer and entry point
# ---------------------------------------------------------------------------

def test_jsonable_rejects_floats():
    with pytest.raises(TypeError):
        jsonable(0.5)


def test_jsonable_fraction_forms():
    from fractions import Fraction
    assert jsonable(Fraction(3, 2)) == "3/2"
    assert jsonable(Fraction(4, 2)) == 2
    assert jsonable({"x": (Fraction(1, 3),)}) == {"x": ["1/3"]}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "moricone.cli", "cones", "relative"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "verified" in proc.stdout
