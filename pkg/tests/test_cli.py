import json
import subprocess
import sys

from orbigw.cache import Cache, config_hash
from orbigw.cli import main


def run_cli(args) -> tuple[int, str]:
    import contextlib
    import io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(args)
    return code, buf.getvalue()


def test_genus0_json(tmp_path):
    code, out = run_cli(["genus0", "--n", "3", "--N", "16", "--format", "json"])
    assert code == 0
    body = json.loads(out)
    assert body["report"]["ok"] is True
    assert body["series"]["L"]["coeffs"]["1"] == "1"
    # the palindrome identity check is reported
    names = [c["name"] for c in body["report"]["checks"]]
    assert any("palindrome" in s for s in names)


def test_genus0_even_reports_middle_A(tmp_path):
    code, out = run_cli(["genus0", "--n", "4", "--N", "16", "--format", "json"])
    assert code == 0
    body = json.loads(out)
    checks = {c["name"]: c["ok"] for c in body["report"]["checks"]}
    assert checks.get("A_{n/2} = 0") is True


def test_invalid_order_is_config_error():
    assert main(["genus0", "--n", "2"]) == 2


def test_verify_hae_cli():
    code, out = run_cli(["verify-hae", "--n", "3", "--g", "2", "--policies", "zero", "--format", "json"])
    assert code == 0
    body = json.loads(out)
    assert body["results"][0]["status"] == "verified"


def test_pmatrix_cache_round_trip(tmp_path):
    args = ["pmatrix", "--n", "3", "--N", "14", "--k-max", "2", "--policy", "zero",
            "--cache-dir", str(tmp_path), "--format", "json"]
    code1, out1 = run_cli(args)
    code2, out2 = run_cli(args)
    assert code1 == 0 and code2 == 0
    assert out1 == out2  # byte-identical cold vs warm runs
    assert list(tmp_path.glob("pmatrix-*.json"))


def test_cache_storage_round_trip(tmp_path):
    cache = Cache(tmp_path)
    payload = {"b": [1, 2, {"x": "y"}], "a": "z"}
    cache.store("unit", {"k": 1}, payload)
    assert cache.load("unit", {"k": 1}) == payload
    assert cache.load("unit", {"k": 2}) is None
    # canonical form is order independent
    assert config_hash({"a": 1, "b": 2}) == config_hash({"b": 2, "a": 1})


def test_csv_and_text_formats(tmp_path):
    code, out = run_cli(["genus0", "--n", "3", "--N", "14", "--format", "csv"])
    assert code == 0 and out.startswith("check,ok,detail")
    code, out = run_cli(["genus0", "--n", "3", "--N", "14", "--format", "text"])
    assert code == 0 and "PASS" in out


def test_output_file(tmp_path):
    target = tmp_path / "report.json"
    code, _ = run_cli(["genus0", "--n", "3", "--N", "14", "--format", "json", "--out", str(target)])
    assert code == 0
    assert json.loads(target.read_text())["report"]["ok"] is True


def test_jobs_determinism():
    base = ["potential", "--n", "3", "--g", "2", "--insertions", "", "--policy", "zero",
            "--N", "14", "--format", "json"]
    code1, out1 = run_cli(base + ["--jobs", "1"])
    code2, out2 = run_cli(base + ["--jobs", "4"])
    assert code1 == code2 == 0
    assert out1 == out2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "orbigw.cli", "verify-identities", "--n", "3", "--N", "14",
         "--k-max", "2", "--policy", "zero", "--format", "text"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "passed" in proc.stdout
