"""Exit codes, report formats, and the verify orchestration."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from atiyah4 import certify
from atiyah4.cli import build_parser, main, resolve_cert_dir


def run_cli(*argv):
    return main(list(argv))


def test_eval_prints_exact_values(capsys):
    assert run_cli("eval", "d4", "9", "8", "1", "1", "7", "8") == 0
    out = capsys.readouterr().out
    assert "258048" in out
    assert "overall: pass" in out


def test_eval_keeps_fractions_exact(capsys):
    assert run_cli("eval", "d4", "1/2", "1/2", "1/2", "1/2", "1/2", "1/2") == 0
    out = capsys.readouterr().out
    assert "25/16" in out
    assert "." not in out.split("=")[-1]


def test_eval_unknown_name_is_usage_error(capsys):
    assert run_cli("eval", "nope", "1", "1", "1", "1", "1", "1") == 2
    assert "unknown polynomial" in capsys.readouterr().err


def test_eval_bad_rational_is_usage_error(capsys):
    assert run_cli("eval", "d4", "1", "1", "1", "1", "1", "oops") == 2
    assert "not a rational" in capsys.readouterr().err


def test_verify_sec3_passes(capsys):
    assert run_cli("verify", "sec3") == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS")
    assert "residual 0" in out


def test_verify_vectors34_passes(capsys):
    assert run_cli("verify", "vectors34") == 0
    out = capsys.readouterr().out
    assert "21/21" in out


def test_verify_rejects_unknown_target(capsys):
    with pytest.raises(SystemExit) as exc:
        run_cli("verify", "eq41")
    assert exc.value.code == 2


def test_json_report_is_machine_readable(capsys):
    assert run_cli("--json", "verify", "sec3") == 0
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] is True
    assert report["checks"][0]["name"] == "sec3"
    assert report["checks"][0]["status"] == "pass"


def test_sample_command_small_run(capsys):
    assert run_cli("--seed", "5", "sample", "--n", "3", "--count", "40") == 0
    out = capsys.readouterr().out
    assert "min |At| / prod(2 r_ij)" in out
    assert "violations: 0 identity" in out


def test_sample_flag_validation(capsys):
    assert run_cli("sample", "--n", "9") == 2
    assert run_cli("sample", "--count", "0") == 2


def test_lp_flag_validation(capsys):
    assert run_cli("lp", "--basis", "t5") == 2
    assert run_cli("lp", "--extra", "w4") == 2


def test_missing_certificate_directory(capsys):
    assert run_cli("--certs", "/no/such/dir", "verify", "sec3") == 2
    assert "not found" in capsys.readouterr().err


def test_missing_certificate_file(tmp_path, capsys):
    assert run_cli("--certs", str(tmp_path), "verify", "sec3") == 2
    assert "missing certificate" in capsys.readouterr().err


def _copy_certs(target: Path) -> None:
    for path in certify.bundled_certificate_dir().glob("*.cert"):
        (target / path.name).write_text(path.read_text())


def _corrupt_coeff(path: Path) -> None:
    lines = path.read_text().splitlines()
    for i, line in enumerate(lines):
        if line.startswith("coeff = "):
            lines[i] = f"coeff = {int(line.split('=')[1]) + 1}"
            break
    path.write_text("\n".join(lines) + "\n")


def test_corrupted_certificate_fails_with_diagnostic(tmp_path, capsys):
    _copy_certs(tmp_path)
    _corrupt_coeff(tmp_path / "sec3.cert")
    assert run_cli("--certs", str(tmp_path), "verify", "sec3") == 1
    out = capsys.readouterr().out
    assert "FAIL" in out
    assert "residual has" in out


def test_verify_all_skips_deep_checks_when_base_fails(tmp_path, capsys):
    _copy_certs(tmp_path)
    _corrupt_coeff(tmp_path / "sec3.cert")
    assert run_cli("--certs", str(tmp_path), "verify", "all") == 1
    out = capsys.readouterr().out
    assert "SKIP eq42" in out
    assert "SKIP eq53" in out
    assert "overall: FAIL" in out


def test_local_certificates_directory_is_the_default(tmp_path, monkeypatch, capsys):
    certs = tmp_path / "certificates"
    certs.mkdir()
    _copy_certs(certs)
    _corrupt_coeff(certs / "sec3.cert")
    monkeypatch.chdir(tmp_path)
    # the corrupted local copy must win over the bundled one
    assert run_cli("verify", "sec3") == 1


def test_resolve_cert_dir_falls_back_to_bundled(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert resolve_cert_dir(None) is None
    local = tmp_path / "certificates"
    local.mkdir()
    assert resolve_cert_dir(None) == Path("certificates")


def test_parser_has_expected_defaults():
    args = build_parser().parse_args(["sample"])
    assert args.tol == 1e-8
    assert args.seed == 0
    assert args.n == 4
    assert args.count == 10000
    assert args.mode == "generic"


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "atiyah4.cli", "eval", "z4", "1", "1", "1", "1", "1", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "= 2" in proc.stdout
