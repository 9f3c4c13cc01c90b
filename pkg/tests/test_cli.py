import json

from adapted_pairs.certificate import (
    certificate_dict,
    from_json,
    rat_value,
    to_json,
)
from adapted_pairs.cli import main
from adapted_pairs.verify import run_case


def test_verify_pass_exit_code_and_output(tmp_path, capsys):
    out = tmp_path / "cert.json"
    code = main(["verify", "--family", "E7", "--rank", "7", "--s", "3",
                 "--out", str(out)])
    assert code == 0
    stdout = capsys.readouterr().out
    assert "PASS" in stdout and "3, 6, 8, 10, 18" in stdout
    cert = from_json(out.read_text())
    assert cert["verdict"] == "pass"
    assert cert["schema"] == 1


def test_verify_failure_exit_code(monkeypatch, capsys):
    import dataclasses

    import adapted_pairs.cli as cli

    broken = dataclasses.replace(run_case("B", 2, 2), t_size_vs_index=False)
    monkeypatch.setattr(cli, "run_case", lambda *a: broken)
    code = main(["verify", "--family", "B", "--rank", "2", "--s", "2"])
    assert code == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "T_size_vs_index" in out


def test_verify_out_of_scope_exit_code(capsys):
    code = main(["verify", "--family", "B", "--rank", "5", "--s", "3"])
    assert code == 2
    assert "out of scope" in capsys.readouterr().err


def test_verify_invalid_rank(capsys):
    code = main(["verify", "--family", "D", "--rank", "3", "--s", "2"])
    assert code == 2


def test_certificate_round_trip(tmp_path):
    result = run_case("B", 4, 4)
    cert = certificate_dict(result)
    text = to_json(cert)
    assert from_json(text) == cert
    # exact rationals survive: h entry -1 has num/den form
    entry = cert["h"]["coroot_coeffs"][0]
    assert set(entry["value"]) == {"num", "den"}
    assert rat_value(entry["value"]).denominator >= 1


def test_certificate_deterministic():
    a = to_json(certificate_dict(run_case("D", 6, 6)))
    b = to_json(certificate_dict(run_case("D", 6, 6)))
    assert a == b


def test_report_renders_h_and_tables(tmp_path, capsys):
    out = tmp_path / "e6.json"
    assert main(["verify", "--family", "E6", "--rank", "6", "--s", "6",
                 "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["report", "--in", str(out), "--format", "txt"]) == 0
    text = capsys.readouterr().out
    assert "- 2*a1v - a2v + a3v + 6*a4v - 5*a5v" in text
    assert "Heisenberg sets" in text and "T*" in text
    assert main(["report", "--in", str(out), "--format", "md"]) == 0
    md = capsys.readouterr().out
    assert md.startswith("# Certificate")


def test_report_names_first_failing_check(tmp_path, capsys):
    cert = certificate_dict(run_case("B", 3, 2))
    cert["verdict"] = "fail"
    cert["first_failing_check"] = "nondegeneracy_det"
    path = tmp_path / "fail.json"
    path.write_text(to_json(cert))
    assert main(["report", "--in", str(path), "--format", "txt"]) == 0
    out = capsys.readouterr().out
    assert "verdict: FAIL" in out
    assert "first failing check: nondegeneracy_det" in out


def test_report_rejects_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["report", "--in", str(bad), "--format", "txt"]) == 2
    bad.write_text(json.dumps({"schema": 99}))
    assert main(["report", "--in", str(bad), "--format", "txt"]) == 2


def test_cascade_command(capsys):
    assert main(["cascade", "--family", "B", "--rank", "4"]) == 0
    out = capsys.readouterr().out
    assert "e1+e2" in out and "e3+e4" in out and "e1-e2" in out and "e3-e4" in out


def test_sweep_small(tmp_path, capsys):
    out = tmp_path / "certs"
    code = main(["sweep", "--max-rank", "4", "--out", str(out)])
    assert code == 0
    stdout = capsys.readouterr().out
    assert "all pass" in stdout
    files = sorted(p.name for p in out.iterdir())
    assert files == [
        "B_n2_s2.json",
        "B_n3_s2.json",
        "B_n4_s2.json",
        "B_n4_s4.json",
        "D_n4_s2.json",
    ]
    # summary row count equals the number of in-scope cases
    rows = [l for l in stdout.splitlines() if l.startswith(("B ", "D "))]
    assert len(rows) == 5


def test_sweep_usage_error(capsys):
    assert main(["sweep", "--max-rank", "3"]) == 2
