import json

import pytest

from etaq import cli


def run(argv, capsys):
    code = cli.run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("ETAQ_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path / "cache"


def test_parse_range():
    assert cli.parse_range("1..4") == [1, 2, 3, 4]
    assert cli.parse_range("2..3,7") == [2, 3, 7]
    with pytest.raises(cli.UsageError):
        cli.parse_range("5..1")
    assert cli.parse_window("-60:60") == (-60, 60)
    with pytest.raises(cli.UsageError):
        cli.parse_window("3")


def test_expand_csv(capsys):
    code, out, _ = run(["expand", "--eta", "2^2 * 1^-1", "--order", "10", "--format", "csv"],
                       capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,coeff"
    assert [int(l.split(",")[1]) for l in lines[1:]] == [1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1]


def test_expand_uses_cache(capsys, cache_dir):
    argv = ["expand", "--eta", "5^5 * 1^-1", "--order", "30", "--format", "json"]
    first = run(argv, capsys)[1]
    assert len(list(cache_dir.glob("*.json"))) == 1
    assert run(argv, capsys)[1] == first
    assert run(argv + ["--no-cache"], capsys)[1] == first
    doc = json.loads(first)
    assert doc["prefactor"] == "1/1"
    code, out, _ = run(["cache", "list"], capsys)
    assert out.strip() == "eta|1^-1 * 5^5|order=30"
    run(["cache", "clear"], capsys)
    assert list(cache_dir.glob("*.json")) == []


def test_verify_json(capsys):
    code, out, _ = run(["verify", "--id", "THM1", "--a", "3", "--order", "40",
                        "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc == {"id": "THM1", "params": {"a": 3}, "status": "pass", "order": 40,
                   "firstDiscrepancy": None}


def test_timings_opt_in(capsys):
    out = run(["verify", "--id", "KID", "--t", "2", "--order", "10", "--format", "json",
               "--timings"], capsys)[1]
    assert "elapsedMs" in json.loads(out)


def test_saito(capsys):
    code, out, _ = run(["saito", "--N", "30", "--order", "200", "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_failures_exit_one(capsys):
    # E(q) itself has negative coefficients
    code, out, _ = run(["expand", "--eta", "1", "--order", "5", "--nonneg"], capsys)
    assert code == 1
    assert out.startswith("q^(1/24) * (1 - q - q^2 + q^5")
    assert run(["expand", "--eta", "2^2 * 1^-1", "--nonneg"], capsys)[0] == 0


@pytest.mark.parametrize("argv", [
    ["verify", "--id", "NOPE"],
    ["verify", "--id", "THM1", "--t", "3"],
    ["verify", "--id", "CONJ2A", "--p", "1"],
    ["scan", "--id", "CONJ2A", "--p", "1"],
    ["scan", "--id", "THM1"],
    ["expand", "--eta", "x", "--order", "3"],
    ["expand", "--eta", "1^1", "--order", "999999"],
    ["pcore", "--t", "3", "--order", "50", "--brute"],
    ["bogus"],
])
def test_usage_errors_exit_two(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_scan_parallel_is_byte_identical(capsys):
    argv = ["scan", "--id", "CONJ2A", "--p", "1..3", "--order", "30", "--window=-20:20",
            "--format", "json", "--each"]
    a = run(argv + ["--jobs", "1"], capsys)[1]
    b = run(argv + ["--jobs", "3"], capsys)[1]
    assert a == b
    assert json.loads(a.splitlines()[-1])["status"] == "scan-pass"


def test_pcore_table_and_scan(capsys):
    out = run(["pcore", "--t", "3", "--order", "5", "--brute", "--format", "csv"], capsys)[1]
    assert out.splitlines()[4] == "3,3,0,0"
    assert run(["pcore", "--t", "4..6", "--order", "50", "--scan"], capsys)[0] == 0


def test_theta_csv(capsys):
    out = run(["theta", "--a", "2", "--order", "1", "--format", "csv"], capsys)[1]
    assert out.split() == ["n,zexp,coeff", "0,0,1", "0,1,1", "1,-1,1", "1,2,1"]


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.txt"
    assert cli.run(["verify", "--id", "CAZQ2", "--out", str(target)]) == 0
    assert "pass" in target.read_text()
